#pragma once

#include <stdexcept>

namespace qig {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitianError : Error { using Error::Error; };
struct NotPositiveDefiniteError : Error { using Error::Error; };
struct TraceNotOneError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct InvalidDistributionError : Error { using Error::Error; };
struct InvalidMeasureError : Error { using Error::Error; };
struct DegenerateTangentError : Error { using Error::Error; };

// Output-side I/O failures (unwritable files, full disks). Input parse and
// validation failures use the types above.
struct IoError : Error { using Error::Error; };

}  // namespace qig
