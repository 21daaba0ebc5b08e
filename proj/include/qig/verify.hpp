#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "qig/matkern.hpp"
#include "qig/metrics.hpp"

namespace qig {

/// Deterministic random stream: mt19937_64 driven, Gaussians by Box-Muller
/// over explicitly constructed uniforms, so identical seeds reproduce
/// identical values regardless of the standard library's distribution
/// implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();   // [0, 1)
  double gaussian();  // standard normal
  Complex complex_gaussian();
  std::uint64_t next_raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Sub-seed derivation for independent deterministic trials (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// A completely positive trace-preserving map given by Kraus operators;
/// sum_i K_i^* K_i = I within 1e-10.
struct CptpMap {
  std::vector<Matrix> kraus;

  int dim() const;
  double trace_preservation_defect() const;  // |sum K^* K - I|
};

/// Validates the trace-preservation invariant.
CptpMap make_cptp(std::vector<Matrix> kraus);

/// G G^* + 1e-9 I from a complex Gaussian G (scaled so the expected state is
/// near identity), optionally normalized to unit trace. Deterministic per
/// seed; requires 2 <= n <= 64.
StateMatrix random_state(int n, bool unit_trace, std::uint64_t seed);

/// Hermitian matrix from a symmetrized Gaussian; trace projected out when
/// traceless is requested.
HermitianMatrix random_tangent(int n, bool traceless, std::uint64_t seed);

/// Stacks kraus_count Gaussian n x n blocks into an isometry by QR and
/// slices it into Kraus operators; trace preservation holds by construction.
CptpMap random_cptp(int n, int kraus_count, std::uint64_t seed);

HermitianMatrix apply_cptp(const CptpMap& map, const HermitianMatrix& x);
Matrix apply_cptp(const CptpMap& map, const Matrix& x);

/// Contraction margin lambda_rho(h,h) - lambda_T(rho)(T(h),T(h)). Monotone
/// metrics keep this >= 0 up to rounding. T(rho) is regularized by 1e-9 I
/// when it grazes the positivity boundary; `regularized`, when given, is set
/// accordingly so callers can record the event.
double check_monotonicity(const MetricKind& m, const CptpMap& map,
                          const StateMatrix& rho, const HermitianMatrix& h,
                          bool* regularized = nullptr);

struct CheckResult {
  std::string name;
  bool pass;
  double worst_margin;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<CheckResult> checks;
  std::int64_t runtime_ms = 0;

  bool all_pass() const;
  nlohmann::json to_json() const;
};

enum class Suite {
  Chain,
  Monotonicity,
  Lengths,
  Residuals,
  HessianCrosscheck,
  FrechetFd,
  BoundsF,
};

Suite parse_suite(const std::string& name);
std::string suite_name(Suite suite);

/// Runs the named property battery: `trials` independent deterministic
/// random instances per check, sub-seeded from (seed, trial index). Failed
/// checks are recorded in the report, never thrown.
VerificationReport run_suite(Suite suite, int trials, std::uint64_t seed);

}  // namespace qig
