#pragma once

#include <filesystem>

#include <json.hpp>

#include "qig/matkern.hpp"

namespace qig {

/// Matrix JSON format shared by all tools:
///   {"n": int, "re": [[float; n]; n], "im": [[float; n]; n]}
/// row-major; "im" may be omitted for real matrices.
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);

/// Throws qig::Error on missing/unparseable input, IoError on write failure.
Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& m);

}  // namespace qig
