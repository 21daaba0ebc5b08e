#include "qig/matrix_io.hpp"

#include <fstream>

namespace qig {

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("re"))
    throw Error("matrix JSON must be an object with \"n\" and \"re\"");
  const int n = j.at("n").get<int>();
  if (n < 1) throw Error("matrix JSON: n must be >= 1");
  const auto& re = j.at("re");
  const bool has_im = j.contains("im");
  if (re.size() != static_cast<std::size_t>(n) ||
      (has_im && j.at("im").size() != static_cast<std::size_t>(n)))
    throw Error("matrix JSON: row count does not match n");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row_re = re.at(i);
    if (row_re.size() != static_cast<std::size_t>(n))
      throw Error("matrix JSON: \"re\" row length does not match n");
    for (int k = 0; k < n; ++k) {
      double im = 0.0;
      if (has_im) {
        const auto& row_im = j.at("im").at(i);
        if (row_im.size() != static_cast<std::size_t>(n))
          throw Error("matrix JSON: \"im\" row length does not match n");
        im = row_im.at(k).get<double>();
      }
      m(i, k) = Complex(row_re.at(k).get<double>(), im);
    }
  }
  return m;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  const long n = m.rows();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  bool any_imag = false;
  for (long i = 0; i < n; ++i) {
    nlohmann::json rrow = nlohmann::json::array();
    nlohmann::json irow = nlohmann::json::array();
    for (long k = 0; k < m.cols(); ++k) {
      rrow.push_back(m(i, k).real());
      irow.push_back(m(i, k).imag());
      if (m(i, k).imag() != 0.0) any_imag = true;
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  nlohmann::json j{{"n", n}, {"re", std::move(re)}};
  if (any_imag) j["im"] = std::move(im);
  return j;
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed JSON in " + path.string() + ": " + e.what());
  }
  try {
    return matrix_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad matrix JSON in " + path.string() + ": " + e.what());
  }
}

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path.string());
  out << matrix_to_json(m).dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace qig
