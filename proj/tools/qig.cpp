// qig: monotone Riemannian metrics, geodesic distances, and verification
// suites for positive-definite and density matrices.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qig/divergences.hpp"
#include "qig/geodesics.hpp"
#include "qig/matrix_io.hpp"
#include "qig/metrics.hpp"
#include "qig/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitIoError = 3;

std::string g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QIG_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 0;
}

qig::MetricKind parse_metric(const std::string& name,
                             std::optional<double> alpha) {
  if (name != "wyd" && alpha)
    throw qig::DomainError("--alpha is only valid with --metric wyd");
  return qig::MetricKind::parse(name, alpha);
}

bool is_unit_trace(const qig::StateMatrix& s) {
  return std::abs(s.trace() - 1.0) <= 1e-10;
}

int run_dist(const std::string& path0, const std::string& path1,
             const std::string& format) {
  const qig::StateMatrix rho0 =
      qig::validate_state(qig::load_matrix(path0), false);
  const qig::StateMatrix rho1 =
      qig::validate_state(qig::load_matrix(path1), false);

  const double bures_cone = qig::bures_distance_cone(rho0, rho1);
  const double wy_cone = qig::wy_distance_cone(rho0, rho1);
  const double rld_cone = qig::rld_upper_bound_cone(rho0, rho1);
  const bool density = is_unit_trace(rho0) && is_unit_trace(rho1);

  const qig::Matrix n0 = rho0.mat() / rho0.trace();
  const qig::Matrix n1 = rho1.mat() / rho1.trace();
  const bool commuting = (n0 * n1 - n1 * n0).norm() <= 1e-6;

  // Slack absorbs the sqrt-amplified cancellation noise near equal states.
  const auto leq = [](double a, double b) { return a <= b + 1e-6 + 1e-9 * b; };
  bool chain_ok = leq(bures_cone, wy_cone) && leq(wy_cone, rld_cone);

  nlohmann::json record{{"bures_cone", bures_cone},
                        {"wy_cone", wy_cone},
                        {"rld_upper_cone", rld_cone},
                        {"commuting", commuting}};
  if (density) {
    const double bures_d = qig::bures_distance_density(rho0, rho1);
    const double wy_d = qig::wy_distance_density(rho0, rho1);
    const double rld_d = qig::rld_upper_bound_density(rho0, rho1);
    chain_ok = chain_ok && leq(bures_d, wy_d) && leq(wy_d, rld_d);
    record["bures_density"] = bures_d;
    record["wy_density"] = wy_d;
    record["rld_upper_density"] = rld_d;
  }
  record["chain_ok"] = chain_ok;

  if (format == "csv") {
    std::string header = "bures_cone,wy_cone,rld_upper_cone";
    std::string row = g12(bures_cone) + "," + g12(wy_cone) + "," + g12(rld_cone);
    if (density) {
      header += ",bures_density,wy_density,rld_upper_density";
      row += "," + g12(record["bures_density"].get<double>()) + "," +
             g12(record["wy_density"].get<double>()) + "," +
             g12(record["rld_upper_density"].get<double>());
    }
    header += ",commuting,chain_ok";
    row += std::string(",") + (commuting ? "1" : "0") + "," +
           (chain_ok ? "1" : "0");
    std::cout << header << '\n' << row << '\n';
  } else {
    std::cout << record.dump(2) << '\n';
  }
  return kExitOk;
}

int run_geodesic(const std::string& kind_name, const std::string& path0,
                 const std::string& path1, int samples,
                 const std::string& out_path,
                 const std::optional<std::string>& length_metric,
                 std::optional<double> alpha, int panels) {
  const qig::CurveKind kind = qig::parse_curve_kind(kind_name);
  const qig::StateMatrix rho0 =
      qig::validate_state(qig::load_matrix(path0), false);
  const qig::StateMatrix rho1 =
      qig::validate_state(qig::load_matrix(path1), false);
  const qig::CurveSpec curve(kind, rho0, rho1);

  if (out_path.empty()) {
    qig::write_curve_csv(std::cout, curve, samples);
  } else {
    std::ofstream out(out_path);
    if (!out) throw qig::IoError("cannot open output file: " + out_path);
    qig::write_curve_csv(out, curve, samples);
    if (!out) throw qig::IoError("write failed: " + out_path);
  }
  if (length_metric) {
    const qig::MetricKind m = parse_metric(*length_metric, alpha);
    std::cout << g12(qig::curve_length(m, curve, panels)) << '\n';
  }
  return kExitOk;
}

int run_metric(const std::string& kind_name, std::optional<double> alpha,
               const std::string& rho_path, const std::string& h_path,
               const std::string& k_path, const std::string& format) {
  const qig::MetricKind m = parse_metric(kind_name, alpha);
  const qig::StateMatrix rho =
      qig::validate_state(qig::load_matrix(rho_path), false);
  const qig::HermitianMatrix h{qig::load_matrix(h_path)};
  const qig::HermitianMatrix k{qig::load_matrix(k_path)};
  const double value = qig::metric_eval(m, rho, h, k);
  if (format == "json")
    std::cout << nlohmann::json{{"value", value}}.dump() << '\n';
  else
    std::cout << g12(value) << '\n';
  return kExitOk;
}

int run_verify(const std::string& suite_name, int trials, std::uint64_t seed,
               const std::string& out_path) {
  const qig::Suite suite = qig::parse_suite(suite_name);
  const qig::VerificationReport report = qig::run_suite(suite, trials, seed);
  const nlohmann::json j = report.to_json();
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw qig::IoError("cannot open output file: " + out_path);
    out << j.dump(2) << '\n';
    if (!out) throw qig::IoError("write failed: " + out_path);
  }
  std::cout << j.dump(2) << '\n';
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

int run_rand(int n, int count, bool unit_trace, std::uint64_t seed,
             const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw qig::IoError("cannot create output directory: " + out_dir);
  for (int i = 0; i < count; ++i) {
    const qig::StateMatrix s =
        qig::random_state(n, unit_trace, qig::derive_seed(seed, i));
    char name[32];
    std::snprintf(name, sizeof(name), "state_%03d.json", i);
    qig::save_matrix(fs::path(out_dir) / name, s.mat());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemannian geometry on positive-definite and density matrices"};
  app.require_subcommand(1);

  std::string path0, path1, h_path, k_path;
  std::string metric_name = "bures";
  std::string curve_kind;
  std::string format = "json";
  std::string metric_format = "csv";  // a bare 12-digit real by default
  std::string out_path, out_dir, suite;
  std::optional<double> alpha;
  std::optional<std::string> length_metric;
  int samples = 101, panels = 1024, trials = 100, n = 2, count = 1;
  bool unit_trace = false;
  std::uint64_t seed = default_seed();

  CLI::App* dist = app.add_subcommand(
      "dist", "Distances and bounds between two positive-definite matrices");
  dist->add_option("rho0", path0, "state matrix JSON")->required();
  dist->add_option("rho1", path1, "state matrix JSON")->required();
  dist->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* geodesic =
      app.add_subcommand("geodesic", "Sample a closed-form curve to CSV");
  geodesic
      ->add_option("--kind", curve_kind,
                   "buresline|buresarc|wyline|wyarc|rlddual|linear")
      ->required();
  geodesic->add_option("rho0", path0)->required();
  geodesic->add_option("rho1", path1)->required();
  geodesic->add_option("--samples", samples, "rows in the CSV (default 101)");
  geodesic->add_option("--out", out_path, "output CSV path (default stdout)");
  geodesic->add_option("--metric", length_metric,
                       "also print the curve length under this metric");
  geodesic->add_option("--alpha", alpha, "WYD alpha in [-3,3]");
  geodesic->add_option("--panels", panels, "quadrature panels (default 1024)");

  CLI::App* metric =
      app.add_subcommand("metric", "Evaluate lambda_rho(h, k) for a metric kind");
  metric->add_option("--metric", metric_name, "bures|rld|wy|bkm|wyd");
  metric->add_option("--alpha", alpha, "WYD alpha in [-3,3]");
  metric->add_option("rho", path0, "state matrix JSON")->required();
  metric->add_option("h_file", h_path, "tangent matrix JSON")->required();
  metric->add_option("k_file", k_path, "tangent matrix JSON")->required();
  metric->add_option("--format", metric_format)
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify
      ->add_option("--suite", suite,
                   "chain|monotonicity|lengths|residuals|hessian_crosscheck|"
                   "frechet_fd|bounds_f")
      ->required();
  verify->add_option("--trials", trials, "random trials (default 100)");
  verify->add_option("--seed", seed, "master seed (default QIG_SEED or 0)");
  verify->add_option("--out", out_path, "write the JSON report here too");

  CLI::App* rand = app.add_subcommand("rand", "Generate random state files");
  rand->add_option("--n", n, "dimension (default 2)");
  rand->add_option("--count", count, "number of files (default 1)");
  rand->add_flag("--unit-trace", unit_trace, "normalize to unit trace");
  rand->add_option("--seed", seed, "master seed (default QIG_SEED or 0)");
  rand->add_option("--out-dir", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (app.got_subcommand(dist)) return run_dist(path0, path1, format);
    if (app.got_subcommand(geodesic))
      return run_geodesic(curve_kind, path0, path1, samples, out_path,
                          length_metric, alpha, panels);
    if (app.got_subcommand(metric))
      return run_metric(metric_name, alpha, path0, h_path, k_path,
                        metric_format);
    if (app.got_subcommand(verify))
      return run_verify(suite, trials, seed, out_path);
    if (app.got_subcommand(rand))
      return run_rand(n, count, unit_trace, seed, out_dir);
  } catch (const qig::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const qig::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
