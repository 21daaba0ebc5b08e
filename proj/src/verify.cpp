#include "qig/verify.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qig/divergences.hpp"
#include "qig/geodesics.hpp"

namespace qig {
namespace {

constexpr double kEpsReg = 1e-9;  // post-channel boundary regularization

double commutator_norm(const Matrix& a, const Matrix& b) {
  return (a * b - b * a).norm();
}

Matrix gaussian_matrix(RandomStream& rng, int rows, int cols, double scale) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = scale * rng.complex_gaussian();
  return g;
}

// Aggregates the worst margin seen for one named check; negative margins
// beyond tolerance mean failure.
class MarginCheck {
 public:
  MarginCheck(std::string name, double tolerance)
      : name_(std::move(name)), tolerance_(tolerance) {}

  void record(double margin, const std::string& context = {}) {
    if (margin < worst_) {
      worst_ = margin;
      worst_context_ = context;
    }
  }

  CheckResult result() const {
    CheckResult r;
    r.name = name_;
    r.worst_margin = worst_ == std::numeric_limits<double>::infinity()
                         ? 0.0
                         : worst_;
    r.pass = r.worst_margin >= -tolerance_;
    std::ostringstream os;
    os << "tolerance " << tolerance_;
    if (!worst_context_.empty()) os << "; worst at " << worst_context_;
    r.detail = os.str();
    return r;
  }

 private:
  std::string name_;
  double tolerance_;
  double worst_ = std::numeric_limits<double>::infinity();
  std::string worst_context_;
};

std::string trial_tag(int trial, int n) {
  std::ostringstream os;
  os << "trial " << trial << " (n=" << n << ")";
  return os.str();
}

void run_chain_suite(int trials, std::uint64_t seed,
                     std::vector<CheckResult>& out);
void run_monotonicity_suite(int trials, std::uint64_t seed,
                            std::vector<CheckResult>& out);
void run_lengths_suite(int trials, std::uint64_t seed,
                       std::vector<CheckResult>& out);
void run_residuals_suite(int trials, std::uint64_t seed,
                         std::vector<CheckResult>& out);
void run_hessian_suite(int trials, std::uint64_t seed,
                       std::vector<CheckResult>& out);
void run_frechet_fd_suite(int trials, std::uint64_t seed,
                          std::vector<CheckResult>& out);
void run_bounds_f_suite(int trials, std::uint64_t seed,
                        std::vector<CheckResult>& out);

}  // namespace

double RandomStream::uniform() {
  // 53 random bits; avoids the implementation-defined behaviour of
  // std::uniform_real_distribution.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

Complex RandomStream::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 over master advanced by the index.
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int CptpMap::dim() const {
  return kraus.empty() ? 0 : static_cast<int>(kraus.front().rows());
}

double CptpMap::trace_preservation_defect() const {
  if (kraus.empty()) return std::numeric_limits<double>::infinity();
  const int n = dim();
  Matrix acc = Matrix::Zero(n, n);
  for (const Matrix& k : kraus) acc += k.adjoint() * k;
  return (acc - Matrix::Identity(n, n)).norm();
}

CptpMap make_cptp(std::vector<Matrix> kraus) {
  if (kraus.empty()) throw DomainError("CPTP map needs at least one Kraus operator");
  const long n = kraus.front().rows();
  for (const Matrix& k : kraus)
    if (k.rows() != n || k.cols() != n)
      throw DimensionMismatchError("Kraus operators must share one square shape");
  CptpMap map{std::move(kraus)};
  if (map.trace_preservation_defect() > 1e-10)
    throw DomainError("Kraus operators do not preserve trace within 1e-10");
  return map;
}

StateMatrix random_state(int n, bool unit_trace, std::uint64_t seed) {
  if (n < 2 || n > 64)
    throw DomainError("random_state requires 2 <= n <= 64");
  RandomStream rng(seed);
  const Matrix g = gaussian_matrix(rng, n, n, 1.0 / std::sqrt(2.0 * n));
  Matrix m = g * g.adjoint() + kEpsReg * Matrix::Identity(n, n);
  if (unit_trace) m /= m.trace().real();
  return validate_state(hermitian_part(m), unit_trace);
}

HermitianMatrix random_tangent(int n, bool traceless, std::uint64_t seed) {
  if (n < 1) throw DomainError("random_tangent requires n >= 1");
  RandomStream rng(seed);
  const Matrix g = gaussian_matrix(rng, n, n, 1.0 / std::sqrt(2.0 * n));
  Matrix h = 0.5 * (g + g.adjoint().eval());
  if (traceless)
    h -= (h.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
  return hermitian_part(h);
}

CptpMap random_cptp(int n, int kraus_count, std::uint64_t seed) {
  if (n < 1 || kraus_count < 1)
    throw DomainError("random_cptp requires n >= 1 and kraus_count >= 1");
  RandomStream rng(seed);
  const Matrix stacked = gaussian_matrix(rng, n * kraus_count, n, 1.0);
  Eigen::HouseholderQR<Matrix> qr(stacked);
  Matrix isometry = Matrix::Identity(n * kraus_count, n);
  isometry = qr.householderQ() * isometry;
  std::vector<Matrix> kraus;
  kraus.reserve(kraus_count);
  for (int b = 0; b < kraus_count; ++b)
    kraus.push_back(isometry.block(b * n, 0, n, n));
  return CptpMap{std::move(kraus)};
}

Matrix apply_cptp(const CptpMap& map, const Matrix& x) {
  if (map.dim() != x.rows())
    throw DimensionMismatchError("apply_cptp: dimension mismatch");
  Matrix acc = Matrix::Zero(x.rows(), x.cols());
  for (const Matrix& k : map.kraus) acc += k * x * k.adjoint();
  return acc;
}

HermitianMatrix apply_cptp(const CptpMap& map, const HermitianMatrix& x) {
  return hermitian_part(apply_cptp(map, x.mat()));
}

double check_monotonicity(const MetricKind& m, const CptpMap& map,
                          const StateMatrix& rho, const HermitianMatrix& h,
                          bool* regularized) {
  const double before = metric_eval(m, rho, h, h);
  Matrix t_rho = apply_cptp(map, rho.mat());
  const HermitianMatrix t_h = apply_cptp(map, h);
  Eigen::SelfAdjointEigenSolver<Matrix> probe(t_rho);
  const double lambda_max = probe.eigenvalues().maxCoeff();
  const bool graze =
      probe.eigenvalues().minCoeff() <= kEpsPd * std::max(lambda_max, 1.0);
  if (graze)
    t_rho += kEpsReg * Matrix::Identity(t_rho.rows(), t_rho.cols());
  if (regularized) *regularized = graze;
  const StateMatrix t_state = validate_state(hermitian_part(t_rho), false);
  const double after = metric_eval(m, t_state, t_h, t_h);
  return before - after;
}

bool VerificationReport::all_pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json jchecks = nlohmann::json::array();
  for (const CheckResult& c : checks)
    jchecks.push_back({{"name", c.name},
                       {"pass", c.pass},
                       {"worst_margin", c.worst_margin},
                       {"detail", c.detail}});
  return {{"suite", suite},
          {"seed", seed},
          {"trials", trials},
          {"checks", std::move(jchecks)},
          {"runtime_ms", runtime_ms}};
}

Suite parse_suite(const std::string& name) {
  if (name == "chain") return Suite::Chain;
  if (name == "monotonicity") return Suite::Monotonicity;
  if (name == "lengths") return Suite::Lengths;
  if (name == "residuals") return Suite::Residuals;
  if (name == "hessian_crosscheck") return Suite::HessianCrosscheck;
  if (name == "frechet_fd") return Suite::FrechetFd;
  if (name == "bounds_f") return Suite::BoundsF;
  throw DomainError("unknown suite: " + name);
}

std::string suite_name(Suite suite) {
  switch (suite) {
    case Suite::Chain: return "chain";
    case Suite::Monotonicity: return "monotonicity";
    case Suite::Lengths: return "lengths";
    case Suite::Residuals: return "residuals";
    case Suite::HessianCrosscheck: return "hessian_crosscheck";
    case Suite::FrechetFd: return "frechet_fd";
    case Suite::BoundsF: return "bounds_f";
  }
  return "?";
}

VerificationReport run_suite(Suite suite, int trials, std::uint64_t seed) {
  if (trials < 0) throw DomainError("trials must be >= 0");
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.suite = suite_name(suite);
  report.seed = seed;
  report.trials = trials;
  if (trials > 0) {
    try {
      switch (suite) {
        case Suite::Chain: run_chain_suite(trials, seed, report.checks); break;
        case Suite::Monotonicity:
          run_monotonicity_suite(trials, seed, report.checks);
          break;
        case Suite::Lengths:
          run_lengths_suite(trials, seed, report.checks);
          break;
        case Suite::Residuals:
          run_residuals_suite(trials, seed, report.checks);
          break;
        case Suite::HessianCrosscheck:
          run_hessian_suite(trials, seed, report.checks);
          break;
        case Suite::FrechetFd:
          run_frechet_fd_suite(trials, seed, report.checks);
          break;
        case Suite::BoundsF:
          run_bounds_f_suite(trials, seed, report.checks);
          break;
      }
    } catch (const std::exception& e) {
      // Failures are recorded, never thrown; margins stay finite.
      report.checks.push_back(CheckResult{
          "unexpected_exception", false, -std::numeric_limits<double>::max(),
          e.what()});
    }
  }
  report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

namespace {

void run_chain_suite(int trials, std::uint64_t seed,
                     std::vector<CheckResult>& out) {
  MarginCheck density_lower("density_chain_bures_le_wy", 1e-10);
  MarginCheck density_upper("density_chain_wy_le_rld_upper", 1e-10);
  MarginCheck density_pi("density_upper_lt_pi", 0.0);
  MarginCheck strictness("noncommuting_strict_gap", 0.0);
  MarginCheck cone_chain("cone_chain_bures_le_rld_upper", 1e-9);
  MarginCheck cone_cap("cone_upper_lt_2sqrt_traces", 0.0);
  MarginCheck exchange("rld_upper_exchange_symmetry", 1e-9);

  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = derive_seed(seed, trial);
    const int n = 2 + static_cast<int>(derive_seed(s, 0) % 4);  // 2..5
    const std::string tag = trial_tag(trial, n);

    const StateMatrix rho0 = random_state(n, true, derive_seed(s, 1));
    const StateMatrix rho1 = random_state(n, true, derive_seed(s, 2));
    const double b = bures_distance_density(rho0, rho1);
    const double w = wy_distance_density(rho0, rho1);
    const double r = rld_upper_bound_density(rho0, rho1);
    density_lower.record(w - b, tag);
    density_upper.record(r - w, tag);
    density_pi.record(std::numbers::pi - r, tag);
    if (commutator_norm(rho0.mat(), rho1.mat()) > 1e-6)
      strictness.record(r - b - 1e-8, tag);

    const StateMatrix c0 = random_state(n, false, derive_seed(s, 3));
    const StateMatrix c1 = random_state(n, false, derive_seed(s, 4));
    const double cb = bures_distance_cone(c0, c1);
    const double cr = rld_upper_bound_cone(c0, c1);
    cone_chain.record(cr - cb, tag);
    cone_cap.record(2.0 * std::sqrt(c0.trace() + c1.trace()) - cr, tag);
    const double cr_swapped = rld_upper_bound_cone(c1, c0);
    exchange.record(1e-9 * (1.0 + cr) - std::abs(cr - cr_swapped), tag);
  }
  out.push_back(density_lower.result());
  out.push_back(density_upper.result());
  out.push_back(density_pi.result());
  out.push_back(strictness.result());
  out.push_back(cone_chain.result());
  out.push_back(cone_cap.result());
  out.push_back(exchange.result());
}

void run_monotonicity_suite(int trials, std::uint64_t seed,
                            std::vector<CheckResult>& out) {
  const std::vector<MetricKind> kinds = MetricKind::builtins();
  std::vector<MarginCheck> checks;
  checks.reserve(kinds.size());
  for (const MetricKind& kind : kinds)
    checks.emplace_back("monotone_" + kind.name(), 1e-9);

  int regularized_trials = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = derive_seed(seed, trial);
    const int n = 2 + static_cast<int>(derive_seed(s, 0) % 4);
    const int kraus_count = 1 + static_cast<int>(derive_seed(s, 1) % 3);
    const StateMatrix rho = random_state(n, true, derive_seed(s, 2));
    const HermitianMatrix h = random_tangent(n, true, derive_seed(s, 3));
    const CptpMap map = random_cptp(n, kraus_count, derive_seed(s, 4));
    const std::string tag = trial_tag(trial, n);
    bool any_regularized = false;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const double before = metric_eval(kinds[k], rho, h, h);
      bool regularized = false;
      const double margin =
          check_monotonicity(kinds[k], map, rho, h, &regularized);
      any_regularized = any_regularized || regularized;
      checks[k].record(margin / std::max(1.0, before), tag);
    }
    if (any_regularized) ++regularized_trials;
  }
  for (const MarginCheck& c : checks) out.push_back(c.result());
  std::ostringstream note;
  note << regularized_trials << " of " << trials
       << " trials needed the 1e-9 I post-channel regularization";
  out.push_back(CheckResult{"post_channel_regularizations", true, 0.0,
                            note.str()});
}

void run_lengths_suite(int trials, std::uint64_t seed,
                       std::vector<CheckResult>& out) {
  MarginCheck bures_check("bures_line_length_matches_distance", 0.0);
  MarginCheck wy_check("wy_line_length_matches_distance", 0.0);
  MarginCheck rld_check("rld_dual_length_matches_upper_bound", 0.0);

  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = derive_seed(seed, trial);
    const int n = 2 + static_cast<int>(derive_seed(s, 0) % 3);  // 2..4
    const StateMatrix rho0 = random_state(n, false, derive_seed(s, 1));
    const StateMatrix rho1 = random_state(n, false, derive_seed(s, 2));
    const std::string tag = trial_tag(trial, n);

    const double b_len = curve_length(
        MetricKind::bures(), CurveSpec(CurveKind::BuresLine, rho0, rho1), 1024);
    const double b_dist = bures_distance_cone(rho0, rho1);
    bures_check.record(1e-6 - std::abs(b_len - b_dist) / b_dist, tag);

    const double w_len = curve_length(
        MetricKind::wy(), CurveSpec(CurveKind::WYLine, rho0, rho1), 1024);
    const double w_dist = wy_distance_cone(rho0, rho1);
    wy_check.record(1e-6 - std::abs(w_len - w_dist) / w_dist, tag);

    const double r_len = curve_length(
        MetricKind::rld(), CurveSpec(CurveKind::RLDDual, rho0, rho1), 2048);
    const double r_bound = rld_upper_bound_cone(rho0, rho1);
    rld_check.record(2e-6 - std::abs(r_len - r_bound) / r_bound, tag);
  }
  out.push_back(bures_check.result());
  out.push_back(wy_check.result());
  out.push_back(rld_check.result());
}

void run_residuals_suite(int trials, std::uint64_t seed,
                         std::vector<CheckResult>& out) {
  MarginCheck commuting("rld_dual_residual_commuting_small", 0.0);
  MarginCheck noncommuting("rld_dual_residual_noncommuting_large", 0.0);

  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = derive_seed(seed, trial);

    // Commuting endpoints: diagonal density pair.
    RandomStream rng(derive_seed(s, 0));
    const int n = 2 + static_cast<int>(derive_seed(s, 1) % 3);
    const std::string tag = trial_tag(trial, n);
    RealVector p(n), q(n);
    for (int i = 0; i < n; ++i) {
      p[i] = 0.1 + rng.uniform();
      q[i] = 0.1 + rng.uniform();
    }
    p /= p.sum();
    q /= q.sum();
    const StateMatrix d0 = validate_state(HermitianMatrix::diagonal(p), true);
    const StateMatrix d1 = validate_state(HermitianMatrix::diagonal(q), true);
    const CurveSpec diag_curve(CurveKind::RLDDual, d0, d1);
    double worst = 0.0;
    for (double t : {0.25, 0.5, 0.75})
      worst = std::max(worst, rld_geodesic_residual(diag_curve, t).orthogonal_defect);
    commuting.record(1e-6 - worst, tag);

    // Well-non-commuting qubit pair; resample deterministically until the
    // commutator is macroscopic.
    StateMatrix q0 = random_state(2, true, derive_seed(s, 2));
    StateMatrix q1 = random_state(2, true, derive_seed(s, 3));
    for (std::uint64_t attempt = 0;
         commutator_norm(q0.mat(), q1.mat()) < 0.05 && attempt < 64; ++attempt) {
      q0 = random_state(2, true, derive_seed(s, 100 + 2 * attempt));
      q1 = random_state(2, true, derive_seed(s, 101 + 2 * attempt));
    }
    const CurveSpec curve(CurveKind::RLDDual, q0, q1);
    double best = 0.0;
    for (double t : {0.25, 0.5, 0.75})
      best = std::max(best, rld_geodesic_residual(curve, t).orthogonal_defect);
    noncommuting.record(best - 1e-4, trial_tag(trial, 2));
  }
  out.push_back(commuting.result());
  out.push_back(noncommuting.result());
}

void run_hessian_suite(int trials, std::uint64_t seed,
                       std::vector<CheckResult>& out) {
  const std::vector<double> alphas{-3.0, -1.5, 0.0, 1.0, 2.5, 3.0};
  MarginCheck closed_form("wyd_hessian_matches_closed_form", 0.0);
  MarginCheck endpoint_wy("wyd_alpha0_matches_wy", 0.0);
  MarginCheck endpoint_rld("wyd_alpha_pm3_matches_rld", 0.0);
  MarginCheck endpoint_bkm("wyd_alpha_pm1_matches_bkm", 0.0);
  MarginCheck swap_symmetry("wyd_hessian_alpha_swap_symmetry", 0.0);

  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = derive_seed(seed, trial);
    const int n = 2 + static_cast<int>(derive_seed(s, 0) % 2);  // qubit/qutrit
    const StateMatrix rho = random_state(n, true, derive_seed(s, 1));
    const HermitianMatrix h = random_tangent(n, false, derive_seed(s, 2));
    const HermitianMatrix k = random_tangent(n, false, derive_seed(s, 3));
    const std::string tag = trial_tag(trial, n);

    for (double alpha : alphas) {
      const double hess = wyd_metric_hessian(alpha, rho, h, h);
      const double closed = metric_eval(MetricKind::wyd(alpha), rho, h, h);
      closed_form.record(1e-8 - std::abs(hess - closed) / std::abs(closed), tag);
    }
    const double h0 = wyd_metric_hessian(0.0, rho, h, h);
    const double wy = metric_eval(MetricKind::wy(), rho, h, h);
    endpoint_wy.record(1e-8 - std::abs(h0 - wy) / wy, tag);
    for (double a : {-3.0, 3.0}) {
      const double v = wyd_metric_hessian(a, rho, h, h);
      const double rld = metric_eval(MetricKind::rld(), rho, h, h);
      endpoint_rld.record(1e-8 - std::abs(v - rld) / rld, tag);
    }
    for (double a : {-1.0, 1.0}) {
      const double v = wyd_metric_hessian(a, rho, h, h);
      const double bkm = metric_eval(MetricKind::bkm(), rho, h, h);
      endpoint_bkm.record(1e-8 - std::abs(v - bkm) / bkm, tag);
    }
    // lambda^alpha(h,k) = lambda^{-alpha}(k,h) by the defining derivative.
    const double lhs = wyd_metric_hessian(1.7, rho, h, k);
    const double rhs = wyd_metric_hessian(-1.7, rho, k, h);
    swap_symmetry.record(1e-9 - std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)),
                         tag);
  }
  out.push_back(closed_form.result());
  out.push_back(endpoint_wy.result());
  out.push_back(endpoint_rld.result());
  out.push_back(endpoint_bkm.result());
  out.push_back(swap_symmetry.result());
}

void run_frechet_fd_suite(int trials, std::uint64_t seed,
                          std::vector<CheckResult>& out) {
  MarginCheck ratio_check("frechet_fd_second_order_ratio", 0.0);

  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = derive_seed(seed, trial);
    const int n = 2 + static_cast<int>(derive_seed(s, 0) % 3);
    // Spectrum floored away from zero so A +- t h stays in every domain.
    Matrix base = random_state(n, false, derive_seed(s, 1)).mat();
    base += 0.3 * Matrix::Identity(n, n);
    const HermitianMatrix a = hermitian_part(base);
    HermitianMatrix h = random_tangent(n, false, derive_seed(s, 2));
    h = hermitian_part(h.mat() / h.norm());

    const ScalarFunctionSpec f = (trial % 3 == 0)   ? ScalarFunctionSpec::sqrt()
                                 : (trial % 3 == 1) ? ScalarFunctionSpec::log()
                                                    : ScalarFunctionSpec::power(1.7);
    const HermitianMatrix df = frechet_derivative(f, a, h);
    auto fd_error = [&](double t) {
      const Matrix plus = mat_fn(hermitian_part(a.mat() + t * h.mat()), f).mat();
      const Matrix minus = mat_fn(hermitian_part(a.mat() - t * h.mat()), f).mat();
      return ((plus - minus) / (2.0 * t) - df.mat()).norm();
    };
    const double ratio = fd_error(1e-3) / fd_error(0.5e-3);
    ratio_check.record(std::min(ratio - 3.0, 5.0 - ratio),
                       trial_tag(trial, n) + " " + f.describe());
  }
  out.push_back(ratio_check.result());
}

void run_bounds_f_suite(int trials, std::uint64_t seed,
                        std::vector<CheckResult>& out) {
  // Base log grid plus `trials` random log-uniform samples in [0.01, 100].
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i)
    grid.push_back(std::pow(10.0, -1.0 + 2.0 * i / 200.0));
  RandomStream rng(seed);
  for (int i = 0; i < trials; ++i)
    grid.push_back(std::pow(10.0, -2.0 + 4.0 * rng.uniform()));

  for (const MetricKind& kind : MetricKind::builtins()) {
    MarginCheck check("f_bounds_" + kind.name(), 1e-12);
    const FBoundsReport r = check_f_bounds(kind, grid);
    check.record(std::min(r.min_lower_margin, r.min_upper_margin));
    out.push_back(check.result());
  }
}

}  // namespace

}  // namespace qig
