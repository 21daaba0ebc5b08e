#include "qig/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qig {
namespace {

// Fixed grid for the construction-time symmetry/normalization checks of
// custom metric functions: 33 log-spaced points spanning [0.1, 10].
std::vector<double> check_grid() {
  std::vector<double> g;
  const int count = 33;
  for (int i = 0; i < count; ++i)
    g.push_back(std::pow(10.0, -1.0 + 2.0 * i / (count - 1)));
  return g;
}

double bures_f(double t) { return 0.5 * (1.0 + t); }
double rld_f(double t) { return 2.0 * t / (1.0 + t); }
double wy_f(double t) {
  const double s = 0.5 * (1.0 + std::sqrt(t));
  return s * s;
}

}  // namespace

MetricKind MetricKind::wyd(double alpha) {
  if (!(std::abs(alpha) <= 3.0))
    throw DomainError("WYD metric requires alpha in [-3, 3]");
  return MetricKind(Family::WYD, alpha);
}

MetricKind MetricKind::custom_f(ScalarFunctionSpec spec) {
  const double at_one = spec.eval(1.0);
  if (std::abs(at_one - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "custom metric function must satisfy f(1) = 1, got " << at_one;
    throw DomainError(os.str());
  }
  for (double t : check_grid()) {
    const double lhs = spec.eval(t);
    const double rhs = t * spec.eval(1.0 / t);
    if (std::abs(lhs - rhs) > 1e-10) {
      std::ostringstream os;
      os << "custom metric function is not symmetric: f(" << t << ") = " << lhs
         << " but t f(1/t) = " << rhs;
      throw DomainError(os.str());
    }
  }
  MetricKind m(Family::CustomF);
  m.custom_ = std::move(spec);
  return m;
}

std::string MetricKind::name() const {
  switch (family_) {
    case Family::Bures: return "bures";
    case Family::RLD: return "rld";
    case Family::WY: return "wy";
    case Family::BKM: return "bkm";
    case Family::WYD: {
      std::ostringstream os;
      os << "wyd(" << alpha_ << ")";
      return os.str();
    }
    case Family::CustomF: return "custom";
  }
  return "?";
}

MetricKind MetricKind::parse(const std::string& name,
                             std::optional<double> alpha) {
  if (name == "bures") return bures();
  if (name == "rld") return rld();
  if (name == "wy") return wy();
  if (name == "bkm") return bkm();
  if (name == "wyd") {
    if (!alpha) throw DomainError("metric kind wyd requires alpha");
    return wyd(*alpha);
  }
  throw DomainError("unknown metric kind: " + name);
}

std::vector<MetricKind> MetricKind::builtins() {
  std::vector<MetricKind> out{bures(), rld(), wy(), bkm()};
  for (int a = -3; a <= 3; ++a) out.push_back(wyd(static_cast<double>(a)));
  return out;
}

double builtin_f(const MetricKind& m, double t) {
  if (!(t > 0.0)) throw DomainError("metric function requires t > 0");
  switch (m.family()) {
    case MetricKind::Family::Bures: return bures_f(t);
    case MetricKind::Family::RLD: return rld_f(t);
    case MetricKind::Family::WY: return wy_f(t);
    case MetricKind::Family::BKM:
      return ScalarFunctionSpec::wyd_monotone(1.0).eval(t);
    case MetricKind::Family::WYD:
      return ScalarFunctionSpec::wyd_monotone(m.alpha()).eval(t);
    case MetricKind::Family::CustomF:
      return m.custom()->eval(t);
  }
  return 0.0;
}

ScalarFunctionSpec wyd_f(double alpha) {
  return ScalarFunctionSpec::wyd_monotone(alpha);
}

double mc_coefficient(const MetricKind& m, double x, double y) {
  if (!(x > 0.0) || !(y > 0.0))
    throw DomainError("Morozova-Chentsov coefficient requires x, y > 0");
  return 1.0 / (y * builtin_f(m, x / y));
}

HermitianMatrix apply_J(const MetricKind& m, const StateMatrix& rho,
                        const HermitianMatrix& k) {
  if (rho.dim() != k.dim())
    throw DimensionMismatchError("apply_J: state and tangent dimensions differ");
  const SpectralDecomposition sd = eig_hermitian(rho.hermitian());
  const long n = sd.eigenvalues.size();
  Matrix kt = sd.eigenvectors.adjoint() * k.mat() * sd.eigenvectors;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      kt(i, j) *= mc_coefficient(m, sd.eigenvalues[i], sd.eigenvalues[j]);
  return hermitian_part(sd.eigenvectors * kt * sd.eigenvectors.adjoint());
}

double metric_eval_raw(const MetricKind& m, const Matrix& rho,
                       const Matrix& h, const Matrix& k) {
  if (rho.rows() != h.rows() || rho.rows() != k.rows())
    throw DimensionMismatchError("metric_eval: dimensions differ");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho);
  if (solver.info() != Eigen::Success)
    throw Error("eigendecomposition failed to converge");
  const RealVector& d = solver.eigenvalues();
  const Matrix& u = solver.eigenvectors();
  const long n = d.size();
  const Matrix ht = u.adjoint() * h * u;
  const Matrix kt = (&h == &k) ? ht : Matrix(u.adjoint() * k * u);
  double acc = 0.0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      acc += (std::conj(ht(i, j)) * kt(i, j)).real() *
             mc_coefficient(m, d[i], d[j]);
  return acc;
}

double metric_eval(const MetricKind& m, const StateMatrix& rho,
                   const HermitianMatrix& h, const HermitianMatrix& k) {
  return metric_eval_raw(m, rho.mat(), h.mat(), k.mat());
}

double wyd_metric_hessian(double alpha, const StateMatrix& rho,
                          const HermitianMatrix& h, const HermitianMatrix& k) {
  if (!(std::abs(alpha) <= 3.0))
    throw DomainError("wyd_metric_hessian requires alpha in [-3, 3]");
  const HermitianMatrix dh =
      frechet_derivative(ScalarFunctionSpec::f_alpha(alpha), rho, h);
  const HermitianMatrix dk =
      frechet_derivative(ScalarFunctionSpec::f_alpha(-alpha), rho, k);
  return (dh.mat() * dk.mat()).trace().real();
}

FBoundsReport check_f_bounds(const MetricKind& m,
                             std::span<const double> grid) {
  if (grid.empty()) throw DomainError("check_f_bounds: empty grid");
  FBoundsReport report{std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity()};
  for (double t : grid) {
    const double f = builtin_f(m, t);
    report.min_lower_margin = std::min(report.min_lower_margin, f - rld_f(t));
    report.min_upper_margin = std::min(report.min_upper_margin, bures_f(t) - f);
  }
  return report;
}

}  // namespace qig
