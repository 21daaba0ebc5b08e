#include "qig/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace qig {
namespace {

void require_same_dim(const StateMatrix& a, const StateMatrix& b,
                      const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimensions " << a.dim() << " and " << b.dim()
       << " do not match";
    throw DimensionMismatchError(os.str());
  }
}

Matrix sqrt_of(const StateMatrix& rho) {
  return mat_fn(rho, ScalarFunctionSpec::sqrt()).mat();
}

Matrix inv_sqrt_of(const StateMatrix& rho) {
  return mat_fn(rho, ScalarFunctionSpec::power(-0.5)).mat();
}

// Tr (rho0^{1/2} rho1 rho0^{1/2})^{1/2}; the fidelity-type overlap behind
// both Bures distance forms.
double bures_overlap(const StateMatrix& rho0, const StateMatrix& rho1) {
  const Matrix root = sqrt_of(rho0);
  const HermitianMatrix inner = hermitian_part(root * rho1.mat() * root);
  const SpectralDecomposition sd = eig_hermitian(inner);
  double acc = 0.0;
  for (long i = 0; i < sd.eigenvalues.size(); ++i)
    acc += std::sqrt(std::max(sd.eigenvalues[i], 0.0));
  return acc;
}

double wy_overlap(const StateMatrix& rho0, const StateMatrix& rho1) {
  return (sqrt_of(rho0) * sqrt_of(rho1)).trace().real();
}

double cone_distance_from_overlap(double tr0, double tr1, double overlap) {
  return 2.0 * std::sqrt(std::max(tr0 + tr1 - 2.0 * overlap, 0.0));
}

double density_distance_from_overlap(double overlap) {
  return 2.0 * std::acos(std::clamp(overlap, -1.0, 1.0));
}

void require_unit_traces(const StateMatrix& rho0, const StateMatrix& rho1,
                         const char* what) {
  if (std::abs(rho0.trace() - 1.0) > 1e-10 ||
      std::abs(rho1.trace() - 1.0) > 1e-10)
    throw TraceNotOneError(std::string(what) + ": requires unit-trace states");
}

}  // namespace

HermitianMatrix amplitude_velocity_projection(const Amplitude& w,
                                              const Matrix& wdot) {
  if (w.w.rows() != wdot.rows() || w.w.cols() != wdot.cols())
    throw DimensionMismatchError(
        "amplitude_velocity_projection: dimensions do not match");
  return hermitian_part(wdot * w.w.adjoint() + w.w * wdot.adjoint());
}

HorizontalityCheck is_horizontal(const Amplitude& w, const Matrix& wdot) {
  if (w.w.rows() != wdot.rows() || w.w.cols() != wdot.cols())
    throw DimensionMismatchError("is_horizontal: dimensions do not match");
  const double defect =
      (w.w.adjoint() * wdot - wdot.adjoint() * w.w).norm();
  return {defect <= 1e-9 * w.w.norm() * wdot.norm(), defect};
}

Amplitude parallel_amplitude(const StateMatrix& rho0, const StateMatrix& rho1) {
  require_same_dim(rho0, rho1, "parallel_amplitude");
  const Matrix root = sqrt_of(rho0);
  const Matrix inv_root = inv_sqrt_of(rho0);
  const HermitianMatrix inner = hermitian_part(root * rho1.mat() * root);
  const Matrix inner_root = mat_fn(inner, ScalarFunctionSpec::sqrt()).mat();
  return Amplitude{inv_root * inner_root};
}

double bures_distance_cone(const StateMatrix& rho0, const StateMatrix& rho1) {
  require_same_dim(rho0, rho1, "bures_distance_cone");
  return cone_distance_from_overlap(rho0.trace(), rho1.trace(),
                                    bures_overlap(rho0, rho1));
}

double bures_distance_density(const StateMatrix& rho0,
                              const StateMatrix& rho1) {
  require_same_dim(rho0, rho1, "bures_distance_density");
  require_unit_traces(rho0, rho1, "bures_distance_density");
  return density_distance_from_overlap(bures_overlap(rho0, rho1));
}

double wy_distance_cone(const StateMatrix& rho0, const StateMatrix& rho1) {
  require_same_dim(rho0, rho1, "wy_distance_cone");
  return cone_distance_from_overlap(rho0.trace(), rho1.trace(),
                                    wy_overlap(rho0, rho1));
}

double wy_distance_density(const StateMatrix& rho0, const StateMatrix& rho1) {
  require_same_dim(rho0, rho1, "wy_distance_density");
  require_unit_traces(rho0, rho1, "wy_distance_density");
  return density_distance_from_overlap(wy_overlap(rho0, rho1));
}

double rld_upper_bound_cone(const StateMatrix& rho0, const StateMatrix& rho1) {
  require_same_dim(rho0, rho1, "rld_upper_bound_cone");
  const double mean_trace = geometric_mean(rho0, rho1).trace();
  return cone_distance_from_overlap(rho0.trace(), rho1.trace(), mean_trace);
}

double rld_upper_bound_density(const StateMatrix& rho0,
                               const StateMatrix& rho1) {
  require_same_dim(rho0, rho1, "rld_upper_bound_density");
  require_unit_traces(rho0, rho1, "rld_upper_bound_density");
  return density_distance_from_overlap(geometric_mean(rho0, rho1).trace());
}

StateMatrix bures_geodesic(const StateMatrix& rho0, const StateMatrix& rho1,
                           double t, bool normalized) {
  const CurveSpec curve(normalized ? CurveKind::BuresArc : CurveKind::BuresLine,
                        rho0, rho1);
  return curve.at(t);
}

StateMatrix wy_geodesic(const StateMatrix& rho0, const StateMatrix& rho1,
                        double t, bool normalized) {
  const CurveSpec curve(normalized ? CurveKind::WYArc : CurveKind::WYLine,
                        rho0, rho1);
  return curve.at(t);
}

StateMatrix rld_dual_curve(const StateMatrix& rho0, const StateMatrix& rho1,
                           double t) {
  const CurveSpec curve(CurveKind::RLDDual, rho0, rho1);
  return curve.at(t);
}

CurveKind parse_curve_kind(const std::string& name) {
  if (name == "buresline") return CurveKind::BuresLine;
  if (name == "buresarc") return CurveKind::BuresArc;
  if (name == "wyline") return CurveKind::WYLine;
  if (name == "wyarc") return CurveKind::WYArc;
  if (name == "rlddual") return CurveKind::RLDDual;
  if (name == "linear") return CurveKind::LinearInterpolation;
  throw DomainError("unknown curve kind: " + name);
}

std::string curve_kind_name(CurveKind kind) {
  switch (kind) {
    case CurveKind::BuresLine: return "buresline";
    case CurveKind::BuresArc: return "buresarc";
    case CurveKind::WYLine: return "wyline";
    case CurveKind::WYArc: return "wyarc";
    case CurveKind::RLDDual: return "rlddual";
    case CurveKind::LinearInterpolation: return "linear";
  }
  return "?";
}

CurveSpec::CurveSpec(CurveKind kind, StateMatrix rho0, StateMatrix rho1)
    : kind_(kind), rho0_(std::move(rho0)), rho1_(std::move(rho1)) {
  require_same_dim(rho0_, rho1_, "CurveSpec");
  normalized_ = (kind == CurveKind::BuresArc || kind == CurveKind::WYArc);
  if (normalized_) require_unit_traces(rho0_, rho1_, "CurveSpec arc");

  const int n = rho0_.dim();
  switch (kind_) {
    case CurveKind::BuresLine:
    case CurveKind::BuresArc: {
      const Matrix w0 = sqrt_of(rho0_);
      const Matrix w1 = parallel_amplitude(rho0_, rho1_).w;
      const Matrix d = w1 - w0;
      c0_ = rho0_.mat();
      c1_ = d * w0.adjoint() + w0 * d.adjoint();
      c2_ = d * d.adjoint();
      break;
    }
    case CurveKind::WYLine:
    case CurveKind::WYArc: {
      const Matrix s0 = sqrt_of(rho0_);
      const Matrix delta = sqrt_of(rho1_) - s0;
      c0_ = rho0_.mat();
      c1_ = delta * s0 + s0 * delta;
      c2_ = delta * delta;
      break;
    }
    case CurveKind::RLDDual: {
      const Matrix s0 = sqrt_of(rho0_);
      const Matrix inv_s0 = inv_sqrt_of(rho0_);
      const HermitianMatrix inner =
          hermitian_part(inv_s0 * rho1_.mat() * inv_s0);
      const Matrix q = mat_fn(inner, ScalarFunctionSpec::sqrt()).mat();
      const Matrix b = q - Matrix::Identity(n, n);
      c0_ = rho0_.mat();
      c1_ = 2.0 * s0 * b * s0;
      c2_ = s0 * b * b * s0;
      break;
    }
    case CurveKind::LinearInterpolation: {
      c0_ = rho0_.mat();
      c1_ = rho1_.mat() - rho0_.mat();
      c2_ = Matrix::Zero(n, n);
      break;
    }
  }
}

Matrix CurveSpec::value(double t) const {
  Matrix n = c0_ + t * c1_ + (t * t) * c2_;
  if (!normalized_) return n;
  return n / n.trace().real();
}

Matrix CurveSpec::velocity(double t) const {
  Matrix ndot = c1_ + (2.0 * t) * c2_;
  if (!normalized_) return ndot;
  const Matrix n = c0_ + t * c1_ + (t * t) * c2_;
  const double tau = n.trace().real();
  const double taudot = ndot.trace().real();
  return ndot / tau - n * (taudot / (tau * tau));
}

Matrix CurveSpec::acceleration(double t) const {
  const Matrix nddot = 2.0 * c2_;
  if (!normalized_) return nddot;
  const Matrix n = c0_ + t * c1_ + (t * t) * c2_;
  const Matrix ndot = c1_ + (2.0 * t) * c2_;
  const double tau = n.trace().real();
  const double taudot = ndot.trace().real();
  const double tauddot = nddot.trace().real();
  return nddot / tau - ndot * (2.0 * taudot / (tau * tau)) +
         n * (2.0 * taudot * taudot / (tau * tau * tau) -
              tauddot / (tau * tau));
}

StateMatrix CurveSpec::at(double t) const {
  return validate_state(hermitian_part(value(t)), false);
}

GeodesicResidual rld_geodesic_residual(const CurveSpec& curve, double t) {
  const Matrix rho = curve.value(t);
  const Matrix rhodot = curve.velocity(t);
  const Matrix rhoddot = curve.acceleration(t);
  if (rhodot.norm() < 1e-12)
    throw DegenerateTangentError(
        "rld_geodesic_residual: curve tangent vanishes at t");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho);
  if (solver.info() != Eigen::Success)
    throw Error("eigendecomposition failed to converge");
  const RealVector& d = solver.eigenvalues();
  if (!(d[0] > 0.0))
    throw NotPositiveDefiniteError(
        "rld_geodesic_residual: curve leaves the positive cone");
  const Matrix& u = solver.eigenvectors();

  // Sylvester term: solve rho X + X rho = rhodot^2 in rho's eigenbasis.
  const Matrix sq = rhodot * rhodot;
  Matrix sq_t = u.adjoint() * sq * u;
  for (long i = 0; i < d.size(); ++i)
    for (long j = 0; j < d.size(); ++j)
      sq_t(i, j) /= d[i] + d[j];
  const Matrix sylvester = u * sq_t * u.adjoint();

  const Matrix inv_rho =
      u * d.cwiseInverse().cast<Complex>().asDiagonal() * u.adjoint();
  const Matrix r = rhoddot + sylvester - rhodot * inv_rho * rhodot;

  const double a = hs_inner(rhodot, r).real() / hs_inner(rhodot, rhodot).real();
  const double defect = (r - a * rhodot).norm();
  return {hermitian_part(r), a, defect};
}

double curve_length(const MetricKind& m, const CurveSpec& curve, int panels) {
  return curve_length_sampled(
      m,
      [&curve](double t, Matrix& rho, Matrix& rhodot) {
        rho = curve.value(t);
        rhodot = curve.velocity(t);
      },
      panels);
}

double curve_length_sampled(const MetricKind& m, const CurveSampler& sampler,
                            int panels) {
  if (panels < 8) throw DomainError("curve_length requires panels >= 8");
  // Composite Simpson: nodes at i/(2 panels), weights 1,4,2,...,4,1 x h/6.
  const long nodes = 2L * panels + 1;
  Matrix rho, rhodot;
  double acc = 0.0;
  for (long i = 0; i < nodes; ++i) {
    const double t = static_cast<double>(i) / (nodes - 1);
    sampler(t, rho, rhodot);
    const double speed_sq = metric_eval_raw(m, rho, rhodot, rhodot);
    const double speed = std::sqrt(std::max(speed_sq, 0.0));
    double weight;
    if (i == 0 || i == nodes - 1) weight = 1.0;
    else if (i % 2 == 1) weight = 4.0;
    else weight = 2.0;
    acc += weight * speed;
  }
  const double h = 1.0 / panels;
  return acc * h / 6.0;
}

void write_curve_csv(std::ostream& out, const CurveSpec& curve, int samples) {
  if (samples < 2) throw DomainError("curve export needs >= 2 samples");
  const int n = curve.dim();
  out << "t";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out << ",re_" << i << "_" << j;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out << ",im_" << i << "_" << j;
  out << '\n';
  out.precision(17);
  for (int s = 0; s < samples; ++s) {
    const double t = static_cast<double>(s) / (samples - 1);
    const Matrix v = curve.value(t);
    out << t;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out << ',' << v(i, j).real();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out << ',' << v(i, j).imag();
    out << '\n';
  }
}

}  // namespace qig
