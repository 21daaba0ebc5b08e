#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "qig/divergences.hpp"
#include "qig/matkern.hpp"
#include "qig/metrics.hpp"

namespace qig {

/// An amplitude (purification) W of a state: rho = W W^* (left) or
/// sigma = W^* W (right); both are positive semidefinite by construction.
struct Amplitude {
  Matrix w;

  Matrix left_state() const { return w * w.adjoint(); }
  Matrix right_state() const { return w.adjoint() * w; }
};

/// Tangent projection of an amplitude velocity:
/// d/dt (W W^*) = Wdot W^* + W Wdot^*.
HermitianMatrix amplitude_velocity_projection(const Amplitude& w,
                                              const Matrix& wdot);

/// Horizontality defect |W^* Wdot - Wdot^* W|; horizontal iff the defect is
/// below 1e-9 |W| |Wdot|. Horizontal velocities are exactly those of the
/// form g W with Hermitian g.
struct HorizontalityCheck {
  bool horizontal;
  double defect;
};
HorizontalityCheck is_horizontal(const Amplitude& w, const Matrix& wdot);

/// The unique amplitude W1 of rho1 parallel to W0 = rho0^{1/2}:
///   W1 = rho0^{-1/2} (rho0^{1/2} rho1 rho0^{1/2})^{1/2},
/// satisfying W1 W1^* = rho1 and W1^* W0 >= 0.
Amplitude parallel_amplitude(const StateMatrix& rho0, const StateMatrix& rho1);

/// Closed-form distances. Cone variants work on any positive-definite pair;
/// density variants require unit traces and return values in [0, pi).
double bures_distance_cone(const StateMatrix& rho0, const StateMatrix& rho1);
double bures_distance_density(const StateMatrix& rho0, const StateMatrix& rho1);
double wy_distance_cone(const StateMatrix& rho0, const StateMatrix& rho1);
double wy_distance_density(const StateMatrix& rho0, const StateMatrix& rho1);

/// Upper bound on every monotone geodesic distance:
/// cone value 2 sqrt(Tr rho0 + Tr rho1 - 2 Tr rho0 # rho1), density value
/// 2 arccos Tr rho0 # rho1. Symmetric in its arguments.
double rld_upper_bound_cone(const StateMatrix& rho0, const StateMatrix& rho1);
double rld_upper_bound_density(const StateMatrix& rho0, const StateMatrix& rho1);

/// Point evaluation of the closed-form curves (see CurveSpec for sampling).
StateMatrix bures_geodesic(const StateMatrix& rho0, const StateMatrix& rho1,
                           double t, bool normalized);
StateMatrix wy_geodesic(const StateMatrix& rho0, const StateMatrix& rho1,
                        double t, bool normalized);
StateMatrix rld_dual_curve(const StateMatrix& rho0, const StateMatrix& rho1,
                           double t);

enum class CurveKind {
  BuresLine,
  BuresArc,
  WYLine,
  WYArc,
  RLDDual,
  LinearInterpolation,
};

CurveKind parse_curve_kind(const std::string& name);
std::string curve_kind_name(CurveKind kind);

/// A parametrized curve t in [0,1] -> M with fixed endpoints. All kinds are
/// quadratic matrix polynomials N(t) in amplitude space; the Arc kinds
/// divide by the trace and require unit-trace endpoints. Values and first
/// and second derivatives are analytic.
class CurveSpec {
 public:
  CurveSpec(CurveKind kind, StateMatrix rho0, StateMatrix rho1);

  CurveKind kind() const { return kind_; }
  bool normalized() const { return normalized_; }
  const StateMatrix& rho0() const { return rho0_; }
  const StateMatrix& rho1() const { return rho1_; }
  int dim() const { return rho0_.dim(); }

  Matrix value(double t) const;
  Matrix velocity(double t) const;
  Matrix acceleration(double t) const;

  /// Validated state at t.
  StateMatrix at(double t) const;

 private:
  CurveKind kind_;
  StateMatrix rho0_, rho1_;
  Matrix c0_, c1_, c2_;  // N(t) = c0 + t c1 + t^2 c2
  bool normalized_;
};

/// Residual of the RLD geodesic equation
///   rhodotdot + (L+R)^{-1}(rhodot^2) - rhodot rho^{-1} rhodot = a(t) rhodot
/// at parameter t: the left-hand side, the least-squares fit of the scalar
/// a, and the norm of the component orthogonal to rhodot. Throws
/// DegenerateTangentError when |rhodot| < 1e-12.
struct GeodesicResidual {
  HermitianMatrix residual;
  double fitted_a;
  double orthogonal_defect;
};
GeodesicResidual rld_geodesic_residual(const CurveSpec& curve, double t);

/// Curve length integral_0^1 sqrt(lambda_rho(rhodot, rhodot)) dt by
/// composite Simpson quadrature with `panels` panels (panels >= 8).
double curve_length(const MetricKind& m, const CurveSpec& curve, int panels);

/// Quadrature over a user-sampled curve; the sampler fills the state and its
/// velocity at parameter t. Used for perturbation studies.
using CurveSampler = std::function<void(double t, Matrix& rho, Matrix& rhodot)>;
double curve_length_sampled(const MetricKind& m, const CurveSampler& sampler,
                            int panels);

/// Curve CSV export: header "t,re_0_0,...,im_0_0,..." and one row per sample
/// at t = i/(samples-1).
void write_curve_csv(std::ostream& out, const CurveSpec& curve, int samples);

}  // namespace qig
