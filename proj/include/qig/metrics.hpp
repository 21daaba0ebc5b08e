#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qig/matkern.hpp"

namespace qig {

/// Identifies a monotone Riemannian metric through its symmetric normalized
/// operator-monotone function f:
///
///   Bures   f(t) = (1+t)/2         (smallest monotone metric)
///   RLD     f(t) = 2t/(1+t)        (largest monotone metric)
///   WY      f(t) = ((1+sqrt t)/2)^2
///   BKM     f(t) = (t-1)/log t
///   WYD(a)  the Wigner-Yanase-Dyson family, a in [-3, 3]; a=0 is WY,
///           a=+-1 is BKM, a=+-3 is RLD
///   CustomF user-supplied f; symmetry f(t) = t f(1/t) and normalization
///           f(1) = 1 are checked numerically on a fixed grid at
///           construction. Operator monotonicity of a custom f is NOT
///           verified (undecidable from samples).
class MetricKind {
 public:
  enum class Family { Bures, RLD, WY, BKM, WYD, CustomF };

  static MetricKind bures() { return MetricKind(Family::Bures); }
  static MetricKind rld() { return MetricKind(Family::RLD); }
  static MetricKind wy() { return MetricKind(Family::WY); }
  static MetricKind bkm() { return MetricKind(Family::BKM); }
  static MetricKind wyd(double alpha);
  static MetricKind custom_f(ScalarFunctionSpec spec);

  Family family() const { return family_; }
  double alpha() const { return alpha_; }
  const ScalarFunctionSpec* custom() const {
    return custom_ ? &*custom_ : nullptr;
  }
  std::string name() const;

  /// Parse "bures" | "rld" | "wy" | "bkm" | "wyd" (alpha required for wyd).
  static MetricKind parse(const std::string& name,
                          std::optional<double> alpha = std::nullopt);

  /// Every built-in kind: Bures, RLD, WY, BKM, and WYD at integer alpha
  /// in [-3, 3].
  static std::vector<MetricKind> builtins();

 private:
  explicit MetricKind(Family family, double alpha = 0.0)
      : family_(family), alpha_(alpha) {}

  Family family_;
  double alpha_;
  std::optional<ScalarFunctionSpec> custom_;
};

/// f(t) for the metric's operator-monotone function; t > 0.
double builtin_f(const MetricKind& m, double t);

/// The symmetric normalized operator-monotone function whose metric equals
/// the WYD hessian metric at this alpha (cross-checked by
/// wyd_metric_hessian). Endpoints reproduce WY (a=0), BKM (a=+-1),
/// RLD (a=+-3).
ScalarFunctionSpec wyd_f(double alpha);

/// Morozova-Chentsov coefficient c(x, y) = 1 / (y f(x/y)); x, y > 0.
double mc_coefficient(const MetricKind& m, double x, double y);

/// J_rho(k): in rho's eigenbasis multiply entries by c(d_i, d_j). For Bures
/// this solves rho g + g rho = 2k; for RLD it is (rho^-1 k + k rho^-1)/2.
HermitianMatrix apply_J(const MetricKind& m, const StateMatrix& rho,
                        const HermitianMatrix& k);

/// lambda_rho(h, k) = Tr h J_rho(k); real, symmetric, positive definite.
double metric_eval(const MetricKind& m, const StateMatrix& rho,
                   const HermitianMatrix& h, const HermitianMatrix& k);

/// Unvalidated fast path used by quadrature loops: rho is eigendecomposed
/// directly and must be positive definite.
double metric_eval_raw(const MetricKind& m, const Matrix& rho,
                       const Matrix& h, const Matrix& k);

/// WYD metric evaluated independently from its defining second derivative:
/// Tr( Df_a[rho](h) . Df_{-a}[rho](k) ). Oracle for the closed-form f above.
double wyd_metric_hessian(double alpha, const StateMatrix& rho,
                          const HermitianMatrix& h, const HermitianMatrix& k);

/// Minimum margins of f against the universal bounds
/// 2t/(1+t) <= f(t) <= (1+t)/2 over the grid.
struct FBoundsReport {
  double min_lower_margin;  // min of f(t) - 2t/(1+t)
  double min_upper_margin;  // min of (1+t)/2 - f(t)
};
FBoundsReport check_f_bounds(const MetricKind& m, std::span<const double> grid);

}  // namespace qig
