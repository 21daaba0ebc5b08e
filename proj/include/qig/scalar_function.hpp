#pragma once

#include <string>
#include <vector>

#include "qig/errors.hpp"

namespace qig {

/// A scalar function applied to matrix spectra (functional calculus) and to
/// metric/divergence definitions. Built-in families:
///
///   power(p)        x^p
///   log             log(x)
///   sqrt            sqrt(x)
///   f_alpha(a)      2/(1-a) * x^{(1-a)/2} for a != 1, log(x) for a = 1
///   g0              2 + 2x - 4 sqrt(x)
///   custom_grid     monotone cubic interpolation of user samples
///   wyd_monotone(a) the symmetric normalized operator-monotone function of
///                   the WYD family (see metrics::wyd_f)
///
/// custom_grid evaluates by Fritsch-Carlson monotone cubic interpolation
/// inside the grid and errors outside it.
class ScalarFunctionSpec {
 public:
  enum class Kind { Power, Log, Sqrt, FAlpha, G0, CustomGrid, WydMonotone };

  static ScalarFunctionSpec power(double exponent);
  static ScalarFunctionSpec log();
  static ScalarFunctionSpec sqrt();
  static ScalarFunctionSpec f_alpha(double alpha);  // alpha in [-3, 3]
  static ScalarFunctionSpec g0();
  static ScalarFunctionSpec custom_grid(std::vector<double> x,
                                        std::vector<double> y);
  static ScalarFunctionSpec wyd_monotone(double alpha);  // alpha in [-3, 3]

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }

  bool in_domain(double x) const;

  /// Evaluate f(x). Throws DomainError outside the domain.
  double eval(double x) const;

  /// Evaluate f'(x). Used by the divided-difference derivative branch for
  /// nearly degenerate eigenvalue pairs.
  double deriv(double x) const;

  std::string describe() const;

 private:
  ScalarFunctionSpec(Kind kind, double param) : kind_(kind), param_(param) {}
  ScalarFunctionSpec(std::vector<double> x, std::vector<double> y);

  double grid_eval(double x) const;
  double grid_deriv(double x) const;

  Kind kind_;
  double param_ = 0.0;
  std::vector<double> gx_, gy_, gm_;  // custom grid: abscissae, values, slopes
};

}  // namespace qig
