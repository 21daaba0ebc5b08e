#include "qig/scalar_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qig {
namespace {

bool is_nonneg_integer(double p) {
  return p >= 0.0 && p == std::floor(p);
}

// (t-1)/log(t) continued through t=1. Series branch below |t-1| = 1e-4,
// where the direct quotient is 0/0. Evaluated as expm1(u)/u in u = log t:
// forming t-1 directly loses digits for t far below 1.
double bkm_mean(double t) {
  const double v = t - 1.0;
  if (std::abs(v) < 1e-4) {
    return 1.0 + v * (0.5 + v * (-1.0 / 12.0 + v * (1.0 / 24.0)));
  }
  const double u = std::log(t);
  return std::expm1(u) / u;
}

double bkm_mean_deriv(double t) {
  const double u = std::log(t);
  if (std::abs(u) < 1e-4) {
    // d/dt [E(u)/u] with u = log t, E = expm1; Taylor of the u-derivative.
    return (0.5 + u * (1.0 / 3.0 + u * (1.0 / 8.0))) / t;
  }
  return (u * std::exp(u) - std::expm1(u)) / (u * u) / t;
}

// Symmetric normalized operator-monotone function of the WYD family,
//   f(t) = (1-a^2) (t-1)^2 / (4 (t^{(1-a)/2} - 1)(t^{(1+a)/2} - 1)),
// evaluated through expm1 in u = log t so both the t -> 1 and |a| -> 1
// cancellations stay accurate. Endpoints: a=0 gives the WY function,
// a=+-1 the BKM function, a=+-3 the RLD function 2t/(1+t).
double wyd_monotone_eval(double alpha, double t) {
  if (t == 1.0) return 1.0;
  if (alpha == 1.0 || alpha == -1.0) return bkm_mean(t);
  const double u = std::log(t);
  const double p = 0.5 * (1.0 - alpha);
  const double q = 0.5 * (1.0 + alpha);
  const double num = (1.0 - alpha) * (1.0 + alpha) * std::expm1(u) * std::expm1(u);
  const double den = 4.0 * std::expm1(p * u) * std::expm1(q * u);
  return num / den;
}

double wyd_monotone_deriv(double alpha, double t) {
  if (alpha == 1.0 || alpha == -1.0) return bkm_mean_deriv(t);
  const double u = std::log(t);
  const double p = 0.5 * (1.0 - alpha);
  const double q = 0.5 * (1.0 + alpha);
  const double pq = p * q;
  if (std::abs(u) < 1e-4) {
    // F(u) = f(e^u) = 1 + u/2 + c2 u^2 + c3 u^3 + ..., with c3 fixed by the
    // symmetry F(u) = e^u F(-u). f'(t) = F'(u)/t.
    const double c2 = 1.0 / 6.0 + pq / 12.0;
    const double c3 = (1.0 + pq) / 24.0;
    return (0.5 + u * (2.0 * c2 + u * 3.0 * c3)) / t;
  }
  const double k = 0.25 * (1.0 - alpha) * (1.0 + alpha);
  const double eu = std::expm1(u);
  const double ep = std::expm1(p * u);
  const double eq = std::expm1(q * u);
  const double dnum = 2.0 * eu * std::exp(u) * ep * eq -
                      eu * eu * (p * std::exp(p * u) * eq + q * std::exp(q * u) * ep);
  return k * dnum / (ep * eq * ep * eq) / t;
}

}  // namespace

ScalarFunctionSpec ScalarFunctionSpec::power(double exponent) {
  if (!std::isfinite(exponent))
    throw DomainError("power exponent must be finite");
  return {Kind::Power, exponent};
}

ScalarFunctionSpec ScalarFunctionSpec::log() { return {Kind::Log, 0.0}; }

ScalarFunctionSpec ScalarFunctionSpec::sqrt() { return {Kind::Sqrt, 0.0}; }

ScalarFunctionSpec ScalarFunctionSpec::f_alpha(double alpha) {
  if (!(std::abs(alpha) <= 3.0))
    throw DomainError("f_alpha requires alpha in [-3, 3]");
  return {Kind::FAlpha, alpha};
}

ScalarFunctionSpec ScalarFunctionSpec::g0() { return {Kind::G0, 0.0}; }

ScalarFunctionSpec ScalarFunctionSpec::wyd_monotone(double alpha) {
  if (!(std::abs(alpha) <= 3.0))
    throw DomainError("wyd_monotone requires alpha in [-3, 3]");
  return {Kind::WydMonotone, alpha};
}

ScalarFunctionSpec ScalarFunctionSpec::custom_grid(std::vector<double> x,
                                                   std::vector<double> y) {
  return ScalarFunctionSpec(std::move(x), std::move(y));
}

ScalarFunctionSpec::ScalarFunctionSpec(std::vector<double> x,
                                       std::vector<double> y)
    : kind_(Kind::CustomGrid), gx_(std::move(x)), gy_(std::move(y)) {
  if (gx_.size() < 2 || gx_.size() != gy_.size())
    throw DomainError("custom_grid needs >= 2 points with matching values");
  for (std::size_t i = 1; i < gx_.size(); ++i)
    if (!(gx_[i] > gx_[i - 1]))
      throw DomainError("custom_grid abscissae must be strictly increasing");

  // Fritsch-Carlson slopes: interval secants, harmonic-mean interior slopes,
  // one-sided endpoint formulas clamped to preserve monotone segments.
  const std::size_t n = gx_.size();
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = gx_[i + 1] - gx_[i];
    delta[i] = (gy_[i + 1] - gy_[i]) / h[i];
  }
  gm_.assign(n, 0.0);
  if (n == 2) {
    gm_[0] = gm_[1] = delta[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      gm_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      gm_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto endpoint = [](double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0) m = 0.0;
    else if (d0 * d1 < 0.0 && std::abs(m) > 3.0 * std::abs(d0)) m = 3.0 * d0;
    return m;
  };
  gm_[0] = endpoint(h[0], h[1], delta[0], delta[1]);
  gm_[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

bool ScalarFunctionSpec::in_domain(double x) const {
  switch (kind_) {
    case Kind::Power:
      return is_nonneg_integer(param_) || x > 0.0;
    case Kind::Log:
      return x > 0.0;
    case Kind::Sqrt:
      return x >= 0.0;
    case Kind::FAlpha:
      return x > 0.0;
    case Kind::G0:
      return x >= 0.0;
    case Kind::CustomGrid:
      return x >= gx_.front() && x <= gx_.back();
    case Kind::WydMonotone:
      return x > 0.0;
  }
  return false;
}

double ScalarFunctionSpec::eval(double x) const {
  if (!in_domain(x)) {
    std::ostringstream os;
    os << describe() << ": argument " << x << " outside domain";
    throw DomainError(os.str());
  }
  switch (kind_) {
    case Kind::Power:
      return std::pow(x, param_);
    case Kind::Log:
      return std::log(x);
    case Kind::Sqrt:
      return std::sqrt(x);
    case Kind::FAlpha:
      if (param_ == 1.0) return std::log(x);
      return 2.0 / (1.0 - param_) * std::pow(x, 0.5 * (1.0 - param_));
    case Kind::G0:
      return 2.0 + 2.0 * x - 4.0 * std::sqrt(x);
    case Kind::CustomGrid:
      return grid_eval(x);
    case Kind::WydMonotone:
      return wyd_monotone_eval(param_, x);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double ScalarFunctionSpec::deriv(double x) const {
  if (!in_domain(x)) {
    std::ostringstream os;
    os << describe() << ": derivative argument " << x << " outside domain";
    throw DomainError(os.str());
  }
  switch (kind_) {
    case Kind::Power:
      return param_ * std::pow(x, param_ - 1.0);
    case Kind::Log:
      return 1.0 / x;
    case Kind::Sqrt:
      return 0.5 / std::sqrt(x);
    case Kind::FAlpha:
      // d/dx of both branches is x^{-(1+alpha)/2}.
      return std::pow(x, -0.5 * (1.0 + param_));
    case Kind::G0:
      return 2.0 - 2.0 / std::sqrt(x);
    case Kind::CustomGrid:
      return grid_deriv(x);
    case Kind::WydMonotone:
      return wyd_monotone_deriv(param_, x);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double ScalarFunctionSpec::grid_eval(double x) const {
  auto it = std::upper_bound(gx_.begin(), gx_.end(), x);
  std::size_t i = (it == gx_.begin()) ? 0 : (it - gx_.begin()) - 1;
  i = std::min(i, gx_.size() - 2);
  const double h = gx_[i + 1] - gx_[i];
  const double s = (x - gx_[i]) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  return h00 * gy_[i] + h * h10 * gm_[i] + h01 * gy_[i + 1] + h * h11 * gm_[i + 1];
}

double ScalarFunctionSpec::grid_deriv(double x) const {
  auto it = std::upper_bound(gx_.begin(), gx_.end(), x);
  std::size_t i = (it == gx_.begin()) ? 0 : (it - gx_.begin()) - 1;
  i = std::min(i, gx_.size() - 2);
  const double h = gx_[i + 1] - gx_[i];
  const double s = (x - gx_[i]) / h;
  const double d00 = 6.0 * s * (s - 1.0) / h;
  const double d10 = (1.0 - s) * (1.0 - 3.0 * s);
  const double d01 = -d00;
  const double d11 = s * (3.0 * s - 2.0);
  return d00 * gy_[i] + d10 * gm_[i] + d01 * gy_[i + 1] + d11 * gm_[i + 1];
}

std::string ScalarFunctionSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Power: os << "power(" << param_ << ")"; break;
    case Kind::Log: os << "log"; break;
    case Kind::Sqrt: os << "sqrt"; break;
    case Kind::FAlpha: os << "f_alpha(" << param_ << ")"; break;
    case Kind::G0: os << "g0"; break;
    case Kind::CustomGrid:
      os << "custom_grid[" << gx_.front() << ", " << gx_.back() << "]";
      break;
    case Kind::WydMonotone: os << "wyd_monotone(" << param_ << ")"; break;
  }
  return os.str();
}

}  // namespace qig
