#include <doctest.h>

#include <cmath>

#include "qig/metrics.hpp"
#include "qig/verify.hpp"

using namespace qig;

namespace {

RealVector vec2(double a, double b) {
  RealVector v(2);
  v << a, b;
  return v;
}

Matrix random_unitary(int n, std::uint64_t seed) {
  return random_cptp(n, 1, seed).kraus.front();
}

}  // namespace

TEST_CASE("builtin_f values") {
  for (const MetricKind& m : MetricKind::builtins())
    CHECK(builtin_f(m, 1.0) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(builtin_f(MetricKind::bures(), 3.0) == doctest::Approx(2.0));
  CHECK(builtin_f(MetricKind::rld(), 3.0) == doctest::Approx(1.5));
  CHECK(builtin_f(MetricKind::wy(), 4.0) == doctest::Approx(2.25));
  CHECK(builtin_f(MetricKind::bkm(), std::exp(1.0)) ==
        doctest::Approx(std::exp(1.0) - 1.0));
  CHECK_THROWS_AS(builtin_f(MetricKind::bures(), 0.0), DomainError);
  CHECK_THROWS_AS(builtin_f(MetricKind::bures(), -1.0), DomainError);
}

TEST_CASE("wyd_f endpoints reproduce the known families") {
  CHECK(wyd_f(0.0).eval(4.0) == doctest::Approx(2.25).epsilon(1e-13));
  CHECK(wyd_f(3.0).eval(3.0) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(wyd_f(1.0).eval(std::exp(1.0)) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  CHECK_THROWS_AS(wyd_f(3.2), DomainError);

  for (int i = 1; i <= 40; ++i) {
    const double t = 0.05 * i + 0.025;
    CHECK(wyd_f(0.0).eval(t) ==
          doctest::Approx(builtin_f(MetricKind::wy(), t)).epsilon(1e-12));
    CHECK(wyd_f(-3.0).eval(t) ==
          doctest::Approx(builtin_f(MetricKind::rld(), t)).epsilon(1e-12));
    CHECK(wyd_f(3.0).eval(t) ==
          doctest::Approx(builtin_f(MetricKind::rld(), t)).epsilon(1e-12));
    CHECK(wyd_f(-1.0).eval(t) ==
          doctest::Approx(builtin_f(MetricKind::bkm(), t)).epsilon(1e-12));
    CHECK(wyd_f(1.0).eval(t) ==
          doctest::Approx(builtin_f(MetricKind::bkm(), t)).epsilon(1e-12));
  }
}

TEST_CASE("wyd_f stays symmetric and normalized over extreme arguments") {
  for (double alpha = -3.0; alpha <= 3.0; alpha += 0.5) {
    const ScalarFunctionSpec f = wyd_f(alpha);
    CHECK(f.eval(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    for (double e = -12.0; e <= 12.0; e += 1.0) {
      const double t = std::pow(10.0, e);
      const double lhs = f.eval(t);
      const double rhs = t * f.eval(1.0 / t);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("wyd hessian agrees with the closed form on spread spectra") {
  RealVector d(3);
  d << 1e-4, 1.0, 100.0;
  for (int trial = 0; trial < 6; ++trial) {
    const Matrix u = random_cptp(3, 1, derive_seed(701, trial)).kraus.front();
    const StateMatrix rho = validate_state(
        hermitian_part(u * HermitianMatrix::diagonal(d).mat() * u.adjoint()),
        false);
    const HermitianMatrix h = random_tangent(3, false, derive_seed(709, trial));
    for (double alpha : {-3.0, -1.5, 0.0, 1.0, 2.5, 3.0}) {
      const double hess = wyd_metric_hessian(alpha, rho, h, h);
      const double closed = metric_eval(MetricKind::wyd(alpha), rho, h, h);
      CHECK(hess == doctest::Approx(closed).epsilon(1e-8));
    }
  }
}

TEST_CASE("wyd_f is smooth through t = 1 and nearly-one alpha") {
  for (double alpha : {-2.7, -1.0 + 1e-9, 0.3, 1.0 - 1e-9, 2.2}) {
    const ScalarFunctionSpec f = wyd_f(alpha);
    CHECK(f.eval(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    for (double eps : {1e-10, 1e-7, 1e-5})
      CHECK(f.eval(1.0 + eps) == doctest::Approx(1.0 + 0.5 * eps).epsilon(1e-9));
    // Both derivative branches around the series switch at |log t| = 1e-4
    // agree with a central difference of f itself.
    for (double t : {1.0 - 2e-4, 1.0 - 0.5e-4, 1.0 + 0.5e-4, 1.0 + 2e-4}) {
      const double delta = 1e-6;
      const double fd = (f.eval(t + delta) - f.eval(t - delta)) / (2.0 * delta);
      CHECK(f.deriv(t) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("metric kinds parse and name") {
  CHECK(MetricKind::parse("bures").family() == MetricKind::Family::Bures);
  CHECK(MetricKind::parse("wyd", 2.0).alpha() == 2.0);
  CHECK_THROWS_AS(MetricKind::parse("wyd"), DomainError);
  CHECK_THROWS_AS(MetricKind::parse("frobenius"), DomainError);
  CHECK(MetricKind::builtins().size() == 11);
}

TEST_CASE("custom metric kinds are checked at construction") {
  CHECK_NOTHROW(MetricKind::custom_f(wyd_f(1.3)));
  // f(t) = t is normalized but not symmetric.
  CHECK_THROWS_AS(MetricKind::custom_f(ScalarFunctionSpec::power(1.0)),
                  DomainError);
  // g0 vanishes at 1, violating normalization.
  CHECK_THROWS_AS(MetricKind::custom_f(ScalarFunctionSpec::g0()), DomainError);
}

TEST_CASE("mc_coefficient values and symmetry") {
  for (const MetricKind& m : MetricKind::builtins())
    CHECK(mc_coefficient(m, 0.5, 0.5) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(mc_coefficient(MetricKind::bures(), 1.0, 3.0) == doctest::Approx(0.5));
  CHECK(mc_coefficient(MetricKind::rld(), 1.0, 3.0) ==
        doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(mc_coefficient(MetricKind::wy(), -0.1, 1.0), DomainError);

  RandomStream rng(77);
  for (int i = 0; i < 25; ++i) {
    const double x = 0.01 + rng.uniform() * 5.0;
    const double y = 0.01 + rng.uniform() * 5.0;
    for (const MetricKind& m : MetricKind::builtins())
      CHECK(mc_coefficient(m, x, y) ==
            doctest::Approx(mc_coefficient(m, y, x)).epsilon(1e-12));
  }
}

TEST_CASE("apply_J scalar case and defining equations") {
  const StateMatrix half =
      validate_state(HermitianMatrix::diagonal(vec2(0.5, 0.5)), true);
  const HermitianMatrix k = random_tangent(2, false, 5);
  CHECK((apply_J(MetricKind::bures(), half, k).mat() - 2.0 * k.mat()).norm() <=
        1e-12);
  CHECK((apply_J(MetricKind::rld(), half, k).mat() - 2.0 * k.mat()).norm() <=
        1e-12);

  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    const StateMatrix rho = random_state(n, true, derive_seed(83, trial));
    const HermitianMatrix h = random_tangent(n, false, derive_seed(89, trial));

    // Bures J solves rho g + g rho = 2 h.
    const Matrix g = apply_J(MetricKind::bures(), rho, h).mat();
    CHECK((rho.mat() * g + g * rho.mat() - 2.0 * h.mat()).norm() <=
          1e-10 * h.norm());

    // RLD J is (rho^-1 h + h rho^-1)/2.
    const Matrix inv = rho.mat().inverse();
    const Matrix direct = 0.5 * (inv * h.mat() + h.mat() * inv);
    CHECK((apply_J(MetricKind::rld(), rho, h).mat() - direct).norm() <=
          1e-9 * direct.norm());
  }
}

TEST_CASE("metric_eval fixed values") {
  const StateMatrix half =
      validate_state(HermitianMatrix::diagonal(vec2(0.5, 0.5)), true);
  const HermitianMatrix dz = HermitianMatrix::diagonal(vec2(1, -1));
  for (const MetricKind& m : MetricKind::builtins())
    CHECK(metric_eval(m, half, dz, dz) == doctest::Approx(4.0).epsilon(1e-12));

  const HermitianMatrix zero = HermitianMatrix::zero(2);
  for (const MetricKind& m : MetricKind::builtins())
    CHECK(std::abs(metric_eval(m, half, zero, zero)) <= 1e-15);
}

TEST_CASE("metric_eval RLD closed form oracle") {
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    const StateMatrix rho = random_state(n, true, derive_seed(97, trial));
    const HermitianMatrix h = random_tangent(n, false, derive_seed(101, trial));
    const HermitianMatrix k = random_tangent(n, false, derive_seed(103, trial));
    const Matrix inv = rho.mat().inverse();
    const double direct =
        0.5 * (inv * (h.mat() * k.mat() + k.mat() * h.mat())).trace().real();
    CHECK(metric_eval(MetricKind::rld(), rho, h, k) ==
          doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("metric_eval symmetry, positivity, scaling") {
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 3;
    const StateMatrix rho = random_state(n, false, derive_seed(107, trial));
    const HermitianMatrix h = random_tangent(n, false, derive_seed(109, trial));
    const HermitianMatrix k = random_tangent(n, false, derive_seed(113, trial));
    for (const MetricKind& m : MetricKind::builtins()) {
      const double hk = metric_eval(m, rho, h, k);
      const double kh = metric_eval(m, rho, k, h);
      CHECK(hk == doctest::Approx(kh).epsilon(1e-10));
      CHECK(metric_eval(m, rho, h, h) > 0.0);
    }
    // lambda_{c rho}(c h, c h) = c lambda_rho(h, h).
    for (double c : {0.5, 2.0}) {
      const StateMatrix crho = validate_state(
          hermitian_part(c * rho.mat()), false);
      const HermitianMatrix ch = hermitian_part(c * h.mat());
      for (const MetricKind& m : {MetricKind::bures(), MetricKind::rld(),
                                  MetricKind::wyd(1.5)}) {
        const double lhs = metric_eval(m, crho, ch, ch);
        const double rhs = c * metric_eval(m, rho, h, h);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("metric_eval unitary covariance") {
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 3;
    const StateMatrix rho = random_state(n, true, derive_seed(127, trial));
    const HermitianMatrix h = random_tangent(n, false, derive_seed(131, trial));
    const Matrix u = random_unitary(n, derive_seed(137, trial));
    const StateMatrix urho =
        validate_state(hermitian_part(u * rho.mat() * u.adjoint()), false);
    const HermitianMatrix uh = hermitian_part(u * h.mat() * u.adjoint());
    for (const MetricKind& m : MetricKind::builtins())
      CHECK(metric_eval(m, urho, uh, uh) ==
            doctest::Approx(metric_eval(m, rho, h, h)).epsilon(1e-9));
  }
}

TEST_CASE("metric ordering between Bures and RLD") {
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 4;
    const StateMatrix rho = random_state(n, true, derive_seed(139, trial));
    const HermitianMatrix h = random_tangent(n, false, derive_seed(149, trial));
    const double lo = metric_eval(MetricKind::bures(), rho, h, h);
    const double hi = metric_eval(MetricKind::rld(), rho, h, h);
    for (const MetricKind& m : MetricKind::builtins()) {
      const double v = metric_eval(m, rho, h, h);
      CHECK(v >= lo - 1e-10 * std::abs(lo));
      CHECK(v <= hi + 1e-10 * std::abs(hi));
    }
  }
}

TEST_CASE("commutative reduction to the Fisher value") {
  RandomStream rng(151);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 3;
    RealVector p(n), x(n);
    for (int i = 0; i < n; ++i) {
      p[i] = 0.1 + rng.uniform();
      x[i] = rng.uniform() - 0.5;
    }
    p /= p.sum();
    const StateMatrix rho = validate_state(HermitianMatrix::diagonal(p), true);
    const HermitianMatrix h = HermitianMatrix::diagonal(x);
    double fisher = 0.0;
    for (int i = 0; i < n; ++i) fisher += x[i] * x[i] / p[i];
    for (const MetricKind& m : MetricKind::builtins())
      CHECK(metric_eval(m, rho, h, h) ==
            doctest::Approx(fisher).epsilon(1e-10));
  }
}

TEST_CASE("wyd hessian fixed values and cross-check") {
  RandomStream rng(157);
  const int n = 3;
  RealVector p(n), x(n);
  for (int i = 0; i < n; ++i) {
    p[i] = 0.2 + rng.uniform();
    x[i] = rng.uniform() - 0.5;
  }
  p /= p.sum();
  const StateMatrix rho = validate_state(HermitianMatrix::diagonal(p), true);
  const HermitianMatrix h = HermitianMatrix::diagonal(x);
  double fisher = 0.0;
  for (int i = 0; i < n; ++i) fisher += x[i] * x[i] / p[i];
  CHECK(wyd_metric_hessian(0.0, rho, h, h) ==
        doctest::Approx(fisher).epsilon(1e-10));

  const HermitianMatrix zero = HermitianMatrix::zero(n);
  CHECK(std::abs(wyd_metric_hessian(1.7, rho, zero, zero)) <= 1e-15);

  for (int trial = 0; trial < 8; ++trial) {
    const StateMatrix q = random_state(2, true, derive_seed(163, trial));
    const HermitianMatrix t = random_tangent(2, false, derive_seed(167, trial));
    const double hess = wyd_metric_hessian(0.0, q, t, t);
    const double wy = metric_eval(MetricKind::wy(), q, t, t);
    CHECK(hess == doctest::Approx(wy).epsilon(1e-8));
  }
}

TEST_CASE("wyd hessian swap symmetry in alpha") {
  for (int trial = 0; trial < 6; ++trial) {
    const StateMatrix rho = random_state(3, true, derive_seed(173, trial));
    const HermitianMatrix h = random_tangent(3, false, derive_seed(179, trial));
    const HermitianMatrix k = random_tangent(3, false, derive_seed(181, trial));
    for (double alpha : {-2.5, -1.0, 0.4, 2.0}) {
      const double lhs = wyd_metric_hessian(alpha, rho, h, k);
      const double rhs = wyd_metric_hessian(-alpha, rho, k, h);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("custom kind built from wyd_f matches the WYD kind") {
  const MetricKind direct = MetricKind::wyd(1.8);
  const MetricKind via_custom = MetricKind::custom_f(wyd_f(1.8));
  const StateMatrix rho = random_state(3, true, 191);
  const HermitianMatrix h = random_tangent(3, false, 193);
  CHECK(metric_eval(via_custom, rho, h, h) ==
        doctest::Approx(metric_eval(direct, rho, h, h)).epsilon(1e-12));
}

TEST_CASE("check_f_bounds margins") {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i)
    grid.push_back(std::pow(10.0, -1.0 + 2.0 * i / 100.0));

  const FBoundsReport bures = check_f_bounds(MetricKind::bures(), grid);
  CHECK(std::abs(bures.min_upper_margin) <= 1e-15);
  CHECK(bures.min_lower_margin >= -1e-12);

  const FBoundsReport rld = check_f_bounds(MetricKind::rld(), grid);
  CHECK(std::abs(rld.min_lower_margin) <= 1e-15);
  CHECK(rld.min_upper_margin >= -1e-12);

  const FBoundsReport wyd2 = check_f_bounds(MetricKind::wyd(2.0), grid);
  CHECK(wyd2.min_lower_margin >= -1e-12);
  CHECK(wyd2.min_upper_margin >= -1e-12);

  CHECK_THROWS_AS(check_f_bounds(MetricKind::wy(), std::span<const double>{}),
                  DomainError);
}
