// Acceptance battery: one pass/fail line per criterion, nonzero exit when
// anything fails. Every tolerance is pinned in code next to the check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qig/divergences.hpp"
#include "qig/geodesics.hpp"
#include "qig/matkern.hpp"
#include "qig/metrics.hpp"
#include "qig/verify.hpp"

using namespace qig;

namespace {

struct Outcome {
  bool pass = true;
  double worst = std::numeric_limits<double>::infinity();  // min margin seen
  std::string note;

  void require(double margin) {
    worst = std::min(worst, margin);
    if (margin < 0.0) pass = false;
  }
};

StateMatrix diag_state(const RealVector& v, bool unit_trace) {
  return validate_state(HermitianMatrix::diagonal(v), unit_trace);
}

RealVector random_simplex(int n, std::uint64_t seed) {
  RandomStream rng(seed);
  RealVector p(n);
  for (int i = 0; i < n; ++i) p[i] = 0.05 + rng.uniform();
  p /= p.sum();
  return p;
}

std::pair<StateMatrix, StateMatrix> noncommuting_qubits(std::uint64_t seed) {
  for (std::uint64_t k = 0;; ++k) {
    StateMatrix a = random_state(2, true, derive_seed(seed, 2 * k));
    StateMatrix b = random_state(2, true, derive_seed(seed, 2 * k + 1));
    if ((a.mat() * b.mat() - b.mat() * a.mat()).norm() > 0.05) return {a, b};
  }
}

// 1. Commuting collapse: diagonal density pairs agree with the classical
//    Bhattacharya distance across all three density distances, within 1e-10.
Outcome criterion_commuting_collapse() {
  Outcome out;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t s = derive_seed(1000, trial);
    const int n = 2 + trial % 5;  // 2..6
    const RealVector p = random_simplex(n, derive_seed(s, 1));
    const RealVector q = random_simplex(n, derive_seed(s, 2));
    const StateMatrix dp = diag_state(p, true);
    const StateMatrix dq = diag_state(q, true);
    const double classical = classical_bhattacharya(
        std::span<const double>(p.data(), p.size()),
        std::span<const double>(q.data(), q.size()));
    out.require(1e-10 - std::abs(bures_distance_density(dp, dq) - classical));
    out.require(1e-10 - std::abs(wy_distance_density(dp, dq) - classical));
    out.require(1e-10 -
                std::abs(rld_upper_bound_density(dp, dq) - classical));
  }
  return out;
}

// 2. Cone chain: bures <= rld_upper < 2 sqrt(Tr+Tr), with a strict middle
//    gap > 1e-8 whenever the endpoints visibly do not commute.
Outcome criterion_cone_chain() {
  Outcome out;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t s = derive_seed(2000, trial);
    const int n = 2 + trial % 4;  // 2..5
    const StateMatrix r0 = random_state(n, false, derive_seed(s, 1));
    const StateMatrix r1 = random_state(n, false, derive_seed(s, 2));
    const double b = bures_distance_cone(r0, r1);
    const double r = rld_upper_bound_cone(r0, r1);
    out.require(r - b + 1e-9);
    out.require(2.0 * std::sqrt(r0.trace() + r1.trace()) - r);
    if ((r0.mat() * r1.mat() - r1.mat() * r0.mat()).norm() > 1e-6)
      out.require(r - b - 1e-8);
  }
  return out;
}

// 3. Density chain: 2 arccos Tr(sqrt(rho0) rho1 sqrt(rho0))^{1/2} <= D_WY
//    <= 2 arccos Tr rho0 # rho1 < pi, slack 1e-10.
Outcome criterion_density_chain() {
  Outcome out;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t s = derive_seed(3000, trial);
    const int n = 2 + trial % 4;
    const StateMatrix r0 = random_state(n, true, derive_seed(s, 1));
    const StateMatrix r1 = random_state(n, true, derive_seed(s, 2));
    const double b = bures_distance_density(r0, r1);
    const double w = wy_distance_density(r0, r1);
    const double r = rld_upper_bound_density(r0, r1);
    out.require(w - b + 1e-10);
    out.require(r - w + 1e-10);
    out.require(std::numbers::pi - r);
  }
  return out;
}

// 4. Quadrature lengths reproduce the closed-form distances.
Outcome criterion_length_consistency() {
  Outcome out;
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t s = derive_seed(4000, trial);
    const int n = 2 + trial % 3;  // 2..4
    const StateMatrix r0 = random_state(n, false, derive_seed(s, 1));
    const StateMatrix r1 = random_state(n, false, derive_seed(s, 2));

    const double b_len = curve_length(
        MetricKind::bures(), CurveSpec(CurveKind::BuresLine, r0, r1), 1024);
    const double b_dist = bures_distance_cone(r0, r1);
    out.require(1e-6 - std::abs(b_len - b_dist) / b_dist);

    const double w_len = curve_length(
        MetricKind::wy(), CurveSpec(CurveKind::WYLine, r0, r1), 1024);
    const double w_dist = wy_distance_cone(r0, r1);
    out.require(1e-6 - std::abs(w_len - w_dist) / w_dist);

    const double r_len = curve_length(
        MetricKind::rld(), CurveSpec(CurveKind::RLDDual, r0, r1), 2048);
    const double r_bound = 2.0 * std::sqrt(r0.trace() + r1.trace() -
                                           2.0 * geometric_mean(r0, r1).trace());
    out.require(2e-6 - std::abs(r_len - r_bound) / r_bound);
  }
  return out;
}

// 5. Contraction under random channels for every built-in metric kind.
Outcome criterion_monotonicity() {
  Outcome out;
  const std::vector<MetricKind> kinds = MetricKind::builtins();
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t s = derive_seed(5000, trial);
    const int n = 2 + trial % 4;
    const StateMatrix rho = random_state(n, true, derive_seed(s, 1));
    const HermitianMatrix h = random_tangent(n, true, derive_seed(s, 2));
    const CptpMap map =
        random_cptp(n, 1 + static_cast<int>(derive_seed(s, 3) % 3),
                    derive_seed(s, 4));
    for (const MetricKind& m : kinds) {
      const double scale = std::max(1.0, metric_eval(m, rho, h, h));
      out.require(check_monotonicity(m, map, rho, h) / scale + 1e-9);
    }
  }
  return out;
}

// 6. The hessian evaluation and the closed-form WYD metric agree, and the
//    family endpoints match WY, RLD, BKM.
Outcome criterion_wyd_crosscheck() {
  Outcome out;
  const std::vector<double> alphas{-3.0, -1.5, 0.0, 1.0, 2.5, 3.0};
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t s = derive_seed(6000, trial);
    const int n = 2 + trial % 2;  // qubit / qutrit
    const StateMatrix rho = random_state(n, true, derive_seed(s, 1));
    const HermitianMatrix h = random_tangent(n, false, derive_seed(s, 2));
    for (double alpha : alphas) {
      const double hess = wyd_metric_hessian(alpha, rho, h, h);
      const double closed = metric_eval(MetricKind::wyd(alpha), rho, h, h);
      out.require(1e-8 - std::abs(hess - closed) / std::abs(closed));
    }
    const double wy = metric_eval(MetricKind::wy(), rho, h, h);
    out.require(1e-8 - std::abs(wyd_metric_hessian(0.0, rho, h, h) - wy) / wy);
    const double rld = metric_eval(MetricKind::rld(), rho, h, h);
    for (double a : {-3.0, 3.0})
      out.require(1e-8 -
                  std::abs(wyd_metric_hessian(a, rho, h, h) - rld) / rld);
    const double bkm = metric_eval(MetricKind::bkm(), rho, h, h);
    for (double a : {-1.0, 1.0})
      out.require(1e-8 -
                  std::abs(wyd_metric_hessian(a, rho, h, h) - bkm) / bkm);
  }
  return out;
}

// 7. sqrt(2 S_g0) = d_WY and sqrt(2 H_g0) = the cone upper bound.
Outcome criterion_quasi_entropy_identities() {
  Outcome out;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t s = derive_seed(7000, trial);
    const int n = 2 + trial % 3;
    const StateMatrix r0 = random_state(n, false, derive_seed(s, 1));
    const StateMatrix r1 = random_state(n, false, derive_seed(s, 2));
    const double via_s =
        std::sqrt(2.0 * quasi_entropy_S(ScalarFunctionSpec::g0(), r0, r1));
    const double wy = wy_distance_cone(r0, r1);
    out.require(1e-9 - std::abs(via_s - wy) / wy);

    const double via_h =
        std::sqrt(2.0 * relative_entropy_H(ScalarFunctionSpec::g0(), r0, r1));
    const double upper = rld_upper_bound_cone(r0, r1);
    out.require(1e-9 - std::abs(via_h - upper) / upper);
  }
  return out;
}

// 8. The dual curve solves the RLD geodesic equation only for commuting
//    endpoints: residual defect tiny there, macroscopic otherwise.
Outcome criterion_residual_dichotomy() {
  Outcome out;
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint64_t s = derive_seed(8000, trial);
    const int n = 2 + trial % 3;
    const StateMatrix d0 = diag_state(random_simplex(n, derive_seed(s, 1)), true);
    const StateMatrix d1 = diag_state(random_simplex(n, derive_seed(s, 2)), true);
    const CurveSpec commuting(CurveKind::RLDDual, d0, d1);
    for (double t : {0.25, 0.5, 0.75})
      out.require(1e-6 -
                  rld_geodesic_residual(commuting, t).orthogonal_defect);

    const auto [q0, q1] = noncommuting_qubits(derive_seed(s, 3));
    const CurveSpec curve(CurveKind::RLDDual, q0, q1);
    double worst = 0.0;
    for (double t : {0.25, 0.5, 0.75})
      worst =
          std::max(worst, rld_geodesic_residual(curve, t).orthogonal_defect);
    out.require(worst - 1e-4);
  }
  return out;
}

// 9. Central finite differences of matrix functions converge at second
//    order against the divided-difference derivative: halving the step from
//    1e-3 shrinks the error by a factor in [3, 5].
Outcome criterion_frechet_convergence() {
  Outcome out;
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t s = derive_seed(9000, trial);
    const int n = 2 + trial % 3;
    Matrix base = random_state(n, false, derive_seed(s, 1)).mat();
    base += 0.3 * Matrix::Identity(n, n);
    const HermitianMatrix a = hermitian_part(base);
    HermitianMatrix h = random_tangent(n, false, derive_seed(s, 2));
    h = hermitian_part(h.mat() / h.norm());
    const ScalarFunctionSpec f = (trial % 3 == 0)   ? ScalarFunctionSpec::sqrt()
                                 : (trial % 3 == 1) ? ScalarFunctionSpec::log()
                                                    : ScalarFunctionSpec::power(1.7);
    const Matrix df = frechet_derivative(f, a, h).mat();
    auto err = [&](double t) {
      const Matrix p = mat_fn(hermitian_part(a.mat() + t * h.mat()), f).mat();
      const Matrix m = mat_fn(hermitian_part(a.mat() - t * h.mat()), f).mat();
      return ((p - m) / (2.0 * t) - df).norm();
    };
    const double ratio = err(1e-3) / err(0.5e-3);
    out.require(ratio - 3.0);
    out.require(5.0 - ratio);
  }
  return out;
}

// 10. Fixed-endpoint bump perturbations of the geodesic lines are never
//     shorter than the closed-form geodesic length (up to 1e-7).
Outcome criterion_local_minimality() {
  Outcome out;
  const int panels = 512;
  for (int variant = 0; variant < 2; ++variant) {
    const bool wy = variant == 1;
    const MetricKind kind = wy ? MetricKind::wy() : MetricKind::bures();
    for (int trial = 0; trial < 50; ++trial) {
      const std::uint64_t s = derive_seed(wy ? 10500 : 10000, trial);
      const int n = 2 + trial % 2;
      const StateMatrix r0 = random_state(n, false, derive_seed(s, 1));
      const StateMatrix r1 = random_state(n, false, derive_seed(s, 2));
      const CurveSpec line(wy ? CurveKind::WYLine : CurveKind::BuresLine, r0,
                           r1);
      const double geodesic =
          wy ? wy_distance_cone(r0, r1) : bures_distance_cone(r0, r1);

      const HermitianMatrix dir = random_tangent(n, false, derive_seed(s, 3));
      double scale = 0.05 * (r1.mat() - r0.mat()).norm() / dir.norm();
      for (int shrink = 0; shrink < 40; ++shrink) {
        bool positive = true;
        for (int i = 0; i <= 2 * panels && positive; i += 8) {
          const double t = static_cast<double>(i) / (2 * panels);
          Eigen::SelfAdjointEigenSolver<Matrix> probe(
              line.value(t) +
              std::sin(std::numbers::pi * t) * scale * dir.mat());
          positive = probe.eigenvalues().minCoeff() > 1e-12;
        }
        if (positive) break;
        scale *= 0.5;
      }

      const double perturbed = curve_length_sampled(
          kind,
          [&](double t, Matrix& rho, Matrix& rhodot) {
            const double bump = std::sin(std::numbers::pi * t);
            const double dbump =
                std::numbers::pi * std::cos(std::numbers::pi * t);
            rho = line.value(t) + bump * scale * dir.mat();
            rhodot = line.velocity(t) + dbump * scale * dir.mat();
          },
          panels);
      out.require(perturbed - geodesic + 1e-7);
    }
  }
  return out;
}

struct Criterion {
  int id;
  const char* label;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "commuting collapse to the Bhattacharya distance", 5.0,
       criterion_commuting_collapse},
      {2, "cone chain bures <= rld_upper < 2 sqrt(Tr+Tr)", 10.0,
       criterion_cone_chain},
      {3, "density chain bures <= wy <= rld_upper < pi", 10.0,
       criterion_density_chain},
      {4, "quadrature lengths match closed-form distances", 60.0,
       criterion_length_consistency},
      {5, "metric contraction under random channels", 60.0,
       criterion_monotonicity},
      {6, "WYD hessian matches closed form and endpoints", 20.0,
       criterion_wyd_crosscheck},
      {7, "quasi-entropy distance identities", 10.0,
       criterion_quasi_entropy_identities},
      {8, "RLD residual dichotomy", 10.0, criterion_residual_dichotomy},
      {9, "Frechet derivative second-order convergence", 10.0,
       criterion_frechet_convergence},
      {10, "geodesic local minimality under perturbations", 60.0,
       criterion_local_minimality},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.note = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_budget = seconds < c.budget_seconds;
    const bool pass = outcome.pass && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] %2d. %s (worst margin %.3e, %.2fs / %.0fs)%s%s\n",
                pass ? "PASS" : "FAIL", c.id, c.label, outcome.worst, seconds,
                c.budget_seconds, outcome.note.empty() ? "" : ": ",
                outcome.note.c_str());
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  else std::printf("all %zu criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
