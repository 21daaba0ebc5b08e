#include "qig/divergences.hpp"

#include <algorithm>
#include <cmath>
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

}  // namespace

StateMatrix geometric_mean(const StateMatrix& rho0, const StateMatrix& rho1) {
  require_same_dim(rho0, rho1, "geometric_mean");
  const SpectralDecomposition sd0 = eig_hermitian(rho0.hermitian());
  const Matrix root = sd0.apply(ScalarFunctionSpec::sqrt());
  const Matrix inv_root = sd0.apply(ScalarFunctionSpec::power(-0.5));
  const HermitianMatrix inner =
      hermitian_part(inv_root * rho1.mat() * inv_root);
  const Matrix inner_root = mat_fn(inner, ScalarFunctionSpec::sqrt()).mat();
  return validate_state(hermitian_part(root * inner_root * root), false);
}

double quasi_entropy_S(const ConvexFunctionSpec& g, const StateMatrix& rho,
                       const StateMatrix& sigma) {
  require_same_dim(rho, sigma, "quasi_entropy_S");
  const SpectralDecomposition sr = eig_hermitian(rho.hermitian());
  const SpectralDecomposition ss = eig_hermitian(sigma.hermitian());
  RealVector sqrt_r(sr.eigenvalues.size());
  for (long i = 0; i < sqrt_r.size(); ++i)
    sqrt_r[i] = std::sqrt(sr.eigenvalues[i]);
  // X = U^* rho^{1/2} V with sigma = U diag(s) U^*, rho = V diag(r) V^*;
  // rho^{1/2} V collapses to V diag(sqrt r).
  const Matrix x =
      ss.eigenvectors.adjoint() * sr.eigenvectors * sqrt_r.asDiagonal();
  double acc = 0.0;
  for (long i = 0; i < ss.eigenvalues.size(); ++i)
    for (long j = 0; j < sr.eigenvalues.size(); ++j)
      acc += g.eval(ss.eigenvalues[i] / sr.eigenvalues[j]) *
             std::norm(x(i, j));
  return acc;
}

double relative_entropy_H(const ConvexFunctionSpec& g, const StateMatrix& rho0,
                          const StateMatrix& rho1) {
  require_same_dim(rho0, rho1, "relative_entropy_H");
  const SpectralDecomposition sd0 = eig_hermitian(rho0.hermitian());
  const Matrix inv_root = sd0.apply(ScalarFunctionSpec::power(-0.5));
  const HermitianMatrix arg =
      hermitian_part(inv_root * rho1.mat() * inv_root);
  const Matrix g_arg = mat_fn(arg, g).mat();
  return (rho0.mat() * g_arg).trace().real();
}

double classical_bhattacharya(std::span<const double> p,
                              std::span<const double> q) {
  if (p.size() != q.size() || p.empty())
    throw InvalidDistributionError(
        "probability vectors must be nonempty with equal length");
  double sp = 0.0, sq = 0.0, overlap = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0) || !(q[i] > 0.0))
      throw InvalidDistributionError("probabilities must be strictly positive");
    sp += p[i];
    sq += q[i];
    overlap += std::sqrt(p[i]) * std::sqrt(q[i]);
  }
  if (std::abs(sp - 1.0) > 1e-10 || std::abs(sq - 1.0) > 1e-10)
    throw InvalidDistributionError("probabilities must sum to 1 within 1e-10");
  return 2.0 * std::acos(std::clamp(overlap, -1.0, 1.0));
}

double classical_hellinger_d(std::span<const double> p,
                             std::span<const double> q) {
  if (p.size() != q.size() || p.empty())
    throw InvalidMeasureError("measures must be nonempty with equal length");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0) || !(q[i] > 0.0))
      throw InvalidMeasureError("measure entries must be strictly positive");
    const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    acc += d * d;
  }
  return 2.0 * std::sqrt(acc);
}

}  // namespace qig
