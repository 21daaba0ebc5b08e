#pragma once

#include <span>

#include "qig/matkern.hpp"

namespace qig {

/// Operator-convex functions for quasi-entropies and generalized relative
/// entropies share the scalar-function machinery; the built-in
/// g0(t) = 2 + 2t - 4 sqrt(t) satisfies g0(1) = 0.
using ConvexFunctionSpec = ScalarFunctionSpec;

/// Matrix geometric mean via the congruence form
///   rho0 # rho1 = rho0^{1/2} (rho0^{-1/2} rho1 rho0^{-1/2})^{1/2} rho0^{1/2}.
/// Symmetric in its arguments and covariant under congruences.
StateMatrix geometric_mean(const StateMatrix& rho0, const StateMatrix& rho1);

/// Quasi-entropy S_g(rho, sigma) = Tr rho^{1/2} g(Delta_{sigma,rho})(rho^{1/2})
/// with the relative modular operator Delta = L_sigma R_rho^{-1}. Evaluated in
/// the double eigenbasis: sum_ij g(s_i / r_j) |X_ij|^2, X = U^* rho^{1/2} V.
double quasi_entropy_S(const ConvexFunctionSpec& g, const StateMatrix& rho,
                       const StateMatrix& sigma);

/// Generalized relative entropy
///   H_g(rho0, rho1) = Tr rho0 g(rho0^{-1/2} rho1 rho0^{-1/2}).
/// For g = g0 this equals 2 Tr rho0 + 2 Tr rho1 - 4 Tr rho0 # rho1.
double relative_entropy_H(const ConvexFunctionSpec& g, const StateMatrix& rho0,
                          const StateMatrix& rho1);

/// 2 arccos( sum_i sqrt(p_i q_i) ) for strictly positive probability vectors.
double classical_bhattacharya(std::span<const double> p,
                              std::span<const double> q);

/// 2 sqrt( sum_i (sqrt(p_i) - sqrt(q_i))^2 ) for strictly positive measures.
double classical_hellinger_d(std::span<const double> p,
                             std::span<const double> q);

}  // namespace qig
