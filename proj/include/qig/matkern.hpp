#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qig/errors.hpp"
#include "qig/scalar_function.hpp"

namespace qig {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Positivity threshold: eigenvalues must exceed 1e-10 * max(lambda_max, 1).
// Boundary states are rejected, not regularized.
inline constexpr double kEpsPd = 1e-10;

// Relative eigenvalue-gap threshold below which the first divided difference
// switches to the derivative at the midpoint.
inline constexpr double kEpsDividedDifference = 1e-7;

/// n x n complex matrix with Hermitian symmetry, validated on construction
/// (tolerance 1e-12 * max |entry|) and stored exactly symmetrized.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix m);

  static HermitianMatrix zero(int n);
  static HermitianMatrix identity(int n);
  static HermitianMatrix diagonal(const RealVector& d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }
  double trace() const { return m_.trace().real(); }
  double norm() const { return m_.norm(); }  // Hilbert-Schmidt

 private:
  struct Trusted {};
  HermitianMatrix(Matrix m, Trusted);
  friend HermitianMatrix hermitian_part(const Matrix& m);

  Matrix m_;
};

/// Exact symmetrization (m + m^*)/2 without the tolerance check. For results
/// that are Hermitian by construction up to rounding.
HermitianMatrix hermitian_part(const Matrix& m);

/// Positive-definite HermitianMatrix, optionally with unit trace. Obtain via
/// validate_state.
class StateMatrix {
 public:
  const HermitianMatrix& hermitian() const { return base_; }
  const Matrix& mat() const { return base_.mat(); }
  int dim() const { return base_.dim(); }
  double trace() const { return base_.trace(); }
  bool unit_trace() const { return unit_trace_; }

 private:
  friend StateMatrix validate_state(const HermitianMatrix&, bool);
  StateMatrix(HermitianMatrix base, bool unit_trace)
      : base_(std::move(base)), unit_trace_(unit_trace) {}

  HermitianMatrix base_;
  bool unit_trace_;
};

/// Eigenvalues (ascending) and unitary eigenvector columns of a Hermitian
/// matrix; the computational backbone of all matrix functions here.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;

  /// U diag(f(d)) U^*.
  Matrix apply(const ScalarFunctionSpec& f) const;
};

SpectralDecomposition eig_hermitian(const HermitianMatrix& H);

/// Spectral functional calculus: U diag(f(d_i)) U^*. Every eigenvalue must
/// lie in the domain of f.
HermitianMatrix mat_fn(const HermitianMatrix& A, const ScalarFunctionSpec& f);
HermitianMatrix mat_fn(const StateMatrix& A, const ScalarFunctionSpec& f);

/// First-order directional derivative Df[A](h) by the Daleckii-Krein first
/// divided difference in A's eigenbasis; nearly degenerate pairs (relative
/// gap below kEpsDividedDifference) use f' at the midpoint.
HermitianMatrix frechet_derivative(const ScalarFunctionSpec& f,
                                   const HermitianMatrix& A,
                                   const HermitianMatrix& h);
HermitianMatrix frechet_derivative(const ScalarFunctionSpec& f,
                                   const StateMatrix& A,
                                   const HermitianMatrix& h);

/// Accepts M iff positive definite (all eigenvalues above the kEpsPd
/// threshold) and, when requested, |Tr - 1| <= 1e-10.
StateMatrix validate_state(const HermitianMatrix& M, bool unit_trace);
StateMatrix validate_state(const Matrix& M, bool unit_trace);

/// Hilbert-Schmidt inner product Tr x^* y.
Complex hs_inner(const Matrix& x, const Matrix& y);
Complex hs_inner(const HermitianMatrix& x, const HermitianMatrix& y);

}  // namespace qig
