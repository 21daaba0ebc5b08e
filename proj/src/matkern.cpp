#include "qig/matkern.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace qig {
namespace {

std::string dim_message(const char* what, long a, long b) {
  std::ostringstream os;
  os << what << ": dimensions " << a << " and " << b << " do not match";
  return os.str();
}

}  // namespace

HermitianMatrix::HermitianMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw NotHermitianError("matrix must be square with n >= 1");
  const double scale = m_.cwiseAbs().maxCoeff();
  const double tol = 1e-12 * scale;
  const double defect = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (defect > tol)
    throw NotHermitianError("matrix is not Hermitian within tolerance");
  for (long i = 0; i < m_.rows(); ++i)
    if (std::abs(m_(i, i).imag()) > tol)
      throw NotHermitianError("diagonal has nonzero imaginary part");
  m_ = 0.5 * (m_ + m_.adjoint().eval());
  m_.diagonal() = m_.diagonal().real().cast<Complex>();
}

HermitianMatrix::HermitianMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

HermitianMatrix hermitian_part(const Matrix& m) {
  Matrix s = 0.5 * (m + m.adjoint().eval());
  s.diagonal() = s.diagonal().real().cast<Complex>();
  return HermitianMatrix(std::move(s), HermitianMatrix::Trusted{});
}

HermitianMatrix HermitianMatrix::zero(int n) {
  return hermitian_part(Matrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::identity(int n) {
  return hermitian_part(Matrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  Matrix m = Matrix::Zero(d.size(), d.size());
  m.diagonal() = d.cast<Complex>();
  return hermitian_part(m);
}

SpectralDecomposition eig_hermitian(const HermitianMatrix& H) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(H.mat());
  if (solver.info() != Eigen::Success)
    throw Error("eigendecomposition failed to converge");
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix SpectralDecomposition::apply(const ScalarFunctionSpec& f) const {
  RealVector fd(eigenvalues.size());
  for (long i = 0; i < eigenvalues.size(); ++i) fd[i] = f.eval(eigenvalues[i]);
  return eigenvectors * fd.asDiagonal() * eigenvectors.adjoint();
}

HermitianMatrix mat_fn(const HermitianMatrix& A, const ScalarFunctionSpec& f) {
  return hermitian_part(eig_hermitian(A).apply(f));
}

HermitianMatrix mat_fn(const StateMatrix& A, const ScalarFunctionSpec& f) {
  return mat_fn(A.hermitian(), f);
}

HermitianMatrix frechet_derivative(const ScalarFunctionSpec& f,
                                   const HermitianMatrix& A,
                                   const HermitianMatrix& h) {
  if (A.dim() != h.dim())
    throw DimensionMismatchError(dim_message("frechet_derivative", A.dim(), h.dim()));
  const SpectralDecomposition sd = eig_hermitian(A);
  const long n = sd.eigenvalues.size();
  const Matrix ht = sd.eigenvectors.adjoint() * h.mat() * sd.eigenvectors;
  Matrix out(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const double x = sd.eigenvalues[i], y = sd.eigenvalues[j];
      double phi;
      if (std::abs(x - y) > kEpsDividedDifference * std::max(std::abs(x), std::abs(y))) {
        phi = (f.eval(x) - f.eval(y)) / (x - y);
      } else {
        phi = f.deriv(0.5 * (x + y));
      }
      out(i, j) = ht(i, j) * phi;
    }
  }
  return hermitian_part(sd.eigenvectors * out * sd.eigenvectors.adjoint());
}

HermitianMatrix frechet_derivative(const ScalarFunctionSpec& f,
                                   const StateMatrix& A,
                                   const HermitianMatrix& h) {
  return frechet_derivative(f, A.hermitian(), h);
}

StateMatrix validate_state(const HermitianMatrix& M, bool unit_trace) {
  const SpectralDecomposition sd = eig_hermitian(M);
  const double lambda_max = sd.eigenvalues[sd.eigenvalues.size() - 1];
  const double eps_pd = kEpsPd * std::max(lambda_max, 1.0);
  if (!(sd.eigenvalues[0] > eps_pd)) {
    std::ostringstream os;
    os << "not positive definite: min eigenvalue " << sd.eigenvalues[0]
       << " <= threshold " << eps_pd;
    throw NotPositiveDefiniteError(os.str());
  }
  if (unit_trace && std::abs(M.trace() - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "trace " << M.trace() << " is not 1 within 1e-10";
    throw TraceNotOneError(os.str());
  }
  return StateMatrix(M, unit_trace);
}

StateMatrix validate_state(const Matrix& M, bool unit_trace) {
  return validate_state(HermitianMatrix(M), unit_trace);
}

Complex hs_inner(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionMismatchError(dim_message("hs_inner", x.rows(), y.rows()));
  return (x.adjoint() * y).trace();
}

Complex hs_inner(const HermitianMatrix& x, const HermitianMatrix& y) {
  return hs_inner(x.mat(), y.mat());
}

}  // namespace qig
