#include "entlab/linalg.hpp"

#include <cassert>
#include <cmath>

namespace entlab {

namespace {

bool all_finite(const Eigen::MatrixXcd& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

void check_bipartite_dim(const HermitianMatrix& x, const Bipartition& bp) {
  if (x.dim() != bp.dim())
    throw ShapeError("bipartite operation: matrix dim " + std::to_string(x.dim()) +
                     " != n*k = " + std::to_string(bp.dim()));
}

}  // namespace

HermitianMatrix::HermitianMatrix(const Eigen::MatrixXcd& m) : mat_() {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw InvalidMatrix("HermitianMatrix: input must be square and non-empty");
  if (!all_finite(m)) throw InvalidMatrix("HermitianMatrix: non-finite entries");
  const auto d = m.rows();
  mat_.resize(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    mat_(j, j) = std::complex<double>(m(j, j).real(), 0.0);
    for (Eigen::Index i = j + 1; i < d; ++i) {
      const std::complex<double> v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      mat_(i, j) = v;
      mat_(j, i) = std::conj(v);
    }
  }
}

HermitianMatrix HermitianMatrix::adopt(Eigen::MatrixXcd m) {
  assert(m.rows() == m.cols());
  assert(all_finite(m));
#ifndef NDEBUG
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    assert(m(j, j).imag() == 0.0);
    for (Eigen::Index i = j + 1; i < m.rows(); ++i) assert(m(j, i) == std::conj(m(i, j)));
  }
#endif
  return HermitianMatrix(std::move(m), adopt_tag{});
}

HermitianMatrix HermitianMatrix::identity(int d) {
  return adopt(Eigen::MatrixXcd::Identity(d, d));
}

HermitianMatrix HermitianMatrix::zero(int d) {
  return adopt(Eigen::MatrixXcd::Zero(d, d));
}

Eigen::VectorXd hermitian_eigenvalues(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  solver.compute(m.mat(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw InvalidMatrix("hermitian_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

double min_eigenvalue(const HermitianMatrix& m) {
  return hermitian_eigenvalues(m)(0);
}

double spectral_norm(const HermitianMatrix& m) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(m);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

bool is_psd(const HermitianMatrix& m, double tol) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(m);
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -tol * std::max(1.0, norm);
}

HermitianMatrix partial_trace_B(const HermitianMatrix& x, const Bipartition& bp) {
  check_bipartite_dim(x, bp);
  const int n = bp.n, k = bp.k;
  Eigen::MatrixXcd out(n, n);
  const Eigen::MatrixXcd& m = x.mat();
  for (int j = 0; j < n; ++j) {
    double diag = 0.0;
    for (int b = 0; b < k; ++b) diag += m(j * k + b, j * k + b).real();
    out(j, j) = diag;
    for (int i = j + 1; i < n; ++i) {
      std::complex<double> sum(0.0, 0.0);
      for (int b = 0; b < k; ++b) sum += m(i * k + b, j * k + b);
      out(i, j) = sum;
      out(j, i) = std::conj(sum);
    }
  }
  return HermitianMatrix::adopt(std::move(out));
}

HermitianMatrix partial_transpose(const HermitianMatrix& x, const Bipartition& bp) {
  check_bipartite_dim(x, bp);
  const int n = bp.n, k = bp.k;
  const Eigen::MatrixXcd& m = x.mat();
  Eigen::MatrixXcd out(bp.dim(), bp.dim());
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < k; ++a)
      for (int j = 0; j < n; ++j)
        for (int b = 0; b < k; ++b) out(i * k + a, j * k + b) = m(i * k + b, j * k + a);
  return HermitianMatrix::adopt(std::move(out));
}

HermitianMatrix reduction_B(const HermitianMatrix& x, const Bipartition& bp) {
  check_bipartite_dim(x, bp);
  const int n = bp.n, k = bp.k;
  const HermitianMatrix xa = partial_trace_B(x, bp);
  Eigen::MatrixXcd out = -x.mat();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < k; ++a) out(i * k + a, j * k + a) += xa(i, j);
  // -X is exactly Hermitian and the added block-diagonal term mirrors exactly,
  // so the invariant survives without re-hermitizing.
  for (int j = 0; j < bp.dim(); ++j) out(j, j) = std::complex<double>(out(j, j).real(), 0.0);
  return HermitianMatrix::adopt(std::move(out));
}

}  // namespace entlab
