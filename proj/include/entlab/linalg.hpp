#pragma once

#include <Eigen/Dense>
#include <complex>

#include "entlab/common.hpp"

namespace entlab {

// Tensor factor dimensions of a bipartite system C^n (x) C^k. The composite
// index convention is row-major over the second factor: (i,a) -> i*k + a.
struct Bipartition {
  int n = 1;
  int k = 1;

  Bipartition() = default;
  Bipartition(int n_, int k_) : n(n_), k(k_) {
    if (n < 1 || k < 1) throw InvalidParams("Bipartition: factors must be >= 1");
  }
  int dim() const { return n * k; }
};

// Dense complex square matrix kept exactly Hermitian: entries(i,j) is the
// conjugate of entries(j,i) bit-for-bit and diagonal imaginary parts are zero.
class HermitianMatrix {
 public:
  // Hermitizes the input as (M + M*)/2 and zeroes diagonal imaginary parts.
  // Throws InvalidMatrix for non-square or non-finite input.
  explicit HermitianMatrix(const Eigen::MatrixXcd& m);

  // Adopts a matrix that is already exactly Hermitian by construction.
  // Verifies the invariant in debug builds only.
  static HermitianMatrix adopt(Eigen::MatrixXcd m);

  static HermitianMatrix identity(int d);
  static HermitianMatrix zero(int d);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXcd& mat() const { return mat_; }
  std::complex<double> operator()(int i, int j) const { return mat_(i, j); }
  double trace() const { return mat_.trace().real(); }

 private:
  struct adopt_tag {};
  HermitianMatrix(Eigen::MatrixXcd m, adopt_tag) : mat_(std::move(m)) {}
  Eigen::MatrixXcd mat_;
};

// All eigenvalues, ascending. Backed by Householder tridiagonalization with
// implicitly shifted QL iterations (values only).
Eigen::VectorXd hermitian_eigenvalues(const HermitianMatrix& m);

double min_eigenvalue(const HermitianMatrix& m);

// Largest absolute eigenvalue (operator norm of a Hermitian matrix).
double spectral_norm(const HermitianMatrix& m);

// Positive-semidefiniteness within the scale-aware tolerance: the smallest
// eigenvalue must be >= -tol * max(1, ||M||_2).
bool is_psd(const HermitianMatrix& m, double tol = kDecisionTol);

// (X_A)_{ij} = sum_b X_{(i,b),(j,b)}; result has dimension n.
HermitianMatrix partial_trace_B(const HermitianMatrix& x, const Bipartition& bp);

// X^G_{(i,a),(j,b)} = X_{(i,b),(j,a)}; an involution that preserves the trace.
HermitianMatrix partial_transpose(const HermitianMatrix& x, const Bipartition& bp);

// X_A (x) I_k - X, the reduction of X over the second factor.
HermitianMatrix reduction_B(const HermitianMatrix& x, const Bipartition& bp);

}  // namespace entlab
