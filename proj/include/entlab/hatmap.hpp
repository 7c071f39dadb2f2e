#pragma once

#include <cstdint>
#include <vector>

#include "entlab/common.hpp"
#include "entlab/spectrum_vector.hpp"

namespace entlab {

// Probability vector in the simplex, stored sorted descending. The sum must
// be within 1e-12 of 1 and no entry may be negative.
class SimplexVector {
 public:
  explicit SimplexVector(std::vector<double> entries);

  // Uniform weight on the first r coordinates.
  static SimplexVector uniform(int r);

  const std::vector<double>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }

  // Entries above kRankTol; the positions past this index are treated as
  // exact zeros everywhere in this module.
  int effective_rank() const { return rank_; }

  bool operator==(const SimplexVector& o) const { return entries_ == o.entries_; }
  bool operator<(const SimplexVector& o) const { return entries_ < o.entries_; }

 private:
  std::vector<double> entries_;  // descending
  int rank_ = 0;
};

// Roots eta_1 >= ... >= eta_r attached to x in Delta_r:
//  - one genuine solution of sum_i x_i / (x_i - eta) = 1 in every gap between
//    distinct consecutive entries, plus the unique negative solution eta_r;
//  - a coincidence root eta_i = x_i wherever x_i - x_{i+1} <= 1e-13.
// For r = 1 the single root is 0.
std::vector<double> secular_roots(const SimplexVector& x);

// Eigenvalues of the reduction of the Schmidt-form pure state built from x,
// with multiplicities:
//   (x_1 (k-1 times), eta_1, ..., eta_{r-1}, x_r (k-1 times),
//    0 ((n-r)k times), eta_r)
// Returned descending (the layout above already is). Requires the effective
// rank of x to be at most min(n, k).
struct HatDecomposition {
  SimplexVector x;
  int n = 2, k = 2;
  std::vector<double> etas;  // length r = effective rank
  std::vector<double> hat;   // length n*k, descending
};
HatDecomposition hat_vector(const SimplexVector& x, int n, int k);

// <lambda sorted descending, hat(x) sorted ascending>. Nonnegative for every
// x in Delta_min(n,k) exactly when lambda is absolutely RED.
double ared_inner(const SpectrumVector& lambda, const SimplexVector& x, int n, int k);

struct SearchBudget {
  int random_starts = 4;       // Dirichlet(1,...,1) starts per rank
  int max_iters = 200;         // Nelder-Mead iteration cap per start
  double tol = 1e-12;          // Nelder-Mead spread tolerance
  std::uint64_t seed = 0x5EEDCAB1E5ULL;  // start-generation stream

  void validate() const {
    if (random_starts < 0 || max_iters < 1 || !(tol > 0.0))
      throw InvalidParams("SearchBudget: nonnegative starts, positive iters and tol");
  }
};

// Minimum of ared_inner over the heuristic candidate family: uniform vectors
// of every rank, Dirichlet random starts per rank, and Nelder-Mead descent in
// softmax coordinates from each start. Deterministic for a fixed budget.
struct MinInnerResult {
  double value = 0.0;
  SimplexVector witness;
};
MinInnerResult ared_min_inner(const SpectrumVector& lambda, int n, int k,
                              const SearchBudget& budget = {});

}  // namespace entlab
