#pragma once

#include <optional>
#include <vector>

#include "entlab/common.hpp"
#include "entlab/linalg.hpp"

namespace entlab {

// Probability vector of eigenvalues, stored sorted descending. Entries in
// [-1e-12, 0) are clamped to zero; anything more negative, or a total away
// from 1 by more than 1e-10, is rejected.
class SpectrumVector {
 public:
  explicit SpectrumVector(std::vector<double> entries,
                          std::optional<Bipartition> bp = std::nullopt);

  const std::vector<double>& entries() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::optional<Bipartition>& bipartition() const { return bp_; }

  // Number of entries above kRankTol.
  int effective_rank() const;

  // Sum of the m smallest entries (m in [0, dim]).
  double tail_sum(int m) const;

 private:
  std::vector<double> entries_;  // descending
  std::optional<Bipartition> bp_;
};

}  // namespace entlab
