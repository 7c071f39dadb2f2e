#pragma once

#include <optional>
#include <string>

#include "entlab/hatmap.hpp"
#include "entlab/linalg.hpp"
#include "entlab/spectrum_vector.hpp"

namespace entlab {

enum class VerdictStatus {
  InCertified,  // membership established by an exact rule
  InNumerical,  // no exact rule fired and the numerical search found nothing
  Out,          // non-membership, witness-backed where applicable
};

std::string to_string(VerdictStatus s);

// Outcome of a membership test. `margin` is the signed distance to the
// decision boundary of whichever rule fired; Out verdicts for the absolute
// reduction test always carry a witness x with ared_inner(lambda, x) < -tol.
struct CriterionVerdict {
  VerdictStatus status = VerdictStatus::InCertified;
  double margin = 0.0;
  std::optional<SimplexVector> witness;
  std::string certificate;

  bool in() const { return status != VerdictStatus::Out; }
};

// rho^red >= 0 (within tolerance). Margin is the smallest eigenvalue of the
// reduction. Throws InvalidState if rho itself is not PSD within tolerance.
CriterionVerdict check_red(const HermitianMatrix& rho, const Bipartition& bp);

// rho^Gamma >= 0, analogous to check_red.
CriterionVerdict check_ppt(const HermitianMatrix& rho, const Bipartition& bp);

// Largest entry at most the sum of the p smallest. Margin = that sum - lambda_1.
CriterionVerdict check_ls_p(const SpectrumVector& lambda, int p);

// Gershgorin-style spectral test with r = min(n,k):
//   sum_{i<r} lambda_i <= 2 lambda_d + sum_{i<r} lambda_{d-i}.
CriterionVerdict check_ger(const SpectrumVector& lambda, const Bipartition& bp);

// Purity ball: sum lambda_i^2 <= 1/(d-1).
CriterionVerdict check_sepball(const SpectrumVector& lambda);

// Absolute reduction criterion, decided by a certification ladder:
//   1. effective rank below (n-2)k+2       -> Out (witness: uniform on 2)
//   2. lambda_1 <= (k+1) lambda_min        -> InCertified
//   3. lambda in LS_k                      -> InCertified
//   4. lambda outside LS_{2k-1}            -> Out (validated witness)
//   5. numerical search finds a violation  -> Out (found witness)
//   6. otherwise                           -> InNumerical
CriterionVerdict check_ared(const SpectrumVector& lambda, const Bipartition& bp,
                            const SearchBudget& budget = {});

// Clamped, renormalized, descending spectrum of a PSD unit-trace matrix.
SpectrumVector spectrum_of_state(const HermitianMatrix& rho);

}  // namespace entlab
