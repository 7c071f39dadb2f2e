#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entlab/criteria.hpp"
#include "entlab/sampling.hpp"

namespace entlab {

enum class Regime { Balanced, FirstUnbalanced, SecondUnbalanced, TotalDim };

std::string to_string(Regime r);
Regime parse_regime(const std::string& name);

// Identifies a criterion (and its parameter rule, for the largest-vs-smallest
// spectral families). The catalog also recognizes names that carry threshold
// data but no predicate here; sweepable() distinguishes the two.
struct CriterionId {
  enum class Kind { Red, Ared, Ger, SepBall, Ls, Appt, Sep, Ppt, Rln };
  enum class LsRule { FixedP, SmallGrowing, Fraction };

  Kind kind = Kind::Red;
  LsRule ls_rule = LsRule::FixedP;
  int p = 0;       // FixedP parameter
  double t = 0.0;  // Fraction parameter

  // Accepts red | ared | ger | sepball | appt | sep | ppt | rln and the LS
  // spellings ls:<p>, ls:o (slowly growing p), ls:t<frac> (p = floor(t*d)).
  static CriterionId parse(const std::string& name);
  std::string name() const;
  bool sweepable() const;
  // The LS parameter this rule induces at total dimension d.
  int concrete_p(int d) const;
};

// Which dimensions grow in a sweep and which factor stays fixed.
struct RegimeSpec {
  Regime kind = Regime::Balanced;
  std::optional<int> fixed_param;   // required by the unbalanced regimes
  std::vector<int> size_schedule;   // strictly increasing

  void validate() const;
  Bipartition dims_for(int size) const;
};

// The predicted transition point for a (criterion, regime) pair: either a
// constant c0 on the catalog scale s ~ c * scale(n,k), or a fixed integer
// environment size.
struct ThresholdRule {
  enum class Form { ScaleConstant, FixedInteger };
  Form form = Form::ScaleConstant;
  double value = 0.0;
  std::string scale_name;
};

ThresholdRule predicted_threshold(const CriterionId& crit, Regime regime,
                                  std::optional<int> fixed_param);

// s = round(c * scale_factor); the fixed-s regimes use scale 1 so that the
// grid value is the environment size itself.
double scale_factor(const CriterionId& crit, Regime regime, const Bipartition& bp);

// Wilson score interval, clamped to [0,1]. Exact 0/1 endpoints at the
// degenerate rates.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double z = 1.96);

struct SweepCell {
  std::string criterion;
  std::string regime;
  int n = 0, k = 0;
  long long s = 0;
  double c = 0.0;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::int64_t undecided = 0;  // InNumerical verdicts (absolute reduction only)
  std::uint64_t master_seed = 0;
};

struct SweepResult {
  std::vector<SweepCell> rows;
};

// Default cap on generated Ginibre entries per trial (d*s); the environment
// variable ET_MAX_ENTRIES overrides it.
double default_entry_cap();

struct CellOptions {
  SearchBudget budget{};
  double max_entries = 0.0;  // 0 = default_entry_cap()
  int threads = 0;           // 0 = ET_THREADS or hardware concurrency
};

SweepCell run_cell(const CriterionId& crit, const RegimeSpec& regime, int size, double c,
                   std::int64_t trials, std::uint64_t master_seed,
                   const CellOptions& opts = {});

SweepResult run_sweep(const CriterionId& crit, const RegimeSpec& regime,
                      const std::vector<double>& c_grid, std::int64_t trials,
                      std::uint64_t master_seed, const CellOptions& opts = {});

void write_csv(std::ostream& os, const SweepResult& result);
std::string to_csv(const SweepResult& result);

// gnuplot script plotting p_hat vs c (one curve per size) over the given CSV,
// with a dashed vertical line at the predicted threshold when available.
std::string plot_script(const SweepResult& result, const std::string& csv_path,
                        std::optional<double> threshold);

struct SweepPlan {
  CriterionId criterion;
  RegimeSpec regime;
  std::vector<double> c_grid;
  std::int64_t trials = 0;
  std::uint64_t master_seed = 0;
};

// JSON sweep plan with exactly the fields of SweepPlan; unknown keys are
// rejected.
SweepPlan load_config(const std::string& json_text);

// Smallest eigenvalue of the reduction of rho = G G* / Tr(G G*), computed
// from the factor G without forming the n*k x n*k reduction. Exact route for
// sweeps with s much smaller than d; agrees with the dense path.
double reduction_min_eig_from_factor(const Eigen::MatrixXcd& g, const Bipartition& bp);

}  // namespace entlab
