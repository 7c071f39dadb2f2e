#include "entlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "entlab/numfmt.hpp"

namespace entlab {

namespace {

constexpr double kDefaultEntryCap = 2e8;

int default_thread_count() {
  if (const char* env = std::getenv("ET_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. Work is claimed
// through an atomic counter; outputs must be written to per-index slots so
// the result is independent of scheduling.
void parallel_for_index(std::int64_t count, int threads,
                        const std::function<void(std::int64_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int nw = static_cast<int>(std::min<std::int64_t>(threads, count));
  pool.reserve(static_cast<std::size_t>(nw));
  for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

SpectrumVector spectrum_from_wishart(const WishartSpectrum& ws,
                                     std::optional<Bipartition> bp) {
  std::vector<double> entries(ws.eigenvalues.data(),
                              ws.eigenvalues.data() + ws.eigenvalues.size());
  double sum = 0.0;
  for (double& e : entries) sum += (e = std::max(e, 0.0));
  for (double& e : entries) e /= sum;
  return SpectrumVector(std::move(entries), bp);
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void bad_pair(const CriterionId& crit, Regime regime) {
  throw NotInCatalog("no threshold catalog row for criterion '" + crit.name() +
                     "' in regime '" + to_string(regime) + "'");
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Balanced: return "balanced";
    case Regime::FirstUnbalanced: return "first-unbalanced";
    case Regime::SecondUnbalanced: return "second-unbalanced";
    case Regime::TotalDim: return "total-dim";
  }
  return "?";
}

Regime parse_regime(const std::string& name) {
  const std::string s = lowercase(name);
  if (s == "balanced") return Regime::Balanced;
  if (s == "first-unbalanced") return Regime::FirstUnbalanced;
  if (s == "second-unbalanced") return Regime::SecondUnbalanced;
  if (s == "total-dim") return Regime::TotalDim;
  throw InvalidParams("unknown regime '" + name +
                      "' (expected balanced, first-unbalanced, second-unbalanced, total-dim)");
}

CriterionId CriterionId::parse(const std::string& name) {
  const std::string s = lowercase(name);
  CriterionId id;
  if (s == "red") { id.kind = Kind::Red; return id; }
  if (s == "ared") { id.kind = Kind::Ared; return id; }
  if (s == "ger") { id.kind = Kind::Ger; return id; }
  if (s == "sepball") { id.kind = Kind::SepBall; return id; }
  if (s == "appt") { id.kind = Kind::Appt; return id; }
  if (s == "sep") { id.kind = Kind::Sep; return id; }
  if (s == "ppt") { id.kind = Kind::Ppt; return id; }
  if (s == "rln") { id.kind = Kind::Rln; return id; }
  if (s.rfind("ls:", 0) == 0) {
    id.kind = Kind::Ls;
    const std::string arg = s.substr(3);
    if (arg == "o") {
      id.ls_rule = LsRule::SmallGrowing;
      return id;
    }
    try {
      if (!arg.empty() && arg[0] == 't') {
        id.ls_rule = LsRule::Fraction;
        std::size_t used = 0;
        id.t = std::stod(arg.substr(1), &used);
        if (used != arg.size() - 1 || !(id.t > 0.0) || !(id.t < 1.0))
          throw InvalidParams("ls fraction must lie in (0,1)");
        return id;
      }
      std::size_t used = 0;
      id.p = std::stoi(arg, &used);
      if (used != arg.size() || id.p < 1) throw std::invalid_argument("p");
      id.ls_rule = LsRule::FixedP;
      return id;
    } catch (const InvalidParams&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidParams("bad ls criterion '" + name + "' (use ls:<p>, ls:o or ls:t<frac>)");
    }
  }
  throw InvalidParams("unknown criterion '" + name + "'");
}

std::string CriterionId::name() const {
  switch (kind) {
    case Kind::Red: return "red";
    case Kind::Ared: return "ared";
    case Kind::Ger: return "ger";
    case Kind::SepBall: return "sepball";
    case Kind::Appt: return "appt";
    case Kind::Sep: return "sep";
    case Kind::Ppt: return "ppt";
    case Kind::Rln: return "rln";
    case Kind::Ls:
      switch (ls_rule) {
        case LsRule::FixedP: return "ls:" + std::to_string(p);
        case LsRule::SmallGrowing: return "ls:o";
        case LsRule::Fraction: return "ls:t" + format_shortest(t);
      }
  }
  return "?";
}

bool CriterionId::sweepable() const {
  switch (kind) {
    case Kind::Red:
    case Kind::Ared:
    case Kind::Ger:
    case Kind::SepBall:
    case Kind::Ls:
      return true;
    default:
      return false;
  }
}

int CriterionId::concrete_p(int d) const {
  switch (ls_rule) {
    case LsRule::FixedP: return p;
    case LsRule::SmallGrowing:
      // Finite-size stand-in for a slowly growing parameter.
      return std::max(2, static_cast<int>(std::floor(std::sqrt(static_cast<double>(d)))));
    case LsRule::Fraction: return std::max(1, static_cast<int>(std::floor(t * d)));
  }
  return p;
}

void RegimeSpec::validate() const {
  const bool needs_fixed =
      kind == Regime::FirstUnbalanced || kind == Regime::SecondUnbalanced;
  if (needs_fixed != fixed_param.has_value())
    throw InvalidParams(needs_fixed ? "regime requires fixed_param"
                                    : "regime does not take fixed_param");
  if (fixed_param && *fixed_param < 1) throw InvalidParams("fixed_param must be >= 1");
  if (size_schedule.empty()) throw InvalidParams("size schedule is empty");
  for (std::size_t i = 0; i < size_schedule.size(); ++i) {
    if (size_schedule[i] < 1) throw InvalidParams("sizes must be >= 1");
    if (i > 0 && size_schedule[i] <= size_schedule[i - 1])
      throw InvalidParams("size schedule must be strictly increasing");
  }
}

Bipartition RegimeSpec::dims_for(int size) const {
  switch (kind) {
    case Regime::Balanced: return {size, size};
    case Regime::FirstUnbalanced: return {fixed_param.value(), size};
    case Regime::SecondUnbalanced: return {size, fixed_param.value()};
    case Regime::TotalDim: return {1, size};
  }
  throw InvalidParams("bad regime");
}

ThresholdRule predicted_threshold(const CriterionId& crit, Regime regime,
                                  std::optional<int> fixed_param) {
  using Kind = CriterionId::Kind;
  const auto fixed = [&](const char* what) {
    if (!fixed_param || *fixed_param < 1)
      throw InvalidParams(std::string("threshold for this regime needs ") + what);
    return *fixed_param;
  };
  switch (crit.kind) {
    case Kind::Red:
      if (regime == Regime::Balanced) return {ThresholdRule::Form::ScaleConstant, 1.0, "c*n"};
      if (regime == Regime::FirstUnbalanced)
        return {ThresholdRule::Form::FixedInteger, static_cast<double>(fixed("n")), "s"};
      if (regime == Regime::SecondUnbalanced) {
        const int k = fixed("k");
        if (k < 2) throw InvalidParams("red second-unbalanced threshold needs k >= 2");
        const double rt = std::sqrt(static_cast<double>(k + 1));
        return {ThresholdRule::Form::ScaleConstant, (1.0 + rt) * (1.0 + rt) / (k * (k - 1.0)),
                "c*n*k"};
      }
      bad_pair(crit, regime);
    case Kind::Ared:
      if (regime == Regime::Balanced)
        return {ThresholdRule::Form::ScaleConstant, 1.0, "c*n*k"};
      if (regime == Regime::FirstUnbalanced)
        return {ThresholdRule::Form::ScaleConstant, static_cast<double>(fixed("n")) - 2.0,
                "c*k"};
      if (regime == Regime::SecondUnbalanced) {
        const int k = fixed("k");
        const double base = 1.0 + 2.0 / k + 2.0 / k * std::sqrt(static_cast<double>(k + 1));
        return {ThresholdRule::Form::ScaleConstant, base * base, "c*n*k"};
      }
      bad_pair(crit, regime);
    case Kind::Ger:
    case Kind::Appt: {
      if (regime == Regime::Balanced)
        return {ThresholdRule::Form::ScaleConstant, 4.0, "c*min(n,k)^2*n*k"};
      if (regime == Regime::FirstUnbalanced || regime == Regime::SecondUnbalanced) {
        const int m = fixed("the fixed factor m");
        if (m < 1) throw InvalidParams("m must be >= 1");
        const double md = m;
        const double val = (md + std::sqrt(md * md - 1.0)) * (md + std::sqrt(md * md - 1.0));
        return {ThresholdRule::Form::ScaleConstant, val, "c*n*k"};
      }
      bad_pair(crit, regime);
    }
    case Kind::Ls: {
      if (regime != Regime::TotalDim) bad_pair(crit, regime);
      switch (crit.ls_rule) {
        case CriterionId::LsRule::FixedP: {
          if (crit.p < 2)
            throw NotInCatalog("ls threshold is catalogued for fixed p >= 2 only");
          const double rt = std::sqrt(static_cast<double>(crit.p));
          const double base = 1.0 + 2.0 / (rt - 1.0);
          return {ThresholdRule::Form::ScaleConstant, base * base, "c*d"};
        }
        case CriterionId::LsRule::SmallGrowing:
          return {ThresholdRule::Form::ScaleConstant, 1.0, "c*d"};
        case CriterionId::LsRule::Fraction:
          return {ThresholdRule::Form::ScaleConstant, 1.0 - crit.t, "c*d"};
      }
      bad_pair(crit, regime);
    }
    case Kind::SepBall:
      if (regime != Regime::TotalDim) bad_pair(crit, regime);
      return {ThresholdRule::Form::ScaleConstant, 1.0, "c*d^2"};
    case Kind::Sep:
      throw NotInCatalog(
          "sep is not in the threshold catalog: only two-sided bounds are known "
          "(balanced: n^3 <~ s <~ n^3 log^2 n; unbalanced: m n k <~ s <~ m n k log^2(nk)); "
          "there is no point value to report");
    case Kind::Ppt:
      throw NotInCatalog(
          "ppt is not in the threshold catalog (survey values c=4 balanced and "
          "c=2+2 sqrt(1-1/m^2) unbalanced at s ~ c n k); no ppt threshold is implemented here");
    case Kind::Rln:
      throw NotInCatalog(
          "rln is not in the threshold catalog (survey values c=(8/(3 pi))^2 balanced at "
          "s ~ c n k and fixed s = m^2 unbalanced); no rln predicate is implemented here");
  }
  bad_pair(crit, regime);
}

double scale_factor(const CriterionId& crit, Regime regime, const Bipartition& bp) {
  using Kind = CriterionId::Kind;
  const double n = bp.n, k = bp.k, d = bp.dim();
  switch (crit.kind) {
    case Kind::Red:
      if (regime == Regime::Balanced) return n;
      if (regime == Regime::FirstUnbalanced) return 1.0;
      if (regime == Regime::SecondUnbalanced) return n * k;
      break;
    case Kind::Ared:
      if (regime == Regime::Balanced || regime == Regime::SecondUnbalanced) return n * k;
      if (regime == Regime::FirstUnbalanced) return k;
      break;
    case Kind::Ger:
    case Kind::Appt: {
      const double m = std::min(n, k);
      if (regime == Regime::Balanced) return m * m * n * k;
      if (regime == Regime::FirstUnbalanced || regime == Regime::SecondUnbalanced)
        return n * k;
      break;
    }
    case Kind::Ls:
      if (regime == Regime::TotalDim) return d;
      break;
    case Kind::SepBall:
      if (regime == Regime::TotalDim) return d * d;
      break;
    default:
      break;
  }
  bad_pair(crit, regime);
}

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double z) {
  if (trials < 1) throw InvalidParams("wilson_interval: trials must be >= 1");
  if (successes < 0 || successes > trials)
    throw InvalidParams("wilson_interval: successes out of range");
  const double nn = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // The analytic endpoints at the degenerate rates are exactly 0 and 1.
  const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

double default_entry_cap() {
  if (const char* env = std::getenv("ET_MAX_ENTRIES")) {
    const double v = std::atof(env);
    if (v > 0.0) return v;
  }
  return kDefaultEntryCap;
}

double reduction_min_eig_from_factor(const Eigen::MatrixXcd& g, const Bipartition& bp) {
  const int n = bp.n, k = bp.k;
  const int d = bp.dim();
  const int s = static_cast<int>(g.cols());
  if (g.rows() != d) throw ShapeError("reduction_min_eig_from_factor: rows != n*k");
  const double trace_w = g.squaredNorm();

  // W_A = H H* for the n x (k s) reshaping of G.
  Eigen::MatrixXcd wa = Eigen::MatrixXcd::Zero(n, n);
  {
    Eigen::MatrixXcd h(n, static_cast<Eigen::Index>(k) * s);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < k; ++a)
        h.row(i).segment(static_cast<Eigen::Index>(a) * s, s) = g.row(i * k + a);
    wa.selfadjointView<Eigen::Lower>().rankUpdate(h);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(wa);
  if (es.info() != Eigen::Success)
    throw InvalidMatrix("reduction_min_eig_from_factor: eigensolver failed");
  const Eigen::VectorXd w = es.eigenvalues();  // ascending
  const Eigen::MatrixXcd& u = es.eigenvectors();

  // C = (U* (x) I_k) G, stored as one k x s block per eigenvalue of W_A, and
  // the Gram matrices P_j = C_j* C_j of those blocks.
  std::vector<Eigen::MatrixXcd> gram(static_cast<std::size_t>(n));
  {
    Eigen::MatrixXcd cj(k, s);
    for (int j = 0; j < n; ++j) {
      for (int a = 0; a < k; ++a) {
        cj.row(a).setZero();
        for (int i = 0; i < n; ++i) cj.row(a) += std::conj(u(i, j)) * g.row(i * k + a);
      }
      gram[static_cast<std::size_t>(j)] = cj.adjoint() * cj;
    }
  }

  // In the eigenbasis of W_A (x) I_k the reduction is D - C C* with
  // D = diag(w_j, each k times). For a below every w_j, the number of
  // eigenvalues of D - C C* below a equals the number of negative eigenvalues
  // of S(a) = I_s - sum_j P_j / (w_j - a) (Haynsworth inertia additivity),
  // which pins the smallest eigenvalue by bisection.
  const double w_min = w(0);
  double lo = w_min - trace_w - 1.0;  // lambda_max(C C*) <= ||C||_F^2 = Tr W
  double hi = w_min;
  Eigen::MatrixXcd smat(s, s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ses;
  for (int iter = 0; iter < 110 && hi - lo > 1e-13 * std::max({1.0, std::abs(lo)}); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    smat.setIdentity(s, s);
    for (int j = 0; j < n; ++j) smat -= gram[static_cast<std::size_t>(j)] / (w(j) - mid);
    ses.compute(smat, Eigen::EigenvaluesOnly);
    if (ses.eigenvalues()(0) < 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi / trace_w;
}

namespace {

VerdictStatus run_red_trial(const Bipartition& bp, long long s, const SeedSpec& seed) {
  const int d = bp.dim();
  if (3 * s <= d) {
    const Eigen::MatrixXcd g = sample_ginibre(d, static_cast<int>(s), seed);
    const double margin = reduction_min_eig_from_factor(g, bp);
    // Scale bound for the tolerance: ||W_A|| dominates the positive part.
    const double norm_bound = std::max(1.0, std::abs(margin));
    return margin >= -kDecisionTol * norm_bound ? VerdictStatus::InCertified
                                                : VerdictStatus::Out;
  }
  const HermitianMatrix rho = sample_induced_state(bp.n, bp.k, static_cast<int>(s), seed);
  const Eigen::VectorXd ev = hermitian_eigenvalues(reduction_B(rho, bp));
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -kDecisionTol * std::max(1.0, norm) ? VerdictStatus::InCertified
                                                      : VerdictStatus::Out;
}

VerdictStatus run_spectral_trial(const CriterionId& crit, const Bipartition& bp,
                                 long long s, const SeedSpec& seed,
                                 const SearchBudget& budget) {
  const int d = bp.dim();
  const WishartSpectrum ws =
      sample_wishart_spectrum(WishartParams(d, static_cast<int>(s)), seed);
  const SpectrumVector lambda = spectrum_from_wishart(ws, bp);
  switch (crit.kind) {
    case CriterionId::Kind::Ared: return check_ared(lambda, bp, budget).status;
    case CriterionId::Kind::Ger: return check_ger(lambda, bp).status;
    case CriterionId::Kind::SepBall: return check_sepball(lambda).status;
    case CriterionId::Kind::Ls: {
      const int p = crit.concrete_p(d);
      if (p > d) throw InvalidParams("ls parameter exceeds the total dimension");
      return check_ls_p(lambda, p).status;
    }
    default: break;
  }
  throw InvalidParams("criterion '" + crit.name() + "' has no sampling predicate");
}

}  // namespace

SweepCell run_cell(const CriterionId& crit, const RegimeSpec& regime, int size, double c,
                   std::int64_t trials, std::uint64_t master_seed, const CellOptions& opts) {
  if (!crit.sweepable())
    throw InvalidParams("criterion '" + crit.name() + "' has no predicate to sweep");
  if (trials < 0) throw InvalidParams("run_cell: trials must be >= 0");
  const Bipartition bp = regime.dims_for(size);
  const int d = bp.dim();
  if (crit.kind == CriterionId::Kind::SepBall && d < 2)
    throw InvalidParams("sepball needs total dimension >= 2");
  // Validate the catalog pair (throws NotInCatalog otherwise).
  const double sf = scale_factor(crit, regime.kind, bp);
  const long long s = std::llround(c * sf);
  if (s < 1) throw InvalidParams("run_cell: environment dimension rounds below 1");

  const double cap = opts.max_entries > 0.0 ? opts.max_entries : default_entry_cap();
  if (static_cast<double>(d) * static_cast<double>(s) > cap)
    throw ResourceLimit("run_cell: d*s = " + std::to_string(d) + "*" + std::to_string(s) +
                        " exceeds the entry cap " + format_shortest(cap) +
                        " (override with ET_MAX_ENTRIES)");

  SweepCell cell;
  cell.criterion = crit.name();
  cell.regime = to_string(regime.kind);
  cell.n = bp.n;
  cell.k = bp.k;
  cell.s = s;
  cell.c = c;
  cell.trials = trials;
  cell.master_seed = master_seed;

  if (trials == 0) {
    cell.p_hat = std::numeric_limits<double>::quiet_NaN();
    cell.ci_low = std::numeric_limits<double>::quiet_NaN();
    cell.ci_high = std::numeric_limits<double>::quiet_NaN();
    return cell;
  }

  std::vector<VerdictStatus> verdicts(static_cast<std::size_t>(trials));
  const int threads = opts.threads > 0 ? opts.threads : default_thread_count();
  parallel_for_index(trials, threads, [&](std::int64_t t) {
    const SeedSpec seed{master_seed, static_cast<std::uint64_t>(t)};
    verdicts[static_cast<std::size_t>(t)] =
        crit.kind == CriterionId::Kind::Red
            ? run_red_trial(bp, s, seed)
            : run_spectral_trial(crit, bp, s, seed, opts.budget);
  });

  for (VerdictStatus v : verdicts) {
    if (v != VerdictStatus::Out) ++cell.successes;
    if (v == VerdictStatus::InNumerical) ++cell.undecided;
  }
  cell.p_hat = static_cast<double>(cell.successes) / static_cast<double>(trials);
  std::tie(cell.ci_low, cell.ci_high) = wilson_interval(cell.successes, trials);
  return cell;
}

SweepResult run_sweep(const CriterionId& crit, const RegimeSpec& regime,
                      const std::vector<double>& c_grid, std::int64_t trials,
                      std::uint64_t master_seed, const CellOptions& opts) {
  regime.validate();
  if (c_grid.empty()) throw InvalidParams("run_sweep: empty c grid");
  std::vector<double> grid = c_grid;
  std::sort(grid.begin(), grid.end());
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] == grid[i - 1]) throw InvalidParams("run_sweep: duplicate c values");

  SweepResult result;
  for (int size : regime.size_schedule)
    for (double c : grid) result.rows.push_back(run_cell(crit, regime, size, c, trials,
                                                         master_seed, opts));
  return result;
}

void write_csv(std::ostream& os, const SweepResult& result) {
  os << "criterion,regime,n,k,s,c,trials,successes,p_hat,ci_low,ci_high,undecided,"
        "master_seed\n";
  for (const SweepCell& r : result.rows) {
    os << r.criterion << ',' << r.regime << ',' << r.n << ',' << r.k << ',' << r.s << ','
       << format_sig17(r.c) << ',' << r.trials << ',' << r.successes << ','
       << format_sig17(r.p_hat) << ',' << format_sig17(r.ci_low) << ','
       << format_sig17(r.ci_high) << ',' << r.undecided << ',' << r.master_seed << '\n';
  }
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  write_csv(os, result);
  return os.str();
}

std::string plot_script(const SweepResult& result, const std::string& csv_path,
                        std::optional<double> threshold) {
  std::vector<std::pair<int, int>> sizes;
  for (const SweepCell& r : result.rows) {
    const std::pair<int, int> nk{r.n, r.k};
    if (std::find(sizes.begin(), sizes.end(), nk) == sizes.end()) sizes.push_back(nk);
  }
  std::ostringstream os;
  os << "# p_hat vs c per system size; generated alongside " << csv_path << "\n";
  os << "set datafile separator ','\n";
  os << "set xlabel 'c'\n";
  os << "set ylabel 'fraction of trials in the set'\n";
  os << "set yrange [-0.05:1.05]\n";
  os << "set key top left\n";
  if (threshold)
    os << "set arrow 1 from " << format_sig17(*threshold) << ",graph 0 to "
       << format_sig17(*threshold) << ",graph 1 nohead dashtype 2 lc rgb 'gray40'\n";
  os << "plot \\\n";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto [n, k] = sizes[i];
    os << "  '" << csv_path << "' every ::1 using ($3==" << n << " && $4==" << k
       << " ? $6 : 1/0):9:10:11 with yerrorlines title 'n=" << n << ", k=" << k << "'";
    os << (i + 1 < sizes.size() ? ", \\\n" : "\n");
  }
  return os.str();
}

SweepPlan load_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw InvalidParams(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidParams("config: top level must be an object");
  static const std::vector<std::string> known{"criterion", "regime",      "fixed_param",
                                              "sizes",     "c_grid",      "trials",
                                              "master_seed"};
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw InvalidParams("config: unknown key '" + item.key() + "'");
  for (const char* req : {"criterion", "regime", "sizes", "c_grid", "trials"})
    if (!j.contains(req)) throw InvalidParams(std::string("config: missing key '") + req + "'");

  SweepPlan plan;
  try {
    plan.criterion = CriterionId::parse(j.at("criterion").get<std::string>());
    plan.regime.kind = parse_regime(j.at("regime").get<std::string>());
    if (j.contains("fixed_param")) plan.regime.fixed_param = j.at("fixed_param").get<int>();
    plan.regime.size_schedule = j.at("sizes").get<std::vector<int>>();
    plan.c_grid = j.at("c_grid").get<std::vector<double>>();
    plan.trials = j.at("trials").get<std::int64_t>();
    plan.master_seed = j.value("master_seed", std::uint64_t{0});
  } catch (const InvalidParams&) {
    throw;
  } catch (const std::exception& e) {
    throw InvalidParams(std::string("config: ") + e.what());
  }
  plan.regime.validate();
  if (plan.trials < 0) throw InvalidParams("config: trials must be >= 0");
  return plan;
}

}  // namespace entlab
