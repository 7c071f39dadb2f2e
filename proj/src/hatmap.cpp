#include "entlab/hatmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entlab/sampling.hpp"

namespace entlab {

namespace {

// Two entries of x closer than this are treated as a repeated value: the
// corresponding eta is the coincidence root at the entry itself and the
// secular equation is only solved between distinct values.
constexpr double kCoincidenceTol = 1e-13;

// f(eta) = sum_j v_j / (v_j - eta) - 1 and its derivative. Strictly
// increasing between consecutive poles since every v_j is positive.
void secular_eval(const std::vector<double>& v, int r, double eta, double& f, double& fp) {
  f = -1.0;
  fp = 0.0;
  for (int j = 0; j < r; ++j) {
    const double diff = v[j] - eta;
    const double t = v[j] / diff;
    f += t;
    fp += t / diff;
  }
}

// Single root of the secular function in the open interval (lo, hi), found by
// bisection safeguarded with Newton steps (cf. Numerical Recipes rtsafe).
double solve_in_gap(const std::vector<double>& v, int r, double lo, double hi) {
  double a = lo, b = hi;
  double x = 0.5 * (a + b);
  for (int it = 0; it < 160; ++it) {
    double f, fp;
    secular_eval(v, r, x, f, fp);
    if (f == 0.0) return x;
    if (f > 0.0)
      b = x;
    else
      a = x;
    double xn = x - f / fp;
    if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
    if (xn == x || !(b > a)) break;
    x = xn;
  }
  return x;
}

std::vector<double> strip_zeros(const SimplexVector& x) {
  return {x.entries().begin(), x.entries().begin() + x.effective_rank()};
}

}  // namespace

SimplexVector::SimplexVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidSimplex("SimplexVector: empty");
  double sum = 0.0;
  for (double e : entries_) {
    if (!std::isfinite(e) || e < 0.0) throw InvalidSimplex("SimplexVector: entries must be >= 0");
    sum += e;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidSimplex("SimplexVector: entries must sum to 1");
  std::sort(entries_.begin(), entries_.end(), std::greater<double>());
  rank_ = 0;
  while (rank_ < static_cast<int>(entries_.size()) && entries_[rank_] > kRankTol) ++rank_;
  if (rank_ == 0) throw InvalidSimplex("SimplexVector: no entry above the rank tolerance");
}

SimplexVector SimplexVector::uniform(int r) {
  if (r < 1) throw InvalidSimplex("SimplexVector::uniform: r must be >= 1");
  return SimplexVector(std::vector<double>(r, 1.0 / r));
}

std::vector<double> secular_roots(const SimplexVector& x) {
  const std::vector<double> v = strip_zeros(x);
  const int r = static_cast<int>(v.size());
  if (r == 1) return {0.0};
  std::vector<double> etas(r);
  for (int i = 0; i + 1 < r; ++i) {
    if (v[i] - v[i + 1] <= kCoincidenceTol)
      etas[i] = v[i];
    else
      etas[i] = solve_in_gap(v, r, v[i + 1], v[i]);
  }
  // The negative root is bracketed by [-1, 0): f(0) = r - 1 > 0 and
  // f(-1) < 0 because sum v_j / (v_j + 1) < sum v_j = 1.
  etas[r - 1] = solve_in_gap(v, r, -1.0, 0.0);
  return etas;
}

HatDecomposition hat_vector(const SimplexVector& x, int n, int k) {
  if (n < 1 || k < 1) throw InvalidParams("hat_vector: factors must be >= 1");
  const int r = x.effective_rank();
  if (r > std::min(n, k))
    throw RankTooLarge("hat_vector: rank " + std::to_string(r) + " exceeds min(n,k)");
  HatDecomposition out{x, n, k, secular_roots(x), {}};
  out.hat.reserve(static_cast<std::size_t>(n) * k);
  for (int i = 0; i < r; ++i) {
    for (int c = 0; c < k - 1; ++c) out.hat.push_back(x[i]);
    if (i + 1 < r) out.hat.push_back(out.etas[i]);
  }
  out.hat.insert(out.hat.end(), static_cast<std::size_t>(n - r) * k, 0.0);
  out.hat.push_back(out.etas[r - 1]);
  return out;
}

namespace {

// Shared state for repeated inner-product evaluations against one spectrum.
// By interlacing, hat(x) sorted descending is exactly the layout of
// hat_vector, so the pairing with lambda-descending reduces to block tail
// sums: eta_r meets lambda_1, each x_i block meets k-1 consecutive entries
// counted from the bottom, and eta_i meets the entry just above its block.
struct InnerEvaluator {
  const std::vector<double>* lam = nullptr;  // descending
  std::vector<double> tail;                  // tail[p] = sum of lam[p..d-1]
  int n = 0, k = 0;

  void init(const std::vector<double>& lambda, int n_, int k_) {
    lam = &lambda;
    n = n_;
    k = k_;
    const int d = static_cast<int>(lambda.size());
    tail.assign(static_cast<std::size_t>(d) + 1, 0.0);
    for (int p = d - 1; p >= 0; --p) tail[p] = tail[p + 1] + lambda[p];
  }

  double eval(const std::vector<double>& v, const std::vector<double>& etas) const {
    const int r = static_cast<int>(v.size());
    double inner = 0.0;
    for (int i = 0; i < r; ++i) {
      const int q = (n - 1 - i) * k;
      inner += v[i] * (tail[q + 1] - tail[q + k]);
      if (i + 1 < r) inner += etas[i] * (*lam)[q];
    }
    inner += etas[r - 1] * (*lam)[0];
    return inner;
  }

  double eval(const SimplexVector& x) const {
    return eval(strip_zeros(x), secular_roots(x));
  }
};

// Tracks the best (lowest, then lexicographically smallest witness) candidate.
struct BestTracker {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> witness;

  void consider(double v, const std::vector<double>& x) {
    if (v < value || (v == value && (witness.empty() || x < witness))) {
      value = v;
      witness = x;
    }
  }
};

std::vector<double> softmax_point(const std::vector<double>& y) {
  // Gauge: an implicit final coordinate fixed at 0.
  double ymax = 0.0;
  for (double t : y) ymax = std::max(ymax, t);
  std::vector<double> x(y.size() + 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) sum += (x[i] = std::exp(y[i] - ymax));
  sum += (x[y.size()] = std::exp(-ymax));
  for (double& t : x) t /= sum;
  std::sort(x.begin(), x.end(), std::greater<double>());
  return x;
}

// Nelder-Mead over softmax coordinates, dimension r-1.
void nelder_mead(const InnerEvaluator& ev, BestTracker& best, std::vector<double> y0,
                 const SearchBudget& budget) {
  const int dim = static_cast<int>(y0.size());
  auto objective = [&](const std::vector<double>& y) {
    std::vector<double> x = softmax_point(y);
    int r = 0;
    while (r < static_cast<int>(x.size()) && x[r] > kRankTol) ++r;
    std::vector<double> v(x.begin(), x.begin() + r);
    const double val = ev.eval(v, secular_roots(SimplexVector(x)));
    best.consider(val, x);
    return val;
  };

  std::vector<std::vector<double>> pts(dim + 1, y0);
  std::vector<double> fv(dim + 1);
  for (int i = 0; i < dim; ++i) pts[i + 1][i] += 0.5;
  for (int i = 0; i <= dim; ++i) fv[i] = objective(pts[i]);

  for (int iter = 0; iter < budget.max_iters; ++iter) {
    // Order: best first, worst last.
    std::vector<int> idx(dim + 1);
    for (int i = 0; i <= dim; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    if (fv[idx[dim]] - fv[idx[0]] < budget.tol) break;

    std::vector<double> centroid(dim, 0.0);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) centroid[j] += pts[idx[i]][j] / dim;
    const int worst = idx[dim];

    auto blend = [&](double t) {
      std::vector<double> p(dim);
      for (int j = 0; j < dim; ++j) p[j] = centroid[j] + t * (centroid[j] - pts[worst][j]);
      return p;
    };

    std::vector<double> refl = blend(1.0);
    const double f_refl = objective(refl);
    if (f_refl < fv[idx[0]]) {
      std::vector<double> expd = blend(2.0);
      const double f_expd = objective(expd);
      if (f_expd < f_refl) {
        pts[worst] = std::move(expd);
        fv[worst] = f_expd;
      } else {
        pts[worst] = std::move(refl);
        fv[worst] = f_refl;
      }
    } else if (f_refl < fv[idx[dim - 1]]) {
      pts[worst] = std::move(refl);
      fv[worst] = f_refl;
    } else {
      std::vector<double> contr = blend(f_refl < fv[worst] ? 0.5 : -0.5);
      const double f_contr = objective(contr);
      if (f_contr < std::min(f_refl, fv[worst])) {
        pts[worst] = std::move(contr);
        fv[worst] = f_contr;
      } else {
        // Shrink toward the best vertex.
        for (int i = 0; i <= dim; ++i) {
          if (i == idx[0]) continue;
          for (int j = 0; j < dim; ++j)
            pts[i][j] = 0.5 * (pts[i][j] + pts[idx[0]][j]);
          fv[i] = objective(pts[i]);
        }
      }
    }
  }
}

}  // namespace

double ared_inner(const SpectrumVector& lambda, const SimplexVector& x, int n, int k) {
  if (lambda.dim() != n * k)
    throw ShapeError("ared_inner: spectrum length must equal n*k");
  if (x.effective_rank() > std::min(n, k))
    throw RankTooLarge("ared_inner: rank of x exceeds min(n,k)");
  InnerEvaluator ev;
  ev.init(lambda.entries(), n, k);
  return ev.eval(x);
}

MinInnerResult ared_min_inner(const SpectrumVector& lambda, int n, int k,
                              const SearchBudget& budget) {
  budget.validate();
  if (lambda.dim() != n * k)
    throw ShapeError("ared_min_inner: spectrum length must equal n*k");
  const int rmax = std::min(n, k);
  InnerEvaluator ev;
  ev.init(lambda.entries(), n, k);
  BestTracker best;

  for (int r = 1; r <= rmax; ++r) {
    std::vector<std::vector<double>> starts;
    starts.push_back(std::vector<double>(r, 1.0 / r));
    Xoshiro256pp rng(derive_trial_seed(budget.seed, static_cast<std::uint64_t>(r)));
    for (int sidx = 0; sidx < budget.random_starts; ++sidx) {
      std::vector<double> x(r);
      double sum = 0.0;
      for (double& t : x) sum += (t = -std::log(rng.uniform_open01()));
      for (double& t : x) t /= sum;
      std::sort(x.begin(), x.end(), std::greater<double>());
      starts.push_back(std::move(x));
    }
    for (const auto& start : starts) {
      best.consider(ev.eval(SimplexVector(start)), start);
      if (r >= 2) {
        std::vector<double> y(r - 1);
        const double base = std::log(std::max(start[r - 1], 1e-300));
        for (int i = 0; i + 1 < r; ++i) y[i] = std::log(std::max(start[i], 1e-300)) - base;
        nelder_mead(ev, best, std::move(y), budget);
      }
    }
  }
  return {best.value, SimplexVector(best.witness)};
}

}  // namespace entlab
