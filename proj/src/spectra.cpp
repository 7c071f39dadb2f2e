#include "entlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace entlab {

namespace {

// After x = m + R sin(t), the edge square-root singularities cancel and the
// integrand of the continuous MP mass becomes the smooth
//   f(t) = R^2 cos^2(t) / (2 pi (m + R sin t)),   t in [-pi/2, pi/2].
struct MPIntegrand {
  double m, radius;
  double operator()(double t) const {
    const double st = std::sin(t);
    const double x = m + radius * st;
    // At c = 1 the support touches zero and the density pole cancels against
    // the cos^2 factor; use the factored form to avoid 0/0 at the endpoint.
    if (x <= (m - radius) + 1e-14 * m && m - radius <= 1e-14 * m)
      return radius * (1.0 - st) / (2.0 * M_PI);
    return radius * radius * (1.0 - st) * (1.0 + st) / (2.0 * M_PI * x);
  }
};

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

void require_positive_ratio(double c) {
  if (!(c > 0.0)) throw InvalidParams("MP law: ratio parameter must be positive");
}

}  // namespace

MPLaw MPLaw::for_ratio(double c) {
  require_positive_ratio(c);
  const double rt = std::sqrt(c);
  MPLaw law;
  law.c = c;
  law.left_edge = c > 1.0 ? (rt - 1.0) * (rt - 1.0) : 0.0;
  law.right_edge = (rt + 1.0) * (rt + 1.0);
  law.atom_mass = std::max(1.0 - c, 0.0);
  return law;
}

double MPLaw::support_left() const {
  const double rt = std::sqrt(c);
  return (rt - 1.0) * (rt - 1.0);
}

std::pair<double, double> mp_edges(double c) {
  const MPLaw law = MPLaw::for_ratio(c);
  return {law.left_edge, law.right_edge};
}

double mp_density(double c, double x) {
  require_positive_ratio(c);
  const double radicand = 4.0 * c - (x - 1.0 - c) * (x - 1.0 - c);
  if (radicand <= 0.0 || x <= 0.0) return 0.0;
  return std::sqrt(radicand) / (2.0 * M_PI * x);
}

double mp_cdf(double c, double x) {
  const MPLaw law = MPLaw::for_ratio(c);
  if (x < 0.0) return 0.0;
  const double lo = law.support_left();
  const double hi = std::min(x, law.right_edge);
  double cdf = law.atom_mass;
  if (hi > lo) {
    const double m = 1.0 + c;          // midpoint of the support
    const double radius = 2.0 * std::sqrt(c);
    const double t1 = hi >= law.right_edge
                          ? 0.5 * M_PI
                          : std::asin(std::clamp((hi - m) / radius, -1.0, 1.0));
    MPIntegrand f{m, radius};
    cdf += integrate([&f](double t) { return f(t); }, -0.5 * M_PI, t1, 1e-10);
  }
  return std::clamp(cdf, 0.0, 1.0);
}

double mp_quantile(double c, double q) {
  const MPLaw law = MPLaw::for_ratio(c);
  if (!(q > law.atom_mass) || !(q < 1.0))
    throw OutOfRange("mp_quantile: q must lie strictly between the atom mass and 1");
  // The CDF is continuous and strictly increasing on the support; bisect to
  // 1e-10 on x.
  double lo = law.support_left(), hi = law.right_edge;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (mp_cdf(c, mid) < q)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double semicircle_moment(int j) {
  if (j < 0) throw InvalidParams("semicircle_moment: order must be nonnegative");
  if (j % 2 == 1) return 0.0;
  const int m = j / 2;
  double catalan = 1.0;
  for (int i = 0; i < m; ++i) catalan = catalan * 2.0 * (2.0 * i + 1.0) / (i + 2.0);
  return catalan;
}

double two_sided_edge(double t) {
  if (!(t > 0.0) || t == 1.0)
    throw InvalidParams("two_sided_edge: requires t > 0 and t != 1");
  const double ratio = t > 1.0 ? t : 1.0 / t;
  const double rt = std::sqrt(ratio);
  return (rt - 1.0) * (rt - 1.0);
}

}  // namespace entlab
