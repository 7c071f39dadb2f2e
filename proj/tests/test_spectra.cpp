#include <doctest.h>

#include <cmath>
#include <functional>

#include "entlab/sampling.hpp"
#include "entlab/spectra.hpp"

using namespace entlab;

namespace {

// Independent quadrature oracle: tanh-sinh integration handles the inverse
// square-root edge singularities of the MP density without any substitution,
// so it shares no code path with the adaptive-Simpson implementation.
double tanh_sinh_integrate(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b), radius = 0.5 * (b - a);
  auto node = [&](double t) {
    const double u = 0.5 * M_PI * std::sinh(t);
    const double x = center + radius * std::tanh(u);
    const double ch = std::cosh(u);
    const double w = radius * 0.5 * M_PI * std::cosh(t) / (ch * ch);
    if (!(x > a) || !(x < b) || !std::isfinite(w) || w <= 0.0) return 0.0;
    return f(x) * w;
  };
  double prev = 0.0;
  for (int level = 0; level <= 9; ++level) {
    const double h = 1.0 / static_cast<double>(1 << level);
    const int kmax = static_cast<int>(6.0 / h);
    double sum = 0.0;
    for (int k = -kmax; k <= kmax; ++k) {
      if (level > 0 && k % 2 == 0) continue;
      sum += node(k * h);
    }
    const double result = level == 0 ? h * sum : 0.5 * prev + h * sum;
    if (level > 3 && std::abs(result - prev) <= 1e-12 * std::max(1.0, std::abs(result)))
      return result;
    prev = result;
  }
  return prev;
}

double oracle_cdf(double c, double x) {
  const MPLaw law = MPLaw::for_ratio(c);
  const double hi = std::min(x, law.right_edge);
  double value = x >= 0.0 ? law.atom_mass : 0.0;
  if (hi > law.support_left())
    value += tanh_sinh_integrate([c](double t) { return mp_density(c, t); },
                                 law.support_left(), hi);
  return value;
}

}  // namespace

TEST_SUITE_BEGIN("spectra");

TEST_CASE("edges and atom") {
  CHECK(mp_edges(4).first == doctest::Approx(1).epsilon(1e-14));
  CHECK(mp_edges(4).second == doctest::Approx(9).epsilon(1e-14));
  CHECK(mp_edges(1).first == 0.0);
  CHECK(mp_edges(1).second == doctest::Approx(4).epsilon(1e-14));
  const MPLaw law = MPLaw::for_ratio(0.25);
  CHECK(law.left_edge == 0.0);
  CHECK(law.right_edge == doctest::Approx(2.25).epsilon(1e-14));
  CHECK(law.atom_mass == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(law.support_left() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(mp_edges(0.0), InvalidParams);
  CHECK_THROWS_AS(mp_edges(-1.0), InvalidParams);
}

TEST_CASE("density values and support boundary") {
  CHECK(mp_density(1, 2) == doctest::Approx(0.15915494309189535).epsilon(1e-12));
  CHECK(mp_density(4, 9) == 0.0);    // right edge
  CHECK(mp_density(4, 0.5) == 0.0);  // below support
  CHECK(mp_density(0.5, 3.0) == 0.0);
  CHECK(mp_density(4, 4) == doctest::Approx(0.15410111101537496).epsilon(1e-10));
}

TEST_CASE("continuous mass integrates to min(c,1)") {
  for (double c : {0.5, 1.0, 2.0, 4.0}) {
    const MPLaw law = MPLaw::for_ratio(c);
    const double mass = tanh_sinh_integrate([c](double x) { return mp_density(c, x); },
                                            law.support_left(), law.right_edge);
    CHECK(std::abs(mass - std::min(c, 1.0)) <= 1e-8);
    CHECK(std::abs((mass + law.atom_mass) - 1.0) <= 1e-8);
  }
}

TEST_CASE("cdf endpoints, atom and quadrature oracle agreement") {
  CHECK(mp_cdf(0.5, -0.5) == 0.0);
  CHECK(mp_cdf(0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-12));  // atom only
  CHECK(mp_cdf(4, 0.5) == 0.0);
  CHECK(std::abs(mp_cdf(4, 9) - 1.0) <= 1e-8);
  CHECK(std::abs(mp_cdf(1, 4) - 1.0) <= 1e-8);
  // Frozen oracle value for the half-way point of the square case.
  CHECK(mp_cdf(1, 1) == doctest::Approx(0.60899778104419588).epsilon(1e-8));
  for (double c : {0.5, 1.0, 4.0})
    for (double x : {0.3, 0.9, 1.7, 3.2, 6.0})
      CHECK(std::abs(mp_cdf(c, x) - oracle_cdf(c, x)) <= 1e-8);
}

TEST_CASE("cdf is monotone") {
  double prev = -1.0;
  for (double x = 0.0; x <= 10.0; x += 0.25) {
    const double v = mp_cdf(4, x);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("quantiles: frozen oracle values, edges, round trip") {
  CHECK(mp_quantile(4, 0.5) == doctest::Approx(3.6640162827464486).epsilon(1e-7));
  CHECK(mp_quantile(4, 0.1) == doctest::Approx(1.5915230234359392).epsilon(1e-7));
  CHECK(mp_quantile(4, 0.999999) == doctest::Approx(9.0).epsilon(1e-3));
  CHECK(mp_quantile(4, 1e-9) == doctest::Approx(1.0).epsilon(1e-3));
  // For c < 1 the quantile starts just above the atom.
  CHECK(mp_quantile(0.5, 0.500001) >= MPLaw::for_ratio(0.5).support_left());
  for (double x : {1.5, 2.5, 5.0, 8.0}) {
    const double q = mp_cdf(4, x);
    CHECK(mp_quantile(4, q) == doctest::Approx(x).epsilon(1e-6));
  }
  CHECK_THROWS_AS(mp_quantile(0.5, 0.4), OutOfRange);  // below the atom mass
  CHECK_THROWS_AS(mp_quantile(0.5, 0.5), OutOfRange);
  CHECK_THROWS_AS(mp_quantile(2, 1.0), OutOfRange);
}

TEST_CASE("semicircle moments are Catalan numbers") {
  CHECK(semicircle_moment(0) == 1.0);
  CHECK(semicircle_moment(2) == 1.0);
  CHECK(semicircle_moment(4) == 2.0);
  CHECK(semicircle_moment(6) == 5.0);
  CHECK(semicircle_moment(8) == 14.0);
  CHECK(semicircle_moment(3) == 0.0);
  CHECK(semicircle_moment(7) == 0.0);
  CHECK_THROWS_AS(semicircle_moment(-2), InvalidParams);
}

TEST_CASE("two-sided edge") {
  CHECK(two_sided_edge(4) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(two_sided_edge(0.25) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(TwoSidedEdge::at(2.0).value ==
        doctest::Approx((std::sqrt(2.0) - 1) * (std::sqrt(2.0) - 1)));
  CHECK(two_sided_edge(0.5) == two_sided_edge(2.0));
  CHECK_THROWS_AS(two_sided_edge(1.0), InvalidParams);
  CHECK_THROWS_AS(two_sided_edge(0.0), InvalidParams);
}

TEST_SUITE_END();
