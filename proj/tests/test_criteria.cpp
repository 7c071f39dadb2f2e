#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "entlab/criteria.hpp"
#include "entlab/sampling.hpp"
#include "test_helpers.hpp"

using namespace entlab;

namespace {

SpectrumVector uniform_spectrum(int d) {
  return SpectrumVector(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d));
}

SpectrumVector pure_spectrum(int d) {
  std::vector<double> v(static_cast<std::size_t>(d), 0.0);
  v[0] = 1.0;
  return SpectrumVector(std::move(v));
}

HermitianMatrix maximally_mixed(int d) {
  return HermitianMatrix(Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

HermitianMatrix maximally_entangled(int n) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n * n);
  for (int i = 0; i < n; ++i) psi(i * n + i) = 1.0 / std::sqrt(static_cast<double>(n));
  return HermitianMatrix(psi * psi.adjoint());
}

std::vector<double> random_simplex(int d, Xoshiro256pp& rng) {
  std::vector<double> x(static_cast<std::size_t>(d));
  double sum = 0.0;
  for (double& v : x) sum += (v = -std::log(rng.uniform_open01()));
  for (double& v : x) v /= sum;
  return x;
}

}  // namespace

TEST_SUITE_BEGIN("criteria");

TEST_CASE("reduction criterion: mixed, entangled and product states") {
  const Bipartition bp(3, 3);
  const CriterionVerdict mixed = check_red(maximally_mixed(9), bp);
  CHECK(mixed.status == VerdictStatus::InCertified);
  CHECK(mixed.margin == doctest::Approx(2.0 / 9.0).epsilon(1e-12));

  const CriterionVerdict ent = check_red(maximally_entangled(3), bp);
  CHECK(ent.status == VerdictStatus::Out);
  CHECK(ent.margin == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));

  Eigen::VectorXcd product = Eigen::VectorXcd::Zero(9);
  product(0) = 1.0;
  const CriterionVerdict prod = check_red(HermitianMatrix(product * product.adjoint()), bp);
  CHECK(prod.in());
  CHECK(std::abs(prod.margin) <= 1e-12);

  CHECK_THROWS_AS(check_red(HermitianMatrix(-Eigen::MatrixXcd::Identity(9, 9)), bp),
                  InvalidState);
}

TEST_CASE("ppt criterion basics") {
  const Bipartition bp(3, 3);
  CHECK(check_ppt(maximally_mixed(9), bp).status == VerdictStatus::InCertified);
  const CriterionVerdict ent = check_ppt(maximally_entangled(3), bp);
  CHECK(ent.status == VerdictStatus::Out);
  CHECK(ent.margin == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  // Diagonal states are separable and unchanged by partial transposition.
  Eigen::VectorXcd diag(9);
  for (int i = 0; i < 9; ++i) diag(i) = (i + 1) / 45.0;
  CHECK(check_ppt(HermitianMatrix(Eigen::MatrixXcd(diag.asDiagonal())), bp).in());
}

TEST_CASE("largest-vs-smallest sets") {
  const SpectrumVector lam(std::vector<double>{0.4, 0.3, 0.2, 0.1});
  CHECK(check_ls_p(lam, 2).status == VerdictStatus::Out);   // 0.3 < 0.4
  CHECK(check_ls_p(lam, 2).margin == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(check_ls_p(lam, 3).status == VerdictStatus::InCertified);  // 0.6 >= 0.4
  for (int p = 1; p <= 8; ++p) CHECK(check_ls_p(uniform_spectrum(8), p).in());
  CHECK_THROWS_AS(check_ls_p(lam, 0), InvalidParams);
  CHECK_THROWS_AS(check_ls_p(lam, 5), InvalidParams);
}

TEST_CASE("ls nesting is monotone in p") {
  Xoshiro256pp rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const SpectrumVector lam(random_simplex(6 + static_cast<int>(rng.next() % 6), rng));
    bool prev_in = false;
    for (int p = 1; p <= lam.dim(); ++p) {
      const bool now_in = check_ls_p(lam, p).in();
      if (prev_in) CHECK(now_in);
      prev_in = now_in;
    }
  }
}

TEST_CASE("gershgorin set") {
  const Bipartition bp22(2, 2);
  const CriterionVerdict unif = check_ger(uniform_spectrum(4), bp22);
  CHECK(unif.status == VerdictStatus::InCertified);
  CHECK(unif.margin == doctest::Approx(0.5).epsilon(1e-12));  // 2/(nk)

  CHECK(check_ger(pure_spectrum(4), bp22).status == VerdictStatus::Out);
  CHECK(check_ger(pure_spectrum(12), Bipartition(4, 3)).status == VerdictStatus::Out);

  const SpectrumVector lam(std::vector<double>{0.3, 0.25, 0.25, 0.2});
  const CriterionVerdict v = check_ger(lam, bp22);
  CHECK(v.in());
  CHECK(v.margin == doctest::Approx(0.35).epsilon(1e-12));  // (0.4 + 0.25) - 0.3

  CHECK_THROWS_AS(check_ger(lam, Bipartition(3, 2)), InvalidParams);
}

TEST_CASE("separable ball") {
  const CriterionVerdict mixed = check_sepball(uniform_spectrum(4));
  CHECK(mixed.in());
  CHECK(mixed.margin == doctest::Approx(1.0 / 3 - 0.25).epsilon(1e-12));

  CHECK(check_sepball(pure_spectrum(3)).status == VerdictStatus::Out);
  CHECK(check_sepball(pure_spectrum(9)).status == VerdictStatus::Out);

  // (2/d, 1/d x (d-2), 0) has purity (d+2)/d^2 > 1/(d-1) for every d > 2, so
  // it sits just outside the ball.
  const int d = 6;
  std::vector<double> v(static_cast<std::size_t>(d), 1.0 / d);
  v[0] = 2.0 / d;
  v[static_cast<std::size_t>(d - 1)] = 0.0;
  const CriterionVerdict near = check_sepball(SpectrumVector(std::move(v)));
  CHECK(near.status == VerdictStatus::Out);
  CHECK(near.margin == doctest::Approx(1.0 / 5 - 8.0 / 36).epsilon(1e-12));

  CHECK_THROWS_AS(check_sepball(SpectrumVector(std::vector<double>{1.0})), InvalidParams);
}

TEST_CASE("absolute reduction ladder") {
  // Uniform spectra certify through the (k+1) lambda_min rule.
  const CriterionVerdict unif = check_ared(uniform_spectrum(6), {3, 2});
  CHECK(unif.status == VerdictStatus::InCertified);
  CHECK(unif.certificate == "kplus1-ratio");

  // Rank below (n-2)k+2 is an immediate rejection with witness (1/2, 1/2).
  std::vector<double> deficient(8, 0.0);
  const std::vector<double> top{0.3, 0.25, 0.2, 0.15, 0.1};
  std::copy(top.begin(), top.end(), deficient.begin());
  const CriterionVerdict def = check_ared(SpectrumVector(deficient), {4, 2});
  CHECK(def.status == VerdictStatus::Out);
  CHECK(def.certificate == "rank-bound");
  REQUIRE(def.witness.has_value());
  CHECK(def.witness->effective_rank() == 2);
  CHECK(def.margin == doctest::Approx(-0.15).epsilon(1e-12));
  CHECK(ared_inner(SpectrumVector(deficient), *def.witness, 4, 2) < -kDecisionTol);

  // Full-rank 2x2 example lands in the numerical regime with the calculus
  // oracle's minimum as margin.
  const CriterionVerdict num =
      check_ared(SpectrumVector(std::vector<double>{0.4, 0.3, 0.2, 0.1}), {2, 2});
  CHECK(num.status == VerdictStatus::InNumerical);
  CHECK(num.margin == doctest::Approx(0.2 - 0.1 * std::sqrt(2.0)).epsilon(1e-6));

  // LS_k membership certifies; a clear LS_{2k-1} violation rejects.
  const CriterionVerdict lsk =
      check_ared(SpectrumVector(std::vector<double>{0.2, 0.2, 0.15, 0.15, 0.15, 0.15}),
                 {3, 2});
  CHECK(lsk.in());

  std::vector<double> heavy{0.9, 0.02, 0.02, 0.02, 0.02, 0.02};
  const CriterionVerdict viol = check_ared(SpectrumVector(std::move(heavy)), {3, 2});
  CHECK(viol.status == VerdictStatus::Out);
  CHECK(viol.certificate == "ls-sandwich");
  REQUIRE(viol.witness.has_value());
  CHECK(ared_inner(SpectrumVector(std::vector<double>{0.9, 0.02, 0.02, 0.02, 0.02, 0.02}),
                   *viol.witness, 3, 2) < -kDecisionTol);

  // Degenerate bipartitions are always inside.
  CHECK(check_ared(uniform_spectrum(4), {1, 4}).status == VerdictStatus::InCertified);
  CHECK(check_ared(pure_spectrum(4), {4, 1}).status == VerdictStatus::InCertified);
  CHECK_THROWS_AS(check_ared(uniform_spectrum(4), {3, 2}), ShapeError);
}

TEST_CASE("sandwich consistency on random spectra") {
  Xoshiro256pp rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 3);
    const int k = 2 + static_cast<int>(rng.next() % 3);
    const SpectrumVector lam(random_simplex(n * k, rng));
    const CriterionVerdict v = check_ared(lam, {n, k});
    const double ls_k = check_ls_p(lam, k).margin;
    const double ls_2k1 = check_ls_p(lam, 2 * k - 1).margin;
    if (ls_k >= 10 * kDecisionTol) CHECK(v.in());
    if (ls_2k1 <= -10 * kDecisionTol) CHECK(v.status == VerdictStatus::Out);
    if (v.status == VerdictStatus::Out) {
      REQUIRE(v.witness.has_value());
      CHECK(ared_inner(lam, *v.witness, n, k) < -kDecisionTol);
    }
  }
}

TEST_CASE("ppt implies red on induced samples") {
  int compared = 0;
  for (std::uint64_t t = 0; t < 60; ++t) {
    Xoshiro256pp dims(derive_trial_seed(77, t));
    const int n = 2 + static_cast<int>(dims.next() % 3);
    const int k = 2 + static_cast<int>(dims.next() % 3);
    const int s = 1 + static_cast<int>(dims.next() % (n * k + 4));
    const HermitianMatrix rho = sample_induced_state(n, k, s, SeedSpec{78, t});
    const CriterionVerdict ppt = check_ppt(rho, {n, k});
    const CriterionVerdict red = check_red(rho, {n, k});
    if (std::abs(ppt.margin) < 10 * kDecisionTol || std::abs(red.margin) < 10 * kDecisionTol)
      continue;
    ++compared;
    if (ppt.in()) CHECK(red.in());
  }
  CHECK(compared >= 30);
}

TEST_CASE("reduction verdict is scale invariant") {
  for (std::uint64_t t = 0; t < 8; ++t) {
    const HermitianMatrix rho = sample_induced_state(3, 2, 3, SeedSpec{79, t});
    const CriterionVerdict base = check_red(rho, {3, 2});
    if (std::abs(base.margin) < 1e-2) continue;
    for (double alpha : {1e-6, 1.0, 1e6}) {
      const HermitianMatrix scaled(alpha * rho.mat());
      CHECK(check_red(scaled, {3, 2}).in() == base.in());
    }
  }
}

TEST_CASE("states inside the separable ball are absolutely RED") {
  Xoshiro256pp rng(43);
  int inside = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 2);
    const int k = 2 + static_cast<int>(rng.next() % 2);
    const int d = n * k;
    // Shrink random spectra toward uniform until they enter the ball.
    std::vector<double> x = random_simplex(d, rng);
    for (double w : {1.0, 0.5, 0.25, 0.1, 0.05}) {
      std::vector<double> mix(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) mix[i] = w * x[i] + (1.0 - w) / d;
      const SpectrumVector lam(std::move(mix));
      if (!check_sepball(lam).in()) continue;
      ++inside;
      CHECK(check_ared(lam, {n, k}).in());
      break;
    }
  }
  CHECK(inside >= 40);
}

TEST_CASE("spectrum extraction clamps, sorts and renormalizes") {
  const SpectrumVector unif = spectrum_of_state(maximally_mixed(5));
  for (int i = 0; i < 5; ++i) CHECK(unif[i] == doctest::Approx(0.2).epsilon(1e-12));

  const SpectrumVector pure = spectrum_of_state(maximally_entangled(2));
  CHECK(pure[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pure[3] <= 1e-10);

  for (std::uint64_t t = 0; t < 5; ++t) {
    const SpectrumVector lam =
        spectrum_of_state(sample_induced_state(3, 3, 5, SeedSpec{80, t}));
    double sum = 0.0;
    for (double v : lam.entries()) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-10);
    CHECK(lam.effective_rank() == 5);
  }

  CHECK_THROWS_AS(spectrum_of_state(HermitianMatrix::identity(3)), InvalidState);
  CHECK_THROWS_AS(spectrum_of_state(HermitianMatrix(-maximally_mixed(4).mat())),
                  InvalidState);
}

TEST_SUITE_END();
