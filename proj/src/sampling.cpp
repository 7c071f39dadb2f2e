#include "entlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace entlab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

// Number of Ginibre columns generated per streamed rank update. Fixed so the
// accumulation order, and therefore the sampled W, never depends on s.
constexpr int kColumnBlock = 256;

void validate_dims(int d, int s) {
  if (d < 1 || s < 1) throw InvalidParams("sampler: dimensions must be >= 1");
}

void fill_ginibre_block(Xoshiro256pp& rng, Eigen::Ref<Eigen::MatrixXcd> block) {
  for (Eigen::Index j = 0; j < block.cols(); ++j)
    for (Eigen::Index i = 0; i < block.rows(); ++i) block(i, j) = rng.complex_gaussian();
}

// Accumulates W = G G* (d x d) by streaming column blocks of G.
Eigen::MatrixXcd accumulate_wishart(int d, int s, Xoshiro256pp& rng) {
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd block(d, kColumnBlock);
  for (int j0 = 0; j0 < s; j0 += kColumnBlock) {
    const int cols = std::min(kColumnBlock, s - j0);
    auto b = block.leftCols(cols);
    fill_ginibre_block(rng, b);
    w.selfadjointView<Eigen::Lower>().rankUpdate(b);
  }
  for (int j = 0; j < d; ++j) {
    w(j, j) = std::complex<double>(w(j, j).real(), 0.0);
    for (int i = j + 1; i < d; ++i) w(j, i) = std::conj(w(i, j));
  }
  return w;
}

}  // namespace

std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64_finalize(master ^ (trial * kGolden));
}

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
  // Standard SplitMix64 state expansion.
  std::uint64_t x = seed;
  for (auto& s : state_) {
    x += kGolden;
    s = splitmix64_finalize(x);
  }
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Xoshiro256pp::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Xoshiro256pp::uniform_open01() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

std::complex<double> Xoshiro256pp::complex_gaussian() {
  // Box-Muller; dividing the pair by sqrt(2) gives variance 1/2 per component.
  const double u = uniform_open01();
  const double v = uniform01();
  const double r = std::sqrt(-std::log(u));  // == sqrt(-2 ln u) / sqrt(2)
  const double theta = 2.0 * M_PI * v;
  return {r * std::cos(theta), r * std::sin(theta)};
}

Eigen::MatrixXcd sample_ginibre(int d, int s, const SeedSpec& seed) {
  validate_dims(d, s);
  Xoshiro256pp rng(seed);
  Eigen::MatrixXcd g(d, s);
  fill_ginibre_block(rng, g);
  return g;
}

HermitianMatrix sample_wishart(const WishartParams& p, const SeedSpec& seed) {
  Xoshiro256pp rng(seed);
  return HermitianMatrix::adopt(accumulate_wishart(p.d, p.s, rng));
}

HermitianMatrix sample_induced_state(int n, int k, int s, const SeedSpec& seed) {
  if (n < 1 || k < 1) throw InvalidParams("sample_induced_state: factors must be >= 1");
  validate_dims(n * k, s);
  Xoshiro256pp rng(seed);
  Eigen::MatrixXcd w = accumulate_wishart(n * k, s, rng);
  w /= w.trace().real();
  return HermitianMatrix::adopt(std::move(w));
}

HermitianMatrix centered_wishart(const WishartParams& p, const SeedSpec& seed) {
  return center_scale(sample_wishart(p, seed), p);
}

HermitianMatrix center_scale(const HermitianMatrix& w, const WishartParams& p) {
  if (w.dim() != p.d) throw ShapeError("center_scale: matrix dim != params d");
  const double ds = static_cast<double>(p.d) * p.s;
  const double scale = std::sqrt(ds);
  Eigen::MatrixXcd z = (scale / ds) * w.mat();
  const double shift = scale / p.d;
  for (int j = 0; j < p.d; ++j) z(j, j) -= shift;
  return HermitianMatrix::adopt(std::move(z));
}

WishartSpectrum sample_wishart_spectrum(const WishartParams& p, const SeedSpec& seed) {
  const int d = p.d, s = p.s;
  Xoshiro256pp rng(seed);
  WishartSpectrum out;
  Eigen::VectorXd ev;
  if (s < d) {
    // G* G has the same nonzero spectrum as G G*; the remaining d - s
    // eigenvalues are exact zeros.
    Eigen::MatrixXcd g(d, s);
    fill_ginibre_block(rng, g);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s, s);
    m.selfadjointView<Eigen::Lower>().rankUpdate(g.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    solver.compute(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw InvalidMatrix("sample_wishart_spectrum: eigensolver did not converge");
    ev = Eigen::VectorXd::Zero(d);
    ev.tail(s) = solver.eigenvalues();
  } else {
    Eigen::MatrixXcd w = accumulate_wishart(d, s, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    solver.compute(w, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw InvalidMatrix("sample_wishart_spectrum: eigensolver did not converge");
    ev = solver.eigenvalues();
  }
  // Solver output is ascending within each branch, but a zero-padded tail can
  // sit above a tiny negative rounding of the smallest value; sort to keep
  // the descending contract unconditionally.
  std::sort(ev.data(), ev.data() + d, std::greater<double>());
  out.eigenvalues = std::move(ev);
  out.trace = out.eigenvalues.sum();
  return out;
}

}  // namespace entlab
