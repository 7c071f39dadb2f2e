#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "entlab/linalg.hpp"

namespace entlab {

// Every randomized quantity is a pure function of (master_seed, trial_index):
// the per-trial generator stream is seeded with derive_trial_seed of the pair.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

struct WishartParams {
  int d = 1;
  int s = 1;

  WishartParams() = default;
  WishartParams(int d_, int s_) : d(d_), s(s_) {
    if (d < 1 || s < 1) throw InvalidParams("WishartParams: dimensions must be >= 1");
  }
};

// SplitMix64 finalizer applied to master ^ (trial * golden ratio constant).
std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t trial);

// xoshiro256++ (Blackman / Vigna), state expanded from a 64-bit seed with
// SplitMix64. Gaussians come from Box-Muller on 53-bit uniform doubles; one
// complex Gaussian consumes exactly two generator outputs.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed);
  explicit Xoshiro256pp(const SeedSpec& seed)
      : Xoshiro256pp(derive_trial_seed(seed.master_seed, seed.trial_index)) {}

  std::uint64_t next();

  // Uniform in [0,1), 53 bits.
  double uniform01();
  // Uniform in (0,1]; safe as the radius argument of a logarithm.
  double uniform_open01();
  // Standard complex Gaussian: independent real and imaginary parts of
  // variance 1/2 each, so E|g|^2 = 1.
  std::complex<double> complex_gaussian();

 private:
  std::uint64_t state_[4];
};

// d x s matrix of i.i.d. standard complex Gaussians, generated column-major.
Eigen::MatrixXcd sample_ginibre(int d, int s, const SeedSpec& seed);

// W = G G* for a Ginibre G of shape (d, s): Hermitian PSD, E[Tr W] = d*s.
// Column blocks of G are streamed, so memory stays O(d^2 + d).
HermitianMatrix sample_wishart(const WishartParams& p, const SeedSpec& seed);

// W / Tr W: PSD with unit trace, distributed as an induced state of
// parameters (n*k, s).
HermitianMatrix sample_induced_state(int n, int k, int s, const SeedSpec& seed);

// Centered, renormalized Wishart: Z = sqrt(d*s) * (W/(d*s) - I/d).
HermitianMatrix centered_wishart(const WishartParams& p, const SeedSpec& seed);

// The same centering applied to a caller-supplied W (synthetic input path).
HermitianMatrix center_scale(const HermitianMatrix& w, const WishartParams& p);

// Eigenvalues (descending) and trace of a sampled Wishart. Identical in
// distribution to eigenvalues of sample_wishart but computed through G* G
// when s < d, which is both cheaper and yields the d - s zeros exactly.
struct WishartSpectrum {
  Eigen::VectorXd eigenvalues;  // descending, length d
  double trace = 0.0;
};
WishartSpectrum sample_wishart_spectrum(const WishartParams& p, const SeedSpec& seed);

}  // namespace entlab
