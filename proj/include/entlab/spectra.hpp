#pragma once

#include <utility>

#include "entlab/common.hpp"

namespace entlab {

// Marcenko-Pastur law with ratio parameter c: atom of mass (1-c)_+ at zero
// plus the continuous density sqrt(4c - (x-1-c)^2) / (2 pi x) supported on
// [(sqrt(c)-1)^2, (sqrt(c)+1)^2]. The displayed density is the standard
// normalized form; its continuous part integrates to min(c, 1).
struct MPLaw {
  double c = 1.0;
  double left_edge = 0.0;   // a_c: 0 for c <= 1, else (sqrt(c)-1)^2
  double right_edge = 4.0;  // b_c = (sqrt(c)+1)^2
  double atom_mass = 0.0;   // max(1-c, 0)

  static MPLaw for_ratio(double c);

  // Left endpoint of the continuous support, (sqrt(c)-1)^2; differs from
  // left_edge when c < 1, where the extreme-eigenvalue limit is the atom.
  double support_left() const;
};

// (a_c, b_c) as in MPLaw.
std::pair<double, double> mp_edges(double c);

// Continuous part of the density; zero outside the support.
double mp_density(double c, double x);

// atom_mass * [x >= 0] + integral of the continuous density up to x.
double mp_cdf(double c, double x);

// Unique x in (a_c, b_c] with mp_cdf(c, x) = q; requires atom_mass < q < 1.
double mp_quantile(double c, double q);

// j-th moment of the standard semicircle law: Catalan(j/2) for even j, 0 for
// odd j.
double semicircle_moment(int j);

// Left-most positive element of the support of pi_t: a_t for t > 1, a_{1/t}
// for t < 1. Undefined at t = 1.
double two_sided_edge(double t);

struct TwoSidedEdge {
  double t = 2.0;
  double value = 0.0;

  static TwoSidedEdge at(double t) { return {t, two_sided_edge(t)}; }
};

}  // namespace entlab
