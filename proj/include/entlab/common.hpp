#pragma once

#include <stdexcept>
#include <string>

namespace entlab {

// Relative decision tolerance shared by all positivity tests: a Hermitian M
// counts as positive-semidefinite iff lambda_min(M) >= -kDecisionTol * max(1, ||M||_2).
inline constexpr double kDecisionTol = 1e-9;

// Entries of a unit-trace spectrum at or below this are treated as exact zeros
// when computing effective ranks and secular equations.
inline constexpr double kRankTol = 1e-12;

struct InvalidMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidParams : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidSimplex : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RankTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidState : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInCatalog : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace entlab
