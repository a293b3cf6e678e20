#pragma once

#include <optional>
#include <vector>

#include "qdutch/rational.hpp"

namespace qdutch::classical {

/// Dense row-major rational matrix, just enough for the feasibility solver.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> data;

  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Rational& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Finds x >= 0 with A x = b by phase-one simplex in exact arithmetic,
/// using Bland's rule so the pivoting cannot cycle. Rows with negative b
/// are negated internally. Returns nullopt iff the system is infeasible.
std::optional<std::vector<Rational>> find_nonnegative_solution(const RationalMatrix& a,
                                                               const std::vector<Rational>& b);

}  // namespace qdutch::classical
