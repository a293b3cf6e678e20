#include "qdutch/classical/exact_simplex.hpp"

#include "qdutch/errors.hpp"

namespace qdutch::classical {

std::optional<std::vector<Rational>> find_nonnegative_solution(const RationalMatrix& a,
                                                               const std::vector<Rational>& b) {
  if (b.size() != a.rows) throw InputError("right-hand side length does not match row count");
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  const std::size_t width = n + m;  // originals, then one artificial per row

  // tableau rows 0..m-1: [A | I | b]; row m: reduced costs of the phase-one objective.
  RationalMatrix t(m + 1, width + 1);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
    t(i, n + i) = 1;
    t(i, width) = flip ? Rational(-b[i]) : b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) t(m, j) -= t(i, j);
  }
  for (std::size_t i = 0; i < m; ++i) t(m, width) -= t(i, width);

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (t(m, j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational ratio = t(i, width) / t(i, enter);
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // The phase-one objective is bounded below by zero.
    if (leave == m) break;

    const Rational pivot = t(leave, enter);
    for (std::size_t j = 0; j <= width; ++j) t(leave, j) /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      const Rational factor = t(i, enter);
      for (std::size_t j = 0; j <= width; ++j) {
        if (t(leave, j) != 0) t(i, j) -= factor * t(leave, j);
      }
    }
    basis[leave] = enter;
  }

  if (t(m, width) != 0) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = t(i, width);
  }
  return x;
}

}  // namespace qdutch::classical
