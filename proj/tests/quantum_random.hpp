#pragma once

#include <random>
#include <vector>

#include "qdutch/quantum/operators.hpp"

namespace qrand {

using Op = qdutch::quantum::Operator<double>;
using P = qdutch::quantum::Projector<double>;
using Rho = qdutch::quantum::DensityOperator<double>;

inline Op gaussian(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> g;
  Op m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

/// Haar-ish unitary from the QR of a complex Gaussian matrix.
inline Op random_unitary(std::mt19937_64& rng, Eigen::Index d) {
  Eigen::HouseholderQR<Op> qr(gaussian(rng, d));
  return qr.householderQ() * Op::Identity(d, d);
}

/// Full-rank state G G^dagger / tr.
inline Rho random_state(std::mt19937_64& rng, Eigen::Index d) {
  const Op m = gaussian(rng, d);
  Op r = m * m.adjoint();
  r /= r.trace().real();
  return Rho::from_matrix(r);
}

/// Projector onto the given columns of u.
inline P span_of(const Op& u, const std::vector<Eigen::Index>& cols) {
  Op basis(u.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = u.col(cols[i]);
  return P::from_basis(basis);
}

inline P random_projector(std::mt19937_64& rng, Eigen::Index d, Eigen::Index rank) {
  const Op u = random_unitary(rng, d);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < rank; ++i) cols.push_back(i);
  return span_of(u, cols);
}

}  // namespace qrand
