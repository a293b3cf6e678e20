#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <complex>
#include <string>
#include <vector>

#include "qdutch/errors.hpp"

namespace qdutch::quantum {

template <typename Real>
using Operator = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using Ket = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Numerical thresholds shared by the operator algebra.
template <typename Real>
struct Tolerances {
  Real operator_tol = Real(1e-9);     ///< Hermiticity, idempotence, trace, PSD checks
  Real rank_cut = Real(1e-8);         ///< singular values below this count as zero
  Real null_condition = Real(1e-12);  ///< tr(rho Q) at or below this is a null condition
};

inline constexpr Eigen::Index kMinDimension = 2;
inline constexpr Eigen::Index kMaxDimension = 16;

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.rows() != m.cols()) throw InvalidOperatorError(std::string(what) + " must be square");
  if (m.rows() < kMinDimension || m.rows() > kMaxDimension) {
    throw InvalidOperatorError(std::string(what) + " dimension must lie in [2, 16], got " +
                               std::to_string(m.rows()));
  }
}

template <typename Real>
Real max_abs(const Operator<Real>& m) {
  return m.size() == 0 ? Real(0) : m.cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Orthogonal projector. Inputs are re-symmetrized, then checked for
/// idempotence within the operator tolerance.
template <typename Real = double>
class Projector {
 public:
  template <typename Derived>
  static Projector from_matrix(const Eigen::MatrixBase<Derived>& m, const Tolerances<Real>& tol = {}) {
    detail::require_square(m, "projector");
    Operator<Real> p = m.template cast<std::complex<Real>>();
    Operator<Real> sym = (p + p.adjoint()) / Real(2);
    if (detail::max_abs<Real>(sym - p) > tol.operator_tol) throw InvalidOperatorError("projector is not Hermitian");
    if (detail::max_abs<Real>(sym * sym - sym) > tol.operator_tol) {
      throw InvalidOperatorError("projector is not idempotent");
    }
    return Projector(std::move(sym));
  }

  /// Projector onto the span of `kets` (need not be orthonormal).
  static Projector onto_span(const std::vector<Ket<Real>>& kets, Eigen::Index dimension) {
    if (dimension < kMinDimension || dimension > kMaxDimension) {
      throw InvalidOperatorError("projector dimension must lie in [2, 16]");
    }
    if (kets.empty()) return zero(dimension);
    Operator<Real> stacked(dimension, static_cast<Eigen::Index>(kets.size()));
    for (std::size_t i = 0; i < kets.size(); ++i) {
      if (kets[i].size() != dimension) throw InvalidOperatorError("ket dimension mismatch");
      stacked.col(static_cast<Eigen::Index>(i)) = kets[i];
    }
    return from_basis(orthonormal_range(stacked, Tolerances<Real>{}.rank_cut));
  }

  static Projector identity(Eigen::Index dimension) {
    return from_matrix(Operator<Real>::Identity(dimension, dimension));
  }

  static Projector zero(Eigen::Index dimension) {
    return from_matrix(Operator<Real>::Zero(dimension, dimension));
  }

  const Operator<Real>& matrix() const noexcept { return matrix_; }
  Eigen::Index dimension() const noexcept { return matrix_.rows(); }

  /// Orthonormal basis of the range, one column per vector.
  Operator<Real> range_basis() const {
    Eigen::SelfAdjointEigenSolver<Operator<Real>> eig(matrix_);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
      if (eig.eigenvalues()(i) > Real(0.5)) keep.push_back(i);
    }
    Operator<Real> basis(dimension(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(keep[c]);
    return basis;
  }

  Eigen::Index rank() const { return range_basis().cols(); }

  /// Projector U U^dagger for a basis with orthonormal columns.
  static Projector from_basis(const Operator<Real>& orthonormal_columns) {
    const Eigen::Index d = orthonormal_columns.rows();
    if (orthonormal_columns.cols() == 0) return zero(d);
    return from_matrix(orthonormal_columns * orthonormal_columns.adjoint());
  }

  /// Orthonormal basis of the column space of `m`, dropping directions whose
  /// singular value is at or below `cut`.
  static Operator<Real> orthonormal_range(const Operator<Real>& m, Real cut) {
    Eigen::JacobiSVD<Operator<Real>> svd(m, Eigen::ComputeFullU);
    Eigen::Index r = 0;
    while (r < svd.singularValues().size() && svd.singularValues()(r) > cut) ++r;
    return svd.matrixU().leftCols(r);
  }

 private:
  explicit Projector(Operator<Real> m) : matrix_(std::move(m)) {}
  Operator<Real> matrix_;
};

/// Density operator: Hermitian, positive semidefinite and of unit trace, each
/// within the operator tolerance.
template <typename Real = double>
class DensityOperator {
 public:
  template <typename Derived>
  static DensityOperator from_matrix(const Eigen::MatrixBase<Derived>& m, const Tolerances<Real>& tol = {}) {
    detail::require_square(m, "density operator");
    Operator<Real> rho = m.template cast<std::complex<Real>>();
    Operator<Real> sym = (rho + rho.adjoint()) / Real(2);
    if (detail::max_abs<Real>(sym - rho) > tol.operator_tol) {
      throw InvalidOperatorError("density operator is not Hermitian");
    }
    if (std::abs(sym.trace().real() - Real(1)) > tol.operator_tol) {
      throw InvalidOperatorError("density operator trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Operator<Real>> eig(sym, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -tol.operator_tol) {
      throw InvalidOperatorError("density operator has a negative eigenvalue");
    }
    return DensityOperator(std::move(sym));
  }

  static DensityOperator maximally_mixed(Eigen::Index dimension) {
    return from_matrix(Operator<Real>::Identity(dimension, dimension) / Real(dimension));
  }

  static DensityOperator pure(const Ket<Real>& psi) {
    const Ket<Real> unit = psi.normalized();
    return from_matrix(unit * unit.adjoint());
  }

  const Operator<Real>& matrix() const noexcept { return matrix_; }
  Eigen::Index dimension() const noexcept { return matrix_.rows(); }

 private:
  explicit DensityOperator(Operator<Real> m) : matrix_(std::move(m)) {}
  Operator<Real> matrix_;
};

namespace detail {

inline void require_same_dimension(Eigen::Index a, Eigen::Index b) {
  if (a != b) throw InvalidOperatorError("operator dimension mismatch");
}

template <typename Real>
Real clamp_probability(Real p) {
  return std::clamp(p, Real(0), Real(1));
}

}  // namespace detail

/// Projector onto the orthogonal complement of the range.
template <typename Real>
Projector<Real> negate(const Projector<Real>& p) {
  const Eigen::Index d = p.dimension();
  return Projector<Real>::from_matrix(Operator<Real>::Identity(d, d) - p.matrix());
}

template <typename Real>
bool commutes(const Projector<Real>& p, const Projector<Real>& q, const Tolerances<Real>& tol = {}) {
  detail::require_same_dimension(p.dimension(), q.dimension());
  const Operator<Real> c = p.matrix() * q.matrix() - q.matrix() * p.matrix();
  return detail::max_abs<Real>(c) <= tol.operator_tol;
}

/// Projector onto range(P) and range(Q) jointly. A pair (x, y) with
/// B_P x = B_Q y is a null vector of [B_P, -B_Q]; the intersection is
/// spanned by the B_P x of those null vectors.
template <typename Real>
Projector<Real> meet(const Projector<Real>& p, const Projector<Real>& q, const Tolerances<Real>& tol = {}) {
  detail::require_same_dimension(p.dimension(), q.dimension());
  const Eigen::Index d = p.dimension();
  const Operator<Real> bp = p.range_basis();
  const Operator<Real> bq = q.range_basis();
  const Eigen::Index rp = bp.cols();
  const Eigen::Index rq = bq.cols();
  if (rp == 0 || rq == 0) return Projector<Real>::zero(d);

  Operator<Real> stacked(d, rp + rq);
  stacked << bp, -bq;
  Eigen::JacobiSVD<Operator<Real>> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index nonzero = 0;
  while (nonzero < sv.size() && sv(nonzero) > tol.rank_cut) ++nonzero;
  const Eigen::Index nullity = rp + rq - nonzero;
  if (nullity == 0) return Projector<Real>::zero(d);

  const Operator<Real> null_space = svd.matrixV().rightCols(nullity);
  const Operator<Real> span = bp * null_space.topRows(rp);
  return Projector<Real>::from_basis(Projector<Real>::orthonormal_range(span, tol.rank_cut));
}

template <typename Real>
Projector<Real> join(const Projector<Real>& p, const Projector<Real>& q, const Tolerances<Real>& tol = {}) {
  return negate(meet(negate(p), negate(q), tol));
}

/// q(P) = tr(rho P), clamped to [0, 1].
template <typename Real>
Real born(const DensityOperator<Real>& rho, const Projector<Real>& p) {
  detail::require_same_dimension(rho.dimension(), p.dimension());
  return detail::clamp_probability((rho.matrix() * p.matrix()).trace().real());
}

/// q(P|Q) = tr(Q rho Q P) / tr(rho Q).
template <typename Real>
Real conditional(const DensityOperator<Real>& rho, const Projector<Real>& p, const Projector<Real>& q,
                 const Tolerances<Real>& tol = {}) {
  detail::require_same_dimension(rho.dimension(), p.dimension());
  detail::require_same_dimension(rho.dimension(), q.dimension());
  const Real norm = (rho.matrix() * q.matrix()).trace().real();
  if (norm <= tol.null_condition) throw NullConditionError("conditioning on a projector with tr(rho Q) ~ 0");
  const Real num = (q.matrix() * rho.matrix() * q.matrix() * p.matrix()).trace().real();
  return detail::clamp_probability(num / norm);
}

/// Post-measurement state Q rho Q / tr(rho Q).
template <typename Real>
DensityOperator<Real> luders_update(const DensityOperator<Real>& rho, const Projector<Real>& q,
                                    const Tolerances<Real>& tol = {}) {
  detail::require_same_dimension(rho.dimension(), q.dimension());
  const Real norm = (rho.matrix() * q.matrix()).trace().real();
  if (norm <= tol.null_condition) throw NullConditionError("conditioning on a projector with tr(rho Q) ~ 0");
  return DensityOperator<Real>::from_matrix(q.matrix() * rho.matrix() * q.matrix() / norm, tol);
}

/// Pooled post-measurement state sum_i Q_i rho Q_i / sum_i tr(rho Q_i).
template <typename Real>
DensityOperator<Real> aggregated_update(const DensityOperator<Real>& rho, const std::vector<Projector<Real>>& qs,
                                        const Tolerances<Real>& tol = {}) {
  const Eigen::Index d = rho.dimension();
  Operator<Real> acc = Operator<Real>::Zero(d, d);
  Real norm = 0;
  for (const auto& q : qs) {
    detail::require_same_dimension(d, q.dimension());
    acc += q.matrix() * rho.matrix() * q.matrix();
    norm += (rho.matrix() * q.matrix()).trace().real();
  }
  if (norm <= tol.null_condition) throw NullConditionError("every conditioning projector has tr(rho Q) ~ 0");
  return DensityOperator<Real>::from_matrix(acc / norm, tol);
}

/// Conditional bet on `target` given `condition` (identity for outright bets).
template <typename Real = double>
struct QuantumBet {
  Projector<Real> target;
  Projector<Real> condition;
  Real quotient;
  Real stake;
};

inline constexpr std::size_t kMaxQuantumBets = 10;

/// Average payoff sum_w q(w) G(w) over all 4^n outcome words
/// w = (v(P_1..P_n), v(Q_1..Q_n)), with the product weight
/// q(w) = prod_i q(tau(P_i) | tau(Q_i)) q(tau(Q_i)) taken from rho.
template <typename Real>
Real quantum_average_payoff(const std::vector<QuantumBet<Real>>& book, const DensityOperator<Real>& rho,
                            const Tolerances<Real>& tol = {}) {
  const std::size_t n = book.size();
  if (n > kMaxQuantumBets) throw ResourceError("quantum book limited to 10 bets");
  if (n == 0) return Real(0);

  // weight[i][2*vq + vp] = q(tau(P_i) | tau(Q_i)) q(tau(Q_i))
  std::vector<std::array<Real, 4>> weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& bet = book[i];
    for (int vq = 0; vq < 2; ++vq) {
      const Projector<Real> cond = vq ? bet.condition : negate(bet.condition);
      const Real q_cond = born(rho, cond);
      for (int vp = 0; vp < 2; ++vp) {
        Real w = 0;
        if (q_cond > tol.null_condition) {
          const Projector<Real> tgt = vp ? bet.target : negate(bet.target);
          w = conditional(rho, tgt, cond, tol) * q_cond;
        }
        weight[i][static_cast<std::size_t>(2 * vq + vp)] = w;
      }
    }
  }

  const std::size_t words = std::size_t{1} << (2 * n);
  Real total = 0;
  for (std::size_t word = 0; word < words; ++word) {
    Real q = 1;
    Real gain = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t vp = (word >> i) & 1u;
      const std::size_t vq = (word >> (n + i)) & 1u;
      q *= weight[i][2 * vq + vp];
      if (vq == 1) gain += vp == 1 ? (1 - book[i].quotient) * book[i].stake : -book[i].quotient * book[i].stake;
    }
    total += q * gain;
  }
  return total;
}

/// Rank-one projector |psi><psi|.
template <typename Real>
Projector<Real> ket_projector(const Ket<Real>& psi) {
  const Ket<Real> unit = psi.normalized();
  return Projector<Real>::from_matrix(unit * unit.adjoint());
}

}  // namespace qdutch::quantum
