#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdutch/exchangeable/pi_scaled.hpp"
#include "qdutch/rational.hpp"

namespace qdutch::exchangeable {

/// Prior over qubit density operators: Haar-distributed eigenbasis times an
/// eigenvalue law. PureUniform puts all mass on pure states, Flat spreads the
/// eigenvalue uniformly, Bures uses (2/pi)(l1-l2)^2/sqrt(l1 l2).
enum class MeasureKind { PureUniform, Flat, Bures };

std::string to_string(MeasureKind m);
/// Accepts "pure", "flat", "bures" (case-insensitive).
MeasureKind parse_measure(const std::string& name);

/// A frequency record: k successes among n trials.
struct RunSpec {
  long n = 0;
  long k = 0;

  RunSpec() = default;
  RunSpec(long trials, long successes);
};

struct ExactLimits {
  long max_n = 2000;
};

/// Kernel K(n, r) = integral of the eigenvalue law against l1^(n-r) l2^r,
/// for r = 0..n. Flat: B(n-r+1, r+1). Bures:
/// (2/pi)[(n-2r)^2+n+1] / [(r+1/2)(n-r+1/2)] B(n-r+3/2, r+3/2).
/// Empty for PureUniform, whose correction is identically one.
std::vector<Rational> eigenvalue_kernel(MeasureKind measure, long n);

/// Correction factor I_{n,k}: sum over j in [0,k], l in [0,n-k] of
/// C(j+l, j) C(n-j-l, k-j) K(n, k-j+l). Identically 1 for PureUniform.
Rational correction_I(MeasureKind measure, RunSpec spec, const ExactLimits& limits = {});

/// q(P_{n,k}) = B(n-k+1, k+1) I_{n,k}: probability of k successes followed by
/// n-k failures in one fixed order.
Rational prob_Pnk(MeasureKind measure, RunSpec spec, const ExactLimits& limits = {});

/// Predictive probability of a success at trial n+1 given k of n:
/// (k+1)/(n+2) * I_{n+1,k+1} / I_{n,k}.
Rational succession(MeasureKind measure, RunSpec spec, const ExactLimits& limits = {});

/// I_{n+1,k+1} / I_{n,k}.
Rational correction_ratio(MeasureKind measure, RunSpec spec, const ExactLimits& limits = {});

/// q(Pi_{n,k}) = C(n,k) q(P_{n,k}) for k = 0..n; sums to one exactly.
std::vector<Rational> distribution_over_k(MeasureKind measure, long n, const ExactLimits& limits = {});

struct Figure1Row {
  MeasureKind measure;
  long n;
  long k;
  Rational correction_ratio;
  Rational succession;
  Rational laplace;
};

/// One row per n with k = round(k_fraction * n), halves rounded up.
std::vector<Figure1Row> figure1_table(MeasureKind measure, const std::vector<long>& n_values,
                                      const Rational& k_fraction, const ExactLimits& limits = {});

/// CSV header and rows: measure,n,k,correction_ratio_exact,
/// correction_ratio_decimal,succession_decimal,laplace_decimal.
std::string figure1_csv_header();
std::string figure1_csv_row(const Figure1Row& row);

}  // namespace qdutch::exchangeable
