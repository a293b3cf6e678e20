#include "qdutch/exchangeable/succession.hpp"

#include <algorithm>
#include <cctype>

#include "qdutch/errors.hpp"
#include "qdutch/exchangeable/binomial_table.hpp"

namespace qdutch::exchangeable {

std::string to_string(MeasureKind m) {
  switch (m) {
    case MeasureKind::PureUniform: return "pure";
    case MeasureKind::Flat: return "flat";
    case MeasureKind::Bures: return "bures";
  }
  return "unknown";
}

MeasureKind parse_measure(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "pure") return MeasureKind::PureUniform;
  if (lower == "flat") return MeasureKind::Flat;
  if (lower == "bures") return MeasureKind::Bures;
  throw InputError("unknown measure '" + name + "' (expected pure, flat or bures)");
}

RunSpec::RunSpec(long trials, long successes) : n(trials), k(successes) {
  if (n < 0 || k < 0 || k > n) {
    throw InputError("run needs 0 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
}

namespace {

void check_cap(long n, const ExactLimits& limits) {
  if (n > limits.max_n) {
    throw ResourceError("n=" + std::to_string(n) + " exceeds the configured cap " + std::to_string(limits.max_n));
  }
}

// Kernel over a common denominator: K(n, r) = numerators[r] / denominator.
struct KernelRow {
  BigInt denominator = 1;
  std::vector<BigInt> numerators;
};

KernelRow common_denominator(const std::vector<Rational>& kernel) {
  KernelRow row;
  for (const auto& value : kernel) {
    mpz_lcm(row.denominator.get_mpz_t(), row.denominator.get_mpz_t(), value.get_den_mpz_t());
  }
  row.numerators.reserve(kernel.size());
  for (const auto& value : kernel) {
    row.numerators.push_back(value.get_num() * (row.denominator / value.get_den()));
  }
  return row;
}

// I_{n,k} from a precomputed kernel row. Terms are grouped by r = k-j+l so the
// inner loop is a single big-integer multiply-add.
Rational correction_from_row(const PascalRows& binom, const KernelRow& row, long n, long k) {
  std::vector<BigInt> weight(static_cast<std::size_t>(n + 1));
  for (long j = 0; j <= k; ++j) {
    for (long l = 0; l <= n - k; ++l) {
      const auto s = static_cast<std::size_t>(j + l);
      mpz_addmul(weight[static_cast<std::size_t>(k - j + l)].get_mpz_t(), binom(s, static_cast<std::size_t>(j)).get_mpz_t(),
                 binom(static_cast<std::size_t>(n) - s, static_cast<std::size_t>(k - j)).get_mpz_t());
    }
  }
  BigInt total = 0;
  for (std::size_t r = 0; r < weight.size(); ++r) {
    if (weight[r] != 0) mpz_addmul(total.get_mpz_t(), weight[r].get_mpz_t(), row.numerators[r].get_mpz_t());
  }
  Rational out(total, row.denominator);
  out.canonicalize();
  return out;
}

}  // namespace

std::vector<Rational> eigenvalue_kernel(MeasureKind measure, long n) {
  if (n < 0) throw InputError("n must be nonnegative");
  std::vector<Rational> kernel;
  if (measure == MeasureKind::PureUniform) return kernel;
  kernel.reserve(static_cast<std::size_t>(n + 1));
  for (long r = 0; r <= n; ++r) {
    if (measure == MeasureKind::Flat) {
      kernel.push_back(beta_int(n - r + 1, r + 1).rational());
      continue;
    }
    // (2/pi) [(n-2r)^2 + n + 1] / [(r+1/2)(n-r+1/2)] * B(n-r+3/2, r+3/2)
    const long spread = n - 2 * r;
    Rational factor(BigInt(8) * (spread * spread + n + 1), BigInt((2 * r + 1) * (2 * (n - r) + 1)));
    factor.canonicalize();
    const PiScaledRational value = PiScaledRational(factor) * beta_half(2 * (n - r) + 3, 2 * r + 3);
    kernel.push_back(value.divided_by_pi().rational());
  }
  return kernel;
}

Rational correction_I(MeasureKind measure, RunSpec spec, const ExactLimits& limits) {
  check_cap(spec.n, limits);
  if (measure == MeasureKind::PureUniform) return Rational(1);
  auto binom = BinomialTable::shared().rows_through(static_cast<std::size_t>(spec.n));
  return correction_from_row(*binom, common_denominator(eigenvalue_kernel(measure, spec.n)), spec.n, spec.k);
}

Rational prob_Pnk(MeasureKind measure, RunSpec spec, const ExactLimits& limits) {
  return beta_int(spec.n - spec.k + 1, spec.k + 1).rational() * correction_I(measure, spec, limits);
}

Rational correction_ratio(MeasureKind measure, RunSpec spec, const ExactLimits& limits) {
  check_cap(spec.n, limits);
  if (measure == MeasureKind::PureUniform) return Rational(1);
  // The shifted run may sit one past the cap.
  ExactLimits shifted{std::max(limits.max_n, spec.n + 1)};
  Rational ratio = correction_I(measure, RunSpec(spec.n + 1, spec.k + 1), shifted) / correction_I(measure, spec, limits);
  ratio.canonicalize();
  return ratio;
}

Rational succession(MeasureKind measure, RunSpec spec, const ExactLimits& limits) {
  Rational laplace(BigInt(spec.k + 1), BigInt(spec.n + 2));
  laplace.canonicalize();
  return laplace * correction_ratio(measure, spec, limits);
}

std::vector<Rational> distribution_over_k(MeasureKind measure, long n, const ExactLimits& limits) {
  if (n < 0) throw InputError("n must be nonnegative");
  check_cap(n, limits);
  auto binom = BinomialTable::shared().rows_through(static_cast<std::size_t>(n));
  std::optional<KernelRow> row;
  if (measure != MeasureKind::PureUniform) row = common_denominator(eigenvalue_kernel(measure, n));

  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long k = 0; k <= n; ++k) {
    Rational value = Rational((*binom)(static_cast<std::size_t>(n), static_cast<std::size_t>(k))) *
                     beta_int(n - k + 1, k + 1).rational();
    if (row) value *= correction_from_row(*binom, *row, n, k);
    value.canonicalize();
    out.push_back(std::move(value));
  }
  return out;
}

std::vector<Figure1Row> figure1_table(MeasureKind measure, const std::vector<long>& n_values,
                                      const Rational& k_fraction, const ExactLimits& limits) {
  if (k_fraction < 0 || k_fraction > 1) throw InputError("k fraction must lie in [0, 1]");
  std::vector<Figure1Row> rows;
  rows.reserve(n_values.size());
  for (long n : n_values) {
    if (n < 0) throw InputError("n must be nonnegative");
    // round half up: floor(x + 1/2)
    Rational shifted = k_fraction * n + Rational(1, 2);
    BigInt k_big;
    mpz_fdiv_q(k_big.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    const long k = k_big.get_si();
    const RunSpec spec(n, k);
    Rational ratio = correction_ratio(measure, spec, limits);
    Rational laplace(BigInt(k + 1), BigInt(n + 2));
    laplace.canonicalize();
    rows.push_back({measure, n, k, ratio, laplace * ratio, laplace});
  }
  return rows;
}

std::string figure1_csv_header() {
  return "measure,n,k,correction_ratio_exact,correction_ratio_decimal,succession_decimal,laplace_decimal";
}

std::string figure1_csv_row(const Figure1Row& row) {
  return to_string(row.measure) + "," + std::to_string(row.n) + "," + std::to_string(row.k) + "," +
         format_rational(row.correction_ratio) + "," + format_decimal(row.correction_ratio) + "," +
         format_decimal(row.succession) + "," + format_decimal(row.laplace);
}

}  // namespace qdutch::exchangeable
