#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qdutch/exchangeable/succession.hpp"
#include "qdutch/rational.hpp"

namespace qdutch::montecarlo {

using exchangeable::MeasureKind;
using exchangeable::RunSpec;

struct SampleConfig {
  MeasureKind measure = MeasureKind::Flat;
  std::uint64_t seed = 42;
  std::size_t samples = 1'000'000;
  /// Chunk c draws samples [c*chunk, (c+1)*chunk) from its own stream.
  std::size_t chunk = 1 << 16;
  /// 0 = QDUTCH_THREADS if set, else hardware concurrency.
  unsigned threads = 0;
};

/// Qubit state reduced to what q(P) depends on: the larger eigenvalue and
/// t = cos^2(beta) of the Haar-distributed eigenbasis.
struct StateSample {
  double lambda1 = 1.0;
  double t = 0.0;

  double q() const noexcept { return lambda1 * t + (1.0 - lambda1) * (1.0 - t); }
};

using Engine = std::mt19937_64;

/// Engine for chunk `chunk_index` under `seed`.
Engine chunk_engine(std::uint64_t seed, std::uint64_t chunk_index);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Engine& engine);

/// Draws one state. Bures eigenvalues come from rejection against the
/// arcsine proposal with acceptance (2l-1)^2 and bound 2; `attempts`
/// (if given) is incremented once per proposal.
StateSample sample_state(MeasureKind measure, Engine& engine, std::uint64_t* attempts = nullptr);

struct Estimate {
  double value = 0;
  double std_error = 0;
};

struct RatioEstimate {
  double value = 0;
  double std_error = 0;
  /// Denominator mean below five of its standard errors.
  bool unstable = false;
};

/// Sums of y_{n,k} = q^k (1-q)^(n-k), their squares and the products
/// y_{n,k} y_{n+1,k+1}, for every 0 <= k <= n <= max_n.
class MomentGrid {
 public:
  explicit MomentGrid(long max_n);

  void add(double q);
  void merge(const MomentGrid& other);

  long max_n() const noexcept { return max_n_; }
  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t attempts() const noexcept { return attempts_; }
  void add_attempts(std::uint64_t a) noexcept { attempts_ += a; }

  Estimate mean(RunSpec spec) const;
  /// E[y_{n+1,k+1}] / E[y_{n,k}]; requires n + 1 <= max_n.
  RatioEstimate ratio(RunSpec spec) const;

 private:
  std::size_t index(long n, long k) const { return static_cast<std::size_t>(n * (n + 1) / 2 + k); }

  long max_n_;
  std::uint64_t count_ = 0;
  std::uint64_t attempts_ = 0;
  std::vector<double> sum_, sum_sq_, sum_cross_;
  std::vector<double> pow_q_, pow_r_;
};

/// Runs the sampler and accumulates a moment grid. The result is bit-identical
/// for a fixed (seed, samples, chunk) whatever the thread count.
MomentGrid accumulate(const SampleConfig& config, long max_n);

Estimate estimate_prob_Pnk(const SampleConfig& config, RunSpec spec);
RatioEstimate estimate_succession(const SampleConfig& config, RunSpec spec);

enum class Quantity { ProbPnk, Succession };
std::string to_string(Quantity q);

struct Report {
  MeasureKind measure;
  Quantity quantity;
  long n;
  long k;
  Rational exact;
  double estimate;
  double std_error;
  double z;
  bool pass;
  bool unstable = false;
};

inline constexpr double kPassSigma = 4.0;

/// |exact - estimate| / stderr, pass iff <= 4.
Report compare_exact_vs_mc(const SampleConfig& config, RunSpec spec, Quantity quantity = Quantity::ProbPnk);

/// Both quantities for every 0 <= k <= n <= max_n from a single sample set.
std::vector<Report> verify_grid(const SampleConfig& config, long max_n);

/// JSON object: {measure, quantity, n, k, exact, estimate, stderr, z, pass}.
std::string report_json(const Report& r);

}  // namespace qdutch::montecarlo
