#include "qdutch/montecarlo/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <thread>

#include <nlohmann/json.hpp>

#include "qdutch/errors.hpp"

namespace qdutch::montecarlo {

Engine chunk_engine(std::uint64_t seed, std::uint64_t chunk_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk_index), static_cast<std::uint32_t>(chunk_index >> 32)};
  return Engine(seq);
}

double uniform01(Engine& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

StateSample sample_state(MeasureKind measure, Engine& engine, std::uint64_t* attempts) {
  StateSample s;
  switch (measure) {
    case MeasureKind::PureUniform:
      s.lambda1 = 1.0;
      if (attempts) ++*attempts;
      break;
    case MeasureKind::Flat: {
      const double u = uniform01(engine);
      s.lambda1 = std::max(u, 1.0 - u);
      if (attempts) ++*attempts;
      break;
    }
    case MeasureKind::Bures: {
      for (;;) {
        if (attempts) ++*attempts;
        const double s_half = std::sin(0.5 * std::numbers::pi * uniform01(engine));
        const double lambda = s_half * s_half;  // arcsine on [0, 1]
        const double gap = 2.0 * lambda - 1.0;
        if (uniform01(engine) < gap * gap) {
          s.lambda1 = std::max(lambda, 1.0 - lambda);
          break;
        }
      }
      break;
    }
  }
  // Haar: beta has density sin(2 beta) on [0, pi/2], so cos^2(beta) is uniform.
  s.t = uniform01(engine);
  return s;
}

MomentGrid::MomentGrid(long max_n) : max_n_(max_n) {
  if (max_n < 0) throw InputError("moment grid needs max_n >= 0");
  const auto cells = static_cast<std::size_t>((max_n + 1) * (max_n + 2) / 2);
  sum_.assign(cells, 0.0);
  sum_sq_.assign(cells, 0.0);
  sum_cross_.assign(cells, 0.0);
  pow_q_.assign(static_cast<std::size_t>(max_n + 1), 1.0);
  pow_r_.assign(static_cast<std::size_t>(max_n + 1), 1.0);
}

void MomentGrid::add(double q) {
  for (long a = 1; a <= max_n_; ++a) {
    pow_q_[static_cast<std::size_t>(a)] = pow_q_[static_cast<std::size_t>(a - 1)] * q;
    pow_r_[static_cast<std::size_t>(a)] = pow_r_[static_cast<std::size_t>(a - 1)] * (1.0 - q);
  }
  for (long n = 0; n <= max_n_; ++n) {
    for (long k = 0; k <= n; ++k) {
      const double y = pow_q_[static_cast<std::size_t>(k)] * pow_r_[static_cast<std::size_t>(n - k)];
      const std::size_t i = index(n, k);
      sum_[i] += y;
      sum_sq_[i] += y * y;
      if (n < max_n_) sum_cross_[i] += y * y * q;  // y_{n,k} * y_{n+1,k+1}
    }
  }
  ++count_;
}

void MomentGrid::merge(const MomentGrid& other) {
  if (other.max_n_ != max_n_) throw InputError("cannot merge moment grids of different size");
  for (std::size_t i = 0; i < sum_.size(); ++i) {
    sum_[i] += other.sum_[i];
    sum_sq_[i] += other.sum_sq_[i];
    sum_cross_[i] += other.sum_cross_[i];
  }
  count_ += other.count_;
  attempts_ += other.attempts_;
}

Estimate MomentGrid::mean(RunSpec spec) const {
  if (spec.n > max_n_) throw InputError("run outside the accumulated grid");
  if (count_ < 2) throw InputError("need at least two samples");
  const double n = static_cast<double>(count_);
  const std::size_t i = index(spec.n, spec.k);
  const double m = sum_[i] / n;
  const double var = std::max(0.0, (sum_sq_[i] - n * m * m) / (n - 1.0));
  return {m, std::sqrt(var / n)};
}

RatioEstimate MomentGrid::ratio(RunSpec spec) const {
  if (spec.n + 1 > max_n_) throw InputError("ratio needs the grid to reach n + 1");
  if (count_ < 2) throw InputError("need at least two samples");
  const double n = static_cast<double>(count_);
  const std::size_t iy = index(spec.n, spec.k);
  const std::size_t ix = index(spec.n + 1, spec.k + 1);
  const double mx = sum_[ix] / n;
  const double my = sum_[iy] / n;
  const double vx = (sum_sq_[ix] - n * mx * mx) / (n - 1.0);
  const double vy = (sum_sq_[iy] - n * my * my) / (n - 1.0);
  const double cxy = (sum_cross_[iy] - n * mx * my) / (n - 1.0);
  RatioEstimate out;
  out.value = mx / my;
  const double var = (vx - 2.0 * out.value * cxy + out.value * out.value * vy) / (n * my * my);
  out.std_error = std::sqrt(std::max(0.0, var));
  out.unstable = my <= 0.0 || my < 5.0 * std::sqrt(std::max(0.0, vy) / n);
  return out;
}

namespace {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QDUTCH_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

MomentGrid accumulate(const SampleConfig& config, long max_n) {
  if (config.samples < 1) throw InputError("need at least one sample");
  if (config.chunk < 1) throw InputError("chunk size must be positive");
  const std::size_t chunks = (config.samples + config.chunk - 1) / config.chunk;
  std::vector<std::optional<MomentGrid>> partial(chunks);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      Engine engine = chunk_engine(config.seed, c);
      MomentGrid grid(max_n);
      const std::size_t begin = c * config.chunk;
      const std::size_t end = std::min(config.samples, begin + config.chunk);
      std::uint64_t attempts = 0;
      for (std::size_t s = begin; s < end; ++s) grid.add(sample_state(config.measure, engine, &attempts).q());
      grid.add_attempts(attempts);
      partial[c] = std::move(grid);
    }
  };

  const unsigned threads = std::min<std::size_t>(resolve_threads(config.threads), chunks);
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();

  // Fixed chunk order keeps the floating-point reduction reproducible.
  MomentGrid total(max_n);
  for (const auto& g : partial) total.merge(*g);
  return total;
}

Estimate estimate_prob_Pnk(const SampleConfig& config, RunSpec spec) {
  if (config.samples < 100) throw InputError("probability estimate needs at least 100 samples");
  return accumulate(config, spec.n).mean(spec);
}

RatioEstimate estimate_succession(const SampleConfig& config, RunSpec spec) {
  if (config.samples < 1000) throw InputError("succession estimate needs at least 1000 samples");
  return accumulate(config, spec.n + 1).ratio(spec);
}

std::string to_string(Quantity q) { return q == Quantity::ProbPnk ? "prob_Pnk" : "succession"; }

namespace {

Report make_report(MeasureKind measure, Quantity quantity, RunSpec spec, Rational exact, double estimate,
                   double se, bool unstable) {
  const double diff = std::abs(exact.get_d() - estimate);
  double z = 0.0;
  if (se > 0.0) {
    z = diff / se;
  } else if (diff > 1e-12) {
    z = std::numeric_limits<double>::infinity();
  }
  return {measure, quantity, spec.n, spec.k, std::move(exact), estimate, se, z, z <= kPassSigma, unstable};
}

Report report_from_grid(const MomentGrid& grid, MeasureKind measure, RunSpec spec, Quantity quantity) {
  if (quantity == Quantity::ProbPnk) {
    const Estimate e = grid.mean(spec);
    return make_report(measure, quantity, spec, exchangeable::prob_Pnk(measure, spec), e.value, e.std_error, false);
  }
  const RatioEstimate e = grid.ratio(spec);
  return make_report(measure, quantity, spec, exchangeable::succession(measure, spec), e.value, e.std_error,
                     e.unstable);
}

}  // namespace

Report compare_exact_vs_mc(const SampleConfig& config, RunSpec spec, Quantity quantity) {
  if (config.samples < (quantity == Quantity::ProbPnk ? 100u : 1000u)) {
    throw InputError("too few samples for a comparison");
  }
  const long max_n = quantity == Quantity::ProbPnk ? spec.n : spec.n + 1;
  return report_from_grid(accumulate(config, max_n), config.measure, spec, quantity);
}

std::vector<Report> verify_grid(const SampleConfig& config, long max_n) {
  if (config.samples < 1000) throw InputError("grid verification needs at least 1000 samples");
  const MomentGrid grid = accumulate(config, max_n + 1);
  std::vector<Report> out;
  for (long n = 0; n <= max_n; ++n) {
    for (long k = 0; k <= n; ++k) {
      out.push_back(report_from_grid(grid, config.measure, RunSpec(n, k), Quantity::ProbPnk));
      out.push_back(report_from_grid(grid, config.measure, RunSpec(n, k), Quantity::Succession));
    }
  }
  return out;
}

std::string report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["measure"] = exchangeable::to_string(r.measure);
  j["quantity"] = to_string(r.quantity);
  j["n"] = r.n;
  j["k"] = r.k;
  j["exact"] = format_rational(r.exact);
  j["estimate"] = r.estimate;
  j["stderr"] = r.std_error;
  j["z"] = std::isfinite(r.z) ? nlohmann::ordered_json(r.z) : nlohmann::ordered_json("inf");
  j["pass"] = r.pass;
  if (r.unstable) j["unstable"] = true;
  return j.dump();
}

}  // namespace qdutch::montecarlo
