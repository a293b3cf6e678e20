#include <doctest.h>

#include <cmath>

#include "qdutch/errors.hpp"
#include "qdutch/montecarlo/oracle.hpp"

using namespace qdutch;
using namespace qdutch::montecarlo;

namespace {

struct Moments {
  double mean = 0;
  double sem = 0;
};

template <typename F>
Moments sample_mean(MeasureKind m, std::uint64_t seed, int draws, F f, std::uint64_t* attempts = nullptr) {
  Engine engine = chunk_engine(seed, 0);
  double s = 0, s2 = 0;
  for (int i = 0; i < draws; ++i) {
    const double v = f(sample_state(m, engine, attempts));
    s += v;
    s2 += v * v;
  }
  const double mean = s / draws;
  const double var = (s2 / draws - mean * mean) * draws / (draws - 1);
  return {mean, std::sqrt(var / draws)};
}

}  // namespace

TEST_CASE("uniform draws lie in [0, 1) and streams are reproducible") {
  Engine a = chunk_engine(42, 3);
  Engine b = chunk_engine(42, 3);
  Engine c = chunk_engine(42, 4);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = uniform01(a);
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(x == uniform01(b));
    differs |= x != uniform01(c);
  }
  CHECK(differs);
}

TEST_CASE("pure states have unit top eigenvalue") {
  Engine e = chunk_engine(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto s = sample_state(MeasureKind::PureUniform, e);
    CHECK(s.lambda1 == 1.0);
    CHECK(s.t >= 0.0);
    CHECK(s.t < 1.0);
    CHECK(s.q() == s.t);
  }
}

TEST_CASE("eigenvalue laws") {
  constexpr int kDraws = 200000;
  SUBCASE("flat: E[l1] = 3/4") {
    auto m = sample_mean(MeasureKind::Flat, 7, kDraws, [](const StateSample& s) { return s.lambda1; });
    CHECK(std::abs(m.mean - 0.75) <= 4 * m.sem);
  }
  SUBCASE("bures: E[l1^2 + l2^2] = 7/8 and acceptance 1/2") {
    std::uint64_t attempts = 0;
    auto m = sample_mean(
        MeasureKind::Bures, 8, kDraws,
        [](const StateSample& s) { return s.lambda1 * s.lambda1 + (1 - s.lambda1) * (1 - s.lambda1); }, &attempts);
    CHECK(std::abs(m.mean - 0.875) <= 4 * m.sem);
    const double rate = double(kDraws) / double(attempts);
    const double rate_se = std::sqrt(0.25 / double(attempts));
    CHECK(std::abs(rate - 0.5) <= 4 * rate_se);
  }
  SUBCASE("basis angle is uniform in t") {
    auto m = sample_mean(MeasureKind::Bures, 9, kDraws, [](const StateSample& s) { return s.t; });
    CHECK(std::abs(m.mean - 0.5) <= 4 * m.sem);
  }
  SUBCASE("top eigenvalue is at least one half") {
    Engine e = chunk_engine(10, 0);
    for (int i = 0; i < 10000; ++i) {
      for (auto kind : {MeasureKind::Flat, MeasureKind::Bures}) {
        const auto s = sample_state(kind, e);
        CHECK(s.lambda1 >= 0.5);
        CHECK(s.lambda1 <= 1.0);
      }
    }
  }
}

TEST_CASE("estimates bracket the exact values") {
  for (auto m : {MeasureKind::PureUniform, MeasureKind::Flat, MeasureKind::Bures}) {
    SampleConfig cfg{m, 42, 200000, 1 << 14, 0};
    const auto reports = verify_grid(cfg, 6);
    CHECK(reports.size() == 2 * 28);
    for (const auto& r : reports) {
      CAPTURE(report_json(r));
      CHECK(r.pass);
      CHECK(std::abs(r.z) <= kPassSigma);
    }
  }
}

TEST_CASE("results do not depend on the thread count") {
  SampleConfig one{MeasureKind::Bures, 123, 50000, 4096, 1};
  SampleConfig many = one;
  many.threads = 3;
  const MomentGrid a = accumulate(one, 5);
  const MomentGrid b = accumulate(many, 5);
  CHECK(a.count() == 50000);
  CHECK(a.count() == b.count());
  CHECK(a.attempts() == b.attempts());
  for (long n = 0; n <= 5; ++n) {
    for (long k = 0; k <= n; ++k) {
      CHECK(a.mean({n, k}).value == b.mean({n, k}).value);
      CHECK(a.mean({n, k}).std_error == b.mean({n, k}).std_error);
    }
  }
  // A different seed gives a different grid.
  SampleConfig other = one;
  other.seed = 124;
  CHECK(accumulate(other, 2).mean({2, 1}).value != a.mean({2, 1}).value);
}

TEST_CASE("moment grid bookkeeping") {
  MomentGrid g(2);
  g.add(0.5);
  g.add(0.5);
  CHECK(g.count() == 2);
  CHECK(g.mean({2, 1}).value == doctest::Approx(0.25));
  CHECK(g.mean({2, 1}).std_error == 0.0);
  MomentGrid h(2);
  h.add(1.0);
  g.merge(h);
  CHECK(g.count() == 3);
  CHECK(g.mean({1, 1}).value == doctest::Approx(2.0 / 3));
  CHECK_THROWS_AS(g.mean({3, 1}), InputError);
  CHECK_THROWS_AS(g.ratio({2, 1}), InputError);
  CHECK_THROWS_AS(g.merge(MomentGrid(3)), InputError);
}

TEST_CASE("deep records flag an unstable ratio") {
  MomentGrid zero(2);
  zero.add(0.0);
  zero.add(0.0);
  CHECK(zero.ratio({1, 1}).unstable);

  // A handful of draws cannot resolve y_{60,30}, which is of order 1e-19.
  MomentGrid sparse(61);
  Engine e = chunk_engine(5, 0);
  for (int i = 0; i < 20; ++i) sparse.add(sample_state(MeasureKind::PureUniform, e).q());
  CHECK(sparse.ratio({60, 30}).unstable);

  MomentGrid dense(3);
  for (int i = 0; i < 20000; ++i) dense.add(sample_state(MeasureKind::Flat, e).q());
  CHECK_FALSE(dense.ratio({2, 1}).unstable);
}

TEST_CASE("sample-size guards") {
  SampleConfig small{MeasureKind::Flat, 1, 99, 64, 1};
  CHECK_THROWS_AS(estimate_prob_Pnk(small, {2, 1}), InputError);
  small.samples = 999;
  CHECK_THROWS_AS(estimate_succession(small, {2, 1}), InputError);
  small.samples = 100;
  CHECK_NOTHROW(estimate_prob_Pnk(small, {2, 1}));
}

TEST_CASE("report json") {
  SampleConfig cfg{MeasureKind::Flat, 42, 20000, 4096, 1};
  const Report r = compare_exact_vs_mc(cfg, {2, 1});
  CHECK(r.exact == parse_rational("2/9"));
  const std::string j = report_json(r);
  for (const char* key : {"\"measure\"", "\"quantity\"", "\"n\"", "\"k\"", "\"exact\"", "\"estimate\"", "\"stderr\"",
                          "\"z\"", "\"pass\""})
    CHECK(j.find(key) != std::string::npos);
  CHECK(j.find("\"2/9\"") != std::string::npos);
}
