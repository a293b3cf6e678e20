#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "qdutch/classical/coherence.hpp"
#include "qdutch/errors.hpp"

using namespace qdutch;
using namespace qdutch::classical;

namespace {

Rational r(const char* s) { return parse_rational(s); }

// Two atoms {a, not a}; atom 0 is a.
Book two_atom_book(std::vector<std::tuple<Proposition, Proposition, Rational, Rational>> specs) {
  Book book{OutcomeSpace({"a", "not_a"}), {}};
  for (auto& [t, c, q, s] : specs) book.bets.push_back({t, c, q, s});
  return book;
}

// Every outcome pays at most -1 under `stakes`, checked atom by atom.
bool loses_everywhere(const Book& book, const std::vector<Rational>& stakes) {
  const Book staked = with_stakes(book, stakes);
  for (std::size_t w = 0; w < book.space.size(); ++w) {
    if (payoff(staked, OutcomeWord{w}) > -1) return false;
  }
  return true;
}

// Brute-force average payoff under the product joint: enumerate all 4^n
// per-bet outcome words (c_i, d_i) and weight each by prod_i q(c_i & d_i).
Rational enumerate_product_average(const Book& book, const std::vector<Rational>& p) {
  const std::size_t n = book.bets.size();
  Rational total = 0;
  for (std::size_t word = 0; word < (std::size_t{1} << (2 * n)); ++word) {
    Rational weight = 1;
    Rational gain = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& bet = book.bets[i];
      const bool c = (word >> i) & 1u;
      const bool d = (word >> (n + i)) & 1u;
      const Proposition ci = c ? bet.target : !bet.target;
      const Proposition di = d ? bet.condition : !bet.condition;
      weight *= probability_of(ci & di, p);
      if (d) gain += c ? Rational((1 - bet.quotient) * bet.stake) : Rational(-bet.quotient * bet.stake);
    }
    total += weight * gain;
  }
  return total;
}

}  // namespace

TEST_CASE("payoff of outright and conditional bets") {
  const Proposition a = Proposition::atom(2, 0);
  const Proposition top = Proposition::tautology(2);
  const Book book = two_atom_book({{a, top, r("3/5"), r("1")}});
  CHECK(payoff(book, OutcomeWord{0}) == r("2/5"));
  CHECK(payoff(book, OutcomeWord{1}) == r("-3/5"));

  // (a | b) called off when b is false: stakes and wagers come back.
  Book cond{OutcomeSpace({"ab", "a_nb", "na_b", "na_nb"}), {}};
  const Proposition ca = Proposition::from_mask(4, 0b0011);
  const Proposition cb = Proposition::from_mask(4, 0b0101);
  cond.bets.push_back({ca, cb, r("1/2"), r("2")});
  CHECK(payoff(cond, OutcomeWord{1}) == 0);  // a and not b
  CHECK(payoff(cond, OutcomeWord{3}) == 0);  // neither
  CHECK(payoff(cond, OutcomeWord{0}) == 1);
  CHECK(payoff(cond, OutcomeWord{2}) == -1);
  CHECK_THROWS_AS(payoff(cond, OutcomeWord{4}), InputError);
}

TEST_CASE("q(a)=q(not a)=3/5 is a Dutch book") {
  const Proposition a = Proposition::atom(2, 0);
  const Proposition top = Proposition::tautology(2);
  const Book book = two_atom_book({{a, top, r("3/5"), 1}, {!a, top, r("3/5"), 1}});

  // Unit stakes already lose 1/5 on both outcomes.
  CHECK(payoff(book, OutcomeWord{0}) == r("-1/5"));
  CHECK(payoff(book, OutcomeWord{1}) == r("-1/5"));

  auto stakes = find_dutch_book(book);
  REQUIRE(stakes);
  CHECK(loses_everywhere(book, *stakes));
}

TEST_CASE("q(a)=3/10, q(not a)=7/10 is coherent") {
  const Proposition a = Proposition::atom(2, 0);
  const Proposition top = Proposition::tautology(2);
  CHECK_FALSE(find_dutch_book(two_atom_book({{a, top, r("3/10"), 1}, {!a, top, r("7/10"), 1}})));
}

TEST_CASE("negative quotient is exploited with a negative stake") {
  const Proposition a = Proposition::atom(2, 0);
  const Book book = two_atom_book({{a, Proposition::tautology(2), r("-1/10"), 1}});
  auto stakes = find_dutch_book(book);
  REQUIRE(stakes);
  CHECK((*stakes)[0] < 0);
  CHECK(loses_everywhere(book, *stakes));
}

TEST_CASE("conditional book violating the multiplication law") {
  // atoms: ab, a!b, !ab, !a!b with uniform probabilities; q(a|b) raised by 1/10.
  Book book{OutcomeSpace({"ab", "a_nb", "na_b", "na_nb"}), {}};
  const Proposition a = Proposition::from_mask(4, 0b0011);
  const Proposition b = Proposition::from_mask(4, 0b0101);
  const Proposition top = Proposition::tautology(4);
  book.bets.push_back({b, top, r("1/2"), 1});
  book.bets.push_back({a & b, top, r("1/4"), 1});
  book.bets.push_back({a, b, r("3/5"), 1});
  auto stakes = find_dutch_book(book);
  REQUIRE(stakes);
  CHECK(loses_everywhere(book, *stakes));

  book.bets[2].quotient = r("1/2");
  CHECK_FALSE(find_dutch_book(book));
}

TEST_CASE("empty book and size caps") {
  Book empty{OutcomeSpace::with_size(3), {}};
  CHECK_FALSE(find_dutch_book(empty));

  Book wide{OutcomeSpace::with_size(21), {}};
  CHECK_THROWS_AS(find_dutch_book(wide), ResourceError);

  Book many{OutcomeSpace::with_size(2), {}};
  for (int i = 0; i < 17; ++i) many.bets.push_back({Proposition::atom(2, 0), Proposition::tautology(2), r("1/2"), 1});
  CHECK_THROWS_AS(find_dutch_book(many), ResourceError);
  CHECK_FALSE(find_dutch_book(many, SearchLimits{32, 20}));
}

TEST_CASE("check_axioms examples") {
  const OutcomeSpace space({"a", "b"});
  const Proposition a = Proposition::atom(2, 0);
  const Proposition b = Proposition::atom(2, 1);
  const Proposition top = Proposition::tautology(2);
  const Proposition bottom = Proposition::contradiction(2);

  SUBCASE("uniform assignment with consistent conditionals") {
    std::vector<QuotientEntry> q;
    const std::vector<Proposition> props{bottom, a, b, top};
    const std::vector<Rational> prob{0, r("1/2"), r("1/2"), 1};
    for (std::size_t i = 0; i < props.size(); ++i) q.push_back({props[i], top, prob[i]});
    for (std::size_t i = 0; i < props.size(); ++i) {
      for (std::size_t j = 1; j < props.size(); ++j) {
        Rational v = prob[(props[i] & props[j]) == a ? 1 : (props[i] & props[j]) == b ? 2 : (props[i] & props[j]) == top ? 3 : 0] / prob[j];
        q.push_back({props[i], props[j], v});
      }
    }
    CHECK(check_axioms(space, q).empty());
  }

  SUBCASE("additivity violation") {
    const OutcomeSpace three({"a", "b", "c"});
    const Proposition x = Proposition::atom(3, 0);
    const Proposition y = Proposition::atom(3, 1);
    const Proposition all = Proposition::tautology(3);
    std::vector<QuotientEntry> q{{x, all, r("1/4")}, {y, all, r("1/4")}, {x | y, all, r("3/5")}};
    auto v = check_axioms(three, q);
    REQUIRE(v.size() == 1);
    CHECK(v[0].axiom == Axiom::Additivity);
    CHECK(v[0].magnitude == r("1/10"));
  }

  SUBCASE("complementary pair without an explicit q(TRUE)") {
    std::vector<QuotientEntry> q{{a, top, r("3/5")}, {!a, top, r("3/5")}};
    auto v = check_axioms(space, q);
    REQUIRE(v.size() == 1);
    CHECK(v[0].axiom == Axiom::Additivity);
    CHECK(v[0].magnitude == r("1/5"));
  }

  SUBCASE("normalization violation") {
    std::vector<QuotientEntry> q{{top, top, r("9/10")}};
    auto v = check_axioms(space, q);
    REQUIRE(v.size() == 1);
    CHECK(v[0].axiom == Axiom::Normalization);
  }

  SUBCASE("positivity and multiplication") {
    std::vector<QuotientEntry> q{{a, top, r("-1/10")}};
    auto v = check_axioms(space, q);
    REQUIRE(v.size() == 1);
    CHECK(v[0].axiom == Axiom::Positivity);

    const OutcomeSpace four({"ab", "a_nb", "na_b", "na_nb"});
    const Proposition fa = Proposition::from_mask(4, 0b0011);
    const Proposition fb = Proposition::from_mask(4, 0b0101);
    const Proposition ftop = Proposition::tautology(4);
    std::vector<QuotientEntry> m{{fb, ftop, r("1/2")}, {fa & fb, ftop, r("1/4")}, {fa, fb, r("3/5")}};
    auto mv = check_axioms(four, m);
    REQUIRE(mv.size() == 1);
    CHECK(mv[0].axiom == Axiom::Multiplication);
    CHECK(mv[0].magnitude == r("1/20"));
  }

  SUBCASE("conflicting duplicates") {
    std::vector<QuotientEntry> q{{a, top, r("1/2")}, {a, top, r("1/3")}};
    auto v = check_axioms(space, q);
    REQUIRE(v.size() == 1);
    CHECK(v[0].axiom == Axiom::Consistency);
  }
}

TEST_CASE("average payoff") {
  const Proposition a = Proposition::atom(2, 0);
  const Proposition top = Proposition::tautology(2);
  const Book dutch = two_atom_book({{a, top, r("3/5"), 1}, {!a, top, r("3/5"), 1}});
  const std::vector<Rational> half{r("1/2"), r("1/2")};
  CHECK(average_payoff(dutch, half) == r("-1/5"));

  const Book empty{OutcomeSpace::with_size(2), {}};
  CHECK(average_payoff(empty, half) == 0);
  CHECK(average_payoff_product(empty, half) == 0);

  const std::vector<Rational> bad{r("1/2"), r("1/3")};
  CHECK_THROWS_AS(average_payoff(dutch, bad), InputError);
  const std::vector<Rational> negative{r("3/2"), r("-1/2")};
  CHECK_THROWS_AS(average_payoff(dutch, negative), InputError);

  const Book fair = two_atom_book({{a, top, r("3/10"), 4}, {!a, top, r("7/10"), -3}});
  const std::vector<Rational> p{r("3/10"), r("7/10")};
  CHECK(average_payoff(fair, p) == 0);
  CHECK(average_payoff_product(fair, p) == 0);
}

TEST_CASE("product-joint average matches brute-force enumeration") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto atoms = static_cast<std::size_t>(gen::uniform_int(rng, 1, 4));
    const auto bets = static_cast<std::size_t>(gen::uniform_int(rng, 0, 4));
    auto inst = gen::coherent_book(rng, atoms, bets);
    // Perturb one quotient so the value is not trivially zero.
    if (!inst.book.bets.empty()) inst.book.bets[0].quotient += Rational(1, 7);
    CHECK(average_payoff_product(inst.book, inst.probabilities) ==
          enumerate_product_average(inst.book, inst.probabilities));
  }
}

TEST_CASE("property: coherent random books admit no Dutch book and average to zero") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto atoms = static_cast<std::size_t>(gen::uniform_int(rng, 1, 6));
    const auto bets = static_cast<std::size_t>(gen::uniform_int(rng, 1, 8));
    auto inst = gen::coherent_book(rng, atoms, bets);
    CHECK_FALSE(find_dutch_book(inst.book));
    CHECK(average_payoff_product(inst.book, inst.probabilities) == 0);
    CHECK(average_payoff(inst.book, inst.probabilities) == 0);
    CHECK(check_axioms(inst.book.space, quotients_of(inst.book)).empty());
  }
}

TEST_CASE("property: one injected violation always yields a verified Dutch book") {
  std::mt19937_64 rng(99);
  const gen::Injection kinds[] = {gen::Injection::Positivity, gen::Injection::Normalization,
                                  gen::Injection::Additivity, gen::Injection::Multiplication};
  for (int trial = 0; trial < 200; ++trial) {
    const auto kind = kinds[trial % 4];
    const long min_atoms = kind == gen::Injection::Additivity || kind == gen::Injection::Multiplication ? 2 : 1;
    const auto atoms = static_cast<std::size_t>(gen::uniform_int(rng, min_atoms, 6));
    const Book book = gen::incoherent_book(rng, atoms, 8, kind);
    CHECK_FALSE(check_axioms(book.space, quotients_of(book)).empty());
    auto stakes = find_dutch_book(book);
    REQUIRE(stakes);
    CHECK(loses_everywhere(book, *stakes));
  }
}

TEST_CASE("property: Boolean identities on random propositions") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::size_t>(gen::uniform_int(rng, 1, 10));
    const auto a = gen::any_proposition(rng, n);
    const auto b = gen::any_proposition(rng, n);
    const auto c = gen::any_proposition(rng, n);
    const auto top = Proposition::tautology(n);
    const auto bottom = Proposition::contradiction(n);
    CHECK((a & b) == (b & a));
    CHECK((a | b) == (b | a));
    CHECK((a & (b | c)) == ((a & b) | (a & c)));
    CHECK((a | (b & c)) == ((a | b) & (a | c)));
    CHECK((a & top) == a);
    CHECK((a | bottom) == a);
    CHECK((a | !a) == top);
    CHECK((a & !a) == bottom);
    CHECK(!top == bottom);
    CHECK(!!a == a);
  }
}

TEST_CASE("Laplace law of succession") {
  CHECK(laplace_succession(0, 0) == r("1/2"));
  CHECK(laplace_succession(10, 3) == r("1/3"));
  CHECK(laplace_succession(98, 49) == r("1/2"));
  CHECK_THROWS_AS(laplace_succession(3, 4), InputError);
  CHECK_THROWS_AS(laplace_succession(-1, 0), InputError);

  for (long n = 1; n <= 300; ++n) {
    for (long k = 0; k <= n; ++k) {
      const Rational l = laplace_succession(n, k);
      CHECK(l > 0);
      CHECK(l < 1);
      if (k >= 1) {
        Rational gap = l - Rational(k, n);
        if (gap < 0) gap = -gap;
        CHECK(gap <= Rational(3, n + 2));
      }
    }
  }
}

TEST_CASE("classical predictive under the uniform prior") {
  CHECK(classical_predictive(1, 1) == r("1/2"));
  CHECK(classical_predictive(2, 1) == r("1/6"));
  CHECK(classical_predictive(2, 1).get_d() == doctest::Approx(oracle::integrate01([](double p) { return p * (1 - p); })).epsilon(1e-14));
  CHECK(classical_predictive(0, 0) == 1);
  CHECK_THROWS_AS(classical_predictive(2, 3), InputError);

  for (long n = 0; n <= 40; ++n) {
    for (long k = 0; k <= n; ++k) {
      const double oracle_value = oracle::integrate01([&](double p) { return std::pow(p, k) * std::pow(1 - p, n - k); });
      CHECK(classical_predictive(n, k).get_d() == doctest::Approx(oracle_value).epsilon(1e-12));
      const Rational step = classical_predictive(n + 1, k + 1) / classical_predictive(n, k);
      CHECK(step == laplace_succession(n, k));
    }
  }
}
