#include "qdutch/classical/coherence.hpp"

#include <map>

#include "qdutch/classical/exact_simplex.hpp"
#include "qdutch/errors.hpp"

namespace qdutch::classical {

Rational bet_payoff(const ConditionalBet& bet, std::size_t atom) {
  if (!bet.condition.holds_at(atom)) return 0;
  if (bet.target.holds_at(atom)) return (1 - bet.quotient) * bet.stake;
  return -bet.quotient * bet.stake;
}

Rational payoff(const Book& book, OutcomeWord outcome) {
  if (outcome.atom >= book.space.size()) throw InputError("outcome selects an atom outside the space");
  Rational total = 0;
  for (const auto& bet : book.bets) total += bet_payoff(bet, outcome.atom);
  return total;
}

std::optional<std::vector<Rational>> find_dutch_book(const Book& book, const SearchLimits& limits) {
  const std::size_t atoms = book.space.size();
  const std::size_t bets = book.bets.size();
  if (atoms > limits.max_atoms) {
    throw ResourceError("Dutch-book search limited to " + std::to_string(limits.max_atoms) + " atoms");
  }
  if (bets > limits.max_bets) {
    throw ResourceError("Dutch-book search limited to " + std::to_string(limits.max_bets) + " bets");
  }
  if (bets == 0) return std::nullopt;

  // Unit-stake payoff coefficient of bet b when atom w is true.
  ConditionalBet unit;
  RationalMatrix coeff(atoms, bets);
  for (std::size_t b = 0; b < bets; ++b) {
    unit = book.bets[b];
    unit.stake = 1;
    for (std::size_t w = 0; w < atoms; ++w) coeff(w, b) = bet_payoff(unit, w);
  }

  // Stakes are free: S = S+ - S-. Each row asks coeff*S + slack = -1, slack >= 0.
  RationalMatrix a(atoms, 2 * bets + atoms);
  std::vector<Rational> rhs(atoms, Rational(-1));
  for (std::size_t w = 0; w < atoms; ++w) {
    for (std::size_t b = 0; b < bets; ++b) {
      a(w, b) = coeff(w, b);
      a(w, bets + b) = -coeff(w, b);
    }
    a(w, 2 * bets + w) = 1;
  }

  auto solution = find_nonnegative_solution(a, rhs);
  if (!solution) return std::nullopt;
  std::vector<Rational> stakes(bets);
  for (std::size_t b = 0; b < bets; ++b) stakes[b] = (*solution)[b] - (*solution)[bets + b];
  return stakes;
}

Book with_stakes(Book book, std::span<const Rational> stakes) {
  if (stakes.size() != book.bets.size()) throw InputError("stake vector length does not match the book");
  for (std::size_t i = 0; i < stakes.size(); ++i) book.bets[i].stake = stakes[i];
  return book;
}

std::string to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::Positivity: return "positivity";
    case Axiom::Additivity: return "additivity";
    case Axiom::Normalization: return "normalization";
    case Axiom::Multiplication: return "multiplication";
    case Axiom::Consistency: return "consistency";
  }
  return "unknown";
}

std::vector<QuotientEntry> quotients_of(const Book& book) {
  std::vector<QuotientEntry> out;
  out.reserve(book.bets.size());
  for (const auto& bet : book.bets) out.push_back({bet.target, bet.condition, bet.quotient});
  return out;
}

namespace {

// q(a|b) only depends on a&b within b.
using Key = std::pair<std::uint64_t, std::uint64_t>;

Key key_of(const Proposition& target, const Proposition& condition) {
  return {(target & condition).mask(), condition.mask()};
}

std::string describe(const OutcomeSpace& space, std::size_t n, Key key) {
  auto target = Proposition::from_mask(n, key.first).to_string(space);
  auto condition = Proposition::from_mask(n, key.second);
  if (condition.is_tautology()) return "q(" + target + ")";
  return "q(" + target + " given " + condition.to_string(space) + ")";
}

Rational abs_of(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace

std::vector<Violation> check_axioms(const OutcomeSpace& space, std::span<const QuotientEntry> assignment) {
  const std::size_t n = space.size();
  std::vector<Violation> out;
  std::map<Key, Rational> table;

  for (const auto& e : assignment) {
    if (e.target.atom_count() != n || e.condition.atom_count() != n) {
      throw InputError("assignment entry over a different outcome space");
    }
    const Key key = key_of(e.target, e.condition);
    auto [it, inserted] = table.emplace(key, e.quotient);
    if (!inserted && it->second != e.quotient) {
      out.push_back({Axiom::Consistency,
                     describe(space, n, key) + " assigned both " + format_rational(it->second) + " and " +
                         format_rational(e.quotient),
                     abs_of(it->second - e.quotient)});
    }
  }

  const std::uint64_t full = Proposition::tautology(n).mask();

  for (const auto& [key, q] : table) {
    if (q < 0) {
      out.push_back({Axiom::Positivity, describe(space, n, key) + " = " + format_rational(q) + " < 0", abs_of(q)});
    }
    if (key.first == full && key.second == full && q != 1) {
      out.push_back({Axiom::Normalization, "q(TRUE) = " + format_rational(q), abs_of(q - 1)});
    }
  }

  for (auto i = table.begin(); i != table.end(); ++i) {
    for (auto j = std::next(i); j != table.end(); ++j) {
      if (i->first.second != j->first.second) continue;
      const std::uint64_t a = i->first.first;
      const std::uint64_t b = j->first.first;
      if ((a & b) != 0) continue;
      const Key join_key{a | b, i->first.second};
      // q(c|c) = 1 needs no entry of its own.
      Rational join_q = 1;
      if (auto join = table.find(join_key); join != table.end()) {
        join_q = join->second;
      } else if (join_key.first != join_key.second) {
        continue;
      }
      const Rational defect = join_q - (i->second + j->second);
      if (defect != 0) {
        out.push_back({Axiom::Additivity,
                       describe(space, n, join_key) + " != " + describe(space, n, i->first) + " + " +
                           describe(space, n, j->first),
                       abs_of(defect)});
      }
    }
  }

  for (const auto& [key, q_cond] : table) {
    if (key.second == full) continue;
    auto cond = table.find({key.second, full});
    auto meet = table.find({key.first, full});
    if (cond == table.end() || meet == table.end()) continue;
    const Rational defect = meet->second - q_cond * cond->second;
    if (defect != 0) {
      out.push_back({Axiom::Multiplication,
                     describe(space, n, meet->first) + " != " + describe(space, n, key) + " * " +
                         describe(space, n, cond->first),
                     abs_of(defect)});
    }
  }
  return out;
}

Rational probability_of(const Proposition& p, std::span<const Rational> atom_probabilities) {
  if (p.atom_count() != atom_probabilities.size()) throw InputError("distribution length does not match the space");
  Rational total = 0;
  for (std::size_t i = 0; i < atom_probabilities.size(); ++i) {
    if (p.holds_at(i)) total += atom_probabilities[i];
  }
  return total;
}

namespace {

void require_distribution(std::span<const Rational> joint, std::size_t atoms) {
  if (joint.size() != atoms) throw InputError("joint distribution length does not match the outcome space");
  Rational total = 0;
  for (const auto& p : joint) {
    if (p < 0) throw InputError("joint distribution has a negative entry");
    total += p;
  }
  if (total != 1) throw InputError("joint distribution sums to " + format_rational(total) + ", not 1");
}

}  // namespace

Rational average_payoff(const Book& book, std::span<const Rational> joint) {
  require_distribution(joint, book.space.size());
  Rational total = 0;
  for (std::size_t w = 0; w < joint.size(); ++w) {
    if (joint[w] == 0) continue;
    total += joint[w] * payoff(book, OutcomeWord{w});
  }
  return total;
}

Rational average_payoff_product(const Book& book, std::span<const Rational> atom_probabilities) {
  require_distribution(atom_probabilities, book.space.size());

  // Per-bet outcome law over (c_i, d_i): win, lose, called off (both c values).
  struct Resolution {
    Rational win, lose, off;
  };
  std::vector<Resolution> law;
  law.reserve(book.bets.size());
  for (const auto& bet : book.bets) {
    law.push_back({probability_of(bet.target & bet.condition, atom_probabilities),
                   probability_of((!bet.target) & bet.condition, atom_probabilities),
                   probability_of(!bet.condition, atom_probabilities)});
  }

  // G is a sum over bets and the joint factorizes, so each bet contributes its
  // own expectation times the total mass of the other bets' outcomes.
  Rational total = 0;
  for (std::size_t i = 0; i < book.bets.size(); ++i) {
    const auto& bet = book.bets[i];
    Rational expectation = law[i].win * (1 - bet.quotient) * bet.stake - law[i].lose * bet.quotient * bet.stake;
    Rational others = 1;
    for (std::size_t j = 0; j < law.size(); ++j) {
      if (j != i) others *= law[j].win + law[j].lose + law[j].off;
    }
    total += expectation * others;
  }
  return total;
}

Rational laplace_succession(long n, long k) {
  if (n < 0 || k < 0 || k > n) throw InputError("need 0 <= k <= n");
  return ratio(k + 1, n + 2);
}

Rational classical_predictive(long n, long k) {
  if (n < 0 || k < 0 || k > n) throw InputError("need 0 <= k <= n");
  BigInt num_k, num_rest, den;
  mpz_fac_ui(num_k.get_mpz_t(), static_cast<unsigned long>(k));
  mpz_fac_ui(num_rest.get_mpz_t(), static_cast<unsigned long>(n - k));
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(n + 1));
  return ratio(num_k * num_rest, den);
}

}  // namespace qdutch::classical
