#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdutch/classical/proposition.hpp"
#include "qdutch/rational.hpp"

namespace qdutch::classical {

/// Bet on `target` given `condition`. Outright bets use condition = TRUE.
/// If the condition turns out false the bet is called off and pays 0.
struct ConditionalBet {
  Proposition target;
  Proposition condition;
  Rational quotient;
  Rational stake = 1;

  bool is_outright() const { return condition.is_tautology(); }
};

struct Book {
  OutcomeSpace space;
  std::vector<ConditionalBet> bets;
};

/// Size caps for the exact Dutch-book search.
struct SearchLimits {
  std::size_t max_bets = 16;
  std::size_t max_atoms = 20;
};

/// Net gain of the bettor on one bet when `atom` is the true outcome.
Rational bet_payoff(const ConditionalBet& bet, std::size_t atom);

Rational payoff(const Book& book, OutcomeWord outcome);

/// Looks for stakes under which every outcome pays at most -1. Stakes are
/// scale free, so any strictly losing book can be normalized that way.
/// The quotients are taken from the book; its stakes are ignored.
std::optional<std::vector<Rational>> find_dutch_book(const Book& book, const SearchLimits& limits = {});

/// Same book with its stakes replaced.
Book with_stakes(Book book, std::span<const Rational> stakes);

enum class Axiom { Positivity, Additivity, Normalization, Multiplication, Consistency };

std::string to_string(Axiom axiom);

struct Violation {
  Axiom axiom;
  std::string detail;
  Rational magnitude;  ///< size of the defect, e.g. |q(a|b)q(b) - q(a&b)|
};

/// Quotient assignment: one entry per (target, condition) pair.
struct QuotientEntry {
  Proposition target;
  Proposition condition;
  Rational quotient;
};

/// Checks positivity, additivity over exclusive events (outright and under a
/// shared condition), q(TRUE)=1 and q(a&b)=q(a|b)q(b) on every combination
/// the assignment covers. Conflicting duplicates are reported as Consistency.
std::vector<Violation> check_axioms(const OutcomeSpace& space, std::span<const QuotientEntry> assignment);

/// Convenience: the quotients of a book as an assignment.
std::vector<QuotientEntry> quotients_of(const Book& book);

/// Average payoff sum_w joint(w) G(w) for a joint distribution over atoms.
Rational average_payoff(const Book& book, std::span<const Rational> joint);

/// Average payoff under the product joint in which every bet resolves
/// independently: q'(w) = prod_i q(c_i & d_i) with q given by the atom
/// distribution `atom_probabilities`.
Rational average_payoff_product(const Book& book, std::span<const Rational> atom_probabilities);

/// Probability of a proposition under a distribution over atoms.
Rational probability_of(const Proposition& p, std::span<const Rational> atom_probabilities);

/// Laplace rule (k+1)/(n+2).
Rational laplace_succession(long n, long k);

/// Probability of one particular ordered record with k successes in n
/// trials under a uniform prior: k!(n-k)!/(n+1)!.
Rational classical_predictive(long n, long k);

}  // namespace qdutch::classical
