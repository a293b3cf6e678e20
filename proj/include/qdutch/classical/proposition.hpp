#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qdutch::classical {

/// Finite set of mutually exclusive, exhaustive atomic propositions.
/// Propositions over the space are subsets of atoms, so at most 64 atoms.
class OutcomeSpace {
 public:
  static constexpr std::size_t kMaxAtoms = 64;

  explicit OutcomeSpace(std::vector<std::string> atom_names);
  /// Space with atoms named a0, a1, ...
  static OutcomeSpace with_size(std::size_t atom_count);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  friend bool operator==(const OutcomeSpace&, const OutcomeSpace&) = default;

 private:
  std::vector<std::string> names_;
};

/// A proposition as the set of atoms on which it is true.
class Proposition {
 public:
  Proposition() = default;

  static Proposition atom(std::size_t atom_count, std::size_t index);
  static Proposition tautology(std::size_t atom_count);
  static Proposition contradiction(std::size_t atom_count);
  static Proposition from_mask(std::size_t atom_count, std::uint64_t mask);

  std::size_t atom_count() const noexcept { return atom_count_; }
  std::uint64_t mask() const noexcept { return mask_; }

  bool holds_at(std::size_t atom_index) const noexcept { return (mask_ >> atom_index) & 1u; }
  bool is_tautology() const noexcept { return mask_ == full_mask(atom_count_); }
  bool is_contradiction() const noexcept { return mask_ == 0; }
  bool disjoint_with(const Proposition& other) const;

  friend Proposition operator&(const Proposition& a, const Proposition& b);
  friend Proposition operator|(const Proposition& a, const Proposition& b);
  friend Proposition operator!(const Proposition& a);

  friend bool operator==(const Proposition&, const Proposition&) = default;
  friend auto operator<=>(const Proposition&, const Proposition&) = default;

  /// Renders as a disjunction of atom names, "TRUE" or "FALSE".
  std::string to_string(const OutcomeSpace& space) const;

 private:
  Proposition(std::size_t atom_count, std::uint64_t mask) : atom_count_(atom_count), mask_(mask) {}

  static std::uint64_t full_mask(std::size_t n) noexcept {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  }

  std::size_t atom_count_ = 0;
  std::uint64_t mask_ = 0;
};

/// A collective outcome: exactly one atom of the space is true.
struct OutcomeWord {
  std::size_t atom = 0;
};

}  // namespace qdutch::classical
