#include "qdutch/classical/proposition.hpp"

#include <algorithm>

#include "qdutch/errors.hpp"

namespace qdutch::classical {

OutcomeSpace::OutcomeSpace(std::vector<std::string> atom_names) : names_(std::move(atom_names)) {
  if (names_.empty()) throw InputError("outcome space needs at least one atom");
  if (names_.size() > kMaxAtoms) throw ResourceError("outcome space limited to 64 atoms");
  auto sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("duplicate atom name in outcome space");
  }
}

OutcomeSpace OutcomeSpace::with_size(std::size_t atom_count) {
  std::vector<std::string> names;
  names.reserve(atom_count);
  for (std::size_t i = 0; i < atom_count; ++i) names.push_back("a" + std::to_string(i));
  return OutcomeSpace(std::move(names));
}

std::optional<std::size_t> OutcomeSpace::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

Proposition Proposition::atom(std::size_t atom_count, std::size_t index) {
  if (index >= atom_count) throw InputError("atom index out of range");
  return Proposition(atom_count, std::uint64_t{1} << index);
}

Proposition Proposition::tautology(std::size_t atom_count) {
  return Proposition(atom_count, full_mask(atom_count));
}

Proposition Proposition::contradiction(std::size_t atom_count) { return Proposition(atom_count, 0); }

Proposition Proposition::from_mask(std::size_t atom_count, std::uint64_t mask) {
  if (atom_count > OutcomeSpace::kMaxAtoms) throw ResourceError("outcome space limited to 64 atoms");
  if ((mask & ~full_mask(atom_count)) != 0) throw InputError("mask has bits beyond the atom count");
  return Proposition(atom_count, mask);
}

bool Proposition::disjoint_with(const Proposition& other) const { return (*this & other).is_contradiction(); }

namespace {
void require_same_space(const Proposition& a, const Proposition& b) {
  if (a.atom_count() != b.atom_count()) throw InputError("propositions over different outcome spaces");
}
}  // namespace

Proposition operator&(const Proposition& a, const Proposition& b) {
  require_same_space(a, b);
  return Proposition(a.atom_count_, a.mask_ & b.mask_);
}

Proposition operator|(const Proposition& a, const Proposition& b) {
  require_same_space(a, b);
  return Proposition(a.atom_count_, a.mask_ | b.mask_);
}

Proposition operator!(const Proposition& a) {
  return Proposition(a.atom_count_, ~a.mask_ & Proposition::full_mask(a.atom_count_));
}

std::string Proposition::to_string(const OutcomeSpace& space) const {
  if (is_tautology()) return "TRUE";
  if (is_contradiction()) return "FALSE";
  std::string out;
  for (std::size_t i = 0; i < atom_count_; ++i) {
    if (!holds_at(i)) continue;
    if (!out.empty()) out += " | ";
    out += space.names().at(i);
  }
  return out;
}

}  // namespace qdutch::classical
