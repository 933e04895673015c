#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bblab/machine.hpp"

namespace bblab {

/// Bijection on {0..n-1} that fixes the start state 0.
class StatePermutation {
 public:
  /// Throws Error unless `mapping` is a bijection with mapping[0] == 0.
  explicit StatePermutation(std::vector<int> mapping);

  static StatePermutation identity(int n);

  int size() const { return static_cast<int>(mapping_.size()); }
  int operator()(int state) const { return mapping_[state]; }
  const std::vector<int>& mapping() const { return mapping_; }

  /// (*this ∘ inner)(q) = (*this)(inner(q)).
  StatePermutation after(const StatePermutation& inner) const;

  /// All (n-1)! permutations of {1..n-1}, identity first, in lexicographic
  /// order of the mapping.
  static std::vector<StatePermutation> all(int n);

 private:
  std::vector<int> mapping_;
};

/// Swaps LEFT and RIGHT in every rule.
Machine mirror(const Machine& machine);

/// Relabels states: (q,c) -> (q',w,d) becomes (p(q),c) -> (p(q'),w,d).
/// Throws Error unless p.size() == machine.n_states().
Machine permute_states(const Machine& machine, const StatePermutation& p);

/// The 2·(n-1)! symmetries of the n-state machine space: every permutation
/// of the non-start states, with and without mirroring. Each element is
/// stored as a slot map and a to-index remap, so applying one is a table
/// lookup per slot.
class SymmetryGroup {
 public:
  explicit SymmetryGroup(int n_states);

  int n_states() const { return n_states_; }
  std::size_t size() const { return elements_.size(); }

  Machine apply(std::size_t element, const Machine& machine) const;

  /// True when no group image of `machine` precedes it in name order.
  /// `stabilizer`, when given, receives the number of elements fixing it
  /// (only meaningful when the result is true).
  bool is_canonical(const Machine& machine, int* stabilizer = nullptr) const {
    return is_canonical(machine.slots(), stabilizer);
  }
  bool is_canonical(const Machine::Slots& slots, int* stabilizer = nullptr) const;

  /// Canonical test restricted to slots 0 and 1, which every element maps
  /// to themselves. A false result rules out the whole machine.
  bool prefix_may_be_canonical(std::uint8_t slot0, std::uint8_t slot1) const;

 private:
  struct Element {
    std::array<std::uint8_t, kMaxSlots> source;  // image slot s reads source[s]
    std::array<std::uint8_t, 6 * kMaxStates> remap;
  };

  int n_states_;
  std::vector<Element> elements_;  // elements_[0] is the identity
};

/// Closure of {machine} under mirroring and non-start state permutations of
/// a `space_states`-state space (0 means machine.n_states()). Sorted, unique.
std::vector<Machine> orbit(const Machine& machine, int space_states = 0);

/// The orbit element that comes first in name order.
Machine canonical_form(const Machine& machine, int space_states = 0);

/// Canonical forms of the given machines, sorted and unique.
std::vector<Machine> base_set(std::span<const Machine> machines,
                              int space_states = 0);

/// Order-preserving relabel of the mentioned states onto 0..k-1. The result
/// is a state-permutation image of the input inside any space that holds it.
Machine compact_states(const Machine& machine);

}  // namespace bblab
