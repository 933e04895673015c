#include "bblab/symmetry.hpp"

#include <algorithm>
#include <numeric>

namespace bblab {

StatePermutation::StatePermutation(std::vector<int> mapping)
    : mapping_(std::move(mapping)) {
  const int n = size();
  if (n == 0) throw Error("empty state permutation");
  if (mapping_[0] != 0) throw Error("state permutation must fix state 0");
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (int v : mapping_) {
    if (v < 0 || v >= n || hit[static_cast<std::size_t>(v)]) {
      throw Error("state permutation is not a bijection");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
}

StatePermutation StatePermutation::identity(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 0);
  return StatePermutation(std::move(m));
}

StatePermutation StatePermutation::after(const StatePermutation& inner) const {
  if (inner.size() != size()) throw Error("state permutation size mismatch");
  std::vector<int> m(mapping_.size());
  for (int q = 0; q < size(); ++q) m[q] = mapping_[inner(q)];
  return StatePermutation(std::move(m));
}

std::vector<StatePermutation> StatePermutation::all(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 0);
  std::vector<StatePermutation> out;
  do {
    out.emplace_back(m);
  } while (std::next_permutation(m.begin() + 1, m.end()));
  return out;
}

namespace {

std::uint8_t remap_target(std::uint8_t t, const std::vector<int>& p,
                          bool flip) {
  const int state = t / 6;
  const int write = (t % 6) / 3;
  Move move = static_cast<Move>(t % 3);
  if (flip) move = mirrored(move);
  return static_cast<std::uint8_t>(6 * p[state] + 3 * write +
                                   static_cast<int>(move));
}

}  // namespace

Machine mirror(const Machine& machine) {
  Machine::Slots slots = machine.slots();
  for (auto& t : slots) {
    if (t == kNoRule) continue;
    const int move = t % 3;
    t = static_cast<std::uint8_t>(t - move + (2 - move));
  }
  return Machine::from_slots(slots);
}

Machine permute_states(const Machine& machine, const StatePermutation& p) {
  if (p.size() != machine.n_states()) {
    throw Error("permutation over " + std::to_string(p.size()) +
                " states applied to a " + std::to_string(machine.n_states()) +
                "-state machine");
  }
  Machine::Slots slots;
  slots.fill(kNoRule);
  for (int f = 0; f < 2 * machine.n_states(); ++f) {
    const std::uint8_t t = machine.slot(f);
    if (t == kNoRule) continue;
    slots[2 * p(f / 2) + f % 2] = remap_target(t, p.mapping(), false);
  }
  return Machine::from_slots(slots);
}

SymmetryGroup::SymmetryGroup(int n_states) : n_states_(n_states) {
  if (n_states < 1 || n_states > kMaxStates) {
    throw Error("symmetry group needs 1.." + std::to_string(kMaxStates) +
                " states");
  }
  for (bool flip : {false, true}) {
    for (const StatePermutation& p : StatePermutation::all(n_states)) {
      Element e;
      e.source.fill(0);
      e.remap.fill(kNoRule);
      for (int f = 0; f < 2 * n_states; ++f) {
        e.source[2 * p(f / 2) + f % 2] = static_cast<std::uint8_t>(f);
      }
      for (int t = 0; t < 6 * n_states; ++t) {
        e.remap[t] = remap_target(static_cast<std::uint8_t>(t), p.mapping(), flip);
      }
      elements_.push_back(e);
    }
  }
}

Machine SymmetryGroup::apply(std::size_t element, const Machine& machine) const {
  if (machine.n_states() > n_states_) {
    throw Error("machine has more states than the symmetry group");
  }
  const Element& e = elements_[element];
  Machine::Slots slots;
  slots.fill(kNoRule);
  for (int s = 0; s < 2 * n_states_; ++s) {
    const std::uint8_t t = machine.slot(e.source[s]);
    slots[s] = t == kNoRule ? kNoRule : e.remap[t];
  }
  return Machine::from_slots(slots);
}

bool SymmetryGroup::is_canonical(const Machine::Slots& slots,
                                 int* stabilizer) const {
  const int n_slots = 2 * n_states_;
  int fixed = 1;
  for (std::size_t g = 1; g < elements_.size(); ++g) {
    const Element& e = elements_[g];
    bool equal = true;
    for (int s = 0; s < n_slots; ++s) {
      const std::uint8_t t = slots[e.source[s]];
      const std::uint8_t image = t == kNoRule ? kNoRule : e.remap[t];
      if (image != slots[s]) {
        if (image < slots[s]) return false;
        equal = false;
        break;
      }
    }
    if (equal) ++fixed;
  }
  if (stabilizer) *stabilizer = fixed;
  return true;
}

bool SymmetryGroup::prefix_may_be_canonical(std::uint8_t slot0,
                                            std::uint8_t slot1) const {
  for (std::size_t g = 1; g < elements_.size(); ++g) {
    const Element& e = elements_[g];
    const std::uint8_t i0 = slot0 == kNoRule ? kNoRule : e.remap[slot0];
    if (i0 < slot0) return false;
    if (i0 > slot0) continue;
    const std::uint8_t i1 = slot1 == kNoRule ? kNoRule : e.remap[slot1];
    if (i1 < slot1) return false;
  }
  return true;
}

std::vector<Machine> orbit(const Machine& machine, int space_states) {
  const int n = space_states == 0 ? machine.n_states() : space_states;
  SymmetryGroup group(n);
  std::vector<Machine> out;
  out.reserve(group.size());
  for (std::size_t g = 0; g < group.size(); ++g) {
    out.push_back(group.apply(g, machine));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Machine canonical_form(const Machine& machine, int space_states) {
  return orbit(machine, space_states).front();
}

std::vector<Machine> base_set(std::span<const Machine> machines,
                              int space_states) {
  std::vector<Machine> out;
  out.reserve(machines.size());
  for (const Machine& m : machines) {
    out.push_back(canonical_form(m, space_states));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Machine compact_states(const Machine& machine) {
  std::array<int, kMaxStates> relabel;
  relabel.fill(-1);
  relabel[0] = 0;
  for (int f = 0; f < 2 * machine.n_states(); ++f) {
    const std::uint8_t t = machine.slot(f);
    if (t == kNoRule) continue;
    relabel[f / 2] = 0;
    relabel[t / 6] = 0;
  }
  int next = 0;
  for (auto& r : relabel) {
    if (r == 0) r = next++;
  }
  Machine::Slots slots;
  slots.fill(kNoRule);
  for (int f = 0; f < 2 * machine.n_states(); ++f) {
    const std::uint8_t t = machine.slot(f);
    if (t == kNoRule) continue;
    slots[2 * relabel[f / 2] + f % 2] =
        static_cast<std::uint8_t>(6 * relabel[t / 6] + t % 6);
  }
  return Machine::from_slots(slots);
}

}  // namespace bblab
