#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bblab {

/// Largest state count a Machine can hold. Names mentioning more states are
/// rejected at decode time.
inline constexpr int kMaxStates = 8;
inline constexpr int kMaxSlots = 2 * kMaxStates;

/// Marks an undefined (state, read) pair in a slot table.
inline constexpr std::uint8_t kNoRule = 0xFF;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Move : std::uint8_t { kLeft = 0, kStay = 1, kRight = 2 };

char move_letter(Move move);
Move mirrored(Move move);

/// One transition (from_state, read) -> (to_state, write, move).
struct Rule {
  int from_state = 0;
  int read = 0;
  int to_state = 0;
  int write = 0;
  Move move = Move::kLeft;

  int from_index() const { return 2 * from_state + read; }
  int to_index() const {
    return 6 * to_state + 3 * write + static_cast<int>(move);
  }

  static Rule from_indices(int from_index, int to_index);

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Name tuple (k, f1, t1, ..., fk, tk) with from-indexes ascending.
struct NameTuple {
  int k = 0;
  std::vector<std::pair<int, int>> pairs;

  friend bool operator==(const NameTuple&, const NameTuple&) = default;
};

/// A partial transition function in dense-state form. The table is stored
/// as one to-index per from-index slot (kNoRule where undefined), which makes
/// the name order a plain lexicographic comparison of the slot arrays.
class Machine {
 public:
  using Slots = std::array<std::uint8_t, kMaxSlots>;

  /// Throws Error if the rules violate any machine invariant.
  static Machine from_rules(std::span<const Rule> rules);

  /// Builds from a slot table; n_states is derived. Throws Error on an
  /// empty or out-of-range table.
  static Machine from_slots(const Slots& slots);

  int n_states() const { return n_states_; }
  int rule_count() const { return rule_count_; }
  const Slots& slots() const { return slots_; }
  std::uint8_t slot(int from_index) const { return slots_[from_index]; }

  std::optional<Rule> rule(int state, int read) const;
  std::vector<Rule> rules() const;

  /// Number of distinct states mentioned by any rule, counting state 0.
  int used_states() const;

  NameTuple name_tuple() const;

  /// Name order: rule count first, then the (f, t) pair sequence.
  friend std::strong_ordering operator<=>(const Machine& a, const Machine& b) {
    if (auto c = a.rule_count_ <=> b.rule_count_; c != 0) return c;
    return a.slots_ <=> b.slots_;
  }
  friend bool operator==(const Machine& a, const Machine& b) {
    return a.slots_ == b.slots_;
  }

 private:
  Machine() { slots_.fill(kNoRule); }

  Slots slots_;
  std::uint8_t n_states_ = 0;
  std::uint8_t rule_count_ = 0;
};

enum class ViolationKind {
  kEmpty,
  kTooManyRules,
  kDuplicateSource,
  kSymbolOutOfRange,
  kStateOutOfRange,
  kNotDense,
  kTooManyStates,
};

struct Violation {
  ViolationKind kind;
  std::string message;
  std::optional<Rule> rule;
};

/// Checks a raw rule list against a declared state count. Returns every
/// violated invariant; an empty result means the table is a valid Machine.
std::vector<Violation> validate(std::span<const Rule> rules, int n_states);
std::vector<Violation> validate(const Machine& machine);

NameTuple parse_name_tuple(std::string_view text);
std::string format_name_tuple(const NameTuple& tuple);

Machine decode_name(std::string_view text);
std::string encode_name(const Machine& machine);

using BigInt = boost::multiprecision::cpp_int;

/// (6n+1)^(2n) - 1: every non-empty partial transition function over at most
/// n states.
BigInt machine_space_size(int n);

/// Same value; throws Error when it does not fit in 64 bits.
std::uint64_t machine_space_size_u64(int n);

std::string render_dot(const Machine& machine);

}  // namespace bblab
