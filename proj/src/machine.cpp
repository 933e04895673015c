#include "bblab/machine.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cctype>
#include <charconv>
#include <sstream>

namespace bblab {

char move_letter(Move move) {
  switch (move) {
    case Move::kLeft:
      return 'L';
    case Move::kStay:
      return 'S';
    case Move::kRight:
      return 'R';
  }
  return '?';
}

Move mirrored(Move move) {
  switch (move) {
    case Move::kLeft:
      return Move::kRight;
    case Move::kRight:
      return Move::kLeft;
    case Move::kStay:
      return Move::kStay;
  }
  return move;
}

Rule Rule::from_indices(int from_index, int to_index) {
  Rule r;
  r.from_state = from_index / 2;
  r.read = from_index % 2;
  r.to_state = to_index / 6;
  r.write = (to_index % 6) / 3;
  r.move = static_cast<Move>(to_index % 3);
  return r;
}

namespace {

std::string describe(const Rule& r) {
  std::ostringstream os;
  os << "(" << r.from_state << "," << r.read << ") -> (" << r.to_state << ","
     << r.write << "," << move_letter(r.move) << ")";
  return os.str();
}

}  // namespace

std::vector<Violation> validate(std::span<const Rule> rules, int n_states) {
  std::vector<Violation> out;
  if (rules.empty()) {
    out.push_back({ViolationKind::kEmpty, "machine has no rules", std::nullopt});
  }
  if (n_states > kMaxStates) {
    out.push_back({ViolationKind::kTooManyStates,
                   "n_states " + std::to_string(n_states) + " exceeds limit " +
                       std::to_string(kMaxStates),
                   std::nullopt});
  }
  if (n_states >= 1 && static_cast<long>(rules.size()) > 2L * n_states) {
    out.push_back({ViolationKind::kTooManyRules,
                   std::to_string(rules.size()) + " rules exceed 2*n_states = " +
                       std::to_string(2 * n_states),
                   std::nullopt});
  }

  int max_state = 0;
  std::vector<std::pair<int, int>> seen;
  for (const Rule& r : rules) {
    if (r.read < 0 || r.read > 1 || r.write < 0 || r.write > 1) {
      out.push_back({ViolationKind::kSymbolOutOfRange,
                     "symbol outside {0,1} in " + describe(r), r});
    }
    if (r.from_state < 0 || r.to_state < 0 || r.from_state >= n_states ||
        r.to_state >= n_states) {
      out.push_back({ViolationKind::kStateOutOfRange,
                     "state outside 0.." + std::to_string(n_states - 1) +
                         " in " + describe(r),
                     r});
    }
    max_state = std::max({max_state, r.from_state, r.to_state});
    std::pair<int, int> source{r.from_state, r.read};
    if (std::find(seen.begin(), seen.end(), source) != seen.end()) {
      out.push_back({ViolationKind::kDuplicateSource,
                     "second rule for source (" + std::to_string(r.from_state) +
                         "," + std::to_string(r.read) + ") in " + describe(r),
                     r});
    } else {
      seen.push_back(source);
    }
  }
  if (!rules.empty() && max_state + 1 != n_states) {
    out.push_back({ViolationKind::kNotDense,
                   "n_states " + std::to_string(n_states) +
                       " but highest mentioned state is " +
                       std::to_string(max_state),
                   std::nullopt});
  }
  return out;
}

std::vector<Violation> validate(const Machine& machine) {
  auto rules = machine.rules();
  return validate(rules, machine.n_states());
}

Machine Machine::from_rules(std::span<const Rule> rules) {
  int max_state = 0;
  for (const Rule& r : rules) {
    max_state = std::max({max_state, r.from_state, r.to_state});
  }
  auto violations = validate(rules, max_state + 1);
  if (!violations.empty()) throw Error(violations.front().message);

  Machine m;
  for (const Rule& r : rules) {
    m.slots_[r.from_index()] = static_cast<std::uint8_t>(r.to_index());
  }
  m.n_states_ = static_cast<std::uint8_t>(max_state + 1);
  m.rule_count_ = static_cast<std::uint8_t>(rules.size());
  return m;
}

Machine Machine::from_slots(const Slots& slots) {
  Machine m;
  m.slots_ = slots;
  int max_state = -1;
  int count = 0;
  for (int f = 0; f < kMaxSlots; ++f) {
    if (slots[f] == kNoRule) continue;
    if (slots[f] >= 6 * kMaxStates) {
      throw Error("to-index " + std::to_string(slots[f]) + " out of range");
    }
    ++count;
    max_state = std::max({max_state, f / 2, slots[f] / 6});
  }
  if (count == 0) throw Error("machine has no rules");
  m.n_states_ = static_cast<std::uint8_t>(max_state + 1);
  m.rule_count_ = static_cast<std::uint8_t>(count);
  return m;
}

std::optional<Rule> Machine::rule(int state, int read) const {
  int f = 2 * state + read;
  if (state < 0 || state >= n_states_ || read < 0 || read > 1 ||
      slots_[f] == kNoRule) {
    return std::nullopt;
  }
  return Rule::from_indices(f, slots_[f]);
}

std::vector<Rule> Machine::rules() const {
  std::vector<Rule> out;
  out.reserve(rule_count_);
  for (int f = 0; f < 2 * n_states_; ++f) {
    if (slots_[f] != kNoRule) out.push_back(Rule::from_indices(f, slots_[f]));
  }
  return out;
}

int Machine::used_states() const {
  unsigned mask = 1;
  for (int f = 0; f < 2 * n_states_; ++f) {
    if (slots_[f] == kNoRule) continue;
    mask |= 1u << (f / 2);
    mask |= 1u << (slots_[f] / 6);
  }
  return std::popcount(mask);
}

NameTuple Machine::name_tuple() const {
  NameTuple t;
  t.k = rule_count_;
  for (int f = 0; f < 2 * n_states_; ++f) {
    if (slots_[f] != kNoRule) t.pairs.emplace_back(f, slots_[f]);
  }
  return t;
}

namespace {

class NameScanner {
 public:
  explicit NameScanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  long integer() {
    skip_space();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    long value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("bad machine name '" + std::string(text_) + "': " + what +
                " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

NameTuple parse_name_tuple(std::string_view text) {
  NameScanner scan(text);
  scan.expect('(');
  std::vector<long> values;
  if (!scan.accept(')')) {
    do {
      values.push_back(scan.integer());
    } while (scan.accept(','));
    scan.expect(')');
  }
  if (!scan.at_end()) scan.fail("trailing characters");
  if (values.empty()) scan.fail("empty tuple");

  const long k = values.front();
  const long pair_values = static_cast<long>(values.size()) - 1;
  if (pair_values % 2 != 0) scan.fail("odd number of indexes after k");
  if (k != pair_values / 2) {
    throw Error("bad machine name '" + std::string(text) + "': k = " +
                std::to_string(k) + " but " + std::to_string(pair_values / 2) +
                " pairs given");
  }
  NameTuple t;
  t.k = static_cast<int>(k);
  for (std::size_t i = 1; i < values.size(); i += 2) {
    long f = values[i];
    long to = values[i + 1];
    if (f < 0 || to < 0) {
      throw Error("bad machine name '" + std::string(text) +
                  "': negative index");
    }
    if (f >= kMaxSlots || to >= 6 * kMaxStates) {
      throw Error("bad machine name '" + std::string(text) +
                  "': index beyond " + std::to_string(kMaxStates) + " states");
    }
    t.pairs.emplace_back(static_cast<int>(f), static_cast<int>(to));
  }
  std::sort(t.pairs.begin(), t.pairs.end());
  for (std::size_t i = 1; i < t.pairs.size(); ++i) {
    if (t.pairs[i].first == t.pairs[i - 1].first) {
      throw Error("bad machine name '" + std::string(text) +
                  "': duplicate from-index " +
                  std::to_string(t.pairs[i].first));
    }
  }
  return t;
}

std::string format_name_tuple(const NameTuple& tuple) {
  std::string out = "(" + std::to_string(tuple.k);
  for (const auto& [f, t] : tuple.pairs) {
    out += ", " + std::to_string(f) + ", " + std::to_string(t);
  }
  out += ")";
  return out;
}

Machine decode_name(std::string_view text) {
  NameTuple tuple = parse_name_tuple(text);
  if (tuple.k == 0) throw Error("bad machine name '" + std::string(text) + "': no rules");
  std::vector<Rule> rules;
  rules.reserve(tuple.pairs.size());
  for (const auto& [f, t] : tuple.pairs) rules.push_back(Rule::from_indices(f, t));
  return Machine::from_rules(rules);
}

std::string encode_name(const Machine& machine) {
  return format_name_tuple(machine.name_tuple());
}

BigInt machine_space_size(int n) {
  if (n < 1) throw Error("state count must be at least 1");
  BigInt base = 6 * n + 1;
  return boost::multiprecision::pow(base, static_cast<unsigned>(2 * n)) - 1;
}

std::uint64_t machine_space_size_u64(int n) {
  BigInt v = machine_space_size(n);
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    throw Error("machine space for n = " + std::to_string(n) +
                " does not fit in 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

std::string render_dot(const Machine& machine) {
  std::ostringstream os;
  os << "digraph machine {\n";
  os << "  node [shape=circle];\n";
  for (int q = 0; q < machine.n_states(); ++q) os << "  " << q << ";\n";
  for (const Rule& r : machine.rules()) {
    os << "  " << r.from_state << " -> " << r.to_state << " [label=\"" << r.read
       << "," << r.write << "," << move_letter(r.move) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace bblab
