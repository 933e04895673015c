#include "bblab/enumeration.hpp"

#include <charconv>
#include <cmath>

namespace bblab {

Shard Shard::parse(std::string_view text) {
  const auto slash = text.find('/');
  auto number = [&](std::string_view part) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw Error("bad shard '" + std::string(text) + "': expected i/m");
    }
    return v;
  };
  if (slash == std::string_view::npos) {
    throw Error("bad shard '" + std::string(text) + "': expected i/m");
  }
  Shard s{number(text.substr(0, slash)), number(text.substr(slash + 1))};
  if (s.total == 0 || s.index >= s.total) {
    throw Error("bad shard '" + std::string(text) + "': need 0 <= i < m");
  }
  return s;
}

MachineEnumerator::MachineEnumerator(int n_states, Shard shard)
    : MachineEnumerator(n_states, shard, Options{}) {}

MachineEnumerator::MachineEnumerator(int n_states, Shard shard, Options options)
    : n_(n_states), shard_(shard), options_(options) {
  if (n_states < 1 || n_states > kMaxEnumerationStates) {
    throw Error("enumeration supports 1.." +
                std::to_string(kMaxEnumerationStates) + " states");
  }
  if (shard.total == 0 || shard.index >= shard.total) {
    throw Error("shard index out of range");
  }
  radix_ = 6 * static_cast<std::uint64_t>(n_);
  radix_pow_.assign(2 * n_ + 1, 1);
  for (int i = 1; i <= 2 * n_; ++i) radix_pow_[i] = radix_pow_[i - 1] * radix_;

  if (options_.canonical) {
    group_ = std::make_unique<SymmetryGroup>(n_);
    const std::size_t side = radix_ + 1;
    prefix_ok_.assign(side * side, false);
    for (std::size_t a = 0; a < side; ++a) {
      for (std::size_t b = 0; b < side; ++b) {
        const auto s0 = a == radix_ ? kNoRule : static_cast<std::uint8_t>(a);
        const auto s1 = b == radix_ ? kNoRule : static_cast<std::uint8_t>(b);
        prefix_ok_[a * side + b] = group_->prefix_may_be_canonical(s0, s1);
      }
    }
  }

  k_ = 1;
  subset_[0] = 0;
  open_block();
}

bool MachineEnumerator::open_block() {
  block_size_ = radix_pow_[k_];
  offset_ = 0;
  return true;
}

bool MachineEnumerator::next_block() {
  block_base_ += block_size_;
  const int slots = 2 * n_;
  // Next k-combination of {0..slots-1} in lexicographic order.
  int i = k_ - 1;
  while (i >= 0 && subset_[i] == slots - k_ + i) --i;
  if (i >= 0) {
    ++subset_[i];
    for (int j = i + 1; j < k_; ++j) subset_[j] = subset_[j - 1] + 1;
  } else {
    if (++k_ > slots) {
      done_ = true;
      return false;
    }
    for (int j = 0; j < k_; ++j) subset_[j] = j;
  }
  return open_block();
}

std::uint64_t MachineEnumerator::shard_count_below(std::uint64_t ordinal) const {
  if (ordinal <= shard_.index) return 0;
  return (ordinal - shard_.index - 1) / shard_.total + 1;
}

bool MachineEnumerator::seek(std::uint64_t ordinal) {
  while (!done_) {
    const std::uint64_t block_end = block_base_ + block_size_;
    if (ordinal >= block_end) {
      next_block();
      continue;
    }
    if (options_.skip_startless && subset_[0] != 0) {
      skipped_ += shard_count_below(block_end) - shard_count_below(ordinal);
      ordinal = block_end;
      next_block();
      continue;
    }
    const std::uint64_t rem = ordinal % shard_.total;
    if (rem != shard_.index) {
      ordinal += (shard_.index + shard_.total - rem) % shard_.total;
      if (ordinal >= block_end) continue;
    }
    offset_ = ordinal - block_base_;
    load_digits();
    return true;
  }
  return false;
}

void MachineEnumerator::load_digits() {
  slots_.fill(kNoRule);
  std::uint64_t rest = offset_;
  for (int i = k_ - 1; i >= 0; --i) {
    digits_[i] = static_cast<std::uint8_t>(rest % radix_);
    rest /= radix_;
    slots_[subset_[i]] = digits_[i];
  }
}

bool MachineEnumerator::advance() {
  if (shard_.total != 1) return seek(ordinal() + 1);
  for (int i = k_ - 1; i >= 0; --i) {
    if (++digits_[i] < radix_) {
      slots_[subset_[i]] = digits_[i];
      ++offset_;
      return true;
    }
    digits_[i] = 0;
    slots_[subset_[i]] = 0;
  }
  if (!next_block()) return false;
  return seek(block_base_);
}

bool MachineEnumerator::accept() {
  if (subset_[0] <= 1) {
    const std::size_t side = radix_ + 1;
    const std::size_t a = slots_[0] == kNoRule ? radix_ : slots_[0];
    const std::size_t b = slots_[1] == kNoRule ? radix_ : slots_[1];
    if (!prefix_ok_[a * side + b]) return false;
  }
  int stabilizer = 1;
  if (!group_->is_canonical(slots_, &stabilizer)) return false;
  orbit_size_ = static_cast<int>(group_->size()) / stabilizer;
  return true;
}

bool MachineEnumerator::next(Machine& out) {
  if (done_) return false;
  bool positioned = started_ ? advance() : seek(0);
  started_ = true;
  while (positioned) {
    if (!options_.canonical || accept()) {
      out = Machine::from_slots(slots_);
      return true;
    }
    // A rejected slot-0/1 prefix rules out every assignment sharing it.
    if (subset_[0] <= 1) {
      const std::size_t side = radix_ + 1;
      const std::size_t a = slots_[0] == kNoRule ? radix_ : slots_[0];
      const std::size_t b = slots_[1] == kNoRule ? radix_ : slots_[1];
      if (!prefix_ok_[a * side + b]) {
        const int last = (subset_[0] == 0 && k_ > 1 && subset_[1] == 1) ? 1 : 0;
        std::uint64_t prefix = 0;
        for (int i = 0; i <= last; ++i) prefix = prefix * radix_ + digits_[i];
        positioned = seek(block_base_ + (prefix + 1) * radix_pow_[k_ - 1 - last]);
        continue;
      }
    }
    positioned = advance();
  }
  return false;
}

MachineEnumerator enumerate_machines(int n_states, Shard shard) {
  return MachineEnumerator(n_states, shard);
}

MachineEnumerator enumerate_canonical(int n_states, Shard shard) {
  return MachineEnumerator(n_states, shard, {.canonical = true});
}

bool enumeration_less(const Machine& a, const Machine& b) {
  if (a.rule_count() != b.rule_count()) return a.rule_count() < b.rule_count();
  // Equal sizes: the first from-index present in only one subset decides.
  for (int f = 0; f < kMaxSlots; ++f) {
    const bool in_a = a.slot(f) != kNoRule;
    const bool in_b = b.slot(f) != kNoRule;
    if (in_a != in_b) return in_a;
  }
  for (int f = 0; f < kMaxSlots; ++f) {
    if (a.slot(f) != b.slot(f)) return a.slot(f) < b.slot(f);
  }
  return false;
}

SweepEstimate estimate_sweep(int n_states, double per_machine_micros_low,
                             double per_machine_micros_high) {
  if (!(per_machine_micros_low > 0) || !(per_machine_micros_high > 0)) {
    throw Error("per-machine timings must be positive");
  }
  SweepEstimate e;
  e.machines = machine_space_size(n_states);
  const double count = e.machines.convert_to<double>();
  e.low_seconds = count * per_machine_micros_low * 1e-6;
  e.high_seconds = count * per_machine_micros_high * 1e-6;
  return e;
}

std::string format_estimate(const SweepEstimate& estimate) {
  struct Unit {
    const char* name;
    double seconds;
  };
  static constexpr Unit kUnits[] = {
      {"years", 365.0 * 86400}, {"days", 86400}, {"s", 1}, {"ms", 1e-3}, {"us", 1e-6}};
  const Unit* unit = &kUnits[4];
  for (const Unit& u : kUnits) {
    if (estimate.low_seconds >= u.seconds) {
      unit = &u;
      break;
    }
  }
  const auto low = static_cast<long long>(std::llround(estimate.low_seconds / unit->seconds));
  const auto high = static_cast<long long>(std::ceil(estimate.high_seconds / unit->seconds * (1 - 1e-12)));
  return std::to_string(low) + ".." + std::to_string(high) + " " + unit->name;
}

}  // namespace bblab
