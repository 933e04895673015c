#include "bblab/simulator.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>

namespace bblab {

std::string Word::display() const { return bits.empty() ? "λ" : bits; }

std::uint64_t nr_ones(const Word& word) {
  return static_cast<std::uint64_t>(
      std::count(word.bits.begin(), word.bits.end(), '1'));
}

// ---------------------------------------------------------------------------
// Tape / Config: straightforward reference stepping, used by traces.

Tape::Tape() : cells_(1, 0) {}

void Tape::ensure(std::int64_t pos) {
  const auto size = static_cast<std::int64_t>(cells_.size());
  if (pos < origin_) {
    const auto extra = std::max<std::int64_t>(origin_ - pos, size);
    cells_.insert(cells_.begin(), static_cast<std::size_t>(extra), 0);
    origin_ -= extra;
  } else if (pos >= origin_ + size) {
    const auto extra = std::max<std::int64_t>(pos - origin_ - size + 1, size);
    cells_.resize(cells_.size() + static_cast<std::size_t>(extra), 0);
  }
}

int Tape::read(std::int64_t pos) const {
  const std::int64_t i = pos - origin_;
  if (i < 0 || i >= static_cast<std::int64_t>(cells_.size())) return 0;
  return cells_[static_cast<std::size_t>(i)];
}

void Tape::touch(std::int64_t pos) {
  ensure(pos);
  lo_ = std::min(lo_, pos);
  hi_ = std::max(hi_, pos);
}

void Tape::write(std::int64_t pos, int symbol) {
  touch(pos);
  cells_[static_cast<std::size_t>(pos - origin_)] =
      static_cast<std::uint8_t>(symbol);
}

Word extract_word(const Tape& tape) {
  std::int64_t first = tape.rightmost() + 1;
  std::int64_t last = tape.leftmost() - 1;
  for (std::int64_t p = tape.leftmost(); p <= tape.rightmost(); ++p) {
    if (tape.read(p) == 1) {
      first = std::min(first, p);
      last = p;
    }
  }
  Word w;
  for (std::int64_t p = first; p <= last; ++p) {
    w.bits.push_back(tape.read(p) ? '1' : '0');
  }
  return w;
}

bool step(const Machine& machine, Config& config) {
  const int read = config.tape.read(config.head);
  auto rule = machine.rule(config.state, read);
  if (!rule) return false;
  config.tape.write(config.head, rule->write);
  switch (rule->move) {
    case Move::kLeft:
      --config.head;
      break;
    case Move::kRight:
      ++config.head;
      break;
    case Move::kStay:
      break;
  }
  config.tape.touch(config.head);
  config.state = rule->to_state;
  ++config.step;
  return true;
}

// ---------------------------------------------------------------------------
// Runner: the hot loop used by sweeps.

namespace {

constexpr std::size_t kInitialCells = std::size_t{1} << 15;
constexpr std::uint64_t kFirstCheckpoint = 16;

struct Transition {
  std::int8_t delta;
  std::uint8_t write;
  std::uint8_t next_slot;  // 2 * next state
  std::uint8_t defined;
};

using Table = std::array<Transition, kMaxSlots>;

Table make_table(const Machine& m) {
  Table table{};
  for (int f = 0; f < kMaxSlots; ++f) {
    const std::uint8_t t = m.slot(f);
    if (t == kNoRule) {
      table[f] = {0, 0, 0, 0};
      continue;
    }
    const int move = t % 3;
    table[f] = {static_cast<std::int8_t>(move - 1),
                static_cast<std::uint8_t>((t % 6) / 3),
                static_cast<std::uint8_t>(2 * (t / 6)), 1};
  }
  return table;
}

// True when every (state, symbol) source reachable from (0, 0) has a rule;
// such a machine can never halt.
bool all_reachable_defined(const Table& table) {
  unsigned seen = 1;
  unsigned frontier = 1;
  while (frontier != 0) {
    const int f = std::countr_zero(frontier);
    frontier &= frontier - 1;
    if (!table[f].defined) return false;
    const unsigned next = 3u << table[f].next_slot;
    frontier |= next & ~seen;
    seen |= next;
  }
  return true;
}

// Head on a fresh cell with only blanks beyond it in direction `dir`
// (+1 right, -1 left), in state slot `start`. Follows the forced rule chain
// while the head stays on that frontier; a repeated (state, symbol) pair
// means the machine marches off forever.
bool runs_away(const Table& table, unsigned start, int dir) {
  unsigned seen = 0;
  unsigned slot = start;  // symbol under head is 0
  for (;;) {
    if (seen & (1u << slot)) return true;
    seen |= 1u << slot;
    const Transition& tr = table[slot];
    if (!tr.defined) return false;
    if (tr.delta == -dir) return false;
    slot = tr.next_slot + (tr.delta == 0 ? tr.write : 0u);
  }
}

}  // namespace

Runner::Runner() : tape_(kInitialCells, 0) {
  center_ = static_cast<std::int64_t>(tape_.size() / 2);
  lo_ = hi_ = center_;
}

void Runner::reset() {
  std::fill(tape_.begin() + lo_, tape_.begin() + hi_ + 1, 0);
  lo_ = hi_ = center_;
}

std::int64_t Runner::grow() {
  const std::size_t old_size = tape_.size();
  std::vector<std::uint8_t> bigger(old_size * 2, 0);
  const auto shift = static_cast<std::int64_t>(old_size / 2);
  std::memcpy(bigger.data() + shift, tape_.data(), old_size);
  tape_.swap(bigger);
  center_ += shift;
  lo_ += shift;
  hi_ += shift;
  return shift;
}

Word Runner::word() const {
  std::int64_t first = lo_;
  while (first <= hi_ && tape_[first] == 0) ++first;
  std::int64_t last = hi_;
  while (last >= first && tape_[last] == 0) --last;
  Word w;
  if (first <= last) {
    w.bits.reserve(static_cast<std::size_t>(last - first + 1));
    for (std::int64_t p = first; p <= last; ++p) {
      w.bits.push_back(tape_[p] ? '1' : '0');
    }
  }
  return w;
}

template <bool kPrune>
Outcome Runner::run_impl(const Machine& machine, std::uint64_t cap,
                         Proof* proof) {
  reset();
  if (proof) *proof = Proof::kNone;
  const Table table = make_table(machine);

  auto never_halts = [&](Proof why) {
    if (proof) *proof = why;
    return Outcome{Status::kCapExceeded, cap, {}, 0};
  };

  if constexpr (kPrune) {
    if (cap > 0 && table[0].defined && all_reachable_defined(table)) {
      return never_halts(Proof::kAllReachableDefined);
    }
  }

  // Runaway verdicts per state slot and direction: -1 unknown, 0 no, 1 yes.
  std::array<std::int8_t, kMaxSlots> away_right;
  std::array<std::int8_t, kMaxSlots> away_left;
  away_right.fill(-1);
  away_left.fill(-1);

  std::uint64_t next_checkpoint = kFirstCheckpoint;
  unsigned snap_slot = kMaxSlots;  // no snapshot yet
  std::int64_t snap_pos = 0, snap_lo = 0, snap_hi = 0;

  // Translated cycles. Index 0 watches the right edge, 1 the left edge. A
  // snapshot is the tape behind a new edge cell, taken at the first new edge
  // after a checkpoint. `reach` is the furthest the head has gone back from
  // that edge since. If a later new edge in the same state finds the cells
  // from `reach` to the old edge repeated, shifted, up to the new edge, the
  // stretch between them repeats forever: beyond either edge the tape is
  // blank.
  struct EdgeSnap {
    bool armed = false;
    unsigned slot = kMaxSlots;
    std::int64_t edge = 0, reach = 0, base = 0;
  };
  EdgeSnap edge[2];
  auto shift_snaps = [&](std::int64_t s) {
    snap_pos += s;
    snap_lo += s;
    snap_hi += s;
    for (auto& e : edge) {
      e.edge += s;
      e.reach += s;
      e.base += s;
    }
  };
  auto translated = [&](int side, std::int64_t pos, unsigned slot,
                        const std::uint8_t* tape) {
    EdgeSnap& e = edge[side];
    bool repeats = false;
    if (e.slot == slot) {
      const auto& snap = edge_snapshot_[side];
      if (side == 0 && e.reach >= e.base) {
        const std::int64_t shift = pos - e.edge;
        repeats = std::memcmp(tape + e.reach + shift, snap.data() + (e.reach - e.base),
                              static_cast<std::size_t>(e.edge - e.reach + 1)) == 0;
      } else if (side == 1 && e.reach <= e.base) {
        repeats = std::memcmp(tape + pos, snap.data(),
                              static_cast<std::size_t>(e.reach - e.edge + 1)) == 0;
      }
    }
    if (e.armed) {
      e.armed = false;
      e.slot = slot;
      e.edge = e.reach = pos;
      if (side == 0) {
        e.base = lo_;
        edge_snapshot_[0].assign(tape + lo_, tape + pos + 1);
      } else {
        e.base = hi_;
        edge_snapshot_[1].assign(tape + pos, tape + hi_ + 1);
      }
    }
    return repeats;
  };

  std::int64_t pos = center_;
  unsigned slot = 0;
  std::uint64_t steps = 0;
  std::uint8_t* tape = tape_.data();

  for (;;) {
    const Transition tr = table[slot + tape[pos]];
    if (!tr.defined) {
      Outcome out{Status::kHalted, steps, word(), 0};
      out.ones = nr_ones(out.word);
      return out;
    }
    if (steps == cap) return Outcome{Status::kCapExceeded, cap, {}, 0};

    tape[pos] = tr.write;
    pos += tr.delta;
    slot = tr.next_slot;
    ++steps;

    if (pos > hi_) {
      hi_ = pos;
      if (static_cast<std::size_t>(pos) + 1 >= tape_.size()) {
        const std::int64_t s = grow();
        pos += s;
        shift_snaps(s);
        tape = tape_.data();
      }
      if constexpr (kPrune) {
        auto& v = away_right[slot];
        if (v < 0) v = runs_away(table, slot, +1) ? 1 : 0;
        if (v) return never_halts(Proof::kRunaway);
        if (translated(0, pos, slot, tape)) return never_halts(Proof::kTranslatedCycle);
      }
    } else if (pos < lo_) {
      lo_ = pos;
      if (pos == 0) {
        const std::int64_t s = grow();
        pos += s;
        shift_snaps(s);
        tape = tape_.data();
      }
      if constexpr (kPrune) {
        auto& v = away_left[slot];
        if (v < 0) v = runs_away(table, slot, -1) ? 1 : 0;
        if (v) return never_halts(Proof::kRunaway);
        if (translated(1, pos, slot, tape)) return never_halts(Proof::kTranslatedCycle);
      }
    }

    if constexpr (kPrune) {
      edge[0].reach = std::min(edge[0].reach, pos);
      edge[1].reach = std::max(edge[1].reach, pos);
      if (slot == snap_slot && pos == snap_pos && lo_ == snap_lo &&
          hi_ == snap_hi &&
          std::memcmp(tape + lo_, snapshot_.data(),
                      static_cast<std::size_t>(hi_ - lo_ + 1)) == 0) {
        return never_halts(Proof::kRepeatedConfig);
      }
      if (steps == next_checkpoint) {
        next_checkpoint *= 2;
        snap_slot = slot;
        snap_pos = pos;
        snap_lo = lo_;
        snap_hi = hi_;
        snapshot_.assign(tape + lo_, tape + hi_ + 1);
        edge[0].armed = edge[1].armed = true;
      }
    }
  }
}

Outcome Runner::run(const Machine& machine, std::uint64_t cap) {
  return run_impl<false>(machine, cap, nullptr);
}

Outcome Runner::run_pruned(const Machine& machine, std::uint64_t cap,
                           Proof* proof) {
  return run_impl<true>(machine, cap, proof);
}

Outcome run(const Machine& machine, std::uint64_t cap) {
  Runner runner;
  return runner.run(machine, cap);
}

// ---------------------------------------------------------------------------

std::vector<std::string> render_trace(const Machine& machine, std::uint64_t cap,
                                      std::optional<std::size_t> window) {
  Runner runner;
  runner.run(machine, cap);
  const std::int64_t lo = runner.leftmost();
  const std::int64_t hi = runner.rightmost();
  const auto extent = static_cast<std::size_t>(hi - lo + 1);
  const std::size_t width = window.value_or(extent);
  if (width < extent) {
    throw Error("trace window of " + std::to_string(width) +
                " cells is too small; the run needs " + std::to_string(extent));
  }
  const std::int64_t left =
      lo - static_cast<std::int64_t>((width - extent) / 2);

  std::vector<std::string> lines;
  Config config;
  for (;;) {
    std::string line = "Step " + std::to_string(config.step);
    line.resize(std::max<std::size_t>(11, line.size() + 1), ' ');
    std::string plain;
    for (std::size_t i = 0; i < width; ++i) {
      const std::int64_t p = left + static_cast<std::int64_t>(i);
      if (p == config.head) line += "[" + std::to_string(config.state) + ">";
      const char c = config.tape.read(p) ? '1' : '0';
      line.push_back(c);
      plain.push_back(c);
    }
    line += "     " + plain;
    lines.push_back(std::move(line));
    if (config.step == cap || !step(machine, config)) break;
  }
  return lines;
}

}  // namespace bblab
