#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bblab/machine.hpp"

namespace bblab {

/// Output word: the tape from the leftmost 1 to the rightmost 1. Empty is λ.
struct Word {
  std::string bits;

  bool empty() const { return bits.empty(); }
  Word reversed() const { return Word{std::string(bits.rbegin(), bits.rend())}; }
  /// "λ" for the empty word.
  std::string display() const;

  friend auto operator<=>(const Word&, const Word&) = default;
};

std::uint64_t nr_ones(const Word& word);

/// Unbounded binary tape, blank = 0. Stores the cells between the leftmost
/// and rightmost positions ever touched.
class Tape {
 public:
  Tape();

  int read(std::int64_t pos) const;
  /// Marks `pos` as touched and stores the symbol.
  void write(std::int64_t pos, int symbol);
  void touch(std::int64_t pos);

  std::int64_t leftmost() const { return lo_; }
  std::int64_t rightmost() const { return hi_; }

 private:
  void ensure(std::int64_t pos);

  std::vector<std::uint8_t> cells_;
  std::int64_t origin_ = 0;  // tape position of cells_[0]
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
};

Word extract_word(const Tape& tape);

/// Machine configuration; starts on the blank tape, head 0, state 0.
struct Config {
  Tape tape;
  std::int64_t head = 0;
  int state = 0;
  std::uint64_t step = 0;
};

/// Applies one rule. Returns false, leaving the configuration unchanged,
/// when (state, read) has no rule.
bool step(const Machine& machine, Config& config);

enum class Status { kHalted, kCapExceeded };

struct Outcome {
  Status status = Status::kHalted;
  std::uint64_t steps = 0;
  Word word;          // halted only
  std::uint64_t ones = 0;  // halted only

  bool halted() const { return status == Status::kHalted; }
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Why a pruned run stopped early. kNone means the run ended normally.
enum class Proof {
  kNone,
  kAllReachableDefined,
  kRunaway,
  kRepeatedConfig,
  kTranslatedCycle,
};

/// Fast simulator with a reusable tape buffer. One instance per thread.
class Runner {
 public:
  Runner();

  /// Runs from the blank tape for at most `cap` rule applications.
  Outcome run(const Machine& machine, std::uint64_t cap);

  /// Same outcome as run(), but stops as soon as non-halting is proved
  /// (every reachable source defined, blank-tape runaway, an exactly
  /// repeated configuration, or a pattern that repeats while shifting
  /// into blank tape) and reports CAP_EXCEEDED with steps = cap.
  Outcome run_pruned(const Machine& machine, std::uint64_t cap,
                     Proof* proof = nullptr);

  /// Head extent of the last run, relative to the start cell.
  std::int64_t leftmost() const { return lo_ - center_; }
  std::int64_t rightmost() const { return hi_ - center_; }

 private:
  template <bool kPrune>
  Outcome run_impl(const Machine& machine, std::uint64_t cap, Proof* proof);
  void reset();
  /// Doubles the buffer; returns how far existing cells moved.
  std::int64_t grow();
  Word word() const;

  std::vector<std::uint8_t> tape_;
  std::int64_t center_ = 0;
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
  std::vector<std::uint8_t> snapshot_;
  std::vector<std::uint8_t> edge_snapshot_[2];
};

Outcome run(const Machine& machine, std::uint64_t cap);

/// One text line per configuration from Step 0 to the halt (or the cap):
/// "Step N", padding, the window with "[q>" before the head cell, five
/// spaces, then the same window without the marker. The window is placed so
/// that the cells the head visits are centered in it; the left side gets the
/// smaller half of any odd slack. Without `window` the width is exactly the
/// visited extent. Throws Error when `window` is narrower than the extent.
std::vector<std::string> render_trace(const Machine& machine, std::uint64_t cap,
                                      std::optional<std::size_t> window = {});

}  // namespace bblab
