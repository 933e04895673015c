#pragma once

#include <array>
#include <memory>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bblab/machine.hpp"
#include "bblab/symmetry.hpp"

namespace bblab {

/// Shard `index` of `total`: receives the machines whose global ordinal is
/// congruent to `index` modulo `total`.
struct Shard {
  std::uint64_t index = 0;
  std::uint64_t total = 1;

  /// Parses "i/m". Throws Error on malformed text or i >= m.
  static Shard parse(std::string_view text);

  friend bool operator==(const Shard&, const Shard&) = default;
};

/// Largest state count whose machine space fits 64-bit ordinals.
inline constexpr int kMaxEnumerationStates = 6;

/// Streams every machine with at most n states. Global order: rule count k
/// ascending, then the from-index subset in lexicographic order, then the
/// to-index assignment as a base-6n number with the lowest from-index most
/// significant.
///
/// In canonical mode only machines that come first in name order within
/// their symmetry orbit (over the n-state space) are produced, and
/// orbit_size() reports the size of each one's orbit. Ordinals and sharding
/// are those of the full stream.
class MachineEnumerator {
 public:
  struct Options {
    bool canonical = false;
    /// Pass over blocks whose subset lacks the (0,0) source without
    /// producing their machines; skipped() counts the shard's share.
    bool skip_startless = false;
  };

  explicit MachineEnumerator(int n_states, Shard shard = {});
  MachineEnumerator(int n_states, Shard shard, Options options);

  bool next(Machine& out);

  std::uint64_t ordinal() const { return block_base_ + offset_; }
  int orbit_size() const { return orbit_size_; }
  std::uint64_t skipped() const { return skipped_; }
  int n_states() const { return n_; }

 private:
  bool open_block();
  bool next_block();
  bool seek(std::uint64_t ordinal);
  bool advance();
  void load_digits();
  bool accept();
  std::uint64_t shard_count_below(std::uint64_t ordinal) const;

  int n_;
  Shard shard_;
  Options options_;
  std::uint64_t radix_;
  std::vector<std::uint64_t> radix_pow_;
  std::vector<bool> prefix_ok_;
  std::unique_ptr<SymmetryGroup> group_;

  int k_ = 1;
  std::array<int, kMaxSlots> subset_{};
  std::array<std::uint8_t, kMaxSlots> digits_{};
  Machine::Slots slots_{};
  std::uint64_t block_base_ = 0;
  std::uint64_t block_size_ = 0;
  std::uint64_t offset_ = 0;
  bool started_ = false;
  bool done_ = false;
  int orbit_size_ = 1;
  std::uint64_t skipped_ = 0;
};

MachineEnumerator enumerate_machines(int n_states, Shard shard = {});
MachineEnumerator enumerate_canonical(int n_states, Shard shard = {});

/// Strict order of the enumeration stream, independent of n: rule count,
/// then the from-index subset, then the to-indices.
bool enumeration_less(const Machine& a, const Machine& b);

/// Wall-clock bounds for simulating the whole n-state space.
struct SweepEstimate {
  BigInt machines;
  double low_seconds = 0;
  double high_seconds = 0;
};

SweepEstimate estimate_sweep(int n_states, double per_machine_micros_low,
                             double per_machine_micros_high);

/// "58..135 days": both bounds in the largest unit (us, ms, s, days, years of
/// 365 days) that the low bound reaches. The low bound is rounded to nearest,
/// the high bound up.
std::string format_estimate(const SweepEstimate& estimate);

}  // namespace bblab
