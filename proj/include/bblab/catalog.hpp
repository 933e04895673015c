#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bblab/enumeration.hpp"
#include "bblab/machine.hpp"
#include "bblab/simulator.hpp"

namespace bblab {

/// One line of a catalog TSV: name, status, steps, ones, word.
struct CatalogRecord {
  std::string name;
  Status status = Status::kHalted;
  std::uint64_t steps = 0;
  std::uint64_t ones = 0;
  Word word;

  friend bool operator==(const CatalogRecord&, const CatalogRecord&) = default;
};

CatalogRecord make_record(const Machine& machine, const Outcome& outcome);

void write_catalog(std::ostream& out, std::span<const CatalogRecord> records);
void write_catalog(const std::filesystem::path& path,
                   std::span<const CatalogRecord> records);
/// Throws Error naming the line number of the first malformed line.
std::vector<CatalogRecord> read_catalog(std::istream& in);
std::vector<CatalogRecord> read_catalog(const std::filesystem::path& path);

enum class SweepMode { kFull, kCanonical };

/// A machine with the step count of its halting run.
struct Witness {
  Machine machine;
  std::uint64_t steps = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Fewest-state, then fewest-rule machines seen for one ones count, with the
/// extremal step counts among them and the one met first by the enumeration
/// (see enumeration_less). Step ties go to the smaller name.
struct PPCell {
  int states = 0;
  int rules = 0;
  Witness fewest_steps;
  Witness most_steps;
  Witness first_found;

  friend bool operator==(const PPCell&, const PPCell&) = default;
};

/// Mergeable result of simulating part of an n-state space at a fixed cap.
/// In canonical mode each simulated machine stands for its whole orbit:
/// counters are orbit-weighted and `attaining` holds representatives.
class PartialSummary {
 public:
  PartialSummary(int n_states, std::uint64_t cap, SweepMode mode);

  /// `multiplicity` is the orbit size in canonical mode, 1 otherwise.
  void add(const Machine& machine, const Outcome& outcome,
           std::uint64_t multiplicity = 1);
  /// Machines that halt at step 0 with the empty word, counted unsimulated.
  void add_trivial(std::uint64_t count);

  /// Associative, commutative; the empty summary is the identity.
  /// Throws Error when n, cap or mode differ.
  static PartialSummary merge(const PartialSummary& a, const PartialSummary& b);

  int n_states() const { return n_; }
  std::uint64_t cap() const { return cap_; }
  SweepMode mode() const { return mode_; }

  /// Machines of the full space accounted for so far.
  std::uint64_t covered() const { return covered_; }
  std::uint64_t simulated() const { return simulated_; }
  std::uint64_t halted() const { return halted_; }
  std::uint64_t bb_value() const { return bb_value_; }
  /// Machines (or orbit representatives) printing bb_value ones, sorted.
  const std::vector<Witness>& attaining() const { return attaining_; }
  const std::map<std::uint64_t, PPCell>& pp_cells() const { return pp_; }

  /// True when the whole n-state space has been accounted for.
  bool complete() const;

  void write(std::ostream& out) const;
  static PartialSummary read(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static PartialSummary load(const std::filesystem::path& path);

  friend bool operator==(const PartialSummary&, const PartialSummary&) = default;

 private:
  void offer_pp(std::uint64_t ones, const PPCell& candidate);
  void offer_attaining(std::uint64_t ones, const Witness& w);

  int n_;
  std::uint64_t cap_;
  SweepMode mode_;
  std::uint64_t covered_ = 0;
  std::uint64_t simulated_ = 0;
  std::uint64_t halted_ = 0;
  std::uint64_t bb_value_ = 0;
  std::vector<Witness> attaining_;
  std::map<std::uint64_t, PPCell> pp_;
};

struct SweepOptions {
  int n_states = 1;
  std::uint64_t cap = 10000;
  SweepMode mode = SweepMode::kFull;
  Shard shard;
  /// Stop runs early once non-halting is proved; outcomes are unchanged.
  bool prune = true;
  int jobs = 1;
  /// Called from the sweeping thread(s) every `progress_interval` machines.
  std::function<void(std::uint64_t)> progress;
  std::uint64_t progress_interval = 100'000'000;
};

PartialSummary sweep(const SweepOptions& options);

/// BB(n) together with the machine set, word set, fastest step count and
/// base set attaining it.
struct BBSummary {
  int n_states = 0;
  std::uint64_t cap = 0;
  SweepMode mode = SweepMode::kFull;
  bool complete = false;
  std::uint64_t machines_covered = 0;
  std::uint64_t halted = 0;
  std::uint64_t bb_value = 0;
  std::vector<Machine> machines;  // M_BB(n), sorted
  std::vector<Word> words;        // L_BB(n), sorted
  std::vector<std::uint64_t> steps;  // per machine, parallel to `machines`
  std::uint64_t kt_bb = 0;
  std::vector<Machine> base;  // one canonical representative per orbit

  /// "key = value" lines.
  std::string to_text() const;
};

/// Expands canonical representatives into full orbits and re-simulates
/// every attaining machine. Throws Error for a summary that saw no machines.
BBSummary build_bb_summary(const PartialSummary& partial);

/// Full-mode summary over an explicit machine list.
BBSummary build_bb_summary(int n_states, std::uint64_t cap,
                           std::span<const Machine> machines);

std::vector<CatalogRecord> catalog_records(const BBSummary& summary);

/// Placid Platypus entry for one ones count. Unknown entries have no
/// pp_value and no witnesses.
struct PPEntry {
  std::uint64_t ones = 0;
  std::optional<int> pp_value;
  int rules = 0;
  std::optional<Witness> fewest_steps;
  std::optional<Witness> most_steps;
  std::optional<Witness> first_found;
  /// k with BB(k-1) < ones <= BB(k), when the needed BB values are known.
  std::optional<int> bracket;
};

/// One entry per ones count 1..max_ones from the merged PP cells of the
/// given sweeps. BB(k) for the bracket comes from every complete sweep with
/// n_states == k.
std::vector<PPEntry> build_pp_table(std::uint64_t max_ones,
                                    std::span<const PartialSummary> sweeps);

std::string mode_name(SweepMode mode);
std::string status_name(Status status);

}  // namespace bblab
