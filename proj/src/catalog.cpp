#include "bblab/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

#include "bblab/symmetry.hpp"

namespace bblab {

std::string mode_name(SweepMode mode) {
  return mode == SweepMode::kFull ? "full" : "canonical";
}

std::string status_name(Status status) {
  return status == Status::kHalted ? "HALTED" : "CAP_EXCEEDED";
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

[[noreturn]] void line_error(std::size_t line_no, const std::string& what) {
  throw Error("line " + std::to_string(line_no) + ": " + what);
}

bool witness_less(const Witness& a, const Witness& b) {
  return a.machine < b.machine;
}

// Smaller step count wins; ties go to the smaller name.
bool fewer_steps(const Witness& a, const Witness& b) {
  if (a.steps != b.steps) return a.steps < b.steps;
  return a.machine < b.machine;
}

// Larger step count wins; ties go to the smaller name.
bool more_steps(const Witness& a, const Witness& b) {
  if (a.steps != b.steps) return a.steps > b.steps;
  return a.machine < b.machine;
}

void combine_cell(std::map<std::uint64_t, PPCell>& cells, std::uint64_t ones,
                  const PPCell& candidate) {
  auto it = cells.find(ones);
  if (it == cells.end()) {
    cells.emplace(ones, candidate);
    return;
  }
  PPCell& cell = it->second;
  const auto key = std::pair{candidate.states, candidate.rules};
  const auto have = std::pair{cell.states, cell.rules};
  if (key < have) {
    cell = candidate;
  } else if (key == have) {
    if (fewer_steps(candidate.fewest_steps, cell.fewest_steps)) {
      cell.fewest_steps = candidate.fewest_steps;
    }
    if (more_steps(candidate.most_steps, cell.most_steps)) {
      cell.most_steps = candidate.most_steps;
    }
    if (enumeration_less(candidate.first_found.machine, cell.first_found.machine)) {
      cell.first_found = candidate.first_found;
    }
  }
}

Machine decode_field(std::string_view text, std::size_t line_no) {
  try {
    return decode_name(text);
  } catch (const Error& e) {
    line_error(line_no, e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Catalog TSV

CatalogRecord make_record(const Machine& machine, const Outcome& outcome) {
  return CatalogRecord{encode_name(machine), outcome.status, outcome.steps,
                       outcome.ones, outcome.word};
}

void write_catalog(std::ostream& out, std::span<const CatalogRecord> records) {
  for (const auto& r : records) {
    out << r.name << '\t' << status_name(r.status) << '\t' << r.steps << '\t'
        << r.ones << '\t' << r.word.bits << '\n';
  }
}

void write_catalog(const std::filesystem::path& path,
                   std::span<const CatalogRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_catalog(out, records);
  if (!out) throw Error("write to " + path.string() + " failed");
}

std::vector<CatalogRecord> read_catalog(std::istream& in) {
  std::vector<CatalogRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 5) {
      line_error(line_no, "expected 5 tab-separated fields, got " +
                              std::to_string(fields.size()));
    }
    CatalogRecord r;
    r.name = encode_name(decode_field(fields[0], line_no));
    if (fields[1] == "HALTED") {
      r.status = Status::kHalted;
    } else if (fields[1] == "CAP_EXCEEDED") {
      r.status = Status::kCapExceeded;
    } else {
      line_error(line_no, "unknown status '" + std::string(fields[1]) + "'");
    }
    auto steps = parse_u64(fields[2]);
    auto ones = parse_u64(fields[3]);
    if (!steps || !ones) line_error(line_no, "steps and ones must be integers");
    r.steps = *steps;
    r.ones = *ones;
    r.word.bits = std::string(fields[4]);
    if (r.word.bits.find_first_not_of("01") != std::string::npos) {
      line_error(line_no, "word must be binary");
    }
    if (!r.word.empty() &&
        (r.word.bits.front() != '1' || r.word.bits.back() != '1')) {
      line_error(line_no, "word must start and end with 1");
    }
    if (nr_ones(r.word) != r.ones) {
      line_error(line_no, "ones does not match word");
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<CatalogRecord> read_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_catalog(in);
}

// ---------------------------------------------------------------------------
// PartialSummary

PartialSummary::PartialSummary(int n_states, std::uint64_t cap, SweepMode mode)
    : n_(n_states), cap_(cap), mode_(mode) {
  if (n_states < 1 || n_states > kMaxStates) {
    throw Error("state count out of range");
  }
}

void PartialSummary::offer_attaining(std::uint64_t ones, const Witness& w) {
  if (ones > bb_value_) {
    bb_value_ = ones;
    attaining_.clear();
  }
  if (ones < bb_value_) return;
  auto it = std::lower_bound(attaining_.begin(), attaining_.end(), w, witness_less);
  if (it == attaining_.end() || it->machine != w.machine) attaining_.insert(it, w);
}

void PartialSummary::offer_pp(std::uint64_t ones, const PPCell& candidate) {
  combine_cell(pp_, ones, candidate);
}

void PartialSummary::add(const Machine& machine, const Outcome& outcome,
                         std::uint64_t multiplicity) {
  covered_ += multiplicity;
  ++simulated_;
  if (!outcome.halted()) return;
  halted_ += multiplicity;
  if (outcome.ones == 0) return;
  offer_attaining(outcome.ones, Witness{machine, outcome.steps});

  const int states = machine.used_states();
  const int rules = machine.rule_count();
  const PPCell* cell = nullptr;
  const auto key = std::pair{states, rules};
  if (auto it = pp_.find(outcome.ones); it != pp_.end()) {
    cell = &it->second;
    if (key > std::pair{cell->states, cell->rules}) return;
  }
  // In canonical mode the machine stands for its orbit, whose earliest
  // member is the one a full sweep would meet first.
  Machine first = machine;
  if (mode_ == SweepMode::kCanonical) {
    for (const Machine& g : orbit(machine, n_)) {
      if (enumeration_less(g, first)) first = g;
    }
  }
  if (cell && key == std::pair{cell->states, cell->rules} &&
      outcome.steps > cell->fewest_steps.steps &&
      outcome.steps < cell->most_steps.steps &&
      !enumeration_less(first, cell->first_found.machine)) {
    return;
  }
  // The orbit's dense representative, so witnesses agree between full and
  // canonical sweeps.
  const Machine rep = canonical_form(compact_states(machine), states);
  const Witness w{rep, outcome.steps};
  offer_pp(outcome.ones, PPCell{states, rules, w, w, Witness{first, outcome.steps}});
}

void PartialSummary::add_trivial(std::uint64_t count) {
  covered_ += count;
  halted_ += count;
}

PartialSummary PartialSummary::merge(const PartialSummary& a,
                                     const PartialSummary& b) {
  if (a.n_ != b.n_ || a.cap_ != b.cap_ || a.mode_ != b.mode_) {
    throw Error("cannot merge summaries built with different n, cap or mode");
  }
  PartialSummary r(a.n_, a.cap_, a.mode_);
  r.covered_ = a.covered_ + b.covered_;
  r.simulated_ = a.simulated_ + b.simulated_;
  r.halted_ = a.halted_ + b.halted_;
  for (const auto* part : {&a, &b}) {
    for (const Witness& w : part->attaining_) r.offer_attaining(part->bb_value_, w);
    for (const auto& [ones, cell] : part->pp_) r.offer_pp(ones, cell);
  }
  return r;
}

bool PartialSummary::complete() const {
  return BigInt(covered_) == machine_space_size(n_);
}

void PartialSummary::write(std::ostream& out) const {
  out << "format = bblab-partial-1\n";
  out << "n = " << n_ << "\n";
  out << "cap = " << cap_ << "\n";
  out << "mode = " << mode_name(mode_) << "\n";
  out << "covered = " << covered_ << "\n";
  out << "simulated = " << simulated_ << "\n";
  out << "halted = " << halted_ << "\n";
  out << "bb = " << bb_value_ << "\n";
  for (const Witness& w : attaining_) {
    out << "attaining = " << w.steps << " | " << encode_name(w.machine) << "\n";
  }
  for (const auto& [ones, c] : pp_) {
    out << "pp = " << ones << " | " << c.states << " | " << c.rules << " | "
        << c.fewest_steps.steps << " | " << encode_name(c.fewest_steps.machine)
        << " | " << c.most_steps.steps << " | "
        << encode_name(c.most_steps.machine) << " | " << c.first_found.steps
        << " | " << encode_name(c.first_found.machine) << "\n";
  }
}

PartialSummary PartialSummary::read(std::istream& in) {
  std::map<std::string, std::string> scalars;
  std::vector<std::pair<std::size_t, std::string>> attaining, pp;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) line_error(line_no, "expected key = value");
    std::string key(trim(view.substr(0, eq)));
    std::string value(trim(view.substr(eq + 1)));
    if (key == "attaining") {
      attaining.emplace_back(line_no, value);
    } else if (key == "pp") {
      pp.emplace_back(line_no, value);
    } else if (!scalars.emplace(key, value).second) {
      line_error(line_no, "duplicate key '" + key + "'");
    }
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = scalars.find(key);
    if (it == scalars.end()) throw Error("summary is missing '" + key + "'");
    return it->second;
  };
  auto number = [&](const std::string& key) {
    auto v = parse_u64(get(key));
    if (!v) throw Error("summary field '" + key + "' is not an integer");
    return *v;
  };
  if (get("format") != "bblab-partial-1") throw Error("unknown summary format");
  SweepMode mode;
  if (get("mode") == "full") {
    mode = SweepMode::kFull;
  } else if (get("mode") == "canonical") {
    mode = SweepMode::kCanonical;
  } else {
    throw Error("unknown sweep mode '" + get("mode") + "'");
  }
  PartialSummary s(static_cast<int>(number("n")), number("cap"), mode);
  s.covered_ = number("covered");
  s.simulated_ = number("simulated");
  s.halted_ = number("halted");
  s.bb_value_ = number("bb");
  for (const auto& [no, value] : attaining) {
    auto parts = split(value, '|');
    if (parts.size() != 2) line_error(no, "attaining needs steps | name");
    auto steps = parse_u64(trim(parts[0]));
    if (!steps) line_error(no, "bad step count");
    Witness w{decode_field(trim(parts[1]), no), *steps};
    auto it = std::lower_bound(s.attaining_.begin(), s.attaining_.end(), w,
                               witness_less);
    s.attaining_.insert(it, w);
  }
  for (const auto& [no, value] : pp) {
    auto parts = split(value, '|');
    if (parts.size() != 9) line_error(no, "pp needs 9 fields");
    std::array<std::uint64_t, 6> nums{};
    const std::array<std::size_t, 6> at{0, 1, 2, 3, 5, 7};
    for (std::size_t i = 0; i < at.size(); ++i) {
      auto v = parse_u64(trim(parts[at[i]]));
      if (!v) line_error(no, "bad integer in pp line");
      nums[i] = *v;
    }
    PPCell cell{static_cast<int>(nums[1]), static_cast<int>(nums[2]),
                Witness{decode_field(trim(parts[4]), no), nums[3]},
                Witness{decode_field(trim(parts[6]), no), nums[4]},
                Witness{decode_field(trim(parts[8]), no), nums[5]}};
    s.pp_.emplace(nums[0], cell);
  }
  return s;
}

void PartialSummary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write(out);
  if (!out) throw Error("write to " + path.string() + " failed");
}

PartialSummary PartialSummary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return read(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

PartialSummary sweep_shard(const SweepOptions& options, Shard shard) {
  PartialSummary partial(options.n_states, options.cap, options.mode);
  MachineEnumerator::Options eo;
  eo.canonical = options.mode == SweepMode::kCanonical;
  eo.skip_startless = true;
  MachineEnumerator machines(options.n_states, shard, eo);
  Runner runner;
  Machine m = Machine::from_slots([] {
    Machine::Slots s;
    s.fill(kNoRule);
    s[0] = 0;
    return s;
  }());
  std::uint64_t count = 0;
  while (machines.next(m)) {
    const Outcome out =
        options.prune ? runner.run_pruned(m, options.cap) : runner.run(m, options.cap);
    partial.add(m, out, eo.canonical ? machines.orbit_size() : 1);
    if (options.progress && ++count % options.progress_interval == 0) {
      options.progress(count);
    }
  }
  partial.add_trivial(machines.skipped());
  return partial;
}

}  // namespace

PartialSummary sweep(const SweepOptions& options) {
  if (options.jobs <= 1) return sweep_shard(options, options.shard);

  const auto jobs = static_cast<std::uint64_t>(options.jobs);
  std::vector<std::optional<PartialSummary>> parts(jobs);
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (std::uint64_t j = 0; j < jobs; ++j) {
    workers.emplace_back([&, j] {
      try {
        Shard sub{options.shard.index + j * options.shard.total,
                  options.shard.total * jobs};
        parts[j] = sweep_shard(options, sub);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  PartialSummary total(options.n_states, options.cap, options.mode);
  for (auto& p : parts) total = PartialSummary::merge(total, *p);
  return total;
}

// ---------------------------------------------------------------------------
// BB summaries

BBSummary build_bb_summary(const PartialSummary& partial) {
  if (partial.covered() == 0) throw Error("no machines were swept");
  BBSummary s;
  s.n_states = partial.n_states();
  s.cap = partial.cap();
  s.mode = partial.mode();
  s.complete = partial.complete();
  s.machines_covered = partial.covered();
  s.halted = partial.halted();
  s.bb_value = partial.bb_value();

  for (const Witness& w : partial.attaining()) {
    if (partial.mode() == SweepMode::kCanonical) {
      for (const Machine& m : orbit(w.machine, partial.n_states())) {
        s.machines.push_back(m);
      }
    } else {
      s.machines.push_back(w.machine);
    }
  }
  std::sort(s.machines.begin(), s.machines.end());
  s.machines.erase(std::unique(s.machines.begin(), s.machines.end()),
                   s.machines.end());

  Runner runner;
  for (const Machine& m : s.machines) {
    const Outcome out = runner.run(m, s.cap);
    if (!out.halted() || out.ones != s.bb_value) {
      throw Error("re-simulation of " + encode_name(m) +
                  " disagrees with the sweep");
    }
    s.steps.push_back(out.steps);
    s.words.push_back(out.word);
  }
  std::sort(s.words.begin(), s.words.end());
  s.words.erase(std::unique(s.words.begin(), s.words.end()), s.words.end());
  if (!s.steps.empty()) s.kt_bb = *std::min_element(s.steps.begin(), s.steps.end());
  s.base = base_set(s.machines, s.n_states);
  return s;
}

BBSummary build_bb_summary(int n_states, std::uint64_t cap,
                           std::span<const Machine> machines) {
  if (machines.empty()) throw Error("no machines were swept");
  PartialSummary partial(n_states, cap, SweepMode::kFull);
  Runner runner;
  for (const Machine& m : machines) partial.add(m, runner.run(m, cap));
  return build_bb_summary(partial);
}

std::string BBSummary::to_text() const {
  std::ostringstream os;
  os << "n = " << n_states << "\n";
  os << "cap = " << cap << "\n";
  os << "mode = " << mode_name(mode) << "\n";
  os << "complete = " << (complete ? "yes" : "no") << "\n";
  os << "machines = " << machines_covered << "\n";
  os << "halted = " << halted << "\n";
  os << "bb = " << bb_value << "\n";
  os << "m_bb = " << machines.size() << "\n";
  os << "kt_bb = " << kt_bb << "\n";
  os << "b_bb = " << base.size() << "\n";
  os << "words =";
  for (const Word& w : words) os << " " << w.display();
  os << "\n";
  return os.str();
}

std::vector<CatalogRecord> catalog_records(const BBSummary& summary) {
  std::vector<CatalogRecord> out;
  Runner runner;
  for (const Machine& m : summary.machines) {
    out.push_back(make_record(m, runner.run(m, summary.cap)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Placid Platypus

std::vector<PPEntry> build_pp_table(std::uint64_t max_ones,
                                    std::span<const PartialSummary> sweeps) {
  std::map<std::uint64_t, PPCell> cells;
  std::map<int, std::uint64_t> bb;
  for (const PartialSummary& s : sweeps) {
    for (const auto& [ones, cell] : s.pp_cells()) combine_cell(cells, ones, cell);
    if (s.complete()) bb[s.n_states()] = s.bb_value();
  }

  auto bracket = [&](std::uint64_t ones) -> std::optional<int> {
    std::uint64_t below = 0;  // BB(0)
    for (int k = 1;; ++k) {
      auto it = bb.find(k);
      if (it == bb.end()) return std::nullopt;
      if (below < ones && ones <= it->second) return k;
      below = it->second;
    }
  };

  std::vector<PPEntry> table;
  for (std::uint64_t ones = 1; ones <= max_ones; ++ones) {
    PPEntry e;
    e.ones = ones;
    e.bracket = bracket(ones);
    if (auto it = cells.find(ones); it != cells.end()) {
      e.pp_value = it->second.states;
      e.rules = it->second.rules;
      e.fewest_steps = it->second.fewest_steps;
      e.most_steps = it->second.most_steps;
      e.first_found = it->second.first_found;
    }
    table.push_back(std::move(e));
  }
  return table;
}

}  // namespace bblab
