#include "bblab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <mutex>

#include <CLI11.hpp>

#include "bblab/analysis.hpp"
#include "bblab/catalog.hpp"
#include "bblab/enumeration.hpp"
#include "bblab/machine.hpp"
#include "bblab/simulator.hpp"
#include "bblab/symmetry.hpp"

namespace bblab {

namespace {

struct Flags {
  std::string name;
  std::uint64_t max_steps = 10000;
  std::optional<std::size_t> window;
  int states = 0;
  std::string shard = "0/1";
  bool canonical = false;
  bool count_only = false;
  std::string out_path;
  std::string partial_path;
  std::vector<std::string> merge;
  std::vector<std::string> catalogs;
  std::string records;
  int jobs = 1;
  bool no_prune = false;
  std::uint64_t progress_interval = 100'000'000;
  std::uint64_t max_ones = 12;
  double low_us = 0;
  double high_us = 0;
};

int cmd_simulate(const Flags& f, std::ostream& out) {
  const Machine m = decode_name(f.name);
  const Outcome o = run(m, f.max_steps);
  if (!o.halted()) {
    out << "CAP_EXCEEDED steps=" << o.steps << "\n";
    return kExitCapExceeded;
  }
  out << "HALTED steps=" << o.steps << " ones=" << o.ones
      << " word=" << o.word.display() << "\n";
  return kExitOk;
}

int cmd_trace(const Flags& f, std::ostream& out) {
  const Machine m = decode_name(f.name);
  for (const std::string& line : render_trace(m, f.max_steps, f.window)) {
    out << line << "\n";
  }
  return kExitOk;
}

int cmd_enumerate(const Flags& f, std::ostream& out) {
  MachineEnumerator e(f.states, Shard::parse(f.shard),
                      {.canonical = f.canonical, .skip_startless = false});
  Machine m = decode_name("(1, 0, 0)");
  std::uint64_t count = 0;
  while (e.next(m)) {
    ++count;
    if (f.count_only) continue;
    out << encode_name(m);
    if (f.canonical) out << "\t" << e.orbit_size();
    out << "\n";
  }
  if (f.count_only) out << count << "\n";
  return kExitOk;
}

void emit_summary(const PartialSummary& partial, const Flags& f,
                  std::ostream& out) {
  if (!f.partial_path.empty()) partial.save(f.partial_path);
  const BBSummary summary = build_bb_summary(partial);
  out << summary.to_text();
  if (!f.out_path.empty()) write_catalog(f.out_path, catalog_records(summary));
}

int cmd_catalog(const Flags& f, std::ostream& out, std::ostream& err) {
  if (!f.merge.empty()) {
    std::optional<PartialSummary> total;
    for (const std::string& path : f.merge) {
      PartialSummary p = PartialSummary::load(path);
      total = total ? PartialSummary::merge(*total, p) : p;
    }
    emit_summary(*total, f, out);
    return kExitOk;
  }
  if (f.states < 1) throw CLI::ValidationError("--states", "required unless --merge is given");
  SweepOptions o;
  o.n_states = f.states;
  o.cap = f.max_steps;
  o.mode = f.canonical ? SweepMode::kCanonical : SweepMode::kFull;
  o.shard = Shard::parse(f.shard);
  o.prune = !f.no_prune;
  o.jobs = f.jobs;
  o.progress_interval = f.progress_interval;
  std::mutex lock;
  o.progress = [&](std::uint64_t done) {
    std::lock_guard guard(lock);
    err << "progress: " << done << " machines simulated by one worker\n";
  };
  const auto start = std::chrono::steady_clock::now();
  const PartialSummary partial = sweep(o);
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  err << "swept " << partial.simulated() << " machines in " << took.count()
      << " s\n";
  emit_summary(partial, f, out);
  return kExitOk;
}

std::vector<PartialSummary> load_all(const std::vector<std::string>& paths) {
  std::vector<PartialSummary> out;
  for (const std::string& p : paths) out.push_back(PartialSummary::load(p));
  return out;
}

int cmd_pp(const Flags& f, std::ostream& out) {
  const auto sweeps = load_all(f.catalogs);
  out << "ones\tpp\trules\tbracket\tfewest_steps\tfewest_machine\tmost_steps\t"
         "most_machine\tfirst_steps\tfirst_machine\n";
  for (const PPEntry& e : build_pp_table(f.max_ones, sweeps)) {
    out << e.ones << "\t";
    if (!e.pp_value) {
      out << "unknown\t\t" << (e.bracket ? std::to_string(*e.bracket) : "")
          << "\t\t\t\t\t\t\n";
      continue;
    }
    out << *e.pp_value << "\t" << e.rules << "\t"
        << (e.bracket ? std::to_string(*e.bracket) : "") << "\t"
        << e.fewest_steps->steps << "\t" << encode_name(e.fewest_steps->machine)
        << "\t" << e.most_steps->steps << "\t"
        << encode_name(e.most_steps->machine) << "\t" << e.first_found->steps << "\t"
        << encode_name(e.first_found->machine) << "\n";
  }
  return kExitOk;
}

int cmd_canon(const Flags& f, std::ostream& out) {
  const Machine m = decode_name(f.name);
  out << encode_name(canonical_form(m, std::max(f.states, m.n_states()))) << "\n";
  return kExitOk;
}

int cmd_orbit(const Flags& f, std::ostream& out) {
  const Machine m = decode_name(f.name);
  for (const Machine& g : orbit(m, std::max(f.states, m.n_states()))) {
    out << encode_name(g) << "\n";
  }
  return kExitOk;
}

int cmd_dot(const Flags& f, std::ostream& out) {
  out << render_dot(decode_name(f.name));
  return kExitOk;
}

int cmd_ratios(const Flags& f, std::ostream& out) {
  const auto sweeps = load_all(f.catalogs);
  const auto entries = build_pp_table(f.max_ones, sweeps);
  std::vector<ExternalRecord> records;
  if (!f.records.empty()) records = ingest_records(std::filesystem::path(f.records));
  out << build_table(entries, records);
  return kExitOk;
}

int cmd_estimate(const Flags& f, std::ostream& out) {
  const SweepEstimate e = estimate_sweep(f.states, f.low_us, f.high_us);
  out << "machines=" << e.machines << "\n" << format_estimate(e) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Busy Beaver and Placid Platypus laboratory", "bblab"};
  app.require_subcommand(1);
  Flags f;

  auto name_arg = [&](CLI::App* c) {
    c->add_option("name", f.name, "machine name, e.g. \"(1, 0, 3)\"")->required();
  };
  auto cap_opt = [&](CLI::App* c) {
    c->add_option("--max-steps", f.max_steps, "step cap")->check(CLI::PositiveNumber);
  };

  auto* simulate = app.add_subcommand("simulate", "run a machine on the blank tape");
  name_arg(simulate);
  cap_opt(simulate);

  auto* trace = app.add_subcommand("trace", "print every configuration of a run");
  name_arg(trace);
  cap_opt(trace);
  trace->add_option("--window", f.window, "tape cells shown")->check(CLI::PositiveNumber);

  auto* enumerate = app.add_subcommand("enumerate", "list machines in enumeration order");
  enumerate->add_option("--states", f.states)->required()->check(CLI::Range(1, kMaxEnumerationStates));
  enumerate->add_option("--shard", f.shard, "i/m");
  enumerate->add_flag("--canonical", f.canonical, "orbit representatives with orbit sizes");
  enumerate->add_flag("--count", f.count_only, "print only the number of machines");

  auto* catalog = app.add_subcommand("catalog", "sweep a machine space for BB(n)");
  catalog->add_option("--states", f.states)->check(CLI::Range(1, kMaxEnumerationStates));
  cap_opt(catalog);
  catalog->add_option("--shard", f.shard, "i/m");
  catalog->add_flag("--canonical", f.canonical, "simulate one machine per symmetry orbit");
  catalog->add_option("--out", f.out_path, "catalog TSV of the BB machines");
  catalog->add_option("--partial", f.partial_path, "write the mergeable partial summary");
  catalog->add_option("--merge", f.merge, "combine partial summaries instead of sweeping")
      ->expected(1, -1);
  catalog->add_option("--jobs", f.jobs, "worker threads")->check(CLI::Range(1, 1024));
  catalog->add_flag("--no-prune", f.no_prune, "simulate every run to its halt or the cap");
  catalog->add_option("--progress-interval", f.progress_interval)->check(CLI::PositiveNumber);

  auto* pp = app.add_subcommand("pp", "Placid Platypus table from partial summaries");
  pp->add_option("--catalog", f.catalogs, "partial summary files")->required()->expected(1, -1);
  pp->add_option("--max-ones", f.max_ones)->check(CLI::PositiveNumber);

  auto* canon = app.add_subcommand("canon", "canonical representative of a machine");
  name_arg(canon);
  canon->add_option("--states", f.states, "size of the machine space")->check(CLI::Range(1, kMaxStates));

  auto* orbit_cmd = app.add_subcommand("orbit", "symmetry orbit of a machine");
  name_arg(orbit_cmd);
  orbit_cmd->add_option("--states", f.states, "size of the machine space")->check(CLI::Range(1, kMaxStates));

  auto* dot = app.add_subcommand("dot", "Graphviz rendering of a machine");
  name_arg(dot);

  auto* ratios = app.add_subcommand("ratios", "running-time ratio table as CSV");
  ratios->add_option("--catalog", f.catalogs, "partial summary files")->required()->expected(1, -1);
  ratios->add_option("--records", f.records, "external records CSV");
  ratios->add_option("--max-ones", f.max_ones)->check(CLI::PositiveNumber);

  auto* estimate = app.add_subcommand("estimate", "wall-clock bounds for a full sweep");
  estimate->add_option("--states", f.states)->required()->check(CLI::Range(1, 64));
  estimate->add_option("--low-us", f.low_us, "fastest per-machine time")->required();
  estimate->add_option("--high-us", f.high_us, "slowest per-machine time")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(f, out);
    if (trace->parsed()) return cmd_trace(f, out);
    if (enumerate->parsed()) return cmd_enumerate(f, out);
    if (catalog->parsed()) return cmd_catalog(f, out, err);
    if (pp->parsed()) return cmd_pp(f, out);
    if (canon->parsed()) return cmd_canon(f, out);
    if (orbit_cmd->parsed()) return cmd_orbit(f, out);
    if (dot->parsed()) return cmd_dot(f, out);
    if (ratios->parsed()) return cmd_ratios(f, out);
    if (estimate->parsed()) return cmd_estimate(f, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace bblab
