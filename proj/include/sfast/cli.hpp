#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "sfast/generators.hpp"
#include "sfast/io.hpp"
#include "sfast/oracle.hpp"
#include "sfast/solver.hpp"

namespace sfast::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int error = 1;
inline constexpr int trivial_yes = 10;
inline constexpr int trivial_no = 20;
inline constexpr int not_found = 30;
inline constexpr int invalid = 40;
}  // namespace exit_code

using nlohmann::json;

inline json arcs_json(const ArcSet& arcs) {
  json a = json::array();
  for (const Arc& e : arcs) a.push_back({e.tail, e.head});
  return a;
}

inline json size_json(std::size_t n, std::size_t s, int k) { return {{"n", n}, {"s", s}, {"k", k}}; }

inline json size_json(const Instance& inst) { return size_json(inst.size(), inst.terminal_count(), inst.k); }

inline json trace_entry_json(const TraceEntry& e) {
  return {{"rule", to_string(e.rule)},
          {"status", to_string(e.status)},
          {"before", size_json(e.n_before, e.s_before, e.k_before)},
          {"after", size_json(e.n_after, e.s_after, e.k_after)},
          {"reversed", arcs_json(e.reversed)},
          {"deleted", e.deleted},
          {"note", e.note}};
}

/// One JSON object per line.
inline void write_trace(std::ostream& out, const std::vector<TraceEntry>& trace) {
  for (const TraceEntry& e : trace) out << trace_entry_json(e).dump() << '\n';
}

namespace detail {

template <typename F>
void write_file(const std::string& path, F&& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  body(out);
}

/// Prints a JSON object or "key: value" lines for its scalar members
/// (nested objects are flattened with dots, arrays as JSON).
inline void print_summary(std::ostream& out, const json& j, bool as_json, const std::string& prefix = "") {
  if (as_json) {
    out << j.dump() << '\n';
    return;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_object()) print_summary(out, it.value(), false, prefix + it.key() + ".");
    else out << prefix << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << '\n';
  }
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const KernelInvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    write_trace(err, e.trace());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return exit_code::error;
}

}  // namespace detail

struct KernelizeArgs {
  std::string input;
  std::string output;  // kernel instance file
  std::string trace;   // JSONL trace file
  bool json = false;
  bool wide_threshold = false;
};

inline int cmd_kernelize(const KernelizeArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const Instance inst = read_instance(args.input);
    KernelConfig cfg;
    cfg.wide_class_threshold = args.wide_threshold;
    const KernelResult r = kernelize(inst, cfg);
    if (!args.trace.empty()) detail::write_file(args.trace, [&](std::ostream& f) { write_trace(f, r.trace); });
    if (!args.output.empty() && r.kernel) detail::write_file(args.output, [&](std::ostream& f) { write_instance(f, *r.kernel); });
    json summary = {{"status", to_string(r.status)}, {"original", size_json(inst)}, {"rules_applied", r.trace.size()}};
    if (r.kernel) {
      summary["kernel"] = size_json(*r.kernel);
      summary["kernel"]["vertex_bound"] = vertex_bound(r.kernel->k);
      summary["k_change"] = r.kernel->k - inst.k;
    } else if (!r.trace.empty()) {
      summary["decided_by"] = to_string(r.trace.back().rule);
      summary["reason"] = r.trace.back().note;
    }
    summary["reversal_prefix"] = arcs_json(r.reversal_prefix);
    detail::print_summary(out, summary, args.json);
    switch (r.status) {
      case KernelStatus::reduced: return exit_code::ok;
      case KernelStatus::trivial_yes: return exit_code::trivial_yes;
      case KernelStatus::trivial_no: return exit_code::trivial_no;
    }
    return exit_code::error;
  });
}

struct SolveArgs {
  std::string input;
  std::string output;  // solution file; printed as "r" lines when empty
  std::string trace;
  std::uint64_t seed = 1;
  int trials = 0;
  int workers = 1;
  bool json = false;
  bool first_success = false;
  bool wide_threshold = false;
};

inline int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const Instance inst = read_instance(args.input);
    SolverConfig cfg;
    cfg.seed = args.seed;
    cfg.max_trials = args.trials;
    cfg.workers = args.workers;
    cfg.policy = args.first_success ? TrialPolicy::first_success : TrialPolicy::minimize;
    cfg.kernel.wide_class_threshold = args.wide_threshold;
    const SolveResult r = solve(inst, cfg);
    if (!args.trace.empty()) detail::write_file(args.trace, [&](std::ostream& f) { write_trace(f, r.kernel.trace); });
    json summary = {{"status", to_string(r.status)},
                    {"original", size_json(inst)},
                    {"kernel_status", to_string(r.kernel.status)},
                    {"trials_budget", r.trials_budget},
                    {"trials_used", r.trials_used},
                    {"feasible_trials", r.feasible_trials}};
    if (r.kernel.kernel) summary["kernel"] = size_json(*r.kernel.kernel);
    if (r.chosen_trial) summary["chosen_trial"] = *r.chosen_trial;
    if (r.solution) {
      // solve() verified the lifted set against the input already.
      const ArcSet labelled = to_labels(inst.tournament, *r.solution);
      summary["size"] = labelled.size();
      summary["verified"] = true;
      summary["solution"] = arcs_json(labelled);
      if (!args.output.empty()) detail::write_file(args.output, [&](std::ostream& f) { write_solution(f, labelled); });
    }
    detail::print_summary(out, summary, args.json);
    if (r.solution && args.output.empty() && !args.json) write_solution(out, to_labels(inst.tournament, *r.solution));
    switch (r.status) {
      case SolveStatus::solved: return exit_code::ok;
      case SolveStatus::not_found: return exit_code::not_found;
      case SolveStatus::proven_no: return exit_code::trivial_no;
    }
    return exit_code::error;
  });
}

struct VerifyArgs {
  std::string input;
  std::string solution;
  SolutionMode mode = SolutionMode::reversal;
  bool json = false;
};

inline int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const Instance inst = read_instance(args.input);
    std::ifstream in(args.solution);
    if (!in) throw std::runtime_error("cannot open " + args.solution);
    const ArcSet f = to_indices(inst.tournament, parse_solution(in));
    const bool valid = verify_solution(inst, f, args.mode);
    json summary = {{"valid", valid},
                    {"mode", args.mode == SolutionMode::reversal ? "reversal" : "deletion"},
                    {"size", f.size()},
                    {"k", inst.k}};
    detail::print_summary(out, summary, args.json);
    return valid ? exit_code::ok : exit_code::invalid;
  });
}

struct OracleArgs {
  std::string input;
  std::optional<int> kmax;
  bool orderings = false;  // permutation oracle instead of the deletion search
  bool json = false;
  std::uint64_t budget = kDefaultOracleBudget;
};

inline int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const Instance inst = read_instance(args.input);
    json summary = {{"method", args.orderings ? "orderings" : "deletion"}};
    if (args.orderings) {
      const int v = oracle_min_reversal_orderings(inst.tournament, inst.terminals);
      summary["optimum"] = v;
    } else if (args.kmax) {
      const auto v = oracle_min_deletion(inst.tournament, inst.terminals, *args.kmax, args.budget);
      if (v) summary["optimum"] = *v;
      else summary["optimum"] = "> " + std::to_string(*args.kmax);
    } else {
      summary["optimum"] = oracle_optimum(inst.tournament, inst.terminals, args.budget);
    }
    if (summary["optimum"].is_number()) summary["yes"] = summary["optimum"].get<int>() <= inst.k;
    else summary["yes"] = *args.kmax >= inst.k ? json(false) : json(nullptr);
    detail::print_summary(out, summary, args.json);
    return exit_code::ok;
  });
}

struct GenArgs {
  GeneratorSpec spec;
  std::string output;          // instance file; stdout when empty
  std::string planted_output;  // planted arc set as a solution file
};

inline int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    Instance inst;
    ArcSet planted;
    if (args.spec.planted_k) std::tie(inst, planted) = generate_planted(args.spec);
    else inst = generate_random(args.spec);
    const auto emit = [&](std::ostream& o) {
      o << "c " << args.spec.fingerprint() << '\n';
      write_instance(o, inst);
    };
    if (args.output.empty()) emit(out);
    else detail::write_file(args.output, emit);
    if (!args.planted_output.empty()) {
      if (!args.spec.planted_k) throw PreconditionError("--planted-out needs --planted");
      detail::write_file(args.planted_output, [&](std::ostream& o) { write_solution(o, planted); });
    }
    return exit_code::ok;
  });
}

struct BenchArgs {
  std::string corpus;
  std::string output;  // CSV; stdout when empty
  std::uint64_t seed = 1;
  int trials = 0;
  int workers = 1;
};

/// Instance files (*.sfast) of a directory in name order.
inline std::vector<std::filesystem::path> corpus_files(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".sfast") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

inline int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    std::ostringstream csv;
    csv << "instance,n,s,k,kernel_n,trials_used,wall_ms,value,status\n";
    int failures = 0;
    for (const auto& path : corpus_files(args.corpus)) {
      const Instance inst = read_instance(path.string());
      SolverConfig cfg;
      cfg.seed = args.seed;
      cfg.max_trials = args.trials;
      cfg.workers = args.workers;
      const auto start = std::chrono::steady_clock::now();
      SolveResult r;
      std::string status;
      try {
        r = solve(inst, cfg);
        status = to_string(r.status);
      } catch (const std::exception& e) {
        ++failures;
        status = "error";
        err << path.filename().string() << ": " << e.what() << '\n';
      }
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      csv << path.filename().string() << ',' << inst.size() << ',' << inst.terminal_count() << ',' << inst.k << ','
          << (r.kernel.kernel ? std::to_string(r.kernel.kernel->size()) : "") << ',' << r.trials_used << ','
          << std::fixed << std::setprecision(3) << ms << ',' << (r.solution ? std::to_string(r.solution->size()) : "") << ','
          << status << '\n';
    }
    if (args.output.empty()) out << csv.str();
    else detail::write_file(args.output, [&](std::ostream& f) { f << csv.str(); });
    return failures == 0 ? exit_code::ok : exit_code::error;
  });
}

}  // namespace sfast::cli
