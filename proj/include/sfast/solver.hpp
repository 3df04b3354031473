#pragma once

#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "sfast/chromatic.hpp"
#include "sfast/kernelize.hpp"
#include "sfast/packing.hpp"

namespace sfast {

/// ceil(20 * (2e)^sqrt(k/8)).
inline int default_trials(int k) {
  if (k < 1) return 1;
  return static_cast<int>(std::ceil(20.0 * std::pow(2.0 * std::exp(1.0), std::sqrt(k / 8.0))));
}

enum class TrialPolicy {
  /// Run the budget (or stop once a trial reaches the packing lower bound)
  /// and keep the smallest solution.
  minimize,
  /// Stop at the first trial whose DP value fits the budget.
  first_success,
};

struct SolverConfig {
  std::uint64_t seed = 1;
  int max_trials = 0;  // 0: default_trials(k) of the kernel
  int workers = 1;
  TrialPolicy policy = TrialPolicy::minimize;
  KernelConfig kernel;
  DpOptions dp;
};

/// Outcome of one coloring on the kernel.
struct TrialResult {
  std::uint64_t trial = 0;
  bool feasible = false;
  long long value = -1;
  ArcSet solution;  // kernel indices; set when feasible
};

inline TrialResult run_trial(const Instance& kernel, std::uint64_t seed, std::uint64_t trial, const DpOptions& dp = {}) {
  TrialResult r;
  r.trial = trial;
  const Coloring c = draw_coloring(kernel.size(), kernel.k, seed, trial);
  if (!classes_feasible(kernel.tournament, kernel.terminals, c)) return r;
  const ContractedTournament ct = contract(kernel.tournament, kernel.terminals, c);
  const DpResult res = dp_min_colorful_sfas(ct, dp);
  r.feasible = true;
  r.value = res.value;
  r.solution = expand_solution(kernel.tournament, kernel.terminals, ct, res);
  return r;
}

enum class SolveStatus { solved, not_found, proven_no };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::solved: return "solved";
    case SolveStatus::not_found: return "not-found";
    case SolveStatus::proven_no: return "proven-no";
  }
  return "?";
}

struct SolveResult {
  SolveStatus status = SolveStatus::not_found;
  std::optional<ArcSet> solution;  // vertex indices of the input instance
  KernelResult kernel;
  int trials_budget = 0;
  /// Trials a sequential run would have evaluated before returning.
  int trials_used = 0;
  int feasible_trials = 0;
  std::optional<std::uint64_t> chosen_trial;
  long long kernel_value = -1;
};

namespace detail {

/// Runs trials 0..budget-1 on `workers` threads. A trial with value <= k is
/// accepted; `good_enough(value)` ends the search. The selected trial is the
/// one a sequential loop would select, so the result does not depend on the
/// worker count.
inline void run_trials(const Instance& kernel, const SolverConfig& cfg, int budget, long long stop_value, SolveResult& out,
                       std::optional<TrialResult>& best) {
  std::atomic<int> next{0};
  std::atomic<int> stop_at{budget};  // smallest trial index that ended the search
  std::mutex mu;
  std::vector<TrialResult> done;
  std::exception_ptr error;
  const auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= budget || i > stop_at.load()) return;
      TrialResult r;
      try {
        r = run_trial(kernel, cfg.seed, static_cast<std::uint64_t>(i), cfg.dp);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        stop_at.store(-1);
        return;
      }
      const bool fits = r.feasible && r.value <= kernel.k;
      const bool ends = fits && (cfg.policy == TrialPolicy::first_success || r.value <= stop_value);
      std::lock_guard lock(mu);
      done.push_back(std::move(r));
      if (ends && i < stop_at.load()) stop_at.store(i);
    }
  };
  const int workers = std::max(1, std::min(cfg.workers, budget));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  const int last = std::min(stop_at.load(), budget - 1);
  out.trials_used = last + 1;
  for (auto& r : done) {
    if (static_cast<int>(r.trial) > last) continue;
    if (r.feasible) ++out.feasible_trials;
    if (!r.feasible || r.value > kernel.k) continue;
    if (!best || r.value < best->value || (r.value == best->value && r.trial < best->trial)) best = std::move(r);
  }
}

}  // namespace detail

/// Kernelizes, then colors the kernel repeatedly and solves each feasible
/// coloring exactly by the prefix-vector DP. Solutions are lifted back to
/// the input and verified.
inline SolveResult solve(const Instance& inst, const SolverConfig& cfg = {}) {
  SolveResult out;
  out.kernel = kernelize(inst, cfg.kernel);
  const KernelResult& kr = out.kernel;
  if (kr.status == KernelStatus::trivial_no) {
    out.status = SolveStatus::proven_no;
    return out;
  }
  ArcSet kernel_solution;
  if (kr.status == KernelStatus::reduced) {
    const Instance& kernel = *kr.kernel;
    out.trials_budget = cfg.max_trials > 0 ? cfg.max_trials : default_trials(kernel.k);
    // A solution as small as a packing of disjoint S-triangles is optimal.
    const auto lower = static_cast<long long>(conflict_packing(kernel.tournament, kernel.terminals).size());
    std::optional<TrialResult> best;
    detail::run_trials(kernel, cfg, out.trials_budget, lower, out, best);
    if (!best) {
      out.status = SolveStatus::not_found;
      return out;
    }
    out.chosen_trial = best->trial;
    out.kernel_value = best->value;
    kernel_solution = std::move(best->solution);
  } else {
    out.kernel_value = 0;
  }
  ArcSet lifted = lift_solution(inst, kr, kernel_solution);
  if (!verify_solution(inst, lifted, SolutionMode::reversal))
    throw InternalInvariantError("lifted solution of size " + std::to_string(lifted.size()) + " does not verify");
  out.solution = std::move(lifted);
  out.status = SolveStatus::solved;
  return out;
}

}  // namespace sfast
