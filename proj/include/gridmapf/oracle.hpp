#pragma once

// Exhaustive joint-state solvers for small instances. They serve as ground
// truth for the two-direction solver and the SAT reduction.

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

#include "gridmapf/core.hpp"

namespace gridmapf {

class BudgetExceeded : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

struct SearchBudget {
  long max_states = 20'000'000;
  double max_seconds = 600.0;
};

struct Witness {
  bool decision = false;
  std::optional<Solution> solution;
  long expanded = 0;
};

/// Is there a conflict-free solution in which every agent moves along a
/// shortest path without waiting? Searches joint positions where each
/// unfinished agent strictly descends its distance field.
Witness exists_individually_optimal(const Instance& instance, const ConflictModel& model = {},
                                    const SearchBudget& budget = {});

/// Calls `visit` on every individually optimal solution in a deterministic
/// order until it returns false. With `prune_dead` the search skips joint
/// states already known to have no completion; the visited set is the same
/// either way.
void for_each_individually_optimal(const Instance& instance, const ConflictModel& model,
                                   const std::function<bool(const Solution&)>& visit, bool prune_dead = true,
                                   const SearchBudget& budget = {});

struct Enumeration {
  std::vector<Solution> solutions;
  /// More solutions exist beyond `limit`.
  bool truncated = false;
};

Enumeration enumerate_individually_optimal(const Instance& instance, const ConflictModel& model, std::size_t limit,
                                           bool prune_dead = true, const SearchBudget& budget = {});

/// Layered breadth-first search over joint states up to time `bound`.
/// Waits are allowed when the instance allows them.
Witness exists_makespan_at_most(const Instance& instance, int bound, const ConflictModel& model = {},
                                const SearchBudget& budget = {});

struct FlowtimeResult {
  long cost = 0;
  Solution solution;
  long expanded = 0;
};

/// A* over (positions, finished-agent mask) with the sum of remaining
/// distances as heuristic. nullopt when some goal is unreachable or the
/// joint search is exhausted.
std::optional<FlowtimeResult> optimal_flowtime(const Instance& instance, const ConflictModel& model = {},
                                               const SearchBudget& budget = {});

/// Optimal flowtime minus the lower bound; nullopt when infeasible.
std::optional<long> delta(const Instance& instance, const ConflictModel& model = {},
                          const SearchBudget& budget = {});

enum class Objective { Flowtime, Makespan };

/// Calls `visit` with every within-team assignment of agents to targets,
/// as a labeled instance whose goals are the assigned targets.
void for_each_team_assignment(const Instance& instance, const std::function<bool(const Instance&)>& visit);

/// Smallest lower bound over all within-team assignments; nullopt if none is
/// reachable.
std::optional<long> assignment_minimal_lower_bound(const Instance& instance);

/// k-colored decision: some within-team assignment admits a solution whose
/// objective is at most `bound`.
Witness two_colored_decide(const Instance& instance, Objective objective, long bound,
                           const ConflictModel& model = {}, const SearchBudget& budget = {});

}  // namespace gridmapf
