#include "gridmapf/oracle.hpp"

#include <cstring>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace gridmapf {
namespace {

class BudgetGuard {
 public:
  explicit BudgetGuard(const SearchBudget& budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  void tick() {
    ++expanded_;
    if (expanded_ > budget_.max_states) {
      throw BudgetExceeded("search exceeded " + std::to_string(budget_.max_states) + " states");
    }
    if ((expanded_ & 1023) == 0) {
      std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed.count() > budget_.max_seconds) {
        throw BudgetExceeded("search exceeded " + std::to_string(budget_.max_seconds) + " s");
      }
    }
  }
  long expanded() const { return expanded_; }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  long expanded_ = 0;
};

// Packs cell indices into a byte string (two bytes each when they fit).
class KeyCodec {
 public:
  explicit KeyCodec(const GridMap& grid) : wide_(grid.cell_count() > 0xFFFF) {}

  std::string encode(std::span<const int> cells, std::uint32_t extra = 0, bool with_extra = false) const {
    std::string key;
    const std::size_t width = wide_ ? 4 : 2;
    key.resize(cells.size() * width + (with_extra ? 4 : 0));
    char* out = key.data();
    for (int c : cells) {
      if (wide_) {
        std::uint32_t v = static_cast<std::uint32_t>(c);
        std::memcpy(out, &v, 4);
      } else {
        std::uint16_t v = static_cast<std::uint16_t>(c);
        std::memcpy(out, &v, 2);
      }
      out += width;
    }
    if (with_extra) std::memcpy(out, &extra, 4);
    return key;
  }

 private:
  bool wide_;
};

std::vector<DistanceField> goal_fields(const Instance& instance) {
  std::vector<DistanceField> fields;
  fields.reserve(instance.agents.size());
  for (const auto& a : instance.agents) {
    fields.push_back(shortest_dist_field(instance.grid, a.goal, instance.directions));
  }
  return fields;
}

bool all_reachable(const Instance& instance, const std::vector<DistanceField>& fields) {
  for (std::size_t i = 0; i < instance.agents.size(); ++i) {
    if (!instance.grid.is_free(instance.agents[i].start) || !fields[i].reachable(instance.agents[i].start)) {
      return false;
    }
  }
  return true;
}

bool start_conflict_free(const Instance& instance, const ConflictModel& model) {
  if (!model.vertex) return true;
  for (std::size_t i = 0; i < instance.agents.size(); ++i) {
    for (std::size_t j = i + 1; j < instance.agents.size(); ++j) {
      if (instance.agents[i].start == instance.agents[j].start) return false;
    }
  }
  return true;
}

// Builds per-agent paths from a joint trajectory, each cut at its arrival time.
Solution to_solution(const std::vector<std::vector<Cell>>& trajectory, const std::vector<int>& arrival) {
  Solution s;
  s.paths.resize(arrival.size());
  for (std::size_t i = 0; i < arrival.size(); ++i) {
    for (int t = 0; t <= arrival[i]; ++t) s.paths[i].cells.push_back(trajectory[std::size_t(t)][i]);
  }
  return s;
}

// Calls `emit(after)` for each combination of per-agent options that is a
// legal joint move. Combinations are produced in agent-index order with each
// agent's options in their given order.
template <typename Emit>
bool for_each_joint_move(const std::vector<Cell>& before, const std::vector<std::vector<Cell>>& options,
                         const ConflictModel& model, int time, std::vector<Cell>& after, Emit&& emit,
                         std::size_t agent = 0) {
  if (agent == options.size()) {
    if (!check_joint_move(before, after, model, time, nullptr)) return true;
    return emit(after);
  }
  for (Cell c : options[agent]) {
    if (model.vertex) {
      bool clash = false;
      for (std::size_t j = 0; j < agent && !clash; ++j) clash = after[j] == c;
      if (clash) continue;
    }
    after[agent] = c;
    if (!for_each_joint_move(before, options, model, time, after, emit, agent + 1)) return false;
  }
  return true;
}

class DescentSearch {
 public:
  DescentSearch(const Instance& instance, const ConflictModel& model, const SearchBudget& budget, bool prune_dead,
                const std::function<bool(const Solution&)>& visit)
      : instance_(instance),
        model_(model),
        guard_(budget),
        codec_(instance.grid),
        prune_(prune_dead),
        visit_(visit),
        fields_(goal_fields(instance)) {}

  void run() {
    if (!all_reachable(instance_, fields_) || !start_conflict_free(instance_, model_)) return;
    std::vector<Cell> start;
    int horizon = 0;
    for (std::size_t i = 0; i < instance_.agents.size(); ++i) {
      start.push_back(instance_.agents[i].start);
      arrival_.push_back(fields_[i].at(instance_.agents[i].start));
      horizon = std::max(horizon, arrival_.back());
    }
    horizon_ = horizon;
    trajectory_.push_back(start);
    search(0);
  }

  long expanded() const { return guard_.expanded(); }

 private:
  enum class Outcome { Dead, Completed, Stop };

  Outcome search(int t) {
    guard_.tick();
    const std::vector<Cell>& cur = trajectory_.back();
    if (t == horizon_) {
      return visit_(to_solution(trajectory_, arrival_)) ? Outcome::Completed : Outcome::Stop;
    }
    std::string key;
    if (prune_) {
      std::vector<int> idx(cur.size());
      for (std::size_t i = 0; i < cur.size(); ++i) idx[i] = instance_.grid.index(cur[i]);
      key = codec_.encode(idx);
      if (dead_.count(key)) return Outcome::Dead;
    }
    std::vector<std::vector<Cell>> options(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const int d = fields_[i].at(cur[i]);
      if (d == 0) {
        options[i].push_back(cur[i]);
        continue;
      }
      for (Cell n : neighbors(instance_.grid, cur[i], instance_.directions)) {
        if (fields_[i].at(n) == d - 1) options[i].push_back(n);
      }
    }
    bool completed = false;
    bool stop = false;
    std::vector<Cell> after(cur.size());
    const std::vector<Cell> before = cur;
    for_each_joint_move(before, options, model_, t, after, [&](const std::vector<Cell>& next) {
      trajectory_.push_back(next);
      Outcome o = search(t + 1);
      trajectory_.pop_back();
      if (o == Outcome::Stop) {
        stop = true;
        return false;
      }
      completed = completed || o == Outcome::Completed;
      return true;
    });
    if (stop) return Outcome::Stop;
    if (!completed) {
      if (prune_) dead_.insert(std::move(key));
      return Outcome::Dead;
    }
    return Outcome::Completed;
  }

  const Instance& instance_;
  ConflictModel model_;
  BudgetGuard guard_;
  KeyCodec codec_;
  bool prune_;
  const std::function<bool(const Solution&)>& visit_;
  std::vector<DistanceField> fields_;
  std::vector<int> arrival_;
  int horizon_ = 0;
  std::vector<std::vector<Cell>> trajectory_;
  std::unordered_set<std::string> dead_;
};

}  // namespace

void for_each_individually_optimal(const Instance& instance, const ConflictModel& model,
                                   const std::function<bool(const Solution&)>& visit, bool prune_dead,
                                   const SearchBudget& budget) {
  DescentSearch search(instance, model, budget, prune_dead, visit);
  search.run();
}

Witness exists_individually_optimal(const Instance& instance, const ConflictModel& model,
                                    const SearchBudget& budget) {
  Witness w;
  std::function<bool(const Solution&)> visit = [&](const Solution& s) {
    w.decision = true;
    w.solution = s;
    return false;
  };
  DescentSearch search(instance, model, budget, true, visit);
  search.run();
  w.expanded = search.expanded();
  return w;
}

Enumeration enumerate_individually_optimal(const Instance& instance, const ConflictModel& model, std::size_t limit,
                                           bool prune_dead, const SearchBudget& budget) {
  Enumeration out;
  for_each_individually_optimal(
      instance, model,
      [&](const Solution& s) {
        if (out.solutions.size() == limit) {
          out.truncated = true;
          return false;
        }
        out.solutions.push_back(s);
        return true;
      },
      prune_dead, budget);
  return out;
}

Witness exists_makespan_at_most(const Instance& instance, int bound, const ConflictModel& model,
                                const SearchBudget& budget) {
  Witness w;
  const auto fields = goal_fields(instance);
  if (bound < 0 || !all_reachable(instance, fields) || !start_conflict_free(instance, model)) return w;
  const std::size_t n = instance.agents.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (fields[i].at(instance.agents[i].start) > bound) return w;
  }

  BudgetGuard guard(budget);
  KeyCodec codec(instance.grid);
  struct Node {
    std::vector<Cell> cells;
    int parent;
  };
  std::vector<std::vector<Node>> layers(1);
  std::vector<Cell> start;
  for (const auto& a : instance.agents) start.push_back(a.start);
  layers[0].push_back({start, -1});

  auto at_goals = [&](const std::vector<Cell>& cells) {
    for (std::size_t i = 0; i < n; ++i) {
      if (cells[i] != instance.agents[i].goal) return false;
    }
    return true;
  };

  for (int t = 0;; ++t) {
    const auto& layer = layers[std::size_t(t)];
    for (std::size_t k = 0; k < layer.size(); ++k) {
      if (!at_goals(layer[k].cells)) continue;
      std::vector<std::vector<Cell>> trajectory(std::size_t(t) + 1);
      int idx = int(k);
      for (int s = t; s >= 0; --s) {
        trajectory[std::size_t(s)] = layers[std::size_t(s)][std::size_t(idx)].cells;
        idx = layers[std::size_t(s)][std::size_t(idx)].parent;
      }
      Solution sol;
      sol.paths.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& joint : trajectory) sol.paths[i].cells.push_back(joint[i]);
        int cost = sol.paths[i].cost();
        sol.paths[i].cells.resize(std::size_t(cost) + 1);
      }
      w.decision = true;
      w.solution = std::move(sol);
      w.expanded = guard.expanded();
      return w;
    }
    if (t == bound || layer.empty()) break;

    std::vector<Node> next_layer;
    std::unordered_set<std::string> seen;
    const int remaining = bound - (t + 1);
    for (std::size_t k = 0; k < layer.size(); ++k) {
      guard.tick();
      const std::vector<Cell> before = layers[std::size_t(t)][k].cells;
      std::vector<std::vector<Cell>> options(n);
      for (std::size_t i = 0; i < n; ++i) {
        const Cell c = before[i];
        for (Cell nb : neighbors(instance.grid, c, instance.directions)) {
          if (fields[i].at(nb) <= remaining && fields[i].reachable(nb)) options[i].push_back(nb);
        }
        if ((instance.directions.waits_allowed() || c == instance.agents[i].goal) && fields[i].at(c) <= remaining) {
          options[i].push_back(c);
        }
      }
      std::vector<Cell> after(n);
      std::vector<int> idx(n);
      for_each_joint_move(before, options, model, t, after, [&](const std::vector<Cell>& cells) {
        for (std::size_t i = 0; i < n; ++i) idx[i] = instance.grid.index(cells[i]);
        if (seen.insert(codec.encode(idx)).second) next_layer.push_back({cells, int(k)});
        return true;
      });
    }
    layers.push_back(std::move(next_layer));
  }
  w.expanded = guard.expanded();
  return w;
}

std::optional<FlowtimeResult> optimal_flowtime(const Instance& instance, const ConflictModel& model,
                                               const SearchBudget& budget) {
  const auto fields = goal_fields(instance);
  if (!all_reachable(instance, fields) || !start_conflict_free(instance, model)) return std::nullopt;
  const std::size_t n = instance.agents.size();
  if (n > 31) throw InputError("optimal_flowtime supports at most 31 agents");
  const std::uint32_t all_done = n == 0 ? 0u : ((1u << n) - 1u);

  struct Node {
    std::vector<Cell> cells;
    std::uint32_t done;
    long g;
    int time;
    int parent;
  };
  std::vector<Node> nodes;
  struct Entry {
    long f;
    long h;
    long order;
    int node;
    bool operator>(const Entry& o) const {
      if (f != o.f) return f > o.f;
      if (h != o.h) return h > o.h;
      return order > o.order;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::unordered_map<std::string, long> best_g;
  std::unordered_set<std::string> closed;
  KeyCodec codec(instance.grid);
  BudgetGuard guard(budget);
  long order = 0;

  auto heuristic = [&](const std::vector<Cell>& cells, std::uint32_t done) {
    long h = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(done >> i & 1u)) h += fields[i].at(cells[i]);
    }
    return h;
  };
  auto key_of = [&](const std::vector<Cell>& cells, std::uint32_t done) {
    std::vector<int> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = instance.grid.index(cells[i]);
    return codec.encode(idx, done, true);
  };
  auto push = [&](Node node) {
    std::string key = key_of(node.cells, node.done);
    auto it = best_g.find(key);
    if (it != best_g.end() && it->second <= node.g) return;
    best_g[key] = node.g;
    long h = heuristic(node.cells, node.done);
    nodes.push_back(std::move(node));
    open.push({nodes.back().g + h, h, order++, int(nodes.size() - 1)});
  };

  std::vector<Cell> start;
  for (const auto& a : instance.agents) start.push_back(a.start);
  push({start, 0u, 0, 0, -1});

  while (!open.empty()) {
    Entry top = open.top();
    open.pop();
    const int id = top.node;
    std::string key = key_of(nodes[id].cells, nodes[id].done);
    if (!closed.insert(key).second) continue;
    guard.tick();
    if (nodes[id].done == all_done) {
      // Walk back, recording each agent's commit time and the joint states.
      std::vector<int> chain;
      for (int c = id; c >= 0; c = nodes[c].parent) chain.push_back(c);
      std::reverse(chain.begin(), chain.end());
      std::vector<std::vector<Cell>> trajectory;
      std::vector<int> arrival(n, 0);
      for (int c : chain) {
        const Node& node = nodes[c];
        if (std::size_t(node.time) == trajectory.size()) trajectory.push_back(node.cells);
        for (std::size_t i = 0; i < n; ++i) {
          bool was_done = node.parent >= 0 && (nodes[node.parent].done >> i & 1u);
          if ((node.done >> i & 1u) && !was_done) arrival[i] = node.time;
        }
      }
      FlowtimeResult result;
      result.cost = nodes[id].g;
      result.solution = to_solution(trajectory, arrival);
      result.expanded = guard.expanded();
      return result;
    }
    const Node cur = nodes[id];
    // Finishing is a free transition for an agent standing on its goal.
    for (std::size_t i = 0; i < n; ++i) {
      if (!(cur.done >> i & 1u) && cur.cells[i] == instance.agents[i].goal) {
        push({cur.cells, cur.done | (1u << i), cur.g, cur.time, id});
      }
    }
    std::vector<std::vector<Cell>> options(n);
    long step_cost = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (cur.done >> i & 1u) {
        options[i].push_back(cur.cells[i]);
        continue;
      }
      ++step_cost;
      options[i] = neighbors(instance.grid, cur.cells[i], instance.directions);
      if (instance.directions.waits_allowed()) options[i].push_back(cur.cells[i]);
    }
    if (step_cost == 0) continue;
    std::vector<Cell> after(n);
    for_each_joint_move(cur.cells, options, model, cur.time, after, [&](const std::vector<Cell>& cells) {
      push({cells, cur.done, cur.g + step_cost, cur.time + 1, id});
      return true;
    });
  }
  return std::nullopt;
}

std::optional<long> delta(const Instance& instance, const ConflictModel& model, const SearchBudget& budget) {
  auto lb = lower_bound_cost(instance);
  if (!lb) return std::nullopt;
  auto best = optimal_flowtime(instance, model, budget);
  if (!best) return std::nullopt;
  return best->cost - *lb;
}

void for_each_team_assignment(const Instance& instance, const std::function<bool(const Instance&)>& visit) {
  if (!instance.colored()) {
    visit(instance);
    return;
  }
  instance.validate();
  std::vector<std::string> team_names;
  std::vector<std::vector<int>> members;
  for (const auto& [name, targets] : instance.teams) {
    team_names.push_back(name);
    members.emplace_back();
    for (int i = 0; i < static_cast<int>(instance.agents.size()); ++i) {
      if (instance.agents[i].team == name) members.back().push_back(i);
    }
  }
  Instance labeled = instance;
  std::function<bool(std::size_t)> recurse = [&](std::size_t t) -> bool {
    if (t == team_names.size()) return visit(labeled);
    const auto& targets = instance.teams.at(team_names[t]);
    std::vector<int> perm(targets.size());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = int(k);
    do {
      for (std::size_t k = 0; k < perm.size(); ++k) {
        labeled.agents[std::size_t(members[t][k])].goal = targets[std::size_t(perm[k])];
      }
      if (!recurse(t + 1)) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
  };
  recurse(0);
}

std::optional<long> assignment_minimal_lower_bound(const Instance& instance) {
  std::optional<long> best;
  for_each_team_assignment(instance, [&](const Instance& labeled) {
    auto lb = lower_bound_cost(labeled);
    if (lb && (!best || *lb < *best)) best = lb;
    return true;
  });
  return best;
}

Witness two_colored_decide(const Instance& instance, Objective objective, long bound, const ConflictModel& model,
                           const SearchBudget& budget) {
  Witness out;
  for_each_team_assignment(instance, [&](const Instance& labeled) {
    Witness w;
    if (objective == Objective::Makespan) {
      w = exists_makespan_at_most(labeled, int(bound), model, budget);
    } else {
      auto lb = lower_bound_cost(labeled);
      if (!lb || *lb > bound) return true;
      if (*lb == bound) {
        w = exists_individually_optimal(labeled, model, budget);
      } else if (auto best = optimal_flowtime(labeled, model, budget); best && best->cost <= bound) {
        w.decision = true;
        w.solution = std::move(best->solution);
        w.expanded = best->expanded;
      }
    }
    out.expanded += w.expanded;
    if (w.decision) {
      out.decision = true;
      out.solution = std::move(w.solution);
      return false;
    }
    return true;
  });
  return out;
}

}  // namespace gridmapf
