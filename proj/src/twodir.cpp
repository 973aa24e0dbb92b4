#include "gridmapf/twodir.hpp"

#include <map>

namespace gridmapf {

bool check_two_directional(const Instance& instance) {
  for (const auto& a : instance.agents) {
    if (a.goal.col < a.start.col || a.goal.row < a.start.row) return false;
  }
  return true;
}

std::vector<DiagonalGroup> partition_diagonals(const Instance& instance) {
  std::map<int, std::vector<int>, std::greater<>> by_key;
  for (int i = 0; i < static_cast<int>(instance.agents.size()); ++i) {
    by_key[diagonal_key(instance.agents[i].start)].push_back(i);
  }
  std::vector<DiagonalGroup> groups;
  groups.reserve(by_key.size());
  for (auto& [key, members] : by_key) {
    std::sort(members.begin(), members.end(), [&](int a, int b) {
      return instance.agents[a].start.col > instance.agents[b].start.col;
    });
    groups.push_back({key, std::move(members)});
  }
  return groups;
}

std::optional<TimedPath> plan_monotone_path(const GridMap& grid, const CellMask& blocked, Cell start, Cell goal,
                                            MovePreference preference, TwoDirStats* stats) {
  auto open = [&](Cell c) {
    return c.col <= goal.col && c.row <= goal.row && grid.is_free(c) && !blocked.contains(c);
  };
  if (!open(start) || goal.col < start.col || goal.row < start.row) return std::nullopt;

  const Direction first = preference == MovePreference::RightFirst ? Direction::Right : Direction::Down;
  const Direction second = first == Direction::Right ? Direction::Down : Direction::Right;
  const int box_w = goal.col - start.col + 1;
  std::vector<std::uint8_t> dead(std::size_t(box_w) * (goal.row - start.row + 1), 0);
  auto box_index = [&](Cell c) { return std::size_t(c.row - start.row) * box_w + (c.col - start.col); };

  // stack[k] is the k-th cell of the current prefix; tried[k] counts the
  // successors already attempted from it.
  std::vector<Cell> stack{start};
  std::vector<int> tried{0};
  if (stats) ++stats->visited_cells;
  while (!stack.empty()) {
    Cell cur = stack.back();
    if (cur == goal) {
      TimedPath path;
      path.cells = std::move(stack);
      return path;
    }
    int& k = tried.back();
    if (k == 2) {
      dead[box_index(cur)] = 1;
      stack.pop_back();
      tried.pop_back();
      continue;
    }
    Cell next = step(cur, k == 0 ? first : second);
    ++k;
    if (!open(next) || dead[box_index(next)]) continue;
    if (stats) ++stats->visited_cells;
    stack.push_back(next);
    tried.push_back(0);
  }
  return std::nullopt;
}

std::optional<Solution> solve_two_dir(const Instance& instance, const TwoDirOptions& options, TwoDirStats* stats) {
  if (instance.directions.letters() != "DR") {
    throw InputError("solve_two_dir requires the direction set {Down, Right}, got '" +
                     instance.directions.letters() + "'");
  }
  if (!check_two_directional(instance)) return std::nullopt;
  const GridMap& grid = instance.grid;
  for (const auto& a : instance.agents) {
    if (!grid.is_free(a.start) || !grid.is_free(a.goal)) return std::nullopt;
  }

  Solution solution;
  solution.paths.resize(instance.agents.size());
  CellMask targets(grid);  // goals of agents in groups already processed
  CellMask blocked(grid);
  for (const auto& group : partition_diagonals(instance)) {
    blocked = targets;
    for (int i : group.agents) {
      const auto& agent = instance.agents[i];
      auto path = plan_monotone_path(grid, blocked, agent.start, agent.goal, options.preference, stats);
      if (!path) return std::nullopt;
      for (Cell c : path->cells) blocked.insert(c);
      solution.paths[i] = std::move(*path);
    }
    for (int i : group.agents) targets.insert(instance.agents[i].goal);
  }
  return solution;
}

std::vector<Cell> region_above(const TimedPath& path) {
  std::map<int, int> deepest;
  for (Cell c : path.cells) {
    auto [it, inserted] = deepest.emplace(c.col, c.row);
    if (!inserted) it->second = std::max(it->second, c.row);
  }
  std::vector<Cell> out;
  for (auto [col, row] : deepest) {
    for (int r = 0; r <= row; ++r) out.push_back({col, r});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool weakly_above(const TimedPath& q, const TimedPath& p) {
  std::map<int, int> deepest;
  for (Cell c : p.cells) {
    auto [it, inserted] = deepest.emplace(c.col, c.row);
    if (!inserted) it->second = std::max(it->second, c.row);
  }
  for (Cell c : q.cells) {
    auto it = deepest.find(c.col);
    if (it == deepest.end() || c.row > it->second) return false;
  }
  return true;
}

}  // namespace gridmapf
