#pragma once

#include <algorithm>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gridmapf/gridmapf.hpp"

namespace testing {

using namespace gridmapf;

inline Instance labeled(const GridMap& grid, const std::vector<std::pair<Cell, Cell>>& tasks,
                        DirectionSet dirs = DirectionSet::all()) {
  Instance inst;
  inst.grid = grid;
  inst.directions = dirs;
  for (std::size_t i = 0; i < tasks.size(); ++i) inst.agents.push_back({int(i), tasks[i].first, tasks[i].second, {}});
  return inst;
}

inline std::vector<std::filesystem::path> formula_fixtures() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(GRIDMAPF_FIXTURE_DIR "/formulas")) {
    if (e.path().extension() == ".cnf") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

struct Fixture {
  std::string name;
  MonotoneFormula formula;
  NestingForest forest;
  Compiled compiled;
};

inline Fixture load_fixture(const std::filesystem::path& path) {
  Fixture fx;
  fx.name = path.stem().string();
  fx.formula = read_formula(read_file(path.string()));
  fx.forest = validate_planar_monotone(fx.formula);
  fx.compiled = compile(fx.formula, fx.forest);
  return fx;
}

inline std::vector<Fixture> all_fixtures() {
  std::vector<Fixture> out;
  for (const auto& p : formula_fixtures()) out.push_back(load_fixture(p));
  return out;
}

// Plain BFS over the allowed moves, written independently of the library's
// distance fields.
inline int bfs_distance(const GridMap& grid, Cell from, Cell to, const std::vector<Direction>& moves) {
  if (!grid.is_free(from) || !grid.is_free(to)) return -1;
  std::vector<int> dist(grid.cell_count(), -1);
  std::vector<Cell> frontier{from};
  dist[std::size_t(grid.index(from))] = 0;
  for (std::size_t k = 0; k < frontier.size(); ++k) {
    const Cell c = frontier[k];
    if (c == to) return dist[std::size_t(grid.index(c))];
    for (Direction d : moves) {
      const Cell n = step(c, d);
      if (grid.is_free(n) && dist[std::size_t(grid.index(n))] < 0) {
        dist[std::size_t(grid.index(n))] = dist[std::size_t(grid.index(c))] + 1;
        frontier.push_back(n);
      }
    }
  }
  return -1;
}

// Every shortest path of one agent, by extending prefixes cell by cell.
inline std::vector<TimedPath> all_shortest_paths(const GridMap& grid, Cell from, Cell to,
                                                 const std::vector<Direction>& moves) {
  const int len = bfs_distance(grid, from, to, moves);
  std::vector<TimedPath> out;
  if (len < 0) return out;
  std::vector<Cell> prefix{from};
  std::function<void()> rec = [&] {
    const Cell cur = prefix.back();
    const int used = int(prefix.size()) - 1;
    if (used == len) {
      if (cur == to) out.push_back({prefix});
      return;
    }
    for (Direction d : moves) {
      const Cell n = step(cur, d);
      const int rest = bfs_distance(grid, n, to, moves);
      if (rest >= 0 && rest == len - used - 1) {
        prefix.push_back(n);
        rec();
        prefix.pop_back();
      }
    }
  };
  rec();
  return out;
}

// All combinations of shortest paths that pass validation.
inline std::set<std::vector<std::vector<Cell>>> product_filter(const Instance& inst, const ConflictModel& model) {
  std::vector<std::vector<TimedPath>> per_agent;
  for (const auto& a : inst.agents) per_agent.push_back(all_shortest_paths(inst.grid, a.start, a.goal, inst.directions.motions()));
  std::set<std::vector<std::vector<Cell>>> out;
  Solution s;
  s.paths.resize(inst.agents.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == per_agent.size()) {
      if (validate_solution(inst, s, model).ok()) {
        std::vector<std::vector<Cell>> key;
        for (const auto& p : s.paths) key.push_back(p.cells);
        out.insert(key);
      }
      return;
    }
    for (const auto& p : per_agent[i]) {
      s.paths[i] = p;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

inline std::set<std::vector<std::vector<Cell>>> as_set(const std::vector<Solution>& sols) {
  std::set<std::vector<std::vector<Cell>>> out;
  for (const auto& s : sols) {
    std::vector<std::vector<Cell>> key;
    for (const auto& p : s.paths) key.push_back(p.cells);
    out.insert(key);
  }
  return out;
}

// Truth-table satisfiability, independent of brute_force_sat.
inline bool truth_table_sat(const MonotoneFormula& f) {
  for (unsigned mask = 0; mask < (1u << f.n); ++mask) {
    bool all = true;
    for (const auto& c : f.clauses) {
      bool any = false;
      for (int v : c.vars) {
        const bool value = (mask >> (v - 1)) & 1u;
        any = any || (c.side == Side::Positive ? value : !value);
      }
      all = all && any;
    }
    if (all) return true;
  }
  return false;
}

// Random formula with n variables and up to m clauses of 1..3 literals; it
// may fail validation.
inline MonotoneFormula random_formula(std::mt19937& rng, int n, int m) {
  MonotoneFormula f;
  f.n = n;
  std::uniform_int_distribution<int> width(1, std::min(3, n)), var(1, n), coin(0, 1);
  for (int k = 0; k < m; ++k) {
    Clause c;
    c.id = k + 1;
    c.side = coin(rng) ? Side::Positive : Side::Negative;
    std::set<int> vars;
    const int w = width(rng);
    while (int(vars.size()) < w) vars.insert(var(rng));
    c.vars.assign(vars.begin(), vars.end());
    f.clauses.push_back(c);
  }
  return f;
}

}  // namespace testing
