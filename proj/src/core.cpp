#include "gridmapf/core.hpp"

#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

namespace gridmapf {

std::string to_string(Cell c) {
  return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")";
}

char to_char(Direction d) {
  switch (d) {
    case Direction::Up: return 'U';
    case Direction::Down: return 'D';
    case Direction::Left: return 'L';
    case Direction::Right: return 'R';
    case Direction::Wait: return 'W';
  }
  return '?';
}

std::optional<Direction> direction_from_char(char ch) {
  switch (ch) {
    case 'U': case 'u': return Direction::Up;
    case 'D': case 'd': return Direction::Down;
    case 'L': case 'l': return Direction::Left;
    case 'R': case 'r': return Direction::Right;
    case 'W': case 'w': return Direction::Wait;
    default: return std::nullopt;
  }
}

std::optional<Direction> direction_between(Cell from, Cell to) {
  if (from == to) return Direction::Wait;
  for (Direction d : kMotionDirections) {
    if (step(from, d) == to) return d;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// DirectionSet

DirectionSet::DirectionSet(std::initializer_list<Direction> motions, bool waits) : waits_(waits) {
  for (Direction d : motions) {
    if (d == Direction::Wait) {
      waits_ = true;
    } else {
      mask_ |= std::uint8_t(1u << static_cast<unsigned>(d));
    }
  }
}

DirectionSet DirectionSet::parse(std::string_view letters, bool waits) {
  DirectionSet set;
  set.waits_ = waits;
  for (char ch : letters) {
    auto d = direction_from_char(ch);
    if (!d || *d == Direction::Wait) {
      throw InputError(std::string("unknown direction letter '") + ch + "'");
    }
    set.mask_ |= std::uint8_t(1u << static_cast<unsigned>(*d));
  }
  return set;
}

bool DirectionSet::allows(Direction d) const {
  if (d == Direction::Wait) return waits_;
  return (mask_ >> static_cast<unsigned>(d)) & 1u;
}

std::vector<Direction> DirectionSet::motions() const {
  std::vector<Direction> out;
  for (Direction d : kMotionDirections) {
    if (allows(d)) out.push_back(d);
  }
  return out;
}

std::string DirectionSet::letters() const {
  std::string out;
  for (Direction d : motions()) out.push_back(to_char(d));
  return out;
}

// ---------------------------------------------------------------------------
// GridMap / CellMask

GridMap::GridMap(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw InputError("grid dimensions must be positive");
  blocked_.assign(std::size_t(width) * height, 0);
}

void GridMap::set_obstacle(Cell c, bool obstacle) {
  if (!in_bounds(c)) throw InputError("cell " + to_string(c) + " is outside the grid");
  blocked_[index(c)] = obstacle ? 1 : 0;
}

void GridMap::fill(bool obstacle) { std::fill(blocked_.begin(), blocked_.end(), obstacle ? 1 : 0); }

int GridMap::free_count() const {
  return static_cast<int>(std::count(blocked_.begin(), blocked_.end(), std::uint8_t{0}));
}

std::vector<Cell> GridMap::obstacles() const {
  std::vector<Cell> out;
  for (int i = 0; i < static_cast<int>(blocked_.size()); ++i) {
    if (blocked_[i]) out.push_back(cell_at(i));
  }
  return out;
}

std::size_t CellMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

// ---------------------------------------------------------------------------
// Instance

void Instance::validate() const {
  std::set<Cell> starts;
  std::set<Cell> goals;
  std::set<int> ids;
  for (const auto& a : agents) {
    if (!ids.insert(a.id).second) throw InputError("duplicate agent id " + std::to_string(a.id));
    if (!grid.is_free(a.start)) {
      throw InputError("agent " + std::to_string(a.id) + " starts on a blocked cell " + to_string(a.start));
    }
    if (!grid.is_free(a.goal)) {
      throw InputError("agent " + std::to_string(a.id) + " has a blocked goal " + to_string(a.goal));
    }
    if (!starts.insert(a.start).second) throw InputError("two agents share start " + to_string(a.start));
    if (!goals.insert(a.goal).second) throw InputError("two agents share goal " + to_string(a.goal));
  }
  if (colored()) {
    std::map<std::string, std::size_t> sizes;
    for (const auto& a : agents) {
      if (!a.team) throw InputError("agent " + std::to_string(a.id) + " has no team in colored mode");
      if (!teams.count(*a.team)) throw InputError("unknown team '" + *a.team + "'");
      ++sizes[*a.team];
    }
    for (const auto& [team, targets] : teams) {
      if (sizes[team] != targets.size()) {
        throw InputError("team '" + team + "' has " + std::to_string(sizes[team]) + " agents but " +
                         std::to_string(targets.size()) + " targets");
      }
      for (Cell t : targets) {
        if (!grid.is_free(t)) throw InputError("team target " + to_string(t) + " is blocked");
      }
    }
  }
}

std::vector<Cell> Instance::admissible_targets(const AgentTask& agent) const {
  if (colored() && agent.team) {
    auto it = teams.find(*agent.team);
    if (it != teams.end()) return it->second;
  }
  return {agent.goal};
}

void derive_teams_from_goals(Instance& instance) {
  instance.teams.clear();
  for (const auto& a : instance.agents) {
    if (a.team) instance.teams[*a.team].push_back(a.goal);
  }
}

// ---------------------------------------------------------------------------
// Paths

int TimedPath::cost() const {
  if (cells.empty()) return 0;
  std::size_t t = cells.size() - 1;
  while (t > 0 && cells[t - 1] == cells.back()) --t;
  return static_cast<int>(t);
}

std::string TimedPath::moves() const {
  std::string out;
  for (std::size_t t = 1; t < cells.size(); ++t) {
    auto d = direction_between(cells[t - 1], cells[t]);
    if (!d) throw InputError("path jumps from " + to_string(cells[t - 1]) + " to " + to_string(cells[t]));
    out.push_back(to_char(*d));
  }
  return out;
}

TimedPath TimedPath::from_moves(Cell start, std::string_view moves) {
  TimedPath path;
  path.cells.reserve(moves.size() + 1);
  path.cells.push_back(start);
  for (char ch : moves) {
    auto d = direction_from_char(ch);
    if (!d) throw InputError(std::string("unknown move letter '") + ch + "'");
    path.cells.push_back(step(path.cells.back(), *d));
  }
  return path;
}

long flowtime(const Solution& solution) {
  long total = 0;
  for (const auto& p : solution.paths) total += p.cost();
  return total;
}

int makespan(const Solution& solution) {
  int worst = 0;
  for (const auto& p : solution.paths) worst = std::max(worst, p.cost());
  return worst;
}

// ---------------------------------------------------------------------------
// Conflicts

ConflictModel ConflictModel::parse(std::string_view spec) {
  ConflictModel model{false, false, false, false};
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    std::string_view token = spec.substr(pos, comma - pos);
    if (token == "vertex") {
      model.vertex = true;
    } else if (token == "edge") {
      model.edge = true;
    } else if (token == "following") {
      model.following = true;
    } else if (token == "cycle") {
      model.cycle = true;
    } else if (!token.empty()) {
      throw InputError("unknown conflict type '" + std::string(token) + "'");
    }
    pos = comma + 1;
  }
  return model;
}

std::string ConflictModel::to_string() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(vertex, "vertex");
  add(edge, "edge");
  add(following, "following");
  add(cycle, "cycle");
  return out;
}

std::string_view to_string(ConflictKind kind) {
  switch (kind) {
    case ConflictKind::Vertex: return "vertex";
    case ConflictKind::Edge: return "edge";
    case ConflictKind::Following: return "following";
    case ConflictKind::Cycle: return "cycle";
    case ConflictKind::BadStart: return "bad-start";
    case ConflictKind::BadGoal: return "bad-goal";
    case ConflictKind::OutOfBounds: return "out-of-bounds";
    case ConflictKind::Obstacle: return "obstacle";
    case ConflictKind::Teleport: return "teleport";
    case ConflictKind::DisallowedMove: return "disallowed-move";
  }
  return "?";
}

std::size_t ConflictReport::count(ConflictKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(conflicts.begin(), conflicts.end(), [&](const Conflict& c) { return c.kind == kind; }));
}

std::string ConflictReport::summary() const {
  std::ostringstream os;
  for (const auto& c : conflicts) {
    os << "t=" << c.time << " " << to_string(c.kind) << " agents";
    for (int a : c.agents) os << " " << a;
    for (Cell cell : c.cells) os << " " << gridmapf::to_string(cell);
    os << "\n";
  }
  return os.str();
}

namespace {

bool check_vertices(std::span<const Cell> at, int time, std::vector<Conflict>* out) {
  bool ok = true;
  for (std::size_t i = 0; i < at.size(); ++i) {
    for (std::size_t j = i + 1; j < at.size(); ++j) {
      if (at[i] != at[j]) continue;
      ok = false;
      if (!out) return false;
      out->push_back({time, ConflictKind::Vertex, {int(i), int(j)}, {at[i]}});
    }
  }
  return ok;
}

}  // namespace

bool check_joint_move(std::span<const Cell> before, std::span<const Cell> after,
                      const ConflictModel& model, int time, std::vector<Conflict>* out) {
  const std::size_t n = before.size();
  bool ok = true;
  if (model.vertex && !check_vertices(after, time + 1, out)) {
    ok = false;
    if (!out) return false;
  }
  // successor[i] = j when agent i moves into the cell agent j is leaving.
  std::vector<int> successor(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (after[i] == before[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || after[j] == before[j] || after[i] != before[j]) continue;
      successor[i] = int(j);
      const bool swap = after[j] == before[i];
      bool hit = false;
      ConflictKind kind = ConflictKind::Following;
      if (swap) {
        if (i < j && model.edge) {
          hit = true;
          kind = ConflictKind::Edge;
        } else if (i < j && model.following) {
          hit = true;
        }
      } else if (model.following) {
        hit = true;
      }
      if (hit) {
        ok = false;
        if (!out) return false;
        out->push_back({time, kind, {int(i), int(j)}, {before[i], after[i]}});
      }
    }
  }
  if (model.cycle) {
    std::vector<char> seen(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s] || successor[s] < 0) continue;
      // Walk the successor chain; a rotation shows up as a return to `s`.
      std::vector<int> chain;
      int cur = int(s);
      std::vector<char> on_chain(n, 0);
      while (cur >= 0 && !on_chain[cur] && !seen[cur]) {
        on_chain[cur] = 1;
        chain.push_back(cur);
        cur = successor[cur];
      }
      for (int c : chain) seen[c] = 1;
      if (cur == int(s) && chain.size() >= 3) {
        ok = false;
        if (!out) return false;
        Conflict conflict{time, ConflictKind::Cycle, chain, {}};
        for (int c : chain) conflict.cells.push_back(before[c]);
        out->push_back(std::move(conflict));
      }
    }
  }
  return ok;
}

std::vector<Cell> neighbors(const GridMap& grid, Cell cell, const DirectionSet& dirs) {
  if (!grid.is_free(cell)) throw InputError("cell " + to_string(cell) + " is not a free cell");
  std::vector<Cell> out;
  for (Direction d : kMotionDirections) {
    if (!dirs.allows(d)) continue;
    Cell next = step(cell, d);
    if (grid.is_free(next)) out.push_back(next);
  }
  return out;
}

namespace {

DistanceField bfs(const GridMap& grid, Cell source, const DirectionSet& dirs, const CellMask* extra_blocked,
                  bool reversed) {
  DistanceField field(grid.width(), grid.height());
  auto open = [&](Cell c) { return grid.is_free(c) && !(extra_blocked && extra_blocked->contains(c)); };
  if (!open(source)) return field;
  std::vector<Direction> moves = dirs.motions();
  std::deque<Cell> queue{source};
  field.set(source, 0);
  while (!queue.empty()) {
    Cell cur = queue.front();
    queue.pop_front();
    const int next_dist = field.at(cur) + 1;
    for (Direction d : moves) {
      Cell next = step(cur, reversed ? opposite(d) : d);
      if (!open(next) || field.reachable(next)) continue;
      field.set(next, next_dist);
      queue.push_back(next);
    }
  }
  return field;
}

}  // namespace

DistanceField shortest_dist_field(const GridMap& grid, Cell goal, const DirectionSet& dirs,
                                  const CellMask* extra_blocked) {
  return bfs(grid, goal, dirs, extra_blocked, /*reversed=*/true);
}

DistanceField forward_dist_field(const GridMap& grid, Cell source, const DirectionSet& dirs,
                                 const CellMask* extra_blocked) {
  return bfs(grid, source, dirs, extra_blocked, /*reversed=*/false);
}

// ---------------------------------------------------------------------------
// Validation and objectives

ConflictReport validate_solution(const Instance& instance, const Solution& solution, const ConflictModel& model) {
  if (solution.paths.size() != instance.agents.size()) {
    throw InputError("solution has " + std::to_string(solution.paths.size()) + " paths for " +
                     std::to_string(instance.agents.size()) + " agents");
  }
  ConflictReport report;
  auto& out = report.conflicts;
  const std::size_t n = instance.agents.size();
  std::size_t horizon = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const auto& agent = instance.agents[i];
    const auto& cells = solution.paths[i].cells;
    const int id = int(i);
    if (cells.empty()) {
      out.push_back({0, ConflictKind::BadStart, {id}, {agent.start}});
      continue;
    }
    horizon = std::max(horizon, cells.size() - 1);
    if (cells.front() != agent.start) out.push_back({0, ConflictKind::BadStart, {id}, {cells.front()}});
    auto targets = instance.admissible_targets(agent);
    if (std::find(targets.begin(), targets.end(), cells.back()) == targets.end()) {
      out.push_back({int(cells.size() - 1), ConflictKind::BadGoal, {id}, {cells.back()}});
    }
    const std::size_t arrival = static_cast<std::size_t>(solution.paths[i].cost());
    for (std::size_t t = 0; t < cells.size(); ++t) {
      if (!instance.grid.in_bounds(cells[t])) {
        out.push_back({int(t), ConflictKind::OutOfBounds, {id}, {cells[t]}});
      } else if (instance.grid.is_obstacle(cells[t])) {
        out.push_back({int(t), ConflictKind::Obstacle, {id}, {cells[t]}});
      }
      if (t == 0) continue;
      auto d = direction_between(cells[t - 1], cells[t]);
      if (!d) {
        out.push_back({int(t - 1), ConflictKind::Teleport, {id}, {cells[t - 1], cells[t]}});
      } else if (!instance.directions.allows(*d) && !(*d == Direction::Wait && t > arrival)) {
        out.push_back({int(t - 1), ConflictKind::DisallowedMove, {id}, {cells[t - 1], cells[t]}});
      }
    }
  }

  auto position = [&](std::size_t i, std::size_t t) {
    const auto& cells = solution.paths[i].cells;
    return cells.empty() ? instance.agents[i].start : (t < cells.size() ? cells[t] : cells.back());
  };
  std::vector<Cell> before(n);
  std::vector<Cell> after(n);
  for (std::size_t i = 0; i < n; ++i) before[i] = position(i, 0);
  if (model.vertex) check_vertices(before, 0, &out);
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t i = 0; i < n; ++i) after[i] = position(i, t + 1);
    check_joint_move(before, after, model, int(t), &out);
    std::swap(before, after);
  }
  return report;
}

std::optional<long> lower_bound_cost(const Instance& instance) {
  long total = 0;
  for (const auto& a : instance.agents) {
    if (!instance.grid.is_free(a.start) || !instance.grid.is_free(a.goal)) return std::nullopt;
    DistanceField field = shortest_dist_field(instance.grid, a.goal, instance.directions);
    if (!field.reachable(a.start)) return std::nullopt;
    total += field.at(a.start);
  }
  return total;
}

bool is_individually_optimal(const Instance& instance, const Solution& solution, const ConflictModel& model) {
  ConflictReport report = validate_solution(instance, solution, model);
  if (!report.ok()) throw InputError("solution is not valid:\n" + report.summary());
  long bound = 0;
  for (std::size_t i = 0; i < instance.agents.size(); ++i) {
    Cell end = solution.paths[i].cells.back();
    DistanceField field = shortest_dist_field(instance.grid, end, instance.directions);
    bound += field.at(instance.agents[i].start);
  }
  return flowtime(solution) == bound;
}

}  // namespace gridmapf
