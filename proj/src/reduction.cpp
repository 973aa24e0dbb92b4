#include "gridmapf/reduction.hpp"

#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace gridmapf {

DirectionSet sign_directions(Side side) {
  return side == Side::Positive ? DirectionSet{Direction::Down, Direction::Right}
                                : DirectionSet{Direction::Up, Direction::Right};
}

namespace {

enum class LegType { Left, Right, Interior, Single };

LegType classify(const Clause& c, int x) {
  if (c.lo() == c.hi()) return LegType::Single;
  if (x == c.lo()) return LegType::Left;
  if (x == c.hi()) return LegType::Right;
  return LegType::Interior;
}

// Legs of one variable on one side, left to right, with column offsets
// relative to the channel column (the last leg sits at offset 0).
struct LegBlock {
  std::vector<int> clauses;
  std::vector<int> offsets;
  int width() const { return offsets.empty() ? 0 : -offsets.front(); }
};

LegBlock order_legs(const MonotoneFormula& f, const NestingForest& forest, Side side, int x) {
  std::vector<int> chain;
  for (int i = 0; i < static_cast<int>(f.clauses.size()); ++i) {
    if (f.clauses[i].side == side && f.clauses[i].contains(x)) chain.push_back(i);
  }
  auto depth = [&](int i) {
    int d = 0;
    for (int p = forest.parent[std::size_t(i)]; p >= 0; p = forest.parent[std::size_t(p)]) ++d;
    return d;
  };
  std::sort(chain.begin(), chain.end(), [&](int a, int b) { return depth(a) < depth(b); });

  std::deque<int> legs;
  for (std::size_t k = chain.size(); k-- > 0;) {
    const int c = chain[k];
    if (legs.empty()) {
      legs.push_back(c);
      continue;
    }
    switch (classify(f.clauses[std::size_t(c)], x)) {
      case LegType::Left: legs.push_front(c); break;
      case LegType::Right: legs.push_back(c); break;
      case LegType::Interior:
        if (classify(f.clauses[std::size_t(chain[k + 1])], x) == LegType::Left) {
          legs.push_front(c);
        } else {
          legs.push_back(c);
        }
        break;
      case LegType::Single:
        throw InputError("clause " + std::to_string(f.clauses[std::size_t(c)].id) +
                         " is a singleton enclosing another leg to x" + std::to_string(x));
    }
  }
  LegBlock block;
  block.clauses.assign(legs.begin(), legs.end());
  block.offsets.assign(legs.size(), 0);
  for (std::size_t j = legs.size(); j-- > 1;) {
    const bool rightmost_of_clause = f.clauses[std::size_t(legs[j - 1])].hi() == x;
    block.offsets[j - 1] = block.offsets[j] - (rightmost_of_clause ? 3 : 2);
  }
  return block;
}

// Carves straight polylines into an all-obstacle grid and remembers which
// adjacent free pairs were intended.
class Carver {
 public:
  Carver(int width, int height) : grid_(width, height) { grid_.fill(true); }

  void polyline(const std::vector<Cell>& points) {
    for (std::size_t k = 0; k + 1 < points.size(); ++k) segment(points[k], points[k + 1]);
    if (points.size() == 1) open(points[0]);
  }

  void segment(Cell a, Cell b) {
    if (a.col != b.col && a.row != b.row) throw std::logic_error("diagonal segment in layout");
    const int dc = (b.col > a.col) - (b.col < a.col);
    const int dr = (b.row > a.row) - (b.row < a.row);
    Cell cur = a;
    open(cur);
    while (cur != b) {
      Cell next{cur.col + dc, cur.row + dr};
      open(next);
      edges_.insert(key(cur, next));
      cur = next;
    }
  }

  /// Throws if two free cells touch without an intended edge between them.
  void check_adjacency() const {
    for (int r = 0; r < grid_.height(); ++r) {
      for (int c = 0; c < grid_.width(); ++c) {
        Cell a{c, r};
        if (!grid_.is_free(a)) continue;
        for (Cell b : {Cell{c + 1, r}, Cell{c, r + 1}}) {
          if (grid_.is_free(b) && !edges_.count(key(a, b))) {
            throw std::logic_error("layout has an unintended adjacency " + to_string(a) + "-" + to_string(b));
          }
        }
      }
    }
  }

  GridMap& grid() { return grid_; }

 private:
  void open(Cell c) {
    if (!grid_.in_bounds(c)) throw std::logic_error("layout cell " + to_string(c) + " out of bounds");
    grid_.set_obstacle(c, false);
  }
  std::pair<int, int> key(Cell a, Cell b) const {
    int x = grid_.index(a), y = grid_.index(b);
    return {std::min(x, y), std::max(x, y)};
  }

  GridMap grid_;
  std::set<std::pair<int, int>> edges_;
};

struct ClauseGeometry {
  int row = 0;
  int left = 0;
  int right = 0;
  std::map<int, int> leg_col;  // var -> column
};

CellMask channel_cells(const GridMap& grid, const ReductionMetadata& meta, const std::vector<int>& vars) {
  CellMask mask(grid);
  for (int v : vars) {
    const auto& ch = meta.channel(v);
    for (int r = ch.row_top; r <= ch.row_bottom; ++r) mask.insert({ch.col, r});
  }
  return mask;
}

std::vector<int> other_vars(const ReductionMetadata& meta, int keep) {
  std::vector<int> out;
  for (const auto& ch : meta.channels) {
    if (ch.var != keep) out.push_back(ch.var);
  }
  return out;
}

int manhattan(Cell a, Cell b) { return std::abs(a.col - b.col) + std::abs(a.row - b.row); }

}  // namespace

Compiled compile(const MonotoneFormula& formula, const NestingForest& forest, const CompileOptions& options) {
  const auto& cl = formula.clauses;
  const int m = static_cast<int>(cl.size());
  const int n = formula.n;
  if (forest.parent.size() != cl.size()) throw InputError("nesting forest does not match the formula");

  // Columns: one block per variable, ending at its channel column, followed
  // by a ladder column and a gap column.
  std::vector<LegBlock> pos_blocks(std::size_t(n) + 1), neg_blocks(std::size_t(n) + 1);
  std::vector<int> ch(std::size_t(n) + 1, 0);
  for (int x = 1; x <= n; ++x) {
    pos_blocks[std::size_t(x)] = order_legs(formula, forest, Side::Positive, x);
    neg_blocks[std::size_t(x)] = order_legs(formula, forest, Side::Negative, x);
    const int width = std::max(pos_blocks[std::size_t(x)].width(), neg_blocks[std::size_t(x)].width());
    ch[std::size_t(x)] = (x == 1 ? 0 : ch[std::size_t(x) - 1] + 3) + width;
  }
  const int R = n == 0 ? 0 : ch[std::size_t(n)] + 2;
  const int W = R + 1;
  const int U = W + 1;

  std::vector<ClauseGeometry> geo(static_cast<std::size_t>(m));
  for (int x = 1; x <= n; ++x) {
    for (auto* block : {&pos_blocks[std::size_t(x)], &neg_blocks[std::size_t(x)]}) {
      for (std::size_t j = 0; j < block->clauses.size(); ++j) {
        geo[std::size_t(block->clauses[j])].leg_col[x] = ch[std::size_t(x)] + block->offsets[j];
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    auto& g = geo[std::size_t(i)];
    g.left = g.leg_col.begin()->second;
    g.right = g.left;
    for (auto [x, col] : g.leg_col) {
      g.left = std::min(g.left, col);
      g.right = std::max(g.right, col);
    }
    if (forest.parent[std::size_t(i)] < 0) {
      g.left = 0;
      g.right = R;
    }
  }

  // Rows.
  const int m_pos = static_cast<int>(formula.count(Side::Positive));
  const int m_neg = m - m_pos;
  const int h_pos = forest.positive_root ? forest.level[std::size_t(*forest.positive_root)] : 0;
  const int h_neg = forest.negative_root ? forest.level[std::size_t(*forest.negative_root)] : 0;
  const int root_pos = 2 * m_neg + 1;
  const int v_pos = root_pos + (h_pos + 1) * U;
  int L = 1;
  for (int i = 0; i < m; ++i) {
    for (auto [x, col] : geo[std::size_t(i)].leg_col) {
      L = std::max(L, (ch[std::size_t(x)] - geo[std::size_t(i)].left) + (forest.level[std::size_t(i)] + 1) * U + 1);
    }
  }
  const int v_neg = v_pos + L + 1;
  const int root_neg = v_neg + (h_neg + 1) * U;
  for (int i = 0; i < m; ++i) {
    const int lvl = forest.level[std::size_t(i)];
    geo[std::size_t(i)].row = cl[std::size_t(i)].side == Side::Positive ? root_pos + (h_pos - lvl) * U : v_neg + (lvl + 1) * U;
  }
  const int H = root_neg + 2 * m_pos + 2;
  if (long(W) * H > options.max_cells) {
    throw ResourceError("layout of " + std::to_string(W) + "x" + std::to_string(H) + " exceeds the grid cap");
  }

  Carver carver(W, H);
  ReductionMetadata meta;
  meta.W = W;
  meta.U = U;
  meta.L = L;
  meta.six_m_bound = 6 * m;
  meta.band_top = v_pos + 1;
  meta.band_bottom = v_pos + L;
  meta.c = {R, root_pos - 1};
  meta.c_prime = {R, root_neg + 1};

  auto add_ladder = [&](const std::vector<Cell>& pts) {
    carver.polyline(pts);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) meta.ladders.push_back({pts[k], pts[k + 1]});
  };

  // Root corridors, including synthetic ones for empty sides.
  if (!forest.positive_root) carver.segment({0, root_pos}, {R, root_pos});
  if (!forest.negative_root) carver.segment({0, root_neg}, {R, root_neg});

  for (int i = 0; i < m; ++i) {
    const auto& g = geo[std::size_t(i)];
    const bool pos = cl[std::size_t(i)].side == Side::Positive;
    const int vrow = pos ? v_pos : v_neg;
    carver.segment({g.left, g.row}, {g.right, g.row});
    for (auto [x, col] : g.leg_col) carver.segment({col, g.row}, {col, vrow});
    if (const int p = forest.parent[std::size_t(i)]; p >= 0) {
      const int step = pos ? -1 : 1;
      add_ladder({{g.right, g.row},
                  {g.right, g.row + 2 * step},
                  {g.right + 1, g.row + 2 * step},
                  {g.right + 1, geo[std::size_t(p)].row}});
    }
  }

  // Variable corridors, channels, and direct ladders for literals missing on a side.
  for (int x = 1; x <= n; ++x) {
    const int cx = ch[std::size_t(x)];
    carver.segment({cx, v_pos}, {cx, v_neg});
    meta.channels.push_back({x, cx, meta.band_top, meta.band_bottom});
    for (Side side : {Side::Positive, Side::Negative}) {
      const bool pos = side == Side::Positive;
      const LegBlock& block = pos ? pos_blocks[std::size_t(x)] : neg_blocks[std::size_t(x)];
      const int vrow = pos ? v_pos : v_neg;
      if (!block.clauses.empty()) {
        carver.segment({cx + block.offsets.front(), vrow}, {cx, vrow});
        continue;
      }
      // Innermost clause on this side whose interval passes over x.
      int target_row = pos ? root_pos : root_neg;
      int best_depth = -1;
      for (int i = 0; i < m; ++i) {
        const auto& c = cl[std::size_t(i)];
        if (c.side != side || c.lo() >= x || c.hi() <= x) continue;
        int depth = 0;
        for (int p = forest.parent[std::size_t(i)]; p >= 0; p = forest.parent[std::size_t(p)]) ++depth;
        if (depth > best_depth) {
          best_depth = depth;
          target_row = geo[std::size_t(i)].row;
        }
      }
      const int step = pos ? -1 : 1;
      add_ladder({{cx, vrow}, {cx, vrow + 2 * step}, {cx + 1, vrow + 2 * step}, {cx + 1, target_row}});
    }
  }

  // Openings and target stacks.
  carver.segment({R, root_pos}, {R, m_neg > 0 ? root_pos - 2 * m_neg : root_pos - 1});
  carver.segment({R, root_neg}, {R, m_pos > 0 ? root_neg + 2 * m_pos : root_neg + 1});
  carver.check_adjacency();

  Instance inst;
  inst.grid = carver.grid();
  inst.directions = DirectionSet{Direction::Up, Direction::Down, Direction::Right};
  std::vector<std::pair<int, int>> order_pos, order_neg;  // (distance to opening, agent)
  for (int i = 0; i < m; ++i) {
    const auto& g = geo[std::size_t(i)];
    const Side side = cl[std::size_t(i)].side;
    AgentTask a;
    a.id = i;
    a.start = {g.left, g.row};
    inst.agents.push_back(a);
    ReductionAgent ra;
    ra.agent = i;
    ra.clause_id = cl[std::size_t(i)].id;
    ra.side = side;
    ra.level = forest.level[std::size_t(i)];
    ra.vars = cl[std::size_t(i)].vars;
    meta.agents.push_back(ra);
    (side == Side::Positive ? order_pos : order_neg).push_back({manhattan(a.start, meta.opening_for(side)), i});
  }
  for (Side side : {Side::Positive, Side::Negative}) {
    auto& order = side == Side::Positive ? order_pos : order_neg;
    std::sort(order.begin(), order.end());
    const int count = static_cast<int>(order.size());
    for (int k = 0; k < count; ++k) {
      const int rank = count - 1 - k;
      const int agent = order[std::size_t(k)].second;
      Cell target = side == Side::Positive ? Cell{R, root_neg + 2 + 2 * rank} : Cell{R, root_pos - 2 - 2 * rank};
      inst.agents[std::size_t(agent)].goal = target;
      meta.targets.push_back({agent, target, rank});
    }
  }
  std::sort(meta.targets.begin(), meta.targets.end(),
            [](const ReductionTarget& a, const ReductionTarget& b) { return a.agent < b.agent; });
  return {std::move(inst), std::move(meta)};
}

int compute_W(const ReductionMetadata& meta) { return meta.W; }

int compute_L(const Instance& instance, const ReductionMetadata& meta) {
  int L = 0;
  for (const auto& ra : meta.agents) {
    const auto field = forward_dist_field(instance.grid, instance.agents[std::size_t(ra.agent)].start,
                                          sign_directions(ra.side));
    for (int v : ra.vars) {
      const auto& ch = meta.channel(v);
      const Cell entry{ch.col, ra.side == Side::Positive ? ch.row_top : ch.row_bottom};
      L = std::max(L, field.at(entry));
    }
  }
  return L;
}

MakespanVariant makespan_variant(const Instance& base, const ReductionMetadata& meta) {
  MakespanVariant out;
  std::vector<int> dist;
  for (const auto& a : base.agents) {
    const int d = shortest_dist_field(base.grid, a.goal, base.directions).at(a.start);
    if (d < 0) throw InputError("agent " + std::to_string(a.id) + " cannot reach its target");
    dist.push_back(d);
    out.d = std::max(out.d, d);
  }
  int extra = 0;
  for (int d : dist) {
    out.extensions.push_back(out.d - d);
    extra = std::max(extra, out.d - d);
  }
  const GridMap& g = base.grid;
  GridMap grid(g.width() + extra, g.height());
  grid.fill(true);
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      if (g.is_free({c, r})) grid.set_obstacle({c, r}, false);
    }
  }
  out.instance = base;
  out.meta = meta;
  for (std::size_t i = 0; i < base.agents.size(); ++i) {
    Cell goal = base.agents[i].goal;
    for (int k = 1; k <= out.extensions[i]; ++k) grid.set_obstacle({goal.col + k, goal.row}, false);
    out.instance.agents[i].goal = {goal.col + out.extensions[i], goal.row};
  }
  out.instance.grid = std::move(grid);
  for (auto& t : out.meta.targets) t.cell = out.instance.agents[std::size_t(t.agent)].goal;
  out.meta.W = out.instance.grid.width();
  out.meta.d = out.d;
  return out;
}

Instance two_colored_variant(const Instance& instance, const ReductionMetadata& meta) {
  Instance out = instance;
  out.teams.clear();
  for (const auto& ra : meta.agents) {
    const std::string team = ra.side == Side::Positive ? "positive" : "negative";
    auto& agent = out.agents[std::size_t(ra.agent)];
    agent.team = team;
    out.teams[team].push_back(agent.goal);
  }
  for (auto& [team, targets] : out.teams) std::sort(targets.begin(), targets.end());
  return out;
}

Solution realize_solution(const Instance& instance, const ReductionMetadata& meta, const Assignment& assignment) {
  if (assignment.size() != meta.channels.size()) {
    throw InputError("assignment has " + std::to_string(assignment.size()) + " values for " +
                     std::to_string(meta.channels.size()) + " variables");
  }
  Solution sol;
  sol.paths.resize(instance.agents.size());
  for (const auto& ra : meta.agents) {
    const bool want = ra.side == Side::Positive;
    auto chosen = std::find_if(ra.vars.begin(), ra.vars.end(),
                               [&](int v) { return assignment[std::size_t(v - 1)] == want; });
    if (chosen == ra.vars.end()) {
      throw InputError("assignment does not satisfy clause " + std::to_string(ra.clause_id));
    }
    const auto& agent = instance.agents[std::size_t(ra.agent)];
    const DirectionSet dirs = sign_directions(ra.side);
    const CellMask blocked = channel_cells(instance.grid, meta, other_vars(meta, *chosen));
    const auto field = shortest_dist_field(instance.grid, agent.goal, dirs, &blocked);
    if (!field.reachable(agent.start)) {
      throw std::logic_error("no route for clause " + std::to_string(ra.clause_id) + " through x" +
                             std::to_string(*chosen));
    }
    TimedPath path{{agent.start}};
    while (path.cells.back() != agent.goal) {
      const Cell cur = path.cells.back();
      for (Direction d : dirs.motions()) {
        const Cell next = step(cur, d);
        if (field.reachable(next) && field.at(next) == field.at(cur) - 1) {
          path.cells.push_back(next);
          break;
        }
      }
    }
    sol.paths[std::size_t(ra.agent)] = std::move(path);
  }
  return sol;
}

Assignment extract_assignment(const Instance& instance, const ReductionMetadata& meta, const Solution& solution) {
  if (!is_individually_optimal(instance, solution)) {
    throw InputError("solution is not individually optimal");
  }
  std::map<int, int> var_of_col;
  for (const auto& ch : meta.channels) var_of_col[ch.col] = ch.var;
  Assignment out(meta.channels.size(), true);
  for (const auto& ra : meta.agents) {
    for (Cell c : solution.paths[std::size_t(ra.agent)].cells) {
      if (c.row < meta.band_top || c.row > meta.band_bottom) continue;
      auto it = var_of_col.find(c.col);
      if (it != var_of_col.end()) out[std::size_t(it->second - 1)] = ra.side == Side::Positive;
    }
  }
  return out;
}

bool ConstructionReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConstructionCheck& c) { return c.ok; });
}

std::string ConstructionReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << "check " << c.id << " " << c.name << ": " << (c.ok ? "ok" : "FAIL");
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  return os.str();
}

ConstructionReport verify_construction(const Instance& instance, const ReductionMetadata& meta) {
  ConstructionReport report;
  const GridMap& grid = instance.grid;
  auto start_of = [&](const ReductionAgent& ra) { return instance.agents[std::size_t(ra.agent)].start; };
  auto goal_of = [&](const ReductionAgent& ra) { return instance.agents[std::size_t(ra.agent)].goal; };
  auto add = [&](int id, std::string name, const std::string& problems) {
    report.checks.push_back({id, std::move(name), problems.empty(), problems});
  };

  {
    std::ostringstream bad;
    for (Side side : {Side::Positive, Side::Negative}) {
      const Cell opening = meta.opening_for(side);
      std::vector<std::pair<int, int>> dist;  // (distance, clause id)
      for (const auto& ra : meta.agents) {
        if (ra.side != side) continue;
        const int d = forward_dist_field(grid, start_of(ra), sign_directions(side)).at(opening);
        if (d != manhattan(start_of(ra), opening)) {
          bad << "clause " << ra.clause_id << " distance " << d << " is not Manhattan; ";
        }
        dist.push_back({d, ra.clause_id});
      }
      std::sort(dist.begin(), dist.end());
      for (std::size_t k = 1; k < dist.size(); ++k) {
        if (dist[k].first - dist[k - 1].first < 2) {
          bad << "clauses " << dist[k - 1].second << " and " << dist[k].second << " at distances "
              << dist[k - 1].first << "," << dist[k].first << "; ";
        }
      }
    }
    add(1, "unique opening distances", bad.str());
  }

  {
    std::ostringstream bad;
    for (const auto& ch : meta.channels) {
      if (ch.row_top != meta.band_top || ch.row_bottom != meta.band_bottom) {
        bad << "x" << ch.var << " spans rows " << ch.row_top << ".." << ch.row_bottom << "; ";
      }
      int len = 0;
      for (int r = ch.row_top; r <= ch.row_bottom; ++r) {
        const Cell c{ch.col, r};
        if (!grid.is_free(c)) continue;
        ++len;
        if (grid.is_free({c.col - 1, r}) || grid.is_free({c.col + 1, r})) {
          bad << "x" << ch.var << " has a side opening at row " << r << "; ";
        }
      }
      if (len != meta.L) bad << "x" << ch.var << " has length " << len << " instead of " << meta.L << "; ";
      if (!grid.is_free({ch.col, ch.row_top - 1}) || !grid.is_free({ch.col, ch.row_bottom + 1})) {
        bad << "x" << ch.var << " is not connected at both ends; ";
      }
    }
    add(2, "channel length and span", bad.str());
  }

  {
    std::ostringstream bad;
    for (const auto& ra : meta.agents) {
      const auto field = forward_dist_field(grid, start_of(ra), sign_directions(ra.side));
      for (int v : ra.vars) {
        const auto& ch = meta.channel(v);
        const int d = field.at({ch.col, ra.side == Side::Positive ? ch.row_top : ch.row_bottom});
        if (d < 1 || d > meta.L) bad << "clause " << ra.clause_id << " enters x" << v << " at " << d << "; ";
      }
    }
    add(3, "channel entry within L", bad.str());
  }

  {
    std::ostringstream bad;
    for (const auto& ra : meta.agents) {
      const Cell opening = meta.opening_for(ra.side);
      const auto dirs = sign_directions(ra.side).motions();
      CellMask seen(grid);
      std::deque<Cell> queue{start_of(ra)};
      seen.insert(start_of(ra));
      while (!queue.empty()) {
        const Cell cur = queue.front();
        queue.pop_front();
        const bool dominated = cur.col <= opening.col &&
                               (ra.side == Side::Positive ? cur.row <= opening.row : cur.row >= opening.row);
        if (!dominated) {
          bad << "clause " << ra.clause_id << " reaches " << to_string(cur) << "; ";
          break;
        }
        if (cur == opening) continue;
        for (Direction d : dirs) {
          const Cell next = step(cur, d);
          if (grid.is_free(next) && !seen.contains(next)) {
            seen.insert(next);
            queue.push_back(next);
          }
        }
      }
    }
    add(4, "openings dominate reachable cells", bad.str());
  }

  {
    std::ostringstream bad;
    for (const auto& ra : meta.agents) {
      const int expect = manhattan(start_of(ra), goal_of(ra));
      for (int v : ra.vars) {
        const CellMask blocked = channel_cells(grid, meta, other_vars(meta, v));
        const int d = forward_dist_field(grid, start_of(ra), sign_directions(ra.side), &blocked).at(goal_of(ra));
        if (d != expect) bad << "clause " << ra.clause_id << " via x" << v << " has length " << d << "; ";
      }
    }
    add(5, "equal-length channel alternatives", bad.str());
  }

  {
    std::ostringstream bad;
    for (const auto& ra : meta.agents) {
      const CellMask blocked = channel_cells(grid, meta, ra.vars);
      if (forward_dist_field(grid, start_of(ra), sign_directions(ra.side), &blocked).reachable(goal_of(ra))) {
        bad << "clause " << ra.clause_id << " bypasses its channels; ";
      }
    }
    add(6, "no channel bypass", bad.str());
  }

  {
    const long m = static_cast<long>(meta.agents.size());
    const long n = static_cast<long>(meta.channels.size());
    const long cells = grid.free_count();
    const long bound = kSizeConstant * (m * m * m + n * m * m);
    std::string detail;
    if (m > 0 && cells > bound) detail = std::to_string(cells) + " free cells exceed " + std::to_string(bound);
    add(7, "size bound", detail);
  }

  {
    std::ostringstream bad;
    for (const auto& ra : meta.agents) {
      const int signed_d = forward_dist_field(grid, start_of(ra), sign_directions(ra.side)).at(goal_of(ra));
      const int full_d = forward_dist_field(grid, start_of(ra), DirectionSet::all()).at(goal_of(ra));
      if (signed_d < 0 || signed_d != full_d) {
        bad << "clause " << ra.clause_id << " needs other moves (" << signed_d << " vs " << full_d << "); ";
      }
    }
    add(8, "no left moves needed", bad.str());
  }
  return report;
}

}  // namespace gridmapf
