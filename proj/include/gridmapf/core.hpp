#pragma once

// Grid MAPF domain model: cells, moves, grids with holes, agents, timed
// paths, conflict checking and the flowtime/makespan objectives.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gridmapf {

/// Raised for malformed or out-of-contract inputs.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a configured size cap or search budget is exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A grid cell. Columns grow to the right, rows grow downward from the
/// top-left corner.
struct Cell {
  int col = 0;
  int row = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

std::string to_string(Cell c);

struct CellHash {
  std::size_t operator()(Cell c) const noexcept {
    return std::hash<std::int64_t>{}((static_cast<std::int64_t>(c.col) << 32) ^
                                     static_cast<std::uint32_t>(c.row));
  }
};

enum class Direction : std::uint8_t { Up, Down, Left, Right, Wait };

inline constexpr std::array<Direction, 4> kMotionDirections{
    Direction::Up, Direction::Down, Direction::Left, Direction::Right};

constexpr Cell step(Cell c, Direction d) {
  switch (d) {
    case Direction::Up: return {c.col, c.row - 1};
    case Direction::Down: return {c.col, c.row + 1};
    case Direction::Left: return {c.col - 1, c.row};
    case Direction::Right: return {c.col + 1, c.row};
    case Direction::Wait: break;
  }
  return c;
}

constexpr Direction opposite(Direction d) {
  switch (d) {
    case Direction::Up: return Direction::Down;
    case Direction::Down: return Direction::Up;
    case Direction::Left: return Direction::Right;
    case Direction::Right: return Direction::Left;
    case Direction::Wait: break;
  }
  return Direction::Wait;
}

char to_char(Direction d);
std::optional<Direction> direction_from_char(char ch);
/// The single move taking `from` to `to`, or nullopt if they are not equal
/// or 4-adjacent.
std::optional<Direction> direction_between(Cell from, Cell to);

/// Allowed motion directions plus whether waiting in place is permitted.
class DirectionSet {
 public:
  DirectionSet() = default;
  DirectionSet(std::initializer_list<Direction> motions, bool waits = true);

  static DirectionSet all() {
    return {{Direction::Up, Direction::Down, Direction::Left, Direction::Right}};
  }
  static DirectionSet down_right() { return {{Direction::Down, Direction::Right}}; }
  /// Parses a subset of "UDLR" (any order, case-insensitive).
  static DirectionSet parse(std::string_view letters, bool waits = true);

  bool allows(Direction d) const;
  bool waits_allowed() const { return waits_; }
  bool empty() const { return mask_ == 0; }
  std::vector<Direction> motions() const;
  /// Canonical "UDLR"-ordered letters of the motion directions.
  std::string letters() const;

  friend bool operator==(const DirectionSet&, const DirectionSet&) = default;

 private:
  std::uint8_t mask_ = 0;
  bool waits_ = true;
};

class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t cell_count() const { return blocked_.size(); }

  bool in_bounds(Cell c) const {
    return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_;
  }
  bool is_free(Cell c) const { return in_bounds(c) && blocked_[index(c)] == 0; }
  bool is_obstacle(Cell c) const { return in_bounds(c) && blocked_[index(c)] != 0; }
  void set_obstacle(Cell c, bool obstacle = true);
  void fill(bool obstacle);

  int free_count() const;
  std::vector<Cell> obstacles() const;

  int index(Cell c) const { return c.row * width_ + c.col; }
  Cell cell_at(int index) const { return {index % width_, index / width_}; }

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> blocked_;
};

/// Dense set of cells over a fixed rectangle.
class CellMask {
 public:
  CellMask() = default;
  CellMask(int width, int height) : width_(width), height_(height), bits_(std::size_t(width) * height, 0) {}
  explicit CellMask(const GridMap& grid) : CellMask(grid.width(), grid.height()) {}

  bool contains(Cell c) const {
    return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_ &&
           bits_[std::size_t(c.row) * width_ + c.col] != 0;
  }
  void insert(Cell c) { bits_.at(std::size_t(c.row) * width_ + c.col) = 1; }
  void erase(Cell c) { bits_.at(std::size_t(c.row) * width_ + c.col) = 0; }
  void clear() { std::fill(bits_.begin(), bits_.end(), std::uint8_t{0}); }
  std::size_t count() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct AgentTask {
  int id = 0;
  Cell start;
  Cell goal;
  std::optional<std::string> team;
};

struct Instance {
  GridMap grid;
  std::vector<AgentTask> agents;
  DirectionSet directions = DirectionSet::all();
  /// k-colored mode: team id -> the team's target cells. Empty for labeled MAPF.
  std::map<std::string, std::vector<Cell>> teams;

  bool colored() const { return !teams.empty(); }
  /// Throws InputError when starts/goals are blocked or repeated, or team
  /// sizes do not match their target sets.
  void validate() const;
  /// Cells an agent may finish on: its goal, or its team's targets.
  std::vector<Cell> admissible_targets(const AgentTask& agent) const;
};

/// Rebuilds `instance.teams` from the team labels and goals of its agents.
void derive_teams_from_goals(Instance& instance);

/// A sequence of cells indexed by time step. The agent rests on the last
/// cell forever after.
struct TimedPath {
  std::vector<Cell> cells;

  /// Arrival time: index of the first cell of the trailing run of the final cell.
  int cost() const;
  Cell at(std::size_t t) const { return t < cells.size() ? cells[t] : cells.back(); }
  /// Move letters over U, D, L, R, W; throws InputError on non-adjacent steps.
  std::string moves() const;
  static TimedPath from_moves(Cell start, std::string_view moves);

  friend bool operator==(const TimedPath&, const TimedPath&) = default;
};

struct Solution {
  std::vector<TimedPath> paths;

  friend bool operator==(const Solution&, const Solution&) = default;
};

long flowtime(const Solution& solution);
int makespan(const Solution& solution);

struct ConflictModel {
  bool vertex = true;
  bool edge = true;
  bool following = false;
  bool cycle = false;

  static ConflictModel paper_default() { return {}; }
  static ConflictModel strict() { return {true, true, true, true}; }
  /// Comma-separated subset of "vertex,edge,following,cycle".
  static ConflictModel parse(std::string_view spec);
  std::string to_string() const;

  friend bool operator==(const ConflictModel&, const ConflictModel&) = default;
};

enum class ConflictKind {
  Vertex,
  Edge,
  Following,
  Cycle,
  BadStart,
  BadGoal,
  OutOfBounds,
  Obstacle,
  Teleport,
  DisallowedMove,
};

std::string_view to_string(ConflictKind kind);

struct Conflict {
  /// Vertex conflicts and malformed cells: the time of the offending state.
  /// Move conflicts: the time the move starts (t -> t+1).
  int time = 0;
  ConflictKind kind = ConflictKind::Vertex;
  std::vector<int> agents;
  std::vector<Cell> cells;
};

struct ConflictReport {
  std::vector<Conflict> conflicts;

  bool ok() const { return conflicts.empty(); }
  std::size_t count(ConflictKind kind) const;
  std::string summary() const;
};

/// One-step joint-move check shared by the validator and the search oracles.
/// `before`/`after` are the positions of every agent at t and t+1.
/// Appends one entry per detected conflict when `out` is non-null; returns
/// whether the move is conflict-free under `model`.
bool check_joint_move(std::span<const Cell> before, std::span<const Cell> after,
                      const ConflictModel& model, int time, std::vector<Conflict>* out);

std::vector<Cell> neighbors(const GridMap& grid, Cell cell, const DirectionSet& dirs);

/// Distances over the grid, -1 for unreachable cells.
class DistanceField {
 public:
  static constexpr int kUnreachable = -1;

  DistanceField() = default;
  DistanceField(int width, int height)
      : width_(width), height_(height), dist_(std::size_t(width) * height, kUnreachable) {}

  int at(Cell c) const {
    if (c.col < 0 || c.row < 0 || c.col >= width_ || c.row >= height_) return kUnreachable;
    return dist_[std::size_t(c.row) * width_ + c.col];
  }
  bool reachable(Cell c) const { return at(c) != kUnreachable; }
  int at_index(int index) const { return dist_[std::size_t(index)]; }
  void set(Cell c, int value) { dist_[std::size_t(c.row) * width_ + c.col] = value; }
  std::span<const int> raw() const { return dist_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<int> dist_;
};

/// Single-agent distance from every cell to `goal` (moves only) under
/// `dirs`: a breadth-first search over reversed moves. Cells in
/// `extra_blocked`, if given, are treated as obstacles.
DistanceField shortest_dist_field(const GridMap& grid, Cell goal, const DirectionSet& dirs,
                                  const CellMask* extra_blocked = nullptr);

/// Distance from `source` to every cell under `dirs` (forward search).
DistanceField forward_dist_field(const GridMap& grid, Cell source, const DirectionSet& dirs,
                                 const CellMask* extra_blocked = nullptr);

ConflictReport validate_solution(const Instance& instance, const Solution& solution,
                                 const ConflictModel& model = {});

/// Sum of the agents' individually optimal path lengths, or nullopt if some
/// goal is unreachable.
std::optional<long> lower_bound_cost(const Instance& instance);

/// Requires a valid solution (throws InputError otherwise). True iff the
/// flowtime equals the sum of shortest distances to the cells the paths end on.
bool is_individually_optimal(const Instance& instance, const Solution& solution,
                             const ConflictModel& model = {});

}  // namespace gridmapf
