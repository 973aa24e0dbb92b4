#pragma once

// Individually optimal planning for agents that may only move down or right.

#include <optional>
#include <vector>

#include "gridmapf/core.hpp"

namespace gridmapf {

/// col + row; every Down or Right move raises it by one.
inline int diagonal_key(Cell c) { return c.col + c.row; }

/// True iff every goal is weakly below and weakly right of its start.
bool check_two_directional(const Instance& instance);

struct DiagonalGroup {
  int key = 0;
  /// Agent indices in decreasing start column.
  std::vector<int> agents;
};

/// Groups agents by diagonal key, largest key first.
std::vector<DiagonalGroup> partition_diagonals(const Instance& instance);

enum class MovePreference { RightFirst, DownFirst };

struct TwoDirStats {
  long visited_cells = 0;
};

/// Depth-first search for a Down/Right path from `start` to `goal` avoiding
/// obstacles and `blocked`. With RightFirst the result is the lexicographically
/// smallest move string under R < D. Each cell is expanded at most once.
std::optional<TimedPath> plan_monotone_path(const GridMap& grid, const CellMask& blocked, Cell start, Cell goal,
                                            MovePreference preference = MovePreference::RightFirst,
                                            TwoDirStats* stats = nullptr);

struct TwoDirOptions {
  MovePreference preference = MovePreference::RightFirst;
};

/// Plans diagonal groups right to left. Returns nullopt when no individually
/// optimal solution exists. The instance must use directions {Down, Right}.
std::optional<Solution> solve_two_dir(const Instance& instance, const TwoDirOptions& options = {},
                                      TwoDirStats* stats = nullptr);

/// Cells of `path` plus every cell above one of them, sorted.
std::vector<Cell> region_above(const TimedPath& path);

bool weakly_above(const TimedPath& q, const TimedPath& p);

}  // namespace gridmapf
