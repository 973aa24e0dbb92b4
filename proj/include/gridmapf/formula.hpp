#pragma once

// Monotone planar 3-SAT formulas, their clause nesting structure, and a
// brute-force satisfiability check.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridmapf/core.hpp"

namespace gridmapf {

enum class Side { Positive, Negative };

inline char sign_char(Side s) { return s == Side::Positive ? '+' : '-'; }

struct Clause {
  int id = 0;
  Side side = Side::Positive;
  /// Sorted, distinct, 1-based variable indices.
  std::vector<int> vars;

  int lo() const { return vars.front(); }
  int hi() const { return vars.back(); }
  bool contains(int var) const;
};

struct MonotoneFormula {
  int n = 0;
  std::vector<Clause> clauses;

  std::size_t count(Side side) const;
};

/// Parses `vars <n>` and `clause <id> <+|-> <v>...` lines; `#` starts a
/// comment. Errors carry the line number.
MonotoneFormula parse_formula(std::string_view text);
std::string format_formula(const MonotoneFormula& formula);

/// Clause nesting per side. Indices refer to positions in `formula.clauses`.
struct NestingForest {
  std::vector<int> parent;  // -1 for roots
  std::vector<int> level;
  std::vector<std::vector<int>> children;
  std::optional<int> positive_root;
  std::optional<int> negative_root;

  std::optional<int> root(Side side) const { return side == Side::Positive ? positive_root : negative_root; }
  /// True iff `outer` is a proper ancestor of `inner`.
  bool encloses(int outer, int inner) const;
};

/// Checks that each side's clause intervals are laminar (intervals sharing
/// only an endpoint count as crossing), that no clause has a literal strictly
/// inside a nested clause's interval, that no singleton clause is repeated on
/// a side, and that each non-empty side has one root.
NestingForest validate_planar_monotone(const MonotoneFormula& formula);

/// Levels from the parent relation: 0 for leaves, 1 + max child otherwise.
std::vector<int> nesting_levels(const NestingForest& forest);

/// assignment[v - 1] is the value of variable v.
using Assignment = std::vector<bool>;

bool satisfies(const MonotoneFormula& formula, const Assignment& assignment);

/// Tries assignments in counting order with x1 most significant and
/// false before true. Throws ResourceError when n exceeds `max_vars`.
std::optional<Assignment> brute_force_sat(const MonotoneFormula& formula, int max_vars = 24);

}  // namespace gridmapf
