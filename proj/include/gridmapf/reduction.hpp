#pragma once

// Lowering of a monotone planar formula into a grid MAPF instance that has an
// individually optimal solution iff the formula is satisfiable.
//
// Rows grow downward. Positive clause gadgets sit above the variable channels
// and their agents move Down/Right; negative gadgets sit below and their
// agents move Up/Right.

#include <string>
#include <vector>

#include "gridmapf/core.hpp"
#include "gridmapf/formula.hpp"

namespace gridmapf {

struct ChannelInfo {
  int var = 0;
  int col = 0;
  int row_top = 0;
  int row_bottom = 0;
};

struct ReductionAgent {
  int agent = 0;       // index into Instance::agents
  int clause_id = 0;
  Side side = Side::Positive;
  int level = 0;
  std::vector<int> vars;
};

struct ReductionTarget {
  int agent = 0;
  Cell cell;
  /// Position in the stack counted from the opening (0 = adjacent to it).
  int rank = 0;
};

struct LadderSegment {
  Cell from;
  Cell to;
};

struct ReductionMetadata {
  int W = 0;  // total column count
  int U = 0;  // row spacing per nesting level
  int L = 0;  // channel length
  int d = 0;  // common distance in the makespan variant, 0 otherwise
  int six_m_bound = 0;
  int band_top = 0;
  int band_bottom = 0;
  Cell c;        // opening of the positive root, used by negative agents
  Cell c_prime;  // opening of the negative root, used by positive agents
  std::vector<ChannelInfo> channels;  // one per variable, in variable order
  std::vector<ReductionAgent> agents;
  std::vector<ReductionTarget> targets;
  std::vector<LadderSegment> ladders;

  const ChannelInfo& channel(int var) const { return channels.at(std::size_t(var - 1)); }
  Cell opening_for(Side side) const { return side == Side::Positive ? c_prime : c; }
};

struct CompileOptions {
  /// Upper bound on width * height of the emitted grid.
  long max_cells = 50'000'000;
};

struct Compiled {
  Instance instance;
  ReductionMetadata meta;
};

/// Builds the hardness instance. Agents are listed in clause order.
Compiled compile(const MonotoneFormula& formula, const NestingForest& forest, const CompileOptions& options = {});

/// Column count of the compiled layout.
int compute_W(const ReductionMetadata& meta);

/// Recomputes the channel length by breadth-first search: the largest
/// sign-restricted distance from an agent's start to the entry cell of one
/// of its clause's channels.
int compute_L(const Instance& instance, const ReductionMetadata& meta);

/// Directions an agent of `side` uses on its shortest routes.
DirectionSet sign_directions(Side side);

struct MakespanVariant {
  Instance instance;
  ReductionMetadata meta;
  int d = 0;
  /// Per agent, the number of cells its target was moved to the right.
  std::vector<int> extensions;
};

/// Moves every target right along a private dead-end row so each agent's
/// shortest distance becomes the largest distance d of the base instance.
MakespanVariant makespan_variant(const Instance& base, const ReductionMetadata& meta);

/// Teams "positive" and "negative" whose target sets are the two stacks.
Instance two_colored_variant(const Instance& instance, const ReductionMetadata& meta);

/// Canonical individually optimal solution for a satisfying assignment.
Solution realize_solution(const Instance& instance, const ReductionMetadata& meta, const Assignment& assignment);

/// Reads the truth values off the channels used by an individually optimal
/// solution; unused channels give true.
Assignment extract_assignment(const Instance& instance, const ReductionMetadata& meta, const Solution& solution);

struct ConstructionCheck {
  int id = 0;
  std::string name;
  bool ok = true;
  std::string detail;
};

struct ConstructionReport {
  std::vector<ConstructionCheck> checks;

  bool ok() const;
  std::string summary() const;
};

/// Multiplier in the size check |free cells| <= K (m^3 + n m^2).
inline constexpr long kSizeConstant = 128;

/// Eight independent breadth-first and counting checks of the layout.
ConstructionReport verify_construction(const Instance& instance, const ReductionMetadata& meta);

}  // namespace gridmapf
