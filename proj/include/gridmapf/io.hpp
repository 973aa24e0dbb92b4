#pragma once

// Line-based text formats for maps, agents, solutions, formulas and
// reduction metadata.

#include <optional>
#include <string>
#include <string_view>

#include "gridmapf/core.hpp"
#include "gridmapf/formula.hpp"
#include "gridmapf/reduction.hpp"

namespace gridmapf {

/// `height H`, `width W`, `map`, then H rows of `.` (free) and `@` (obstacle).
/// A leading `type ...` line is accepted and ignored.
GridMap read_map(std::string_view text);
std::string write_map(const GridMap& grid);

/// `directions <UDLR subset>`, optional `waits yes|no`, then
/// `agent <id> <scol> <srow> <gcol> <grow> [team]` lines. When teams are
/// given, each team's target set is the goals of its members.
Instance read_agents(std::string_view text, const GridMap& grid);
std::string write_agents(const Instance& instance);

/// `agent <id> <moves>` lines over U, D, L, R, W. Moves are replayed from the
/// start; errors name the agent and the time step.
Solution read_solution(std::string_view text, const Instance& instance);
std::string write_solution(const Instance& instance, const Solution& solution);

inline MonotoneFormula read_formula(std::string_view text) { return parse_formula(text); }
inline std::string write_formula(const MonotoneFormula& formula) { return format_formula(formula); }

ReductionMetadata read_metadata(std::string_view text);
std::string write_metadata(const ReductionMetadata& meta);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace gridmapf
