#pragma once

#include <optional>
#include <string>

#include "gridmapf/core.hpp"
#include "gridmapf/reduction.hpp"

namespace gridmapf {

struct RenderOptions {
  /// When set, agents are drawn at their positions at this time step.
  std::optional<int> time;
};

/// One character per cell, one line per row: `@` obstacle, `.` free, `s`
/// start, `g` goal, `*` solution path. With a time step, agents appear as
/// 0-9 then a-z by index.
std::string render_ascii(const Instance& instance, const Solution* solution = nullptr,
                         const RenderOptions& options = {});

/// Starts as filled circles and goals as hollow ones, colored by team.
/// Channels, openings and ladders are tagged when metadata is given.
std::string render_svg(const Instance& instance, const Solution* solution = nullptr,
                       const ReductionMetadata* meta = nullptr);

}  // namespace gridmapf
