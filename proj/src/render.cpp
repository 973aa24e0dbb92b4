#include "gridmapf/render.hpp"

#include <sstream>

namespace gridmapf {
namespace {

char agent_label(std::size_t i) {
  static constexpr std::string_view kLabels = "0123456789abcdefghijklmnopqrstuvwxyz";
  return i < kLabels.size() ? kLabels[i] : '#';
}

std::string team_color(const AgentTask& a) {
  if (a.team == "positive") return "#2e9e4f";
  if (a.team == "negative") return "#c8323c";
  return "#2f5fb3";
}

}  // namespace

std::string render_ascii(const Instance& instance, const Solution* solution, const RenderOptions& options) {
  const GridMap& g = instance.grid;
  std::vector<std::string> rows(std::size_t(g.height()), std::string(std::size_t(g.width()), '.'));
  auto put = [&](Cell c, char ch) {
    if (g.in_bounds(c)) rows[std::size_t(c.row)][std::size_t(c.col)] = ch;
  };
  for (Cell c : g.obstacles()) put(c, '@');
  if (solution) {
    for (const auto& p : solution->paths) {
      for (Cell c : p.cells) put(c, '*');
    }
  }
  for (const auto& a : instance.agents) {
    put(a.goal, 'g');
    put(a.start, 's');
  }
  if (options.time && solution) {
    for (std::size_t i = 0; i < solution->paths.size(); ++i) {
      if (!solution->paths[i].cells.empty()) put(solution->paths[i].at(std::size_t(*options.time)), agent_label(i));
    }
  } else if (options.time) {
    for (std::size_t i = 0; i < instance.agents.size(); ++i) put(instance.agents[i].start, agent_label(i));
  }
  std::string out;
  for (const auto& r : rows) out += r + "\n";
  return out;
}

std::string render_svg(const Instance& instance, const Solution* solution, const ReductionMetadata* meta) {
  constexpr int kCell = 12;
  const GridMap& g = instance.grid;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << g.width() * kCell << "\" height=\""
     << g.height() * kCell << "\" viewBox=\"0 0 " << g.width() * kCell << " " << g.height() * kCell << "\">\n";
  os << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << g.width() * kCell << "\" height=\""
     << g.height() * kCell << "\" fill=\"#ffffff\"/>\n";
  for (Cell c : g.obstacles()) {
    os << "<rect class=\"obstacle\" x=\"" << c.col * kCell << "\" y=\"" << c.row * kCell << "\" width=\"" << kCell
       << "\" height=\"" << kCell << "\" fill=\"#3a3a3a\"/>\n";
  }
  if (meta) {
    for (const auto& ch : meta->channels) {
      os << "<rect class=\"channel\" data-var=\"" << ch.var << "\" x=\"" << ch.col * kCell << "\" y=\""
         << ch.row_top * kCell << "\" width=\"" << kCell << "\" height=\"" << (ch.row_bottom - ch.row_top + 1) * kCell
         << "\" fill=\"#f2d94e\"/>\n";
    }
    for (const auto& l : meta->ladders) {
      os << "<line class=\"ladder\" x1=\"" << l.from.col * kCell + kCell / 2 << "\" y1=\""
         << l.from.row * kCell + kCell / 2 << "\" x2=\"" << l.to.col * kCell + kCell / 2 << "\" y2=\""
         << l.to.row * kCell + kCell / 2 << "\" stroke=\"#9fe3ef\" stroke-width=\"" << kCell / 2 << "\"/>\n";
    }
    for (auto [name, c] : {std::pair{"c", meta->c}, std::pair{"c-prime", meta->c_prime}}) {
      os << "<rect class=\"opening\" data-name=\"" << name << "\" x=\"" << c.col * kCell << "\" y=\""
         << c.row * kCell << "\" width=\"" << kCell << "\" height=\"" << kCell
         << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
    }
  }
  if (solution) {
    for (std::size_t i = 0; i < solution->paths.size() && i < instance.agents.size(); ++i) {
      os << "<polyline class=\"path\" fill=\"none\" stroke=\"" << team_color(instance.agents[i])
         << "\" stroke-opacity=\"0.6\" stroke-width=\"2\" points=\"";
      for (std::size_t k = 0; k < solution->paths[i].cells.size(); ++k) {
        const Cell c = solution->paths[i].cells[k];
        os << (k ? " " : "") << c.col * kCell + kCell / 2 << "," << c.row * kCell + kCell / 2;
      }
      os << "\"/>\n";
    }
  }
  for (const auto& a : instance.agents) {
    const std::string color = team_color(a);
    os << "<circle class=\"goal\" cx=\"" << a.goal.col * kCell + kCell / 2 << "\" cy=\""
       << a.goal.row * kCell + kCell / 2 << "\" r=\"" << kCell / 2 - 2 << "\" fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<circle class=\"start\" cx=\"" << a.start.col * kCell + kCell / 2 << "\" cy=\""
       << a.start.row * kCell + kCell / 2 << "\" r=\"" << kCell / 2 - 2 << "\" fill=\"" << color << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace gridmapf
