#include "gridmapf/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gridmapf {
namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int to_int(const std::string& token, int line) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    fail(line, "expected an integer, got '" + token + "'");
  }
  if (used != token.size()) fail(line, "expected an integer, got '" + token + "'");
  return value;
}

// Lines with their 1-based numbers, trailing '\r' removed.
std::vector<std::pair<int, std::string>> numbered_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    out.push_back({line, raw});
  }
  return out;
}

}  // namespace

GridMap read_map(std::string_view text) {
  auto lines = numbered_lines(text);
  std::size_t k = 0;
  auto next_header = [&]() -> std::pair<int, std::vector<std::string>> {
    while (k < lines.size()) {
      auto words = split(lines[k].second);
      ++k;
      if (!words.empty()) return {lines[k - 1].first, words};
    }
    fail(lines.empty() ? 0 : lines.back().first, "unexpected end of map file");
  };
  auto [line, words] = next_header();
  if (words[0] == "type") std::tie(line, words) = next_header();
  int height = -1;
  int width = -1;
  for (int h = 0; h < 2; ++h) {
    if (words.size() != 2 || (words[0] != "height" && words[0] != "width")) {
      fail(line, "expected 'height <H>' or 'width <W>'");
    }
    int& slot = words[0] == "height" ? height : width;
    if (slot >= 0) fail(line, "duplicate '" + words[0] + "'");
    slot = to_int(words[1], line);
    if (slot <= 0) fail(line, words[0] + " must be positive");
    std::tie(line, words) = next_header();
  }
  if (words.size() != 1 || words[0] != "map") fail(line, "expected 'map'");
  GridMap grid(width, height);
  for (int r = 0; r < height; ++r) {
    if (k >= lines.size()) fail(line, "map has " + std::to_string(r) + " rows, expected " + std::to_string(height));
    const auto& [row_line, row] = lines[k++];
    line = row_line;
    if (static_cast<int>(row.size()) != width) {
      fail(row_line, "row has " + std::to_string(row.size()) + " cells, expected " + std::to_string(width));
    }
    for (int c = 0; c < width; ++c) {
      if (row[std::size_t(c)] == '@') {
        grid.set_obstacle({c, r});
      } else if (row[std::size_t(c)] != '.') {
        fail(row_line, std::string("bad map character '") + row[std::size_t(c)] + "'");
      }
    }
  }
  for (; k < lines.size(); ++k) {
    if (!split(lines[k].second).empty()) fail(lines[k].first, "extra content after the map rows");
  }
  return grid;
}

std::string write_map(const GridMap& grid) {
  std::string out = "height " + std::to_string(grid.height()) + "\nwidth " + std::to_string(grid.width()) + "\nmap\n";
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) out += grid.is_obstacle({c, r}) ? '@' : '.';
    out += '\n';
  }
  return out;
}

Instance read_agents(std::string_view text, const GridMap& grid) {
  Instance inst;
  inst.grid = grid;
  bool have_dirs = false;
  bool waits = true;
  std::string letters = "UDLR";
  std::set<int> ids;
  for (const auto& [line, raw] : numbered_lines(text)) {
    std::string content = raw.substr(0, raw.find('#'));
    auto w = split(content);
    if (w.empty()) continue;
    if (w[0] == "directions") {
      if (w.size() != 2 || have_dirs) fail(line, "expected a single 'directions <letters>' line");
      letters = w[1];
      have_dirs = true;
    } else if (w[0] == "waits") {
      if (w.size() != 2 || (w[1] != "yes" && w[1] != "no")) fail(line, "expected 'waits yes|no'");
      waits = w[1] == "yes";
    } else if (w[0] == "agent") {
      if (w.size() != 6 && w.size() != 7) fail(line, "expected 'agent <id> <scol> <srow> <gcol> <grow> [team]'");
      AgentTask a;
      a.id = to_int(w[1], line);
      if (!ids.insert(a.id).second) fail(line, "duplicate agent id " + w[1]);
      a.start = {to_int(w[2], line), to_int(w[3], line)};
      a.goal = {to_int(w[4], line), to_int(w[5], line)};
      for (Cell c : {a.start, a.goal}) {
        if (!grid.in_bounds(c)) fail(line, "cell " + to_string(c) + " is out of bounds");
        if (!grid.is_free(c)) fail(line, "cell " + to_string(c) + " is an obstacle");
      }
      if (w.size() == 7) a.team = w[6];
      inst.agents.push_back(a);
    } else {
      fail(line, "unknown directive '" + w[0] + "'");
    }
  }
  try {
    inst.directions = DirectionSet::parse(letters, waits);
  } catch (const InputError& e) {
    throw InputError(std::string("directions: ") + e.what());
  }
  const bool any_team = std::any_of(inst.agents.begin(), inst.agents.end(), [](const AgentTask& a) { return a.team; });
  if (any_team) derive_teams_from_goals(inst);
  inst.validate();
  return inst;
}

std::string write_agents(const Instance& instance) {
  std::ostringstream os;
  os << "directions " << instance.directions.letters() << "\n";
  if (!instance.directions.waits_allowed()) os << "waits no\n";
  for (const auto& a : instance.agents) {
    os << "agent " << a.id << " " << a.start.col << " " << a.start.row << " " << a.goal.col << " " << a.goal.row;
    if (a.team) os << " " << *a.team;
    os << "\n";
  }
  return os.str();
}

Solution read_solution(std::string_view text, const Instance& instance) {
  std::map<int, std::size_t> index_of;
  for (std::size_t i = 0; i < instance.agents.size(); ++i) index_of[instance.agents[i].id] = i;
  Solution sol;
  sol.paths.resize(instance.agents.size());
  std::vector<bool> seen(instance.agents.size(), false);
  for (const auto& [line, raw] : numbered_lines(text)) {
    auto w = split(raw);
    if (w.empty()) continue;
    if (w[0] != "agent" || w.size() > 3 || w.size() < 2) fail(line, "expected 'agent <id> <moves>'");
    const int id = to_int(w[1], line);
    auto it = index_of.find(id);
    if (it == index_of.end()) fail(line, "unknown agent " + w[1]);
    if (seen[it->second]) fail(line, "duplicate agent " + w[1]);
    seen[it->second] = true;
    const auto& agent = instance.agents[it->second];
    const std::string moves = w.size() == 3 ? w[2] : "";
    TimedPath path{{agent.start}};
    for (std::size_t t = 0; t < moves.size(); ++t) {
      const std::string where = "agent " + std::to_string(id) + " at time " + std::to_string(t);
      auto d = direction_from_char(moves[t]);
      if (!d) fail(line, where + ": unknown move '" + moves[t] + "'");
      if (*d != Direction::Wait && !instance.directions.allows(*d)) {
        fail(line, where + ": move '" + moves[t] + "' is not allowed");
      }
      const Cell next = step(path.cells.back(), *d);
      if (!instance.grid.in_bounds(next)) fail(line, where + ": moves out of bounds to " + to_string(next));
      if (!instance.grid.is_free(next)) fail(line, where + ": moves into obstacle " + to_string(next));
      path.cells.push_back(next);
    }
    const auto targets = instance.admissible_targets(agent);
    if (std::find(targets.begin(), targets.end(), path.cells.back()) == targets.end()) {
      fail(line, "agent " + std::to_string(id) + " ends at " + to_string(path.cells.back()) + ", not at its goal");
    }
    sol.paths[it->second] = std::move(path);
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw InputError("solution has no line for agent " + std::to_string(instance.agents[i].id));
  }
  return sol;
}

std::string write_solution(const Instance& instance, const Solution& solution) {
  if (solution.paths.size() != instance.agents.size()) throw InputError("solution does not match the instance");
  std::ostringstream os;
  for (std::size_t i = 0; i < instance.agents.size(); ++i) {
    os << "agent " << instance.agents[i].id;
    const std::string moves = solution.paths[i].moves();
    if (!moves.empty()) os << " " << moves;
    os << "\n";
  }
  return os.str();
}

ReductionMetadata read_metadata(std::string_view text) {
  ReductionMetadata meta;
  for (const auto& [line, raw] : numbered_lines(text)) {
    auto w = split(raw);
    if (w.empty()) continue;
    auto need = [&, line = line](std::size_t count) {
      if (w.size() < count) fail(line, "too few fields for '" + w[0] + "'");
    };
    auto num = [&, line = line](std::size_t k) { return to_int(w[k], line); };
    if (w[0] == "const") {
      need(3);
      const int v = num(2);
      if (w[1] == "W") meta.W = v;
      else if (w[1] == "U") meta.U = v;
      else if (w[1] == "L") meta.L = v;
      else if (w[1] == "d") meta.d = v;
      else if (w[1] == "six_m") meta.six_m_bound = v;
      else fail(line, "unknown constant '" + w[1] + "'");
    } else if (w[0] == "band") {
      need(3);
      meta.band_top = num(1);
      meta.band_bottom = num(2);
    } else if (w[0] == "opening") {
      need(4);
      Cell c{num(2), num(3)};
      if (w[1] == "c") meta.c = c;
      else if (w[1] == "c'") meta.c_prime = c;
      else fail(line, "unknown opening '" + w[1] + "'");
    } else if (w[0] == "channel") {
      need(5);
      meta.channels.push_back({num(1), num(2), num(3), num(4)});
    } else if (w[0] == "agent") {
      need(8);
      if (w[2] != "clause" || w[5] != "level" || (w[4] != "+" && w[4] != "-")) fail(line, "malformed agent entry");
      ReductionAgent ra;
      ra.agent = num(1);
      ra.clause_id = num(3);
      ra.side = w[4] == "+" ? Side::Positive : Side::Negative;
      ra.level = num(6);
      if (w[7] != "vars") fail(line, "malformed agent entry");
      for (std::size_t k = 8; k < w.size(); ++k) ra.vars.push_back(num(k));
      meta.agents.push_back(ra);
    } else if (w[0] == "target") {
      need(6);
      if (w[4] != "rank") fail(line, "malformed target entry");
      meta.targets.push_back({num(1), {num(2), num(3)}, num(5)});
    } else if (w[0] == "ladder") {
      need(5);
      meta.ladders.push_back({{num(1), num(2)}, {num(3), num(4)}});
    } else {
      fail(line, "unknown metadata entry '" + w[0] + "'");
    }
  }
  std::sort(meta.channels.begin(), meta.channels.end(),
            [](const ChannelInfo& a, const ChannelInfo& b) { return a.var < b.var; });
  for (std::size_t k = 0; k < meta.channels.size(); ++k) {
    if (meta.channels[k].var != static_cast<int>(k) + 1) throw InputError("metadata channels are not 1..n");
  }
  return meta;
}

std::string write_metadata(const ReductionMetadata& meta) {
  std::ostringstream os;
  os << "const W " << meta.W << "\nconst U " << meta.U << "\nconst L " << meta.L << "\nconst d " << meta.d
     << "\nconst six_m " << meta.six_m_bound << "\n";
  os << "band " << meta.band_top << " " << meta.band_bottom << "\n";
  os << "opening c " << meta.c.col << " " << meta.c.row << "\n";
  os << "opening c' " << meta.c_prime.col << " " << meta.c_prime.row << "\n";
  for (const auto& ch : meta.channels) {
    os << "channel " << ch.var << " " << ch.col << " " << ch.row_top << " " << ch.row_bottom << "\n";
  }
  for (const auto& ra : meta.agents) {
    os << "agent " << ra.agent << " clause " << ra.clause_id << " " << sign_char(ra.side) << " level " << ra.level
       << " vars";
    for (int v : ra.vars) os << " " << v;
    os << "\n";
  }
  for (const auto& t : meta.targets) {
    os << "target " << t.agent << " " << t.cell.col << " " << t.cell.row << " rank " << t.rank << "\n";
  }
  for (const auto& l : meta.ladders) {
    os << "ladder " << l.from.col << " " << l.from.row << " " << l.to.col << " " << l.to.row << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
}

}  // namespace gridmapf
