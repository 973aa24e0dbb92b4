#include "gridmapf/formula.hpp"

#include <set>
#include <sstream>

namespace gridmapf {

bool Clause::contains(int var) const { return std::binary_search(vars.begin(), vars.end(), var); }

std::size_t MonotoneFormula::count(Side side) const {
  return static_cast<std::size_t>(
      std::count_if(clauses.begin(), clauses.end(), [&](const Clause& c) { return c.side == side; }));
}

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

int parse_int(const std::string& token, int line) {
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

}  // namespace

MonotoneFormula parse_formula(std::string_view text) {
  MonotoneFormula formula;
  bool have_vars = false;
  std::set<int> ids;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (tok[0] == "vars") {
      if (tok.size() != 2) fail(line, "expected 'vars <n>'");
      if (have_vars) fail(line, "duplicate 'vars' line");
      formula.n = parse_int(tok[1], line);
      if (formula.n < 0) fail(line, "variable count must be non-negative");
      have_vars = true;
    } else if (tok[0] == "clause") {
      if (!have_vars) fail(line, "'clause' before 'vars'");
      if (tok.size() < 4) fail(line, "expected 'clause <id> <+|-> <v1> [v2] [v3]'");
      if (tok.size() > 6) fail(line, "a clause has at most 3 literals");
      Clause c;
      c.id = parse_int(tok[1], line);
      if (!ids.insert(c.id).second) fail(line, "duplicate clause id " + tok[1]);
      if (tok[2] == "+") {
        c.side = Side::Positive;
      } else if (tok[2] == "-") {
        c.side = Side::Negative;
      } else {
        fail(line, "clause sign must be '+' or '-', got '" + tok[2] + "'");
      }
      for (std::size_t k = 3; k < tok.size(); ++k) {
        int v = parse_int(tok[k], line);
        if (v < 1 || v > formula.n) fail(line, "variable " + tok[k] + " out of range 1.." + std::to_string(formula.n));
        if (std::find(c.vars.begin(), c.vars.end(), v) != c.vars.end()) {
          fail(line, "duplicate variable " + tok[k] + " in clause");
        }
        c.vars.push_back(v);
      }
      std::sort(c.vars.begin(), c.vars.end());
      formula.clauses.push_back(std::move(c));
    } else {
      fail(line, "unknown directive '" + tok[0] + "'");
    }
  }
  if (!have_vars) fail(line, "missing 'vars' line");
  return formula;
}

std::string format_formula(const MonotoneFormula& formula) {
  std::ostringstream os;
  os << "vars " << formula.n << "\n";
  for (const auto& c : formula.clauses) {
    os << "clause " << c.id << " " << sign_char(c.side);
    for (int v : c.vars) os << " " << v;
    os << "\n";
  }
  return os.str();
}

bool NestingForest::encloses(int outer, int inner) const {
  for (int p = parent[std::size_t(inner)]; p >= 0; p = parent[std::size_t(p)]) {
    if (p == outer) return true;
  }
  return false;
}

NestingForest validate_planar_monotone(const MonotoneFormula& formula) {
  const auto& cl = formula.clauses;
  const std::size_t m = cl.size();
  NestingForest forest;
  forest.parent.assign(m, -1);
  forest.children.assign(m, {});
  auto name = [&](std::size_t i) { return "clause " + std::to_string(cl[i].id); };

  for (Side side : {Side::Positive, Side::Negative}) {
    std::vector<int> order;
    for (std::size_t i = 0; i < m; ++i) {
      if (cl[i].vars.empty()) throw InputError(name(i) + " has no literals");
      if (cl[i].side == side) order.push_back(int(i));
    }
    // Outer intervals first: by left end, then longer first, then input order.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (cl[a].lo() != cl[b].lo()) return cl[a].lo() < cl[b].lo();
      if (cl[a].hi() != cl[b].hi()) return cl[a].hi() > cl[b].hi();
      return a < b;
    });
    std::vector<int> open;
    for (int i : order) {
      while (!open.empty() && cl[open.back()].hi() < cl[i].lo()) open.pop_back();
      if (!open.empty()) {
        const int top = open.back();
        if (cl[top].hi() < cl[i].hi()) {
          throw InputError(name(top) + " and " + name(i) + " have crossing variable intervals");
        }
        forest.parent[i] = top;
        forest.children[top].push_back(i);
      }
      open.push_back(i);
    }
    std::vector<int> roots;
    for (int i : order) {
      if (forest.parent[i] < 0) roots.push_back(i);
    }
    if (roots.size() > 1) {
      throw InputError(std::string(side == Side::Positive ? "positive" : "negative") + " side has " +
                       std::to_string(roots.size()) + " root clauses; exactly one is required");
    }
    if (!roots.empty()) (side == Side::Positive ? forest.positive_root : forest.negative_root) = roots.front();
  }

  for (std::size_t q = 0; q < m; ++q) {
    for (int a = forest.parent[q]; a >= 0; a = forest.parent[std::size_t(a)]) {
      for (int x : cl[a].vars) {
        if (x > cl[q].lo() && x < cl[q].hi()) {
          throw InputError(name(std::size_t(a)) + " has a leg to x" + std::to_string(x) + " crossing nested " +
                           name(q));
        }
      }
      if (cl[a].vars.size() == 1 && cl[q].vars.size() == 1) {
        throw InputError(name(std::size_t(a)) + " and " + name(q) + " repeat the singleton x" +
                         std::to_string(cl[q].lo()));
      }
    }
  }
  forest.level = nesting_levels(forest);
  return forest;
}

std::vector<int> nesting_levels(const NestingForest& forest) {
  const std::size_t m = forest.parent.size();
  std::vector<int> level(m, -1);
  std::vector<int> stack;
  for (std::size_t s = 0; s < m; ++s) {
    if (level[s] >= 0) continue;
    stack.push_back(int(s));
    while (!stack.empty()) {
      int c = stack.back();
      bool ready = true;
      for (int ch : forest.children[std::size_t(c)]) {
        if (level[std::size_t(ch)] < 0) {
          stack.push_back(ch);
          ready = false;
        }
      }
      if (!ready) continue;
      stack.pop_back();
      int best = -1;
      for (int ch : forest.children[std::size_t(c)]) best = std::max(best, level[std::size_t(ch)]);
      level[std::size_t(c)] = best + 1;
    }
  }
  return level;
}

bool satisfies(const MonotoneFormula& formula, const Assignment& assignment) {
  if (assignment.size() != std::size_t(formula.n)) {
    throw InputError("assignment has " + std::to_string(assignment.size()) + " values for " +
                     std::to_string(formula.n) + " variables");
  }
  for (const auto& c : formula.clauses) {
    const bool want = c.side == Side::Positive;
    bool sat = false;
    for (int v : c.vars) sat = sat || assignment[std::size_t(v - 1)] == want;
    if (!sat) return false;
  }
  return true;
}

std::optional<Assignment> brute_force_sat(const MonotoneFormula& formula, int max_vars) {
  if (formula.n > max_vars) {
    throw ResourceError("brute_force_sat: " + std::to_string(formula.n) + " variables exceed the cap of " +
                        std::to_string(max_vars));
  }
  const int n = formula.n;
  Assignment a(std::size_t(n), false);
  for (unsigned long long bits = 0; bits < (1ull << n); ++bits) {
    for (int v = 0; v < n; ++v) a[std::size_t(v)] = (bits >> (n - 1 - v)) & 1ull;
    if (satisfies(formula, a)) return a;
  }
  return std::nullopt;
}

}  // namespace gridmapf
