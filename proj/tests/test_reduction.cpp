#include <doctest.h>

#include "helpers.hpp"

using namespace gridmapf;

namespace {

MonotoneFormula formula(int n, const std::vector<std::pair<Side, std::vector<int>>>& clauses) {
  MonotoneFormula f;
  f.n = n;
  for (std::size_t k = 0; k < clauses.size(); ++k) f.clauses.push_back({int(k) + 1, clauses[k].first, clauses[k].second});
  return f;
}

Compiled compile_formula(const MonotoneFormula& f) { return compile(f, validate_planar_monotone(f)); }

bool check_ok(const ConstructionReport& r, int id) {
  for (const auto& c : r.checks) {
    if (c.id == id) return c.ok;
  }
  return false;
}

constexpr Side P = Side::Positive;
constexpr Side N = Side::Negative;

}  // namespace

TEST_CASE("compile a two-clause formula") {
  const auto f = formula(2, {{P, {1, 2}}, {N, {1, 2}}});
  const Compiled c = compile_formula(f);
  CHECK(c.instance.agents.size() == 2);
  CHECK(c.meta.channels.size() == 2);
  CHECK(c.meta.agents.size() == 2);
  CHECK(c.instance.directions.letters() == "UDR");
  CHECK(exists_individually_optimal(c.instance).decision);
  CHECK(verify_construction(c.instance, c.meta).ok());
}

TEST_CASE("compile an empty formula") {
  const Compiled c = compile_formula(formula(2, {}));
  CHECK(c.instance.agents.empty());
  CHECK(c.meta.channels.size() == 2);
  CHECK(exists_individually_optimal(c.instance).decision);
  CHECK(realize_solution(c.instance, c.meta, {true, false}).paths.empty());
  CHECK(verify_construction(c.instance, c.meta).ok());
}

TEST_CASE("column count") {
  const Compiled pair = compile_formula(formula(1, {{P, {1}}, {N, {1}}}));
  CHECK(pair.meta.ladders.empty());
  CHECK(compute_W(pair.meta) <= 12);
  CHECK(compute_W(pair.meta) <= pair.meta.six_m_bound);

  // The column count is the number of columns holding a free cell.
  for (const auto& fx : testing::all_fixtures()) {
    const GridMap& g = fx.compiled.instance.grid;
    int used = 0;
    for (int c = 0; c < g.width(); ++c) {
      bool any = false;
      for (int r = 0; r < g.height(); ++r) any = any || g.is_free({c, r});
      used += any ? 1 : 0;
    }
    CHECK_MESSAGE(compute_W(fx.compiled.meta) == used, fx.name);
  }
}

TEST_CASE("channel length matches a direction-restricted BFS") {
  for (const auto& fx : testing::all_fixtures()) {
    const auto& inst = fx.compiled.instance;
    const auto& meta = fx.compiled.meta;
    if (meta.agents.empty()) continue;
    int longest = 0;
    for (const auto& ra : meta.agents) {
      for (int v : ra.vars) {
        const auto& ch = meta.channel(v);
        const Cell entry{ch.col, ra.side == Side::Positive ? ch.row_top : ch.row_bottom};
        const int d = testing::bfs_distance(inst.grid, inst.agents[std::size_t(ra.agent)].start, entry,
                                            sign_directions(ra.side).motions());
        CHECK(d >= 1);
        CHECK(d <= meta.L);
        longest = std::max(longest, d);
      }
    }
    CHECK_MESSAGE(compute_L(inst, meta) == longest, fx.name);
    CHECK_MESSAGE(meta.L == longest, fx.name);
  }
}

TEST_CASE("construction checks pass on every fixture") {
  for (const auto& fx : testing::all_fixtures()) {
    const auto report = verify_construction(fx.compiled.instance, fx.compiled.meta);
    CHECK(report.checks.size() == 8);
    CHECK_MESSAGE(report.ok(), fx.name << "\n" << report.summary());
  }
}

TEST_CASE("construction checks catch engineered defects") {
  const auto fx = testing::load_fixture(GRIDMAPF_FIXTURE_DIR "/formulas/f04_three_literal_sat.cnf");
  SUBCASE("two same-sign clauses starting at the same cell") {
    Instance broken = fx.compiled.instance;
    std::vector<int> negatives;
    for (const auto& ra : fx.compiled.meta.agents) {
      if (ra.side == Side::Negative) negatives.push_back(ra.agent);
    }
    REQUIRE(negatives.size() == 2);
    broken.agents[std::size_t(negatives[1])].start = broken.agents[std::size_t(negatives[0])].start;
    const auto r = verify_construction(broken, fx.compiled.meta);
    CHECK_FALSE(check_ok(r, 1));
  }
  SUBCASE("a channel shortened by one") {
    Instance broken = fx.compiled.instance;
    const auto& ch = fx.compiled.meta.channel(2);
    broken.grid.set_obstacle({ch.col, ch.row_top});
    const auto r = verify_construction(broken, fx.compiled.meta);
    CHECK_FALSE(check_ok(r, 2));
    CHECK(check_ok(r, 7));
  }
}

TEST_CASE("makespan variant equalizes distances") {
  for (const auto& fx : testing::all_fixtures()) {
    const auto& base = fx.compiled.instance;
    const MakespanVariant mv = makespan_variant(base, fx.compiled.meta);
    for (std::size_t i = 0; i < base.agents.size(); ++i) {
      const int before = testing::bfs_distance(base.grid, base.agents[i].start, base.agents[i].goal,
                                               base.directions.motions());
      const int after = testing::bfs_distance(mv.instance.grid, mv.instance.agents[i].start, mv.instance.agents[i].goal,
                                              mv.instance.directions.motions());
      CHECK(after == mv.d);
      CHECK(mv.extensions[i] == mv.d - before);
    }
    CHECK(mv.meta.d == mv.d);
  }
  // Equal distances already: nothing changes.
  const Instance flat = testing::labeled(GridMap(3, 2), {{{0, 0}, {2, 0}}, {{0, 1}, {2, 1}}});
  const MakespanVariant same = makespan_variant(flat, ReductionMetadata{});
  CHECK(same.extensions == std::vector<int>{0, 0});
  CHECK(same.instance.grid == flat.grid);
  CHECK(same.d == 2);
  // Distances 7 and 9 become 9 and 9.
  const Instance uneven = testing::labeled(GridMap(10, 2), {{{0, 0}, {7, 0}}, {{0, 1}, {9, 1}}});
  const MakespanVariant mv = makespan_variant(uneven, ReductionMetadata{});
  CHECK(mv.extensions == std::vector<int>{2, 0});
  CHECK(mv.d == 9);
}

TEST_CASE("two-colored variant") {
  const auto fx = testing::load_fixture(GRIDMAPF_FIXTURE_DIR "/formulas/f05_nested_level2_sat.cnf");
  const Instance colored = two_colored_variant(fx.compiled.instance, fx.compiled.meta);
  CHECK(colored.teams.at("positive").size() == fx.formula.count(Side::Positive));
  CHECK(colored.teams.at("negative").size() == fx.formula.count(Side::Negative));
  colored.validate();
  for (const auto& a : colored.agents) CHECK(a.team.has_value());
}

TEST_CASE("realize and extract round trip") {
  for (const auto& fx : testing::all_fixtures()) {
    const auto& inst = fx.compiled.instance;
    const auto& meta = fx.compiled.meta;
    const auto model = brute_force_sat(fx.formula);
    if (!model) {
      Assignment all_true(std::size_t(fx.formula.n), true);
      CHECK_THROWS_AS(realize_solution(inst, meta, all_true), InputError);
      continue;
    }
    const Solution s = realize_solution(inst, meta, *model);
    CHECK_MESSAGE(validate_solution(inst, s).ok(), fx.name);
    CHECK(validate_solution(inst, s, ConflictModel::strict()).ok());
    CHECK(is_individually_optimal(inst, s));
    CHECK(satisfies(fx.formula, extract_assignment(inst, meta, s)));

    const Witness w = exists_individually_optimal(inst);
    REQUIRE(w.solution);
    CHECK(satisfies(fx.formula, extract_assignment(inst, meta, *w.solution)));
  }
}

TEST_CASE("extract_assignment rejects solutions that are not individually optimal") {
  const auto fx = testing::load_fixture(GRIDMAPF_FIXTURE_DIR "/formulas/f11_single_literal_sat.cnf");
  Solution s = realize_solution(fx.compiled.instance, fx.compiled.meta, {true});
  auto& p = s.paths[0].cells;
  p.insert(p.begin(), p.front());
  CHECK_THROWS_AS(extract_assignment(fx.compiled.instance, fx.compiled.meta, s), InputError);
}

TEST_CASE("time-L channel occupancy is sign-pure") {
  for (const auto& fx : testing::all_fixtures()) {
    const auto model = brute_force_sat(fx.formula);
    if (!model) continue;
    const auto& meta = fx.compiled.meta;
    const Solution s = realize_solution(fx.compiled.instance, meta, *model);
    std::map<int, std::set<Side>> signs;
    for (const auto& ra : meta.agents) {
      const TimedPath& p = s.paths[std::size_t(ra.agent)];
      if (p.cost() <= meta.L) continue;
      const Cell at = p.at(std::size_t(meta.L));
      bool inside = false;
      for (const auto& ch : meta.channels) {
        if (at.col == ch.col && at.row >= ch.row_top && at.row <= ch.row_bottom) {
          inside = true;
          signs[ch.var].insert(ra.side);
          // The channel matches the truth value the agent relies on.
          CHECK((*model)[std::size_t(ch.var - 1)] == (ra.side == Side::Positive));
        }
      }
      CHECK_MESSAGE(inside, fx.name);
    }
    for (const auto& [var, set] : signs) CHECK(set.size() == 1);
  }
}

TEST_CASE("compilation is deterministic") {
  for (const auto& path : testing::formula_fixtures()) {
    const auto a = testing::load_fixture(path);
    const auto b = testing::load_fixture(path);
    CHECK(write_map(a.compiled.instance.grid) == write_map(b.compiled.instance.grid));
    CHECK(write_agents(a.compiled.instance) == write_agents(b.compiled.instance));
    CHECK(write_metadata(a.compiled.meta) == write_metadata(b.compiled.meta));
  }
}

TEST_CASE("compile respects the size cap") {
  const auto f = formula(2, {{P, {1, 2}}, {N, {1, 2}}});
  CHECK_THROWS_AS(compile(f, validate_planar_monotone(f), {10}), ResourceError);
}

TEST_CASE("random formulas: decision matches satisfiability") {
  std::mt19937 rng(29);
  int compiled = 0;
  for (int trial = 0; trial < 600 && compiled < 120; ++trial) {
    const auto f = testing::random_formula(rng, 1 + trial % 4, 1 + trial % 4);
    NestingForest forest;
    try {
      forest = validate_planar_monotone(f);
    } catch (const InputError&) {
      continue;
    }
    ++compiled;
    const Compiled c = compile(f, forest);
    CHECK(verify_construction(c.instance, c.meta).ok());
    const bool sat = testing::truth_table_sat(f);
    CHECK(exists_individually_optimal(c.instance).decision == sat);
    CHECK(exists_individually_optimal(c.instance, ConflictModel::strict()).decision == sat);
    if (sat) {
      const Solution s = realize_solution(c.instance, c.meta, *brute_force_sat(f));
      CHECK(validate_solution(c.instance, s).ok());
    }
  }
  CHECK(compiled >= 60);
}
