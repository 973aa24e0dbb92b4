#include <doctest.h>

#include "helpers.hpp"

using namespace gridmapf;
using testing::labeled;

TEST_CASE("neighbors follow the direction set and skip obstacles") {
  GridMap g(3, 3);
  CHECK(neighbors(g, {1, 1}, DirectionSet::down_right()) == std::vector<Cell>{{1, 2}, {2, 1}});
  CHECK(neighbors(GridMap(1, 1), {0, 0}, DirectionSet::all()).empty());
  g.set_obstacle({2, 1});
  CHECK(neighbors(g, {1, 1}, DirectionSet::down_right()) == std::vector<Cell>{{1, 2}});
  CHECK_THROWS_AS(neighbors(g, {2, 1}, DirectionSet::all()), InputError);
  CHECK_THROWS_AS(neighbors(g, {5, 0}, DirectionSet::all()), InputError);
}

TEST_CASE("direction sets parse and print in canonical order") {
  CHECK(DirectionSet::parse("rd").letters() == "DR");
  CHECK(DirectionSet::parse("RLDU", false).letters() == "UDLR");
  CHECK_FALSE(DirectionSet::parse("R", false).waits_allowed());
  CHECK_THROWS_AS(DirectionSet::parse("RX"), InputError);
  CHECK(direction_between({0, 0}, {0, 1}) == Direction::Down);
  CHECK(direction_between({0, 0}, {0, 0}) == Direction::Wait);
  CHECK_FALSE(direction_between({0, 0}, {1, 1}).has_value());
}

TEST_CASE("shortest distance fields") {
  GridMap g(3, 3);
  const auto f = shortest_dist_field(g, {2, 1}, DirectionSet::down_right());
  CHECK(f.at({0, 0}) == 3);
  CHECK(f.at({2, 1}) == 0);
  CHECK_FALSE(f.reachable({2, 2}));

  GridMap corridor(3, 1);
  corridor.set_obstacle({1, 0});
  CHECK_FALSE(shortest_dist_field(corridor, {2, 0}, DirectionSet{{Direction::Right}}).reachable({0, 0}));
}

TEST_CASE("distance fields agree with an independent BFS on random grids") {
  std::mt19937 rng(3);
  std::bernoulli_distribution blocked(0.25);
  for (int trial = 0; trial < 30; ++trial) {
    GridMap g(7, 6);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 7; ++c) g.set_obstacle({c, r}, blocked(rng));
    g.set_obstacle({3, 3}, false);
    for (const DirectionSet& dirs : {DirectionSet::all(), DirectionSet::down_right(), DirectionSet::parse("UDR")}) {
      const auto back = shortest_dist_field(g, {3, 3}, dirs);
      const auto fwd = forward_dist_field(g, {3, 3}, dirs);
      for (int r = 0; r < 6; ++r) {
        for (int c = 0; c < 7; ++c) {
          CHECK(back.at({c, r}) == testing::bfs_distance(g, {c, r}, {3, 3}, dirs.motions()));
          CHECK(fwd.at({c, r}) == testing::bfs_distance(g, {3, 3}, {c, r}, dirs.motions()));
        }
      }
    }
  }
}

TEST_CASE("validate_solution reports each conflict kind") {
  SUBCASE("edge swap") {
    const Instance inst = labeled(GridMap(2, 1), {{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}});
    const Solution s{{TimedPath{{{0, 0}, {1, 0}}}, TimedPath{{{1, 0}, {0, 0}}}}};
    const auto r = validate_solution(inst, s);
    CHECK(r.conflicts.size() == 1);
    CHECK(r.count(ConflictKind::Edge) == 1);
    CHECK(r.conflicts[0].time == 0);
  }
  SUBCASE("vertex at t=1") {
    const Instance inst = labeled(GridMap(3, 2), {{{0, 0}, {1, 1}}, {{2, 0}, {0, 0}}});
    const Solution s{{TimedPath{{{0, 0}, {1, 0}, {1, 1}}}, TimedPath{{{2, 0}, {1, 0}, {0, 0}}}}};
    const auto r = validate_solution(inst, s);
    CHECK(r.conflicts.size() == 1);
    CHECK(r.count(ConflictKind::Vertex) == 1);
    CHECK(r.conflicts[0].time == 1);
  }
  SUBCASE("following is only a conflict when forbidden") {
    const Instance inst = labeled(GridMap(3, 1), {{{0, 0}, {1, 0}}, {{1, 0}, {2, 0}}});
    const Solution s{{TimedPath{{{0, 0}, {1, 0}}}, TimedPath{{{1, 0}, {2, 0}}}}};
    CHECK(validate_solution(inst, s).ok());
    const auto r = validate_solution(inst, s, ConflictModel::parse("vertex,edge,following"));
    CHECK(r.conflicts.size() == 1);
    CHECK(r.count(ConflictKind::Following) == 1);
  }
  SUBCASE("rotation cycle") {
    const Instance inst =
        labeled(GridMap(2, 2), {{{0, 0}, {1, 0}}, {{1, 0}, {1, 1}}, {{1, 1}, {0, 1}}, {{0, 1}, {0, 0}}});
    const Solution s{{TimedPath{{{0, 0}, {1, 0}}}, TimedPath{{{1, 0}, {1, 1}}}, TimedPath{{{1, 1}, {0, 1}}},
                      TimedPath{{{0, 1}, {0, 0}}}}};
    CHECK(validate_solution(inst, s).ok());
    CHECK(validate_solution(inst, s, ConflictModel::parse("vertex,edge,cycle")).count(ConflictKind::Cycle) == 1);
  }
  SUBCASE("malformed paths") {
    GridMap g(3, 1);
    g.set_obstacle({1, 0});
    const Instance inst = labeled(g, {{{0, 0}, {2, 0}}});
    CHECK(validate_solution(inst, Solution{{TimedPath{{{0, 0}, {2, 0}}}}}).count(ConflictKind::Teleport) == 1);
    const Instance open = labeled(GridMap(3, 1), {{{0, 0}, {2, 0}}}, DirectionSet::parse("R"));
    CHECK(validate_solution(open, Solution{{TimedPath{{{0, 0}, {1, 0}}}}}).count(ConflictKind::BadGoal) == 1);
    CHECK(validate_solution(open, Solution{{TimedPath{{{0, 0}, {1, 0}, {0, 0}, {1, 0}, {2, 0}}}}})
              .count(ConflictKind::DisallowedMove) == 1);
  }
  SUBCASE("agent resting on its goal blocks later arrivals") {
    const Instance inst = labeled(GridMap(3, 1), {{{1, 0}, {1, 0}}, {{0, 0}, {2, 0}}});
    const Solution s{{TimedPath{{{1, 0}}}, TimedPath{{{0, 0}, {1, 0}, {2, 0}}}}};
    CHECK(validate_solution(inst, s).count(ConflictKind::Vertex) == 1);
  }
}

TEST_CASE("flowtime and makespan") {
  auto path_of_cost = [](int cost) {
    TimedPath p;
    for (int k = 0; k <= cost; ++k) p.cells.push_back({k, 0});
    return p;
  };
  CHECK(flowtime(Solution{{path_of_cost(3), path_of_cost(2)}}) == 5);
  CHECK(makespan(Solution{{path_of_cost(3), path_of_cost(2)}}) == 3);
  CHECK(flowtime(Solution{{path_of_cost(0)}}) == 0);
  CHECK(makespan(Solution{{path_of_cost(0)}}) == 0);
  CHECK(flowtime(Solution{{path_of_cost(1), path_of_cost(1), path_of_cost(4)}}) == 6);
  CHECK(makespan(Solution{{path_of_cost(1), path_of_cost(1), path_of_cost(4)}}) == 4);
  // Trailing rests do not count, earlier waits do.
  CHECK(TimedPath{{{0, 0}, {1, 0}, {1, 0}, {1, 0}}}.cost() == 1);
  CHECK(TimedPath{{{0, 0}, {0, 0}, {1, 0}}}.cost() == 2);
}

TEST_CASE("lower_bound_cost") {
  const Instance cross = labeled(GridMap(3, 3), {{{0, 1}, {2, 1}}, {{1, 0}, {1, 2}}});
  CHECK(lower_bound_cost(cross) == 4);
  CHECK(lower_bound_cost(labeled(GridMap(3, 3), {{{0, 0}, {0, 0}}, {{2, 2}, {2, 2}}})) == 0);

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coord(0, 5);
  GridMap g(6, 6);
  for (Cell c : {Cell{2, 1}, Cell{2, 2}, Cell{2, 3}, Cell{4, 4}}) g.set_obstacle(c);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = labeled(g, {});
    std::set<Cell> used_s, used_g;
    long expect = 0;
    while (inst.agents.size() < 5) {
      Cell s{coord(rng), coord(rng)}, t{coord(rng), coord(rng)};
      if (!g.is_free(s) || !g.is_free(t) || used_s.count(s) || used_g.count(t)) continue;
      used_s.insert(s);
      used_g.insert(t);
      inst.agents.push_back({int(inst.agents.size()), s, t, {}});
      expect += testing::bfs_distance(g, s, t, DirectionSet::all().motions());
    }
    CHECK(lower_bound_cost(inst) == expect);
  }
}

TEST_CASE("is_individually_optimal") {
  const Instance inst = labeled(GridMap(3, 2), {{{0, 0}, {2, 0}}, {{0, 1}, {2, 1}}});
  const Solution straight{{TimedPath{{{0, 0}, {1, 0}, {2, 0}}}, TimedPath{{{0, 1}, {1, 1}, {2, 1}}}}};
  CHECK(is_individually_optimal(inst, straight));
  const Solution waiting{{TimedPath{{{0, 0}, {0, 0}, {1, 0}, {2, 0}}}, TimedPath{{{0, 1}, {1, 1}, {2, 1}}}}};
  CHECK_FALSE(is_individually_optimal(inst, waiting));
  const Solution invalid{{TimedPath{{{0, 0}, {1, 0}, {1, 1}}}, TimedPath{{{0, 1}, {1, 1}, {2, 1}}}}};
  CHECK_THROWS_AS(is_individually_optimal(inst, invalid), InputError);
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(labeled(GridMap(3, 1), {{{0, 0}, {1, 0}}, {{0, 0}, {2, 0}}}).validate(), InputError);
  CHECK_THROWS_AS(labeled(GridMap(3, 1), {{{0, 0}, {1, 0}}, {{2, 0}, {1, 0}}}).validate(), InputError);
  GridMap g(2, 1);
  g.set_obstacle({1, 0});
  CHECK_THROWS_AS(labeled(g, {{{0, 0}, {1, 0}}}).validate(), InputError);
  Instance teams = labeled(GridMap(3, 1), {{{0, 0}, {1, 0}}, {{2, 0}, {2, 0}}});
  teams.agents[0].team = "a";
  teams.agents[1].team = "a";
  derive_teams_from_goals(teams);
  CHECK(teams.teams.at("a") == std::vector<Cell>{{1, 0}, {2, 0}});
  CHECK(teams.admissible_targets(teams.agents[0]).size() == 2);
  teams.validate();
}

TEST_CASE("conflict model parsing round trips") {
  CHECK(ConflictModel::parse("vertex,edge") == ConflictModel::paper_default());
  CHECK(ConflictModel::parse("vertex,edge,following,cycle") == ConflictModel::strict());
  CHECK(ConflictModel::strict().to_string() == "vertex,edge,following,cycle");
  CHECK_THROWS_AS(ConflictModel::parse("vertex,diagonal"), InputError);
}
