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

constexpr Side P = Side::Positive;
constexpr Side N = Side::Negative;

std::string error_of(std::string_view text) {
  try {
    parse_formula(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

std::string planar_error(const MonotoneFormula& f) {
  try {
    validate_planar_monotone(f);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse_formula") {
  const auto f = parse_formula("vars 2\nclause 1 + 1 2\nclause 2 - 1 2\n");
  CHECK(f.n == 2);
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0].side == Side::Positive);
  CHECK(f.clauses[1].side == Side::Negative);
  CHECK(f.count(Side::Positive) == 1);

  const auto empty = parse_formula("# nothing\nvars 3\n");
  CHECK(empty.n == 3);
  CHECK(empty.clauses.empty());
  CHECK(validate_planar_monotone(empty).level.empty());

  CHECK(error_of("vars 2\nclause 1 + 1 1 2\n").find("line 2") != std::string::npos);
  CHECK(error_of("vars 2\nclause 1 + 1 1 2\n").find("duplicate") != std::string::npos);
  CHECK(error_of("vars 2\nclause 1 + 3\n").find("line 2") != std::string::npos);
  CHECK(error_of("vars 4\nclause 1 + 1 2 3 4\n").find("line 2") != std::string::npos);
  CHECK(error_of("vars 2\nclause 1 * 1\n").find("line 2") != std::string::npos);
  CHECK(error_of("clause 1 + 1\n") != "");
  CHECK(error_of("vars 2\nfoo\n").find("line 2") != std::string::npos);
}

TEST_CASE("format and parse round trip") {
  for (const auto& path : testing::formula_fixtures()) {
    const auto f = parse_formula(read_file(path.string()));
    const std::string canonical = format_formula(f);
    const auto again = parse_formula(canonical);
    CHECK(format_formula(again) == canonical);
    CHECK(again.n == f.n);
    CHECK(again.clauses.size() == f.clauses.size());
  }
}

TEST_CASE("nesting forest") {
  SUBCASE("containment gives parent and levels") {
    const auto forest = validate_planar_monotone(formula(4, {{P, {1, 4}}, {P, {2, 3}}}));
    CHECK(forest.parent[1] == 0);
    CHECK(forest.parent[0] == -1);
    CHECK(forest.level == std::vector<int>{1, 0});
    CHECK(forest.positive_root == 0);
    CHECK_FALSE(forest.negative_root.has_value());
    CHECK(forest.encloses(0, 1));
    CHECK_FALSE(forest.encloses(1, 0));
  }
  SUBCASE("crossing intervals") {
    CHECK(planar_error(formula(4, {{P, {1, 3}}, {P, {2, 4}}})).find("crossing") != std::string::npos);
  }
  SUBCASE("intervals sharing an endpoint count as crossing") {
    CHECK(planar_error(formula(5, {{P, {1, 3}}, {P, {3, 5}}})).find("crossing") != std::string::npos);
  }
  SUBCASE("a literal inside a nested clause") {
    CHECK(planar_error(formula(5, {{P, {1, 3, 5}}, {P, {2, 4}}})).find("leg to x3") != std::string::npos);
  }
  SUBCASE("two roots on one side") {
    CHECK(planar_error(formula(4, {{P, {1, 2}}, {P, {3, 4}}})).find("positive side has") != std::string::npos);
  }
  SUBCASE("repeated singleton") {
    CHECK(planar_error(formula(3, {{N, {2}}, {N, {2}}, {N, {1, 3}}})).find("singleton") != std::string::npos);
  }
  SUBCASE("sides are independent") {
    const auto forest = validate_planar_monotone(formula(3, {{P, {1, 3}}, {N, {1, 3}}, {N, {2}}}));
    CHECK(forest.level == std::vector<int>{0, 1, 0});
    CHECK(forest.negative_root == 1);
  }
}

TEST_CASE("nesting levels") {
  const auto chain = validate_planar_monotone(formula(6, {{P, {1, 6}}, {P, {2, 5}}, {P, {3, 4}}}));
  CHECK(nesting_levels(chain) == std::vector<int>{2, 1, 0});
  CHECK(nesting_levels(validate_planar_monotone(formula(2, {{P, {1, 2}}}))) == std::vector<int>{0});
  const auto star = validate_planar_monotone(formula(8, {{P, {1, 8}}, {P, {2, 3}}, {P, {4, 5}}, {P, {6, 7}}}));
  CHECK(nesting_levels(star) == std::vector<int>{1, 0, 0, 0});
  CHECK(star.children[0].size() == 3);
}

TEST_CASE("brute_force_sat") {
  const auto two = formula(2, {{P, {1, 2}}, {N, {1, 2}}});
  const auto model = brute_force_sat(two);
  REQUIRE(model);
  CHECK(*model == Assignment{false, true});
  CHECK(satisfies(two, *model));
  CHECK_FALSE(satisfies(two, Assignment{true, true}));
  CHECK_FALSE(brute_force_sat(formula(1, {{P, {1}}, {N, {1}}})).has_value());
  CHECK(brute_force_sat(formula(2, {})) == Assignment{false, false});
  CHECK_THROWS_AS(brute_force_sat(formula(25, {})), ResourceError);
}

TEST_CASE("brute_force_sat agrees with a truth table on random formulas") {
  std::mt19937 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto f = testing::random_formula(rng, 1 + trial % 4, 1 + trial % 5);
    const auto model = brute_force_sat(f);
    CHECK(model.has_value() == testing::truth_table_sat(f));
    if (model) CHECK(satisfies(f, *model));
    ++checked;
  }
  CHECK(checked == 400);
}

TEST_CASE("fixture names match their satisfiability") {
  for (const auto& path : testing::formula_fixtures()) {
    const auto f = parse_formula(read_file(path.string()));
    const std::string stem = path.stem().string();
    const bool named_sat = stem.size() >= 4 && stem.substr(stem.size() - 4) == "_sat";
    CHECK_MESSAGE(testing::truth_table_sat(f) == named_sat, stem);
    validate_planar_monotone(f);
  }
}
