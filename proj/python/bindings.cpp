#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridmapf/gridmapf.hpp"

namespace py = pybind11;
using namespace gridmapf;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grid MAPF: two-direction solver, exhaustive oracles and the monotone planar 3-SAT reduction";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<Cell>(m, "Cell")
      .def(py::init<int, int>(), py::arg("col"), py::arg("row"))
      .def(py::init([](const py::tuple& t) {
        if (t.size() != 2) throw InputError("a cell is a (col, row) pair");
        return Cell{t[0].cast<int>(), t[1].cast<int>()};
      }))
      .def_readwrite("col", &Cell::col)
      .def_readwrite("row", &Cell::row)
      .def(py::self == py::self)
      .def(py::self < py::self)
      .def("__hash__", [](Cell c) { return CellHash{}(c); })
      .def("__iter__", [](Cell c) { return py::iter(py::make_tuple(c.col, c.row)); })
      .def("__repr__", [](Cell c) { return "Cell" + to_string(c); });
  py::implicitly_convertible<py::tuple, Cell>();

  py::enum_<Direction>(m, "Direction")
      .value("Up", Direction::Up)
      .value("Down", Direction::Down)
      .value("Left", Direction::Left)
      .value("Right", Direction::Right)
      .value("Wait", Direction::Wait);

  py::class_<DirectionSet>(m, "DirectionSet")
      .def(py::init([](const std::string& letters, bool waits) { return DirectionSet::parse(letters, waits); }),
           py::arg("letters"), py::arg("waits") = true)
      .def_static("all", &DirectionSet::all)
      .def_static("down_right", &DirectionSet::down_right)
      .def("allows", &DirectionSet::allows)
      .def_property_readonly("letters", &DirectionSet::letters)
      .def_property_readonly("waits_allowed", &DirectionSet::waits_allowed)
      .def("__repr__", [](const DirectionSet& d) { return "DirectionSet('" + d.letters() + "')"; });

  py::class_<GridMap>(m, "GridMap")
      .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
      .def_property_readonly("width", &GridMap::width)
      .def_property_readonly("height", &GridMap::height)
      .def("is_free", &GridMap::is_free)
      .def("set_obstacle", &GridMap::set_obstacle, py::arg("cell"), py::arg("obstacle") = true)
      .def("obstacles", &GridMap::obstacles)
      .def_property_readonly("free_count", &GridMap::free_count);

  py::class_<AgentTask>(m, "AgentTask")
      .def(py::init([](int id, Cell start, Cell goal, std::optional<std::string> team) {
             return AgentTask{id, start, goal, std::move(team)};
           }),
           py::arg("id"), py::arg("start"), py::arg("goal"), py::arg("team") = py::none())
      .def_readwrite("id", &AgentTask::id)
      .def_readwrite("start", &AgentTask::start)
      .def_readwrite("goal", &AgentTask::goal)
      .def_readwrite("team", &AgentTask::team);

  py::class_<Instance>(m, "Instance")
      .def(py::init([](const GridMap& grid, std::vector<AgentTask> agents, const DirectionSet& directions) {
             Instance inst;
             inst.grid = grid;
             inst.agents = std::move(agents);
             inst.directions = directions;
             if (std::any_of(inst.agents.begin(), inst.agents.end(), [](const AgentTask& a) { return a.team; })) {
               derive_teams_from_goals(inst);
             }
             inst.validate();
             return inst;
           }),
           py::arg("grid"), py::arg("agents"), py::arg("directions") = DirectionSet::all())
      .def_readonly("grid", &Instance::grid)
      .def_readonly("agents", &Instance::agents)
      .def_readonly("directions", &Instance::directions)
      .def_readonly("teams", &Instance::teams);

  py::class_<TimedPath>(m, "TimedPath")
      .def(py::init<>())
      .def_readwrite("cells", &TimedPath::cells)
      .def_property_readonly("cost", &TimedPath::cost)
      .def_property_readonly("moves", &TimedPath::moves)
      .def_static("from_moves", &TimedPath::from_moves);

  py::class_<Solution>(m, "Solution")
      .def(py::init<>())
      .def_readwrite("paths", &Solution::paths);

  py::class_<ConflictModel>(m, "ConflictModel")
      .def(py::init([](const std::string& spec) { return ConflictModel::parse(spec); }),
           py::arg("spec") = "vertex,edge")
      .def_static("strict", &ConflictModel::strict)
      .def("__str__", &ConflictModel::to_string);

  py::class_<Conflict>(m, "Conflict")
      .def_readonly("time", &Conflict::time)
      .def_property_readonly("kind", [](const Conflict& c) { return std::string(to_string(c.kind)); })
      .def_readonly("agents", &Conflict::agents)
      .def_readonly("cells", &Conflict::cells);

  py::class_<ConflictReport>(m, "ConflictReport")
      .def_readonly("conflicts", &ConflictReport::conflicts)
      .def_property_readonly("ok", &ConflictReport::ok)
      .def("summary", &ConflictReport::summary);

  m.def("flowtime", &flowtime);
  m.def("makespan", &makespan);
  m.def("validate_solution", &validate_solution, py::arg("instance"), py::arg("solution"),
        py::arg("model") = ConflictModel{});
  m.def("lower_bound_cost", &lower_bound_cost);
  m.def("is_individually_optimal", &is_individually_optimal, py::arg("instance"), py::arg("solution"),
        py::arg("model") = ConflictModel{});

  m.def(
      "solve_two_dir",
      [](const Instance& inst, bool prefer_right) {
        TwoDirOptions opts;
        opts.preference = prefer_right ? MovePreference::RightFirst : MovePreference::DownFirst;
        return solve_two_dir(inst, opts);
      },
      py::arg("instance"), py::arg("prefer_right") = true);
  m.def("weakly_above", &weakly_above);

  py::class_<SearchBudget>(m, "SearchBudget")
      .def(py::init([](long states, double seconds) { return SearchBudget{states, seconds}; }),
           py::arg("max_states") = SearchBudget{}.max_states, py::arg("max_seconds") = SearchBudget{}.max_seconds);

  py::class_<Witness>(m, "Witness")
      .def_readonly("decision", &Witness::decision)
      .def_readonly("solution", &Witness::solution)
      .def_readonly("expanded", &Witness::expanded)
      .def("__bool__", [](const Witness& w) { return w.decision; });

  m.def("exists_individually_optimal", &exists_individually_optimal, py::arg("instance"),
        py::arg("model") = ConflictModel{}, py::arg("budget") = SearchBudget{});
  m.def(
      "enumerate_individually_optimal",
      [](const Instance& inst, const ConflictModel& model, std::size_t limit) {
        return enumerate_individually_optimal(inst, model, limit).solutions;
      },
      py::arg("instance"), py::arg("model") = ConflictModel{}, py::arg("limit") = 200);
  m.def("exists_makespan_at_most", &exists_makespan_at_most, py::arg("instance"), py::arg("bound"),
        py::arg("model") = ConflictModel{}, py::arg("budget") = SearchBudget{});
  m.def("delta", &delta, py::arg("instance"), py::arg("model") = ConflictModel{},
        py::arg("budget") = SearchBudget{});
  m.def(
      "two_colored_decide",
      [](const Instance& inst, const std::string& objective, long bound, const ConflictModel& model) {
        if (objective != "flowtime" && objective != "makespan") throw InputError("objective must be flowtime or makespan");
        return two_colored_decide(inst, objective == "makespan" ? Objective::Makespan : Objective::Flowtime, bound,
                                  model);
      },
      py::arg("instance"), py::arg("objective"), py::arg("bound"), py::arg("model") = ConflictModel{});

  py::enum_<Side>(m, "Side").value("Positive", Side::Positive).value("Negative", Side::Negative);

  py::class_<Clause>(m, "Clause")
      .def_readonly("id", &Clause::id)
      .def_readonly("side", &Clause::side)
      .def_readonly("vars", &Clause::vars);

  py::class_<MonotoneFormula>(m, "MonotoneFormula")
      .def_readonly("n", &MonotoneFormula::n)
      .def_readonly("clauses", &MonotoneFormula::clauses)
      .def("__str__", &format_formula);

  py::class_<NestingForest>(m, "NestingForest")
      .def_readonly("parent", &NestingForest::parent)
      .def_readonly("level", &NestingForest::level)
      .def_readonly("positive_root", &NestingForest::positive_root)
      .def_readonly("negative_root", &NestingForest::negative_root);

  m.def("parse_formula", &parse_formula);
  m.def("validate_planar_monotone", &validate_planar_monotone);
  m.def("brute_force_sat", &brute_force_sat, py::arg("formula"), py::arg("max_vars") = 24);
  m.def("satisfies", &satisfies);

  py::class_<ChannelInfo>(m, "ChannelInfo")
      .def_readonly("var", &ChannelInfo::var)
      .def_readonly("col", &ChannelInfo::col)
      .def_readonly("row_top", &ChannelInfo::row_top)
      .def_readonly("row_bottom", &ChannelInfo::row_bottom);

  py::class_<ReductionMetadata>(m, "ReductionMetadata")
      .def_readonly("W", &ReductionMetadata::W)
      .def_readonly("U", &ReductionMetadata::U)
      .def_readonly("L", &ReductionMetadata::L)
      .def_readonly("d", &ReductionMetadata::d)
      .def_readonly("c", &ReductionMetadata::c)
      .def_readonly("c_prime", &ReductionMetadata::c_prime)
      .def_readonly("channels", &ReductionMetadata::channels);

  py::class_<Compiled>(m, "Compiled")
      .def_readonly("instance", &Compiled::instance)
      .def_readonly("meta", &Compiled::meta);

  py::class_<MakespanVariant>(m, "MakespanVariant")
      .def_readonly("instance", &MakespanVariant::instance)
      .def_readonly("meta", &MakespanVariant::meta)
      .def_readonly("d", &MakespanVariant::d)
      .def_readonly("extensions", &MakespanVariant::extensions);

  py::class_<ConstructionCheck>(m, "ConstructionCheck")
      .def_readonly("id", &ConstructionCheck::id)
      .def_readonly("name", &ConstructionCheck::name)
      .def_readonly("ok", &ConstructionCheck::ok)
      .def_readonly("detail", &ConstructionCheck::detail);

  py::class_<ConstructionReport>(m, "ConstructionReport")
      .def_readonly("checks", &ConstructionReport::checks)
      .def_property_readonly("ok", &ConstructionReport::ok)
      .def("summary", &ConstructionReport::summary);

  m.def(
      "compile",
      [](const MonotoneFormula& f) { return compile(f, validate_planar_monotone(f)); }, py::arg("formula"));
  m.def("compute_L", &compute_L);
  m.def("makespan_variant", &makespan_variant);
  m.def("two_colored_variant", &two_colored_variant);
  m.def("realize_solution", &realize_solution);
  m.def("extract_assignment", &extract_assignment);
  m.def("verify_construction", &verify_construction);

  m.def("read_map", [](const std::string& text) { return read_map(text); });
  m.def("write_map", &write_map);
  m.def("read_agents", [](const std::string& text, const GridMap& grid) { return read_agents(text, grid); });
  m.def("write_agents", &write_agents);
  m.def("read_solution", [](const std::string& text, const Instance& inst) { return read_solution(text, inst); });
  m.def("write_solution", &write_solution);
  m.def("read_metadata", [](const std::string& text) { return read_metadata(text); });
  m.def("write_metadata", &write_metadata);

  m.def(
      "render_ascii",
      [](const Instance& inst, const Solution* solution, std::optional<int> time) {
        return render_ascii(inst, solution, {time});
      },
      py::arg("instance"), py::arg("solution") = nullptr, py::arg("time") = py::none());
  m.def(
      "render_svg",
      [](const Instance& inst, const Solution* solution, const ReductionMetadata* meta) {
        return render_svg(inst, solution, meta);
      },
      py::arg("instance"), py::arg("solution") = nullptr, py::arg("meta") = nullptr);
}
