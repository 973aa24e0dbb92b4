// gridmapf command-line tool. Exit codes: 0 yes/solution/valid, 1
// no/unsat/invalid, 2 usage, input or resource error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gridmapf/gridmapf.hpp"

using namespace gridmapf;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

struct Files {
  std::string map;
  std::string agents;
  std::string solution;
  std::string meta;
  std::string out;
};

Instance load_instance(const Files& f) {
  const GridMap grid = read_map(read_file(f.map));
  return read_agents(read_file(f.agents), grid);
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

SearchBudget make_budget(long states, double seconds) {
  SearchBudget b;
  if (states > 0) b.max_states = states;
  if (seconds > 0) b.max_seconds = seconds;
  return b;
}

void add_instance_options(CLI::App* cmd, Files& f) {
  cmd->add_option("--map", f.map, "Map file")->required();
  cmd->add_option("--agents", f.agents, "Agents file")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid multi-agent path finding tools"};
  app.require_subcommand(1);

  Files files;
  std::string conflicts = "vertex,edge";
  long budget_states = 0;
  double budget_seconds = 0;
  auto add_search_options = [&](CLI::App* cmd) {
    cmd->add_option("--conflicts", conflicts, "Forbidden conflicts: vertex,edge[,following,cycle]");
    cmd->add_option("--budget", budget_states, "Maximum number of expanded joint states");
    cmd->add_option("--time-limit", budget_seconds, "Maximum search time in seconds");
  };

  auto* compile_cmd = app.add_subcommand("compile", "Compile a monotone planar formula into a grid instance");
  std::string formula_path;
  std::string variant = "base";
  bool two_colored = false;
  long max_cells = CompileOptions{}.max_cells;
  compile_cmd->add_option("--formula", formula_path, "Formula file")->required();
  compile_cmd->add_option("--out", files.out, "Output prefix for .map, .agents and .meta files")->required();
  compile_cmd->add_option("--variant", variant, "base or makespan")->check(CLI::IsMember({"base", "makespan"}));
  compile_cmd->add_flag("--two-colored", two_colored, "Emit positive/negative teams");
  compile_cmd->add_option("--max-cells", max_cells, "Upper bound on the grid area");

  auto* solve_cmd = app.add_subcommand("solve2dir", "Individually optimal planning for down/right agents");
  std::string prefer = "right";
  add_instance_options(solve_cmd, files);
  solve_cmd->add_option("--out", files.out, "Solution file (stdout by default)");
  solve_cmd->add_option("--prefer", prefer, "right or down")->check(CLI::IsMember({"right", "down"}));

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive joint-state decision procedures");
  std::vector<std::string> mode;
  std::string objective = "flowtime";
  std::optional<long> bound;
  add_instance_options(oracle_cmd, files);
  oracle_cmd->add_option("--mode", mode, "indopt | flowtime | makespan-le <d> | two-colored")
      ->required()
      ->expected(1, 2);
  oracle_cmd->add_option("--objective", objective, "two-colored objective: flowtime or makespan")
      ->check(CLI::IsMember({"flowtime", "makespan"}));
  oracle_cmd->add_option("--bound", bound, "Objective bound for makespan-le and two-colored (flowtime defaults to the best assignment lower bound)");
  oracle_cmd->add_option("--meta", files.meta, "Reduction metadata; its d is the default makespan bound");
  oracle_cmd->add_option("--out", files.out, "Write the witness solution here");
  add_search_options(oracle_cmd);

  auto* delta_cmd = app.add_subcommand("delta", "Print optimal flowtime minus the lower bound");
  add_instance_options(delta_cmd, files);
  add_search_options(delta_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Check a compiled layout or validate a solution");
  add_instance_options(verify_cmd, files);
  verify_cmd->add_option("--meta", files.meta, "Reduction metadata: run the construction checks");
  verify_cmd->add_option("--solution", files.solution, "Solution file to validate");
  verify_cmd->add_option("--conflicts", conflicts, "Forbidden conflicts: vertex,edge[,following,cycle]");

  auto* render_cmd = app.add_subcommand("render", "Draw an instance as ASCII or SVG");
  std::string format = "ascii";
  std::optional<int> time;
  add_instance_options(render_cmd, files);
  render_cmd->add_option("--solution", files.solution, "Solution to overlay");
  render_cmd->add_option("--meta", files.meta, "Reduction metadata to tag (SVG)");
  render_cmd->add_option("--format", format, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));
  render_cmd->add_option("--time", time, "Draw agents at this time step (ASCII)");
  render_cmd->add_option("--out", files.out, "Output file (stdout by default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (compile_cmd->parsed()) {
      const MonotoneFormula formula = read_formula(read_file(formula_path));
      const NestingForest forest = validate_planar_monotone(formula);
      Compiled c = compile(formula, forest, {max_cells});
      Instance inst = c.instance;
      ReductionMetadata meta = c.meta;
      if (variant == "makespan") {
        MakespanVariant mv = makespan_variant(c.instance, c.meta);
        inst = std::move(mv.instance);
        meta = std::move(mv.meta);
      }
      if (two_colored) inst = two_colored_variant(inst, meta);
      write_file(files.out + ".map", write_map(inst.grid));
      write_file(files.out + ".agents", write_agents(inst));
      write_file(files.out + ".meta", write_metadata(meta));
      std::cout << "grid " << inst.grid.width() << "x" << inst.grid.height() << ", " << inst.agents.size()
                << " agents, L=" << meta.L;
      if (variant == "makespan") std::cout << ", d=" << meta.d;
      std::cout << "\n";
      return kYes;
    }

    const Instance inst = load_instance(files);
    const ConflictModel model = ConflictModel::parse(conflicts);
    const SearchBudget budget = make_budget(budget_states, budget_seconds);

    if (solve_cmd->parsed()) {
      TwoDirOptions opts;
      opts.preference = prefer == "down" ? MovePreference::DownFirst : MovePreference::RightFirst;
      const auto sol = solve_two_dir(inst, opts);
      if (!sol) {
        std::cout << "NO\n";
        return kNo;
      }
      emit(files.out, write_solution(inst, *sol));
      return kYes;
    }

    if (oracle_cmd->parsed()) {
      const std::string& m = mode.front();
      if (m != "makespan-le" && mode.size() > 1) throw CLI::ValidationError("--mode", m + " takes no argument");
      if (!bound && !files.meta.empty()) {
        const ReductionMetadata meta = read_metadata(read_file(files.meta));
        if (meta.d > 0) bound = meta.d;
      }
      Witness w;
      if (m == "indopt") {
        w = exists_individually_optimal(inst, model, budget);
      } else if (m == "flowtime") {
        const auto best = optimal_flowtime(inst, model, budget);
        if (!best) {
          std::cout << "NO\n";
          return kNo;
        }
        std::cout << "flowtime " << best->cost << "\n";
        if (!files.out.empty()) write_file(files.out, write_solution(inst, best->solution));
        return kYes;
      } else if (m == "makespan-le") {
        const long d = mode.size() > 1 ? std::stol(mode[1]) : bound.value_or(-1);
        if (d < 0) throw CLI::ValidationError("--mode", "makespan-le needs a bound");
        w = exists_makespan_at_most(inst, int(d), model, budget);
      } else if (m == "two-colored") {
        const Objective obj = objective == "makespan" ? Objective::Makespan : Objective::Flowtime;
        long b = 0;
        if (bound) {
          b = *bound;
        } else if (obj == Objective::Flowtime) {
          const auto lb = assignment_minimal_lower_bound(inst);
          if (!lb) {
            std::cout << "NO\n";
            return kNo;
          }
          b = *lb;
        } else {
          throw CLI::ValidationError("--bound", "two-colored makespan needs --bound");
        }
        w = two_colored_decide(inst, obj, b, model, budget);
      } else {
        throw CLI::ValidationError("--mode", "unknown mode '" + m + "'");
      }
      std::cout << (w.decision ? "YES" : "NO") << " (expanded " << w.expanded << ")\n";
      if (w.decision && w.solution && !files.out.empty()) write_file(files.out, write_solution(inst, *w.solution));
      return w.decision ? kYes : kNo;
    }

    if (delta_cmd->parsed()) {
      const auto d = delta(inst, model, budget);
      if (!d) {
        std::cout << "infeasible\n";
        return kNo;
      }
      std::cout << *d << "\n";
      return kYes;
    }

    if (verify_cmd->parsed()) {
      if (files.meta.empty() == files.solution.empty()) {
        throw CLI::ValidationError("verify", "give exactly one of --meta or --solution");
      }
      if (!files.meta.empty()) {
        const ConstructionReport r = verify_construction(inst, read_metadata(read_file(files.meta)));
        std::cout << r.summary();
        return r.ok() ? kYes : kNo;
      }
      const Solution sol = read_solution(read_file(files.solution), inst);
      const ConflictReport r = validate_solution(inst, sol, model);
      std::cout << (r.ok() ? "valid" : r.summary()) << "\n";
      if (r.ok()) {
        std::cout << "flowtime " << flowtime(sol) << " makespan " << makespan(sol) << " individually optimal "
                  << (is_individually_optimal(inst, sol, model) ? "yes" : "no") << "\n";
      }
      return r.ok() ? kYes : kNo;
    }

    if (render_cmd->parsed()) {
      std::optional<Solution> sol;
      if (!files.solution.empty()) sol = read_solution(read_file(files.solution), inst);
      std::optional<ReductionMetadata> meta;
      if (!files.meta.empty()) meta = read_metadata(read_file(files.meta));
      const Solution* sp = sol ? &*sol : nullptr;
      if (format == "svg") {
        emit(files.out, render_svg(inst, sp, meta ? &*meta : nullptr));
      } else {
        emit(files.out, render_ascii(inst, sp, {time}));
      }
      return kYes;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
