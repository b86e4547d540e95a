#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "needlab/harness.hpp"
#include "needlab/prelude.hpp"

using namespace needlab;

namespace {

std::string read_source(const std::string& file) {
  if (file == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Term load(const std::string& file, bool prelude) {
  Term t = parse(read_source(file));
  return prelude ? expand_prelude(t) : t;
}

void print_decomposition(const Term& t) {
  auto d = decompose(t);
  if (auto* a = std::get_if<Answer>(&d)) {
    std::cout << "answer\n  A  = " << print(a->a) << "\n  v  = " << print(a->v) << "\n";
    return;
  }
  const auto& r = std::get<Redex>(d);
  std::cout << "redex on " << r.x.str() << "\n"
            << "  E  = " << print(r.outer) << "\n"
            << "  Â  = " << print(r.a_hat) << "\n"
            << "  A1 = " << print(r.a1) << "\n"
            << "  Ǎ  = " << print(r.a_check) << "\n"
            << "  E' = " << print(r.demand) << "\n"
            << "  A2 = " << print(r.a2) << "\n"
            << "  v  = " << print(r.v) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Call-by-need lambda calculus workbench"};
  app.require_subcommand(1);

  std::string file, machine = "need-sr", pair;
  std::size_t fuel = 1000, count = 100, max_size = 25, depth = 10;
  std::uint64_t seed = 42;
  unsigned jobs = 0;
  bool prelude = false, as_json = false;

  auto* parse_cmd = app.add_subcommand("parse", "Parse and pretty-print a term");
  parse_cmd->add_option("file", file, "Source file, or - for stdin")->required();
  parse_cmd->add_flag("--prelude", prelude, "Expand cons, car and cdr");

  auto machines = CLI::IsMember(machine_names());
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a closed term");
  eval_cmd->add_option("--machine,-m", machine, "Evaluator")->check(machines);
  eval_cmd->add_option("--fuel", fuel, "Step budget");
  eval_cmd->add_flag("--prelude", prelude, "Expand cons, car and cdr");
  eval_cmd->add_option("file", file, "Source file, or - for stdin")->required();

  auto* trace_cmd = app.add_subcommand("trace", "Print every transition");
  trace_cmd->add_option("--machine,-m", machine, "Evaluator")->check(machines);
  trace_cmd->add_option("--fuel", fuel, "Step budget");
  trace_cmd->add_flag("--json", as_json, "JSON output");
  trace_cmd->add_flag("--prelude", prelude, "Expand cons, car and cdr");
  trace_cmd->add_option("file", file, "Source file, or - for stdin")->required();

  auto* dec_cmd = app.add_subcommand("decompose", "Show the standard decomposition");
  dec_cmd->add_flag("--prelude", prelude, "Expand cons, car and cdr");
  dec_cmd->add_option("file", file, "Source file, or - for stdin")->required();

  auto* diff_cmd = app.add_subcommand("diff", "Differential run of all evaluators on a random corpus");
  diff_cmd->add_option("--seed", seed, "First seed");
  diff_cmd->add_option("--count", count, "Corpus size")->check(CLI::PositiveNumber);
  diff_cmd->add_option("--max-size", max_size, "Largest term size")->check(CLI::Range(2, 25));
  diff_cmd->add_option("--fuel", fuel, "Step budget");
  diff_cmd->add_option("--jobs,-j", jobs, "Worker threads (0: all cores)");
  diff_cmd->add_flag("--json", as_json, "Full JSON report");

  auto* sim_cmd = app.add_subcommand("check-sim", "Per-step simulation check");
  sim_cmd->add_option("--pair", pair, "ckh-lstep, ck-need or ck-lstep")->required();
  sim_cmd->add_option("--fuel", fuel, "Transition budget");
  sim_cmd->add_flag("--prelude", prelude, "Expand cons, car and cdr");
  sim_cmd->add_option("file", file, "Source file, or - for stdin")->required();

  auto* ud_cmd = app.add_subcommand("check-ud", "Unique decomposition audit");
  ud_cmd->add_option("--max-size", max_size, "Largest term size")->check(CLI::Range(1, 12));

  auto* cr_cmd = app.add_subcommand("check-cr", "Bounded confluence audit");
  cr_cmd->add_option("--max-size", max_size, "Largest term size")->check(CLI::Range(1, 14));
  cr_cmd->add_option("--depth", depth, "Join depth");
  cr_cmd->add_option("--jobs,-j", jobs, "Worker threads (0: all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*parse_cmd) {
      std::cout << print(load(file, prelude)) << "\n";
      return 0;
    }
    if (*eval_cmd) {
      auto tr = run_eval(load(file, prelude), machine, fuel);
      std::cout << to_string(tr.verdict) << (tr.capped ? " (size cap)" : "") << " after " << tr.steps.size()
                << " steps";
      if (tr.answer) std::cout << ": " << *tr.answer;
      std::cout << "\n";
      return 0;
    }
    if (*trace_cmd) {
      auto tr = run_eval(load(file, prelude), machine, fuel);
      if (as_json)
        std::cout << to_json(tr).dump(2) << "\n";
      else
        std::cout << render(tr);
      return 0;
    }
    if (*dec_cmd) {
      print_decomposition(load(file, prelude));
      return 0;
    }
    if (*diff_cmd) {
      auto r = run_diff(seed, count, max_size, fuel, jobs);
      if (as_json) {
        std::cout << to_json(r).dump(2) << "\n";
      } else {
        std::size_t done = 0;
        for (const auto& row : r.rows) done += row.outcomes[0].verdict == Verdict::done;
        std::cout << "terms " << r.count << ", need-sr done " << done << ", reruns " << r.reruns << ", inconclusive "
                  << r.inconclusive.size() << ", by-name values checked " << r.name_values_checked << " (unchecked "
                  << r.name_values_unchecked << "), mismatches " << r.mismatches.size() << "\n";
        for (const auto& m : r.mismatches) std::cout << to_json(m).dump() << "\n";
      }
      return r.ok() ? 0 : 1;
    }
    if (*sim_cmd) {
      auto r = check_simulation(load(file, prelude), parse_pair(pair), fuel);
      std::cout << to_json(r).dump(2) << "\n";
      return r.ok() ? 0 : 1;
    }
    if (*ud_cmd) {
      auto r = check_unique_decomposition(max_size);
      std::cout << to_json(r).dump(2) << "\n";
      return r.ok() ? 0 : 1;
    }
    if (*cr_cmd) {
      auto r = check_confluence(max_size, depth, jobs);
      std::cout << to_json(r).dump(2) << "\n";
      return r.ok() ? 0 : 1;
    }
  } catch (const SyntaxError& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
