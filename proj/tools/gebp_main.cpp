#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gebp/baselines.hpp"
#include "gebp/eptas.hpp"
#include "gebp/generator.hpp"
#include "gebp/io.hpp"
#include "gebp/model.hpp"
#include "gebp/variant.hpp"

namespace {

using namespace gebp;

Epsilon pick_epsilon(const std::string& flag, const std::optional<Epsilon>& from_file) {
  if (!flag.empty()) return parse_epsilon(flag);
  if (from_file) return *from_file;
  return Epsilon(2);
}

void emit(const Json& json, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << json.dump(2) << "\n";
  } else {
    write_json(out_path, json);
    std::cout << "wrote " << out_path << "\n";
  }
}

struct SolveArgs {
  std::string instance;
  std::string algo = "eptas";
  std::string epsilon;
  std::string out;
  int threads = 1;
  bool eager_pricing = false;
};

int run_solve(const SolveArgs& args) {
  InstanceFile file = load_instance(args.instance);
  Epsilon eps = pick_epsilon(args.epsilon, file.epsilon);

  SolutionFile solution;
  Json audit = Json::object();
  audit["algorithm"] = args.algo;
  if (args.algo == "eptas") {
    EptasOptions options;
    options.lazy_pricing = !args.eager_pricing;
    options.threads = args.threads;
    RealizedSolution result = solve(file.instance, eps, options);
    solution.assignment = result.assignment;
    solution.cost = result.cost;
    audit["epsilon"] = epsilon_string(eps);
    audit["fallback_used"] = result.audit.fallback_used;
    audit["block_count"] = result.audit.block_count;
    audit["deleted_machines"] = result.audit.deleted_machine_count;
    audit["path_length"] = result.audit.path_length.str();
    audit["realized_core_cost"] = result.audit.realized_core_cost.str();
    if (result.audit.path_length.is_positive()) {
      audit["realized_over_path"] =
          (result.audit.realized_core_cost / result.audit.path_length).str();
    }
    audit["realization_bound_ok"] = result.audit.realization_bound_ok;
    audit["aux_subproblems_solved"] = result.audit.aux_solve_count;
  } else if (args.algo == "greedy" || args.algo == "lpt") {
    HeuristicResult result =
        args.algo == "greedy" ? list_scheduling(file.instance) : lpt(file.instance);
    solution.assignment = std::move(result.assignment);
    solution.cost = result.cost;
    audit["instance_class"] = to_string(result.tag);
  } else {
    auto [assignment, cost] = brute_force(file.instance);
    solution.assignment = std::move(assignment);
    solution.cost = cost;
    audit["optimal"] = true;
  }
  audit["cost_approx"] = solution.cost.to_double();
  solution.audit = std::move(audit);
  emit(solution_to_json(solution), args.out);
  return 0;
}

struct VariantArgs {
  std::string instance;
  std::string mode = "exact";
  std::string epsilon;
  std::string out;
};

int run_variant(const VariantArgs& args) {
  TypedFile file = load_typed(args.instance);
  Epsilon eps = pick_epsilon(args.epsilon, file.epsilon);
  BpucMode mode = args.mode == "exact" ? BpucMode::exact : BpucMode::greedy;
  TypedSolution solution = prc_solve(file.instance, eps, mode);
  Json json = typed_solution_to_json(solution);
  json["mode"] = args.mode;
  json["epsilon"] = epsilon_string(eps);
  json["cost_approx"] = solution.cost.to_double();
  emit(json, args.out);
  return 0;
}

struct GenArgs {
  std::uint64_t seed = 1;
  int n = 8;
  int m = 3;
  std::string cls = "general";
  std::string out;
};

int run_gen(const GenArgs& args) {
  GenClass cls = parse_gen_class(args.cls);
  Json json = cls == GenClass::typed
                  ? typed_to_json(generate_typed(args.seed, args.n, args.m), std::nullopt)
                  : instance_to_json(generate_instance(args.seed, args.n, args.m, cls),
                                     std::nullopt);
  emit(json, args.out);
  return 0;
}

struct BenchArgs {
  std::string dir;
  std::string algos = "eptas,greedy,lpt,brute";
  std::string epsilon = "1/2";
  std::string csv;
  std::string bound;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

int run_bench(const BenchArgs& args) {
  Epsilon eps = parse_epsilon(args.epsilon);
  std::vector<std::string> algos = split_list(args.algos);
  if (algos.empty()) throw ParseError("no algorithms selected");
  std::optional<Rational> bound;
  if (!args.bound.empty()) bound = Rational::parse(args.bound);

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(args.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ParseError("no .json instances in " + args.dir);

  std::ostringstream csv;
  csv << "instance,algo,cost,optimum,ratio,time_ms,status\n";
  std::vector<Rational> ratios;
  int ok_rows = 0;
  int total_rows = 0;

  for (const std::filesystem::path& path : files) {
    std::optional<Instance> instance;
    std::string load_error;
    try {
      instance = load_instance(path).instance;
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    std::optional<Rational> optimum;
    if (instance) {
      try {
        optimum = brute_force(*instance).second;
      } catch (const BudgetExceeded&) {
        // Leave the optimum cell empty for instances too big to enumerate.
      }
    }
    for (const std::string& algo : algos) {
      ++total_rows;
      csv << path.filename().string() << ',' << algo << ',';
      if (!instance) {
        csv << ",,,," << "error: " << load_error << "\n";
        continue;
      }
      auto start = std::chrono::steady_clock::now();
      std::optional<Rational> cost;
      std::string status = "ok";
      try {
        if (algo == "eptas") {
          cost = solve(*instance, eps).cost;
        } else if (algo == "greedy") {
          cost = list_scheduling(*instance).cost;
        } else if (algo == "lpt") {
          cost = lpt(*instance).cost;
        } else if (algo == "brute") {
          cost = brute_force(*instance).second;
        } else {
          status = "error: unknown algorithm";
        }
      } catch (const std::exception& e) {
        status = std::string("error: ") + e.what();
      }
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
      if (cost) {
        csv << cost->str() << ',';
        if (optimum && optimum->is_positive()) {
          Rational ratio = *cost / *optimum;
          ratios.push_back(ratio);
          csv << optimum->str() << ',' << ratio.to_double() << ',';
        } else {
          csv << ",,";
        }
        ++ok_rows;
      } else {
        csv << ",,,";
      }
      csv << ms << ',' << status << "\n";
    }
  }

  if (args.csv.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(args.csv);
    if (!out) throw std::runtime_error("cannot write " + args.csv);
    out << csv.str();
    std::cout << "wrote " << args.csv << " (" << total_rows << " rows)\n";
  }
  if (bound) {
    bool pass = true;
    for (const Rational& ratio : ratios) {
      if (ratio > *bound) pass = false;
    }
    std::cout << (pass ? "PASS" : "FAIL") << " bound=" << bound->pretty() << " over "
              << ratios.size() << " ratios\n";
    if (!pass) return 1;
  }
  return ok_rows > 0 ? 0 : 1;
}

struct VerifyArgs {
  std::string instance;
  std::string solution;
};

int run_verify(const VerifyArgs& args) {
  InstanceFile file = load_instance(args.instance);
  SolutionFile solution = load_solution(args.solution);
  Rational recomputed;
  try {
    recomputed = solution_cost(file.instance, solution.assignment);
  } catch (const std::exception& e) {
    std::cout << "INVALID: " << e.what() << "\n";
    return 1;
  }
  if (recomputed != solution.cost) {
    std::cout << "MISMATCH: stored cost " << solution.cost.str() << ", recomputed "
              << recomputed.str() << "\n";
    return 1;
  }
  std::cout << "OK: cost " << recomputed.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scheduling with machine-dependent fixed costs, capacities, and overtime rates"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* cmd_solve = app.add_subcommand("solve", "Solve a machine-set instance");
  cmd_solve->add_option("instance", solve_args.instance, "instance JSON file")->required();
  cmd_solve->add_option("--algo", solve_args.algo, "eptas | greedy | lpt | brute")
      ->check(CLI::IsMember({"eptas", "greedy", "lpt", "brute"}));
  cmd_solve->add_option("--epsilon", solve_args.epsilon, "accuracy 1/E (default from file or 1/2)");
  cmd_solve->add_option("--out", solve_args.out, "solution output path (default stdout)");
  cmd_solve->add_option("--threads", solve_args.threads, "worker threads for edge pricing");
  cmd_solve->add_flag("--eager-pricing", solve_args.eager_pricing,
                      "price every graph edge instead of only reachable ones");

  VariantArgs variant_args;
  CLI::App* cmd_variant = app.add_subcommand("variant", "Solve a machine-type instance");
  cmd_variant->add_option("instance", variant_args.instance, "typed instance JSON file")
      ->required();
  cmd_variant->add_option("--mode", variant_args.mode, "exact | greedy")
      ->check(CLI::IsMember({"exact", "greedy"}));
  cmd_variant->add_option("--epsilon", variant_args.epsilon, "accuracy 1/E");
  cmd_variant->add_option("--out", variant_args.out, "output path (default stdout)");

  GenArgs gen_args;
  CLI::App* cmd_gen = app.add_subcommand("gen", "Generate a random instance");
  cmd_gen->add_option("--seed", gen_args.seed, "random seed");
  cmd_gen->add_option("--n", gen_args.n, "job count");
  cmd_gen->add_option("--m", gen_args.m, "machine (or type) count");
  cmd_gen->add_option("--class", gen_args.cls, "ebp | ubs | general | typed")
      ->check(CLI::IsMember({"ebp", "ubs", "general", "typed"}));
  cmd_gen->add_option("--out", gen_args.out, "output path (default stdout)");

  BenchArgs bench_args;
  CLI::App* cmd_bench = app.add_subcommand("bench", "Run algorithms over an instance directory");
  cmd_bench->add_option("dir", bench_args.dir, "directory of instance JSON files")->required();
  cmd_bench->add_option("--algos", bench_args.algos, "comma list of algorithms");
  cmd_bench->add_option("--epsilon", bench_args.epsilon, "accuracy 1/E");
  cmd_bench->add_option("--csv", bench_args.csv, "CSV output path (default stdout)");
  cmd_bench->add_option("--bound", bench_args.bound,
                        "ratio bound; prints PASS/FAIL over all computed ratios");

  VerifyArgs verify_args;
  CLI::App* cmd_verify = app.add_subcommand("verify", "Re-check a solution file's cost");
  cmd_verify->add_option("instance", verify_args.instance, "instance JSON file")->required();
  cmd_verify->add_option("solution", verify_args.solution, "solution JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_solve->parsed()) return run_solve(solve_args);
    if (cmd_variant->parsed()) return run_variant(variant_args);
    if (cmd_gen->parsed()) return run_gen(gen_args);
    if (cmd_bench->parsed()) return run_bench(bench_args);
    if (cmd_verify->parsed()) return run_verify(verify_args);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
