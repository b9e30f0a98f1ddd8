// fqlab: exhaustive small-field verification of distance-set machinery --
// character sums, sphere transforms, counting identities, and explicit
// lower-bound theorems -- plus extremal constructions and a swap search.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fqlab/cli.hpp"

namespace {

// "p" or "p,k".
std::pair<uint32_t, uint32_t> parse_field_arg(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    return {static_cast<uint32_t>(std::stoul(s)), 1};
  return {static_cast<uint32_t>(std::stoul(s.substr(0, comma))),
          static_cast<uint32_t>(std::stoul(s.substr(comma + 1)))};
}

std::vector<fqlab::Elem> parse_elem_list(const std::string& s) {
  std::vector<fqlab::Elem> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(static_cast<uint32_t>(std::stoul(cur)));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

uint32_t jobs_default() {
  if (const char* env = std::getenv("FQLAB_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<uint32_t>(v);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fqlab: finite-field distance-set verification laboratory"};
  app.require_subcommand(1);

  // verify-all
  auto* verify = app.add_subcommand(
      "verify-all", "run every check over a grid of fields and dimensions");
  std::vector<std::string> field_args;
  std::vector<uint32_t> dims;
  uint32_t instances = 100;
  uint64_t seed = 1;
  double tolerance = fqlab::kDefaultTol;
  uint32_t jobs = jobs_default();
  std::string out_path;
  verify->add_option("--field", field_args,
                     "field as p or p,k (repeatable; default 3 5 7 3,2)");
  verify->add_option("--dim", dims, "dimension (repeatable; default 2 3)");
  verify->add_option("--instances", instances, "random instances per check");
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--tolerance", tolerance, "absolute tolerance override");
  verify->add_option("--jobs", jobs, "worker threads (env FQLAB_JOBS)");
  verify->add_option("--out", out_path, "report JSON path");

  // theorem-check
  auto* check = app.add_subcommand(
      "theorem-check", "check one bound against a pair of point-set files");
  std::string file_e, file_f, theorem = "MAIN1";
  check->add_option("E", file_e, "point-set JSON for E")->required();
  check->add_option("F", file_f, "point-set JSON for F")->required();
  check->add_option("--theorem", theorem,
                    "MAIN1|MAIN2|MAIN2_D2|MAIN2_D2_NONSQUARE|MAIN3|"
                    "COROLLARY|SHPARLINSKI|DIETMANN");

  // example
  auto* example =
      app.add_subcommand("example", "construct a named example set");
  std::string kind, ex_field = "5", ex_out;
  uint32_t ex_dim = 2;
  std::string set_arg;
  example->add_option("--kind", kind, "isotropic|product")->required();
  example->add_option("--field", ex_field, "field as p or p,k");
  example->add_option("--dim", ex_dim, "dimension");
  example->add_option("--set", set_arg, "factor set A as e.g. 0,1,2");
  example->add_option("--out", ex_out, "output point-set JSON path");

  // search
  auto* search = app.add_subcommand(
      "search", "hill-climb for sets with few distinct distances");
  std::string s_field = "5", s_out;
  uint32_t s_dim = 2;
  uint64_t s_n = 5, s_iters = 500, s_seed = 0;
  search->add_option("--field", s_field, "field as p or p,k");
  search->add_option("--dim", s_dim, "dimension");
  search->add_option("--n", s_n, "set cardinality");
  search->add_option("--iters", s_iters, "swap iterations");
  search->add_option("--seed", s_seed, "seed");
  search->add_option("--out", s_out, "output prefix (.json and .csv)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      fqlab::SweepConfig config = fqlab::SweepConfig::defaults();
      if (!field_args.empty()) {
        config.fields.clear();
        for (const auto& s : field_args)
          config.fields.push_back(parse_field_arg(s));
      }
      if (!dims.empty()) config.dims = dims;
      config.instances = instances;
      config.seed = seed;
      config.tolerance = tolerance;
      config.jobs = jobs;
      config.out_path = out_path;
      return fqlab::cli::cmd_verify_all(config, std::cout, std::cerr);
    }
    if (*check)
      return fqlab::cli::cmd_theorem_check(file_e, file_f, theorem, std::cout,
                                           std::cerr);
    if (*example) {
      auto [p, k] = parse_field_arg(ex_field);
      return fqlab::cli::cmd_example(kind, p, k, ex_dim,
                                     parse_elem_list(set_arg), ex_out,
                                     std::cout, std::cerr);
    }
    if (*search) {
      auto [p, k] = parse_field_arg(s_field);
      return fqlab::cli::cmd_search(p, k, s_dim, s_n, s_iters, s_seed, s_out,
                                    std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
