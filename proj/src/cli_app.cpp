#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hopfcup/cli.hpp"

namespace hopfcup::cli {

namespace {

struct Flags {
  std::string config;
  std::string output;
  std::string format = "table";
  int cap = 0;
  bool allow_inconclusive = false;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

void add_run_flags(CLI::App* sub, Flags& f) {
  sub->add_option("config", f.config, "job config (JSON)")->required();
  sub->add_option("--cap", f.cap, "override every job cap (>= 1)");
  sub->add_option("--format", f.format, "stdout format")->check(CLI::IsMember({"json", "table"}));
  sub->add_option("-o,--output", f.output, "write the JSON report here");
  sub->add_flag("--allow-inconclusive", f.allow_inconclusive, "exit 0 on inconclusive results");
  sub->add_option("--seed", f.seed, "seed for randomized instances");
  sub->add_option("--jobs", f.jobs, "jobs run concurrently")->check(CLI::PositiveNumber);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path, "cannot write");
  out << text;
}

int run_command(const Flags& f, const std::set<std::string>* allowed, bool cap_given) {
  JobConfig cfg = load_config(f.config);
  Options opt;
  if (cap_given) opt.cap = f.cap;
  opt.allow_inconclusive = f.allow_inconclusive;
  opt.seed = f.seed;
  opt.jobs = f.jobs;
  opt.allowed = allowed;
  RunReport r = run(cfg, opt);
  Json j = r.to_json();
  std::string json_out = f.output.empty() ? cfg.json_out : f.output;
  if (!json_out.empty()) write_file(json_out, j.dump(2) + "\n");
  if (!cfg.table_out.empty()) write_file(cfg.table_out, r.table());
  if (f.format == "json")
    std::cout << j.dump(2) << '\n';
  else
    std::cout << r.table();
  return exit_code(r, f.allow_inconclusive);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hopf cyclic (co)homology: checks, computations and comparison diagrams"};
  app.require_subcommand(1);
  Flags check_f, compute_f, compare_f;
  std::string report, golden;
  auto* check = app.add_subcommand("check", "run every job of a config");
  auto* compute = app.add_subcommand("compute", "run the computation jobs (hh, hc, hp, coproduct, product)");
  auto* compare = app.add_subcommand("compare", "run the comparison diagram jobs");
  auto* diff = app.add_subcommand("diff", "compare a report against a golden report");
  add_run_flags(check, check_f);
  add_run_flags(compute, compute_f);
  add_run_flags(compare, compare_f);
  diff->add_option("report", report)->required();
  diff->add_option("golden", golden)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_command(check_f, nullptr, check->count("--cap") > 0);
    if (*compute) return run_command(compute_f, &compute_tasks(), compute->count("--cap") > 0);
    if (*compare) return run_command(compare_f, &compare_tasks(), compare->count("--cap") > 0);
    DiffResult d = diff_golden_files(report, golden);
    if (d.equal) {
      std::cout << "equal\n";
      return 0;
    }
    std::cout << "differs at " << d.path << ": " << d.detail << '\n';
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace hopfcup::cli
