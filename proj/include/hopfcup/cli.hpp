#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopfcup/compare.hpp"

namespace hopfcup::cli {

// Config problems; `where` is a field path like jobs[2].cap or a line:column.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where(std::move(where)) {}
  std::string where;
};

enum class Status { Pass, Fail, Inconclusive };
std::string status_name(Status s);

const std::set<std::string>& task_names();
// Tasks accepted by the compute and compare subcommands.
const std::set<std::string>& compute_tasks();
const std::set<std::string>& compare_tasks();

struct JobConfig {
  int cap = 3;  // default for jobs without their own
  Json inputs = Json::object();
  std::vector<Json> jobs;
  std::string json_out, table_out;
};
// Validates field shapes, references, task names and caps, and builds every
// input once so that table errors surface here.
JobConfig parse_config(const Json& j);
JobConfig parse_config_text(const std::string& text);
JobConfig load_config(const std::string& path);

struct Options {
  std::optional<int> cap;  // overrides every job cap
  bool allow_inconclusive = false;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  const std::set<std::string>* allowed = nullptr;  // restricts tasks
};

struct CheckEntry {
  std::string name;
  std::optional<int> degree;
  Status status = Status::Pass;
  std::string witness;
};
struct ValueEntry {
  std::string quantity;
  std::optional<int> degree;
  std::size_t value = 0;
  bool edge_tainted = false;
};
struct JobResult {
  std::string key, task;
  int cap = 0;
  Json inputs;
  std::vector<CheckEntry> checks;
  std::vector<ValueEntry> values;
  Json details = Json::object();
  Status status = Status::Pass;
  Json to_json() const;
};
struct RunReport {
  std::vector<JobResult> jobs;  // sorted by key
  std::uint64_t seed = 0;
  Status status = Status::Pass;
  // The timestamp is the only nondeterministic field; canonical() drops it.
  Json to_json(bool with_timestamp = true) const;
  std::string table() const;
};

RunReport run(const JobConfig& cfg, const Options& opt);
JobResult run_job(const JobConfig& cfg, const Json& job, const Options& opt);
int exit_code(const RunReport& r, bool allow_inconclusive);

// Drops every "timestamp" member; object keys are kept sorted by Json itself.
Json canonical(const Json& j);
std::string canonical_dump(const Json& j);

struct DiffResult {
  bool equal = true;
  std::string path;  // JSON pointer of the first difference
  std::string detail;
};
// Throws ConfigError when either side is not a report.
DiffResult diff_golden(const Json& report, const Json& golden);
DiffResult diff_golden_files(const std::string& report_path, const std::string& golden_path);

// Single-entry corruption of a structure table followed by the axiom suite
// for (H, M, C(H, M)).
struct Mutation {
  std::string table;  // antipode | coaction | tau
  std::string where;
  std::string delta;
  bool detected = false;
  std::vector<std::string> failing;
};
struct MutationSuite {
  std::vector<std::string> baseline_failures;
  std::vector<Mutation> mutations;
};
MutationSuite mutation_suite(const HopfAlgebra& h, const SAYDModule& m, int cap, std::uint64_t seed,
                             std::size_t count);

int main(int argc, char** argv);

}  // namespace hopfcup::cli
