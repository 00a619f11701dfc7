#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hopfcup/cli.hpp"

using namespace hopfcup;
using namespace hopfcup::cli;

namespace {

const std::string kDir = HOPFCUP_CONFIG_DIR;

std::string where_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.where;
  }
  return "";
}

const CheckEntry* find_check(const JobResult& r, const std::string& name, std::optional<int> deg = std::nullopt) {
  for (const auto& c : r.checks)
    if (c.name == name && c.degree == deg) return &c;
  return nullptr;
}

int run_main(std::vector<std::string> args) {
  args.insert(args.begin(), "hopfcup");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::main(static_cast<int>(argv.size()), argv.data());
}

std::string temp_path(const std::string& name) { return "/tmp/hopfcup_test_" + name; }

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

const char* kGroups = R"({"C2": {"group": {"cyclic": 2}}, "kC2": {"hopf": {"group_algebra": "C2"}}})";

std::string config(const std::string& jobs, int cap = 3) {
  return R"({"cap": )" + std::to_string(cap) + R"(, "inputs": )" + kGroups + R"(, "jobs": )" + jobs + "}";
}

}  // namespace

TEST_CASE("config validation") {
  CHECK(where_of(config(R"([{"key": "a", "task": "hh", "hopf": "kC2"}])", 0)) == "cap");
  CHECK(where_of(config(R"([{"key": "a", "task": "hh", "hopf": "kC2", "cap": 0}])")) == "jobs[0].cap");
  CHECK(where_of(config(R"([{"key": "a", "task": "cohomology", "hopf": "kC2"}])")) == "jobs[0].task");
  CHECK(where_of(config(R"([{"key": "a", "task": "hh", "hopf": "kC3"}])")) == "jobs[0].hopf");
  CHECK(where_of(config(R"([{"key": "a", "task": "hh", "hopf": "C2"}])")) == "jobs[0].hopf");
  CHECK(where_of(config(R"([{"key": "a", "task": "hh", "hopf": "kC2", "colour": 1}])")) == "jobs[0].colour");
  CHECK(where_of(config(R"([{"key": "a", "task": "hh", "hopf": "kC2"}, {"key": "a", "task": "hc", "hopf": "kC2"}])")) ==
        "jobs[1].key");
  CHECK(where_of(config(R"([{"key": "a", "task": "product", "pair": ["kC2"]}])")) == "jobs[0].pair");
  CHECK(where_of(config(R"([])")) == "jobs");
  CHECK(where_of(R"({"inputs": {"G": {"group": {"table": [[0, 1], [1, 1]]}}}, "jobs": [{"key": "a", "task": "group-diagram", "group": "G"}]})") ==
        "inputs.G.group");
  CHECK(where_of(R"({"inputs": {"x": {"lie": {"generators": ["a", "b"], "brackets": [{"pair": [0, 2], "value": []}]}}},
                     "jobs": [{"key": "a", "task": "lie-diagram", "lie": "x"}]})") == "inputs.x.lie.brackets[0].pair[1]");
  // syntax errors carry line and column
  CHECK(where_of("{\n  \"jobs\": [,]\n}") == "config:2:12");
  CHECK_NOTHROW(parse_config_text(config(R"([{"key": "a", "task": "hh", "hopf": "kC2"}])")));
}

TEST_CASE("hopf axioms for C3") {
  JobConfig cfg = load_config(kDir + "/hopf_axioms_c3.json");
  RunReport r = run(cfg, {});
  REQUIRE(r.jobs.size() == 1);
  const auto& job = r.jobs[0];
  // one entry per axiom of the checker, all passing
  auto direct = check_hopf_axioms(group_algebra(FiniteGroup::cyclic(3)));
  for (const auto& a : direct) {
    const CheckEntry* c = find_check(job, "hopf/" + a.name);
    REQUIRE(c);
    CHECK(c->status == Status::Pass);
  }
  CHECK(job.checks.size() == direct.size());
  CHECK(exit_code(r, false) == 0);
  CHECK(run_main({"check", kDir + "/hopf_axioms_c3.json", "--format", "json"}) == 0);
}

TEST_CASE("group diagram suite for C2, C3") {
  JobConfig cfg = load_config(kDir + "/group_diagrams.json");
  Options opt;
  opt.jobs = 2;
  RunReport r = run(cfg, opt);
  CHECK(exit_code(r, false) == 0);
  REQUIRE(r.jobs.size() == 2);
  CHECK(r.jobs[0].key == "diagram-C2");
  for (const auto& job : r.jobs) {
    CHECK(job.status == Status::Pass);
    for (int n = 0; n <= 2; ++n) {
      const CheckEntry* c = find_check(job, "coproduct diagram", n);
      REQUIRE(c);
      CHECK(c->status == Status::Pass);
      CHECK(job.details["degrees"][std::to_string(n)]["failures"] == 0);
    }
  }
  CHECK(run_main({"compare", kDir + "/group_diagrams.json"}) == 0);
  // compute refuses comparison jobs
  CHECK_THROWS_AS(run(cfg, Options{std::nullopt, false, 1, 1, &compute_tasks()}), ConfigError);
  CHECK(run_main({"compute", kDir + "/group_diagrams.json"}) == 2);
}

TEST_CASE("exit codes") {
  std::string path = temp_path("hp.json");
  write(path, config(R"([{"key": "hp", "task": "hp", "hopf": "kC2"}])", 2));
  // the HP window at cap 2 is too small to estimate
  CHECK(run_main({"check", path}) == 3);
  CHECK(run_main({"check", path, "--allow-inconclusive"}) == 0);
  CHECK(run_main({"check", path, "--cap", "6"}) == 0);
  CHECK(run_main({"check", path, "--cap", "0"}) == 2);
  CHECK(run_main({"check", path, "--format", "xml"}) == 2);
  CHECK(run_main({"check", temp_path("missing.json")}) == 2);
  CHECK(run_main({}) == 2);

  // an explicit Hopf table with a wrong antipode is a check failure
  write(path, R"({"inputs": {"H": {"hopf": {"tables": {
      "dim": 2, "mul": [[[[0, 1]], [[1, 1]]], [[[1, 1]], [[0, 1]]]], "unit": [[0, 1]],
      "comul": [[[0, 0, 1]], [[1, 1, 1]]], "counit": [1, 1], "antipode": [[[0, 1]], [[1, -1]]]}}}},
      "jobs": [{"key": "a", "task": "axioms", "hopf": "H"}]})");
  CHECK(run_main({"check", path}) == 1);
  std::remove(path.c_str());
}

TEST_CASE("explicit tables agree with the built-in group algebra") {
  auto cfg = parse_config_text(R"({"inputs": {"H": {"hopf": {"tables": {
      "dim": 2, "mul": [[[[0, 1]], [[1, 1]]], [[[1, 1]], [[0, 1]]]], "unit": [[0, 1]],
      "comul": [[[0, 0, 1]], [[1, 1, 1]]], "counit": [1, 1], "antipode": [[[0, 1]], [[1, 1]]]}}},
      "k": {"module": {"over": "H", "side": "right-left", "tables": {"dim": 1, "action": [[[[0, 1]], [[0, 1]]]],
                                                                     "coaction": [[[0, 0, 1]]]}}},
      "C2": {"group": {"cyclic": 2}}, "kC2": {"hopf": {"group_algebra": "C2"}}},
      "jobs": [{"key": "explicit", "task": "hh", "module": "k", "cap": 4},
               {"key": "builtin", "task": "hh", "hopf": "kC2", "cap": 4}]})");
  RunReport r = run(cfg, {});
  REQUIRE(r.jobs.size() == 2);
  CHECK(r.jobs[0].status == Status::Pass);
  REQUIRE(r.jobs[0].values.size() == r.jobs[1].values.size());
  for (std::size_t k = 0; k < r.jobs[0].values.size(); ++k) CHECK(r.jobs[0].values[k].value == r.jobs[1].values[k].value);
}

TEST_CASE("golden diff") {
  auto cfg = load_config(kDir + "/hopf_axioms_c3.json");
  Json a = run(cfg, {}).to_json();
  CHECK(diff_golden(a, a).equal);

  // timestamps are ignored
  Json b = a;
  b["timestamp"] = "1970-01-01T00:00:00Z";
  CHECK(diff_golden(a, b).equal);

  // key order does not matter
  Json c = Json::parse(R"({"timestamp": "x", "status": "pass", "jobs": [{"values": [{"value": 3, "quantity": "dim H"}], "key": "k"}]})");
  Json d = Json::parse(R"({"jobs": [{"key": "k", "values": [{"quantity": "dim H", "value": 3}]}], "status": "pass"})");
  CHECK(diff_golden(c, d).equal);

  // a changed dimension is found with its path
  Json e = d;
  e["jobs"][0]["values"][0]["value"] = 4;
  auto res = diff_golden(c, e);
  CHECK(!res.equal);
  CHECK(res.path == "/jobs/0/values/0/value");
  CHECK(res.detail.find("\"k\"") != std::string::npos);

  CHECK_THROWS_AS(diff_golden(Json::object(), a), ConfigError);

  std::string p1 = temp_path("a.json"), p2 = temp_path("b.json");
  write(p1, c.dump());
  write(p2, e.dump());
  CHECK(run_main({"diff", p1, p1}) == 0);
  CHECK(run_main({"diff", p1, p2}) == 1);
  write(p2, "{\"jobs\": [");
  CHECK(run_main({"diff", p1, p2}) == 2);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("reports are deterministic") {
  auto cfg = load_config(kDir + "/suite.json");
  Options one, many;
  many.jobs = 4;
  std::string x = canonical_dump(run(cfg, one).to_json()), y = canonical_dump(run(cfg, many).to_json());
  CHECK(x == y);
  CHECK(x.find("timestamp") == std::string::npos);
  // every value carries its check, degree and cap
  Json j = Json::parse(x);
  for (const auto& job : j["jobs"])
    for (const auto& v : job["values"]) {
      CHECK(v.contains("quantity"));
      CHECK(v.contains("degree"));
      CHECK(v["cap"] == job["cap"]);
    }
  CHECK(j["status"] == "pass");
}

TEST_CASE("mutation suite") {
  auto g = FiniteGroup::symmetric3();
  auto h = group_algebra(g);
  auto m = conjugation_module(g, {1, 2, 5}, SaydSide::RightLeft);
  auto s = mutation_suite(h, m, 2, 7, 10);
  CHECK(s.baseline_failures.empty());
  REQUIRE(s.mutations.size() == 10);
  std::set<std::string> tables;
  for (const auto& mu : s.mutations) {
    CHECK_MESSAGE(mu.detected, mu.table << " " << mu.where);
    tables.insert(mu.table);
  }
  CHECK(tables == std::set<std::string>{"antipode", "coaction", "tau"});
  // same seed, same mutations
  auto again = mutation_suite(h, m, 2, 7, 10);
  for (std::size_t k = 0; k < 10; ++k) CHECK(again.mutations[k].where == s.mutations[k].where);
}

TEST_CASE("table output") {
  auto cfg = load_config(kDir + "/hopf_axioms_c3.json");
  std::string t = run(cfg, {}).table();
  CHECK(t.rfind("job", 0) == 0);
  CHECK(t.find("hopf/antipode") != std::string::npos);
  CHECK(t.find("overall: pass") != std::string::npos);
}
