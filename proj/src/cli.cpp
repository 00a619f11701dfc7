#include "hopfcup/cli.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

namespace hopfcup::cli {

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

const std::set<std::string>& task_names() {
  static const std::set<std::string> t{"axioms", "hh",      "hc",    "hp",          "coproduct",     "product",
                                       "ez",     "kunneth", "omega", "lie-diagram", "group-diagram", "mutation"};
  return t;
}
const std::set<std::string>& compute_tasks() {
  static const std::set<std::string> t{"hh", "hc", "hp", "coproduct", "product"};
  return t;
}
const std::set<std::string>& compare_tasks() {
  static const std::set<std::string> t{"lie-diagram", "group-diagram"};
  return t;
}

namespace {

// ------------------------------------------------------------- json access

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw ConfigError(where, what); }

const Json& member(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where, "missing field '" + key + "'");
  return j.at(key);
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

Scalar as_scalar(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const std::exception&) {
      bad(where, "not a rational number: " + j.get<std::string>());
    }
  }
  bad(where, "expected an integer or a \"num/den\" string");
}

std::size_t as_index(const Json& j, std::size_t bound, const std::string& where) {
  int i = as_int(j, where);
  if (i < 0 || static_cast<std::size_t>(i) >= bound)
    bad(where, "index " + std::to_string(i) + " out of range 0.." + std::to_string(bound - 1));
  return static_cast<std::size_t>(i);
}

// [[index, scalar], ...]
Vec as_vec(const Json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a list of [index, coefficient] pairs");
  Vec v;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string w = where + "[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].size() != 2) bad(w, "expected [index, coefficient]");
    axpy(v, as_scalar(j[k][1], w + "[1]"), unit_vec(as_index(j[k][0], dim, w + "[0]")));
  }
  return v;
}

// [[a, b, scalar], ...]
std::vector<Term2> as_terms(const Json& j, std::size_t da, std::size_t db, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a list of [a, b, coefficient] triples");
  std::vector<Term2> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string w = where + "[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].size() != 3) bad(w, "expected [a, b, coefficient]");
    out.emplace_back(as_index(j[k][0], da, w + "[0]"), as_index(j[k][1], db, w + "[1]"),
                     as_scalar(j[k][2], w + "[2]"));
  }
  return out;
}

const Json& array_of(const Json& j, std::size_t size, const std::string& where) {
  if (!j.is_array() || j.size() != size) bad(where, "expected a list of length " + std::to_string(size));
  return j;
}

void only_fields(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) bad(where + "." + k, "unknown field");
}

// ------------------------------------------------------------------ inputs

const std::set<std::string> kInputKinds{"group", "lie", "hopf", "module"};

class Resolver {
 public:
  explicit Resolver(const Json& inputs) : in_(inputs) {}

  std::string kind(const std::string& name, const std::string& where) const {
    if (!in_.contains(name)) bad(where, "unknown input '" + name + "'");
    const Json& s = in_.at(name);
    std::string found;
    if (s.is_object())
      for (const auto& k : kInputKinds)
        if (s.contains(k)) {
          if (!found.empty()) bad(path(name), "input has more than one kind");
          found = k;
        }
    if (found.empty()) bad(path(name), "input needs one of group, lie, hopf, module");
    return found;
  }

  const Json& spec(const std::string& name, const std::string& want, const std::string& where) const {
    std::string k = kind(name, where);
    if (k != want) bad(where, "input '" + name + "' is a " + k + ", expected a " + want);
    return in_.at(name).at(want);
  }

  FiniteGroup group(const std::string& name, const std::string& where, int depth = 0) const {
    const Json& s = spec(name, "group", where);
    std::string p = path(name) + ".group";
    guard_depth(depth, p);
    try {
      if (s.is_object() && s.contains("cyclic")) {
        int n = as_int(s["cyclic"], p + ".cyclic");
        if (n < 1) bad(p + ".cyclic", "order must be >= 1");
        return FiniteGroup::cyclic(n);
      }
      if (s.is_object() && s.contains("symmetric")) {
        if (as_int(s["symmetric"], p + ".symmetric") != 3) bad(p + ".symmetric", "only S3 is built in");
        return FiniteGroup::symmetric3();
      }
      if (s.is_object() && s.contains("product")) {
        const Json& f = array_of(s["product"], 2, p + ".product");
        return FiniteGroup::product(group(as_string(f[0], p + ".product[0]"), p + ".product[0]", depth + 1),
                                    group(as_string(f[1], p + ".product[1]"), p + ".product[1]", depth + 1));
      }
      if (s.is_object() && s.contains("table")) {
        const Json& t = s["table"];
        if (!t.is_array() || t.empty()) bad(p + ".table", "expected a nonempty square table");
        std::vector<std::vector<int>> rows;
        for (std::size_t a = 0; a < t.size(); ++a) {
          const Json& r = array_of(t[a], t.size(), p + ".table[" + std::to_string(a) + "]");
          std::vector<int> row;
          for (std::size_t b = 0; b < r.size(); ++b)
            row.push_back(static_cast<int>(
                as_index(r[b], t.size(), p + ".table[" + std::to_string(a) + "][" + std::to_string(b) + "]")));
          rows.push_back(row);
        }
        std::vector<std::string> names;
        if (s.contains("names"))
          for (const auto& n : array_of(s["names"], t.size(), p + ".names")) names.push_back(as_string(n, p + ".names"));
        return FiniteGroup::from_table(rows, names);
      }
    } catch (const StructuralError& e) {
      bad(p, e.what());
    }
    bad(p, "expected one of cyclic, symmetric, product, table");
  }

  LieAlgebraData lie(const std::string& name, const std::string& where) const {
    const Json& s = spec(name, "lie", where);
    std::string p = path(name) + ".lie";
    if (s.is_string()) {
      if (s == "heisenberg") return LieAlgebraData::heisenberg();
      bad(p, "unknown Lie algebra '" + s.get<std::string>() + "'");
    }
    if (s.is_object() && s.contains("abelian")) {
      int d = as_int(s["abelian"], p + ".abelian");
      if (d < 1) bad(p + ".abelian", "dimension must be >= 1");
      return LieAlgebraData::abelian(static_cast<std::size_t>(d));
    }
    if (s.is_object() && s.contains("generators")) {
      LieAlgebraData l;
      const Json& g = s["generators"];
      if (!g.is_array() || g.empty()) bad(p + ".generators", "expected a nonempty list of names");
      for (const auto& x : g) l.generators.push_back(as_string(x, p + ".generators"));
      std::size_t d = l.dim();
      l.bracket.assign(d, std::vector<Vec>(d));
      if (s.contains("brackets")) {
        const Json& br = s["brackets"];
        if (!br.is_array()) bad(p + ".brackets", "expected a list");
        for (std::size_t k = 0; k < br.size(); ++k) {
          std::string w = p + ".brackets[" + std::to_string(k) + "]";
          const Json& pair = array_of(member(br[k], "pair", w), 2, w + ".pair");
          std::size_t i = as_index(pair[0], d, w + ".pair[0]"), j = as_index(pair[1], d, w + ".pair[1]");
          Vec v = as_vec(member(br[k], "value", w), d, w + ".value");
          l.bracket[i][j] = v;
          l.bracket[j][i] = scaled(v, -1);
        }
      }
      try {
        l.validate();
      } catch (const StructuralError& e) {
        bad(p, e.what());
      }
      return l;
    }
    bad(p, "expected \"heisenberg\", {abelian}, or {generators, brackets}");
  }

  // Group behind a group algebra input, if any.
  std::optional<FiniteGroup> hopf_group(const std::string& name, const std::string& where) const {
    const Json& s = spec(name, "hopf", where);
    if (s.is_object() && s.contains("group_algebra")) {
      std::string g = as_string(s["group_algebra"], path(name) + ".hopf.group_algebra");
      return group(g, path(name) + ".hopf.group_algebra");
    }
    return std::nullopt;
  }

  HopfAlgebra hopf(const std::string& name, int cap, const std::string& where, int depth = 0) const {
    const Json& s = spec(name, "hopf", where);
    std::string p = path(name) + ".hopf";
    guard_depth(depth, p);
    HopfAlgebra h;
    try {
      if (s.is_object() && s.contains("group_algebra")) {
        h = group_algebra(group(as_string(s["group_algebra"], p + ".group_algebra"), p + ".group_algebra"));
      } else if (s.is_object() && s.contains("enveloping")) {
        h = enveloping_truncated(lie(as_string(s["enveloping"], p + ".enveloping"), p + ".enveloping"), cap);
      } else if (s.is_object() && s.contains("tensor")) {
        const Json& f = array_of(s["tensor"], 2, p + ".tensor");
        h = tensor_hopf(hopf(as_string(f[0], p + ".tensor[0]"), cap, p + ".tensor[0]", depth + 1),
                        hopf(as_string(f[1], p + ".tensor[1]"), cap, p + ".tensor[1]", depth + 1));
      } else if (s.is_object() && s.contains("tables")) {
        h = explicit_hopf(s["tables"], p + ".tables");
      } else {
        bad(p, "expected one of group_algebra, enveloping, tensor, tables");
      }
    } catch (const StructuralError& e) {
      bad(p, e.what());
    }
    h.name = name;
    return h;
  }

  std::string module_over(const std::string& name, const std::string& where) const {
    const Json& s = spec(name, "module", where);
    return as_string(member(s, "over", path(name) + ".module"), path(name) + ".module.over");
  }

  SAYDModule module(const std::string& name, const HopfAlgebra& h, const std::string& where) const {
    const Json& s = spec(name, "module", where);
    std::string p = path(name) + ".module";
    std::string over = module_over(name, where);
    SaydSide side = parse_side(member(s, "side", p), p + ".side");
    SAYDModule m;
    try {
      if (s.contains("trivial")) {
        m = trivial_module(h, side);
      } else if (s.contains("character")) {
        const Json& c = array_of(s["character"], h.dim(), p + ".character");
        Character d;
        for (std::size_t k = 0; k < c.size(); ++k)
          d.values.push_back(as_scalar(c[k], p + ".character[" + std::to_string(k) + "]"));
        GroupLike sigma = unit_group_like(h);
        if (s.contains("group_like")) sigma.sigma = as_vec(s["group_like"], h.dim(), p + ".group_like");
        m = mpi_module(h, d, sigma, side);
      } else if (s.contains("conjugation")) {
        auto g = hopf_group(over, p + ".over");
        if (!g) bad(p + ".conjugation", "needs a group algebra");
        const Json& e = s["conjugation"];
        if (!e.is_array() || e.empty()) bad(p + ".conjugation", "expected a nonempty list of group elements");
        std::vector<int> elems;
        for (const auto& x : e)
          elems.push_back(static_cast<int>(as_index(x, static_cast<std::size_t>(g->order()), p + ".conjugation")));
        m = conjugation_module(*g, elems, side);
      } else if (s.contains("tables")) {
        m = explicit_module(s["tables"], h, side, p + ".tables");
      } else {
        bad(p, "expected one of trivial, character, conjugation, tables");
      }
    } catch (const StructuralError& e) {
      bad(p, e.what());
    }
    m.name = name;
    return m;
  }

  static SaydSide parse_side(const Json& j, const std::string& where) {
    std::string s = as_string(j, where);
    if (s == "right-left") return SaydSide::RightLeft;
    if (s == "left-left") return SaydSide::LeftLeft;
    bad(where, "side must be right-left or left-left");
  }

 private:
  static std::string path(const std::string& name) { return "inputs." + name; }
  static void guard_depth(int depth, const std::string& where) {
    if (depth > 8) bad(where, "references nest too deeply (cycle?)");
  }

  static HopfAlgebra explicit_hopf(const Json& t, const std::string& p) {
    int di = as_int(member(t, "dim", p), p + ".dim");
    if (di < 1) bad(p + ".dim", "must be >= 1");
    std::size_t d = static_cast<std::size_t>(di);
    HopfAlgebra h;
    h.carrier = FreeSpace::range(d);
    const Json& mul = array_of(member(t, "mul", p), d, p + ".mul");
    h.mul_table.assign(d, std::vector<std::optional<Vec>>(d));
    for (std::size_t a = 0; a < d; ++a) {
      std::string w = p + ".mul[" + std::to_string(a) + "]";
      const Json& row = array_of(mul[a], d, w);
      for (std::size_t b = 0; b < d; ++b) h.mul_table[a][b] = as_vec(row[b], d, w + "[" + std::to_string(b) + "]");
    }
    h.unit = as_vec(member(t, "unit", p), d, p + ".unit");
    const Json& co = array_of(member(t, "comul", p), d, p + ".comul");
    for (std::size_t a = 0; a < d; ++a) h.comul_table.push_back(as_terms(co[a], d, d, p + ".comul[" + std::to_string(a) + "]"));
    const Json& cu = array_of(member(t, "counit", p), d, p + ".counit");
    for (std::size_t a = 0; a < d; ++a) h.counit_table.push_back(as_scalar(cu[a], p + ".counit[" + std::to_string(a) + "]"));
    const Json& an = array_of(member(t, "antipode", p), d, p + ".antipode");
    for (std::size_t a = 0; a < d; ++a) h.antipode_table.push_back(as_vec(an[a], d, p + ".antipode[" + std::to_string(a) + "]"));
    if (t.contains("antipode_inverse")) {
      const Json& ai = array_of(t["antipode_inverse"], d, p + ".antipode_inverse");
      for (std::size_t a = 0; a < d; ++a)
        h.antipode_inv_table.push_back(as_vec(ai[a], d, p + ".antipode_inverse[" + std::to_string(a) + "]"));
    } else {
      // S^{-1} column by column
      LinMap s = h.antipode_map();
      if (rank(s) != d) bad(p + ".antipode", "antipode is not invertible");
      for (std::size_t a = 0; a < d; ++a) {
        auto x = solve(s, unit_vec(a));
        h.antipode_inv_table.push_back(*x);
      }
    }
    return h;
  }

  static SAYDModule explicit_module(const Json& t, const HopfAlgebra& h, SaydSide side, const std::string& p) {
    int di = as_int(member(t, "dim", p), p + ".dim");
    if (di < 1) bad(p + ".dim", "must be >= 1");
    std::size_t d = static_cast<std::size_t>(di);
    SAYDModule m;
    m.carrier = FreeSpace::range(d);
    m.side = side;
    const Json& act = array_of(member(t, "action", p), d, p + ".action");
    m.action_table.assign(d, {});
    for (std::size_t i = 0; i < d; ++i) {
      std::string w = p + ".action[" + std::to_string(i) + "]";
      const Json& row = array_of(act[i], h.dim(), w);
      for (std::size_t a = 0; a < h.dim(); ++a) m.action_table[i].push_back(as_vec(row[a], d, w + "[" + std::to_string(a) + "]"));
    }
    const Json& co = array_of(member(t, "coaction", p), d, p + ".coaction");
    for (std::size_t i = 0; i < d; ++i)
      m.coaction_table.push_back(as_terms(co[i], h.dim(), d, p + ".coaction[" + std::to_string(i) + "]"));
    return m;
  }

  const Json& in_;
};

PsiMap parse_psi(const Json& j, const SAYDModule& m, const std::string& where) {
  if (j.is_string() && j == "diagonal") return diagonal_psi(m);
  if (j.is_object() && j.contains("table")) {
    std::size_t d = m.dim();
    const Json& t = array_of(j["table"], d, where + ".table");
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < d; ++i) cols.push_back(as_vec(t[i], d * d, where + ".table[" + std::to_string(i) + "]"));
    FreeSpace dom = m.carrier;
    return PsiMap{LinMap(dom, FreeSpace::tensor(m.carrier, m.carrier), std::move(cols))};
  }
  bad(where, "expected \"diagonal\" or {table}");
}

// ------------------------------------------------------------- job shapes

struct TaskShape {
  std::set<std::string> required, optional;
};

const std::map<std::string, TaskShape>& task_shapes() {
  static const std::map<std::string, TaskShape> s{
      {"axioms", {{}, {"hopf", "module", "psi"}}},
      {"hh", {{}, {"hopf", "module", "top"}}},
      {"hc", {{}, {"hopf", "module", "top"}}},
      {"hp", {{}, {"hopf", "module"}}},
      {"coproduct", {{}, {"hopf", "module", "psi", "top", "parts"}}},
      {"product", {{"pair"}, {"modules"}}},
      {"ez", {{"pair"}, {"modules"}}},
      {"kunneth", {{"pair"}, {"modules"}}},
      {"omega", {{"pair"}, {"modules"}}},
      {"lie-diagram", {{"lie"}, {}}},
      {"group-diagram", {{"group"}, {"top"}}},
      {"mutation", {{}, {"hopf", "module", "count"}}},
  };
  return s;
}

const std::set<std::string> kCoproductParts{"rho", "shuffle", "hh", "coalgebra", "hc", "hp"};

std::string job_path(std::size_t k) { return "jobs[" + std::to_string(k) + "]"; }

int job_cap(const JobConfig& cfg, const Json& job, const Options& opt) {
  if (opt.cap) return *opt.cap;
  return job.contains("cap") ? job["cap"].get<int>() : cfg.cap;
}

// ----------------------------------------------------------------- results

void check(JobResult& r, const std::string& name, std::optional<int> deg, bool ok, const std::string& witness = {}) {
  r.checks.push_back({name, deg, ok ? Status::Pass : Status::Fail, ok ? std::string() : witness});
}
void inconclusive(JobResult& r, const std::string& name, std::optional<int> deg, const std::string& why) {
  r.checks.push_back({name, deg, Status::Inconclusive, why});
}
void value(JobResult& r, const std::string& q, std::optional<int> deg, std::size_t v, bool tainted = false) {
  r.values.push_back({q, deg, v, tainted});
}
void axioms(JobResult& r, const std::string& prefix, const AxiomReport& a) {
  for (const auto& x : a) check(r, prefix + x.name, std::nullopt, x.passed, x.witness);
}
// Runs f; a cap overflow makes the check inconclusive, any other structural
// error fails it.
void guarded(JobResult& r, const std::string& name, std::optional<int> deg, const std::function<void()>& f) {
  try {
    f();
  } catch (const CapOverflow& e) {
    inconclusive(r, name, deg, e.what());
  } catch (const StructuralError& e) {
    check(r, name, deg, false, e.what());
  }
}

// ------------------------------------------------------------ task helpers

struct Target {
  HopfAlgebra h;
  SAYDModule m;
};

// hopf/module of a job; the module defaults to k with the given side.
Target target(const Resolver& res, const Json& job, const std::string& where, int cap, SaydSide fallback) {
  std::string hname;
  if (job.contains("module")) {
    std::string mname = job["module"].get<std::string>();
    hname = res.module_over(mname, where + ".module");
    if (job.contains("hopf") && job["hopf"].get<std::string>() != hname)
      bad(where + ".hopf", "module '" + mname + "' is over '" + hname + "'");
    HopfAlgebra h = res.hopf(hname, cap, where + ".hopf");
    SAYDModule m = res.module(mname, h, where + ".module");
    return {h, m};
  }
  if (!job.contains("hopf")) bad(where, "needs hopf or module");
  hname = job["hopf"].get<std::string>();
  HopfAlgebra h = res.hopf(hname, cap, where + ".hopf");
  return {h, trivial_module(h, fallback)};
}

std::pair<Target, Target> target_pair(const Resolver& res, const Json& job, const std::string& where, int cap,
                                      SaydSide fallback) {
  std::array<Target, 2> t;
  for (int k = 0; k < 2; ++k) {
    Json sub = Json::object();
    std::string w = where + ".pair[" + std::to_string(k) + "]";
    sub["hopf"] = job["pair"][k];
    if (job.contains("modules")) sub["module"] = job["modules"][k];
    t[k] = target(res, sub, w, cap, fallback);
  }
  return {t[0], t[1]};
}

bool cohomological(const SAYDModule& m) { return m.side == SaydSide::RightLeft; }

// Chains of C(H, M) (transposed cochains) or of C~(H, M), by side.
CyclicModule chain_module(const Target& t, int cap) {
  if (cohomological(t.m)) return materialize_cocyclic(*cm_presentation(t.h, t.m, cap)).dual();
  return hopf_cyclic_module(t.h, t.m, cap);
}

MixedComplex invariant_complex(const Target& t, int cap) {
  MixedComplex m = normalize(chain_module(t, cap)).mixed;
  return cohomological(t.m) ? m.transpose() : m;
}

std::string quantity(const std::string& base, const Target& t) {
  return base + (cohomological(t.m) ? " cohomology" : " homology");
}

void identity_gate(JobResult& r, const Target& t, int cap) {
  guarded(r, "cyclic identities", std::nullopt, [&] {
    if (cohomological(t.m))
      axioms(r, "cyclic identities/", check_cocyclic_identities(materialize_cocyclic(*cm_presentation(t.h, t.m, cap))));
    else
      axioms(r, "cyclic identities/", check_cyclic_identities(hopf_cyclic_module(t.h, t.m, cap)));
  });
}

// Degrees of a homology report up to `top` (default: highest untainted).
void report_dims(JobResult& r, const std::string& q, const HomologyReport& rep, std::optional<int> top) {
  int hi = -1;
  Json tainted = Json::array();
  for (const auto& [n, h] : rep.degrees) {
    if (!h.tainted && n == hi + 1) hi = n;
    if (h.tainted) tainted.push_back(n);
  }
  int want = top.value_or(hi);
  for (const auto& [n, h] : rep.degrees) {
    if (n > want) continue;
    value(r, q, n, h.dim, h.tainted);
    if (h.tainted) inconclusive(r, q + " window", n, "degree " + std::to_string(n) + " is edge-tainted");
  }
  if (want > rep.degrees.rbegin()->first)
    inconclusive(r, q + " window", want, "degree " + std::to_string(want) + " is outside the window");
  r.details[q + " edge_tainted"] = tainted;
}

std::optional<int> opt_top(const Json& job) {
  if (job.contains("top")) return job["top"].get<int>();
  return std::nullopt;
}

// ------------------------------------------------------------------- tasks

void task_axioms(JobResult& r, const Resolver& res, const Json& job, const std::string& where, int cap) {
  Target t = target(res, job, where, cap, SaydSide::RightLeft);
  axioms(r, "hopf/", check_hopf_axioms(t.h));
  value(r, "dim H", std::nullopt, t.h.dim());
  r.details["cocommutative"] = t.h.is_cocommutative();
  r.details["commutative"] = t.h.is_commutative();
  if (!job.contains("module")) return;
  axioms(r, "sayd/", check_sayd(t.m, t.h));
  value(r, "dim M", std::nullopt, t.m.dim());
  if (job.contains("psi")) {
    PsiMap psi = parse_psi(job["psi"], t.m, where + ".psi");
    std::string w;
    if (cohomological(t.m))
      check(r, "psi/coaction", std::nullopt, check_psi_coaction(psi, t.m, t.h, &w), w);
    else
      check(r, "psi/action", std::nullopt, check_psi_action(psi, t.m, t.h, &w), w);
  }
}

void task_invariants(JobResult& r, const Resolver& res, const Json& job, const std::string& where, int cap) {
  Target t = target(res, job, where, cap, SaydSide::RightLeft);
  identity_gate(r, t, cap);
  if (r.task == "hp") {
    guarded(r, "HP", std::nullopt, [&] {
      CyclicModule c = chain_module(t, cap);
      CyclicInvariants inv;
      try {
        inv = hh_hc_hp(c, cohomological(t.m));
      } catch (const StructuralError& e) {
        inconclusive(r, "HP window", std::nullopt, e.what());
        return;
      }
      for (const auto& h : inv.hp) {
        value(r, quantity("HP", t) + (h.parity ? " odd" : " even"), std::nullopt, h.dim);
        if (!h.stabilized)
          inconclusive(r, "HP stabilization", h.parity,
                       "dims " + std::to_string(h.dim_lo) + " at cap " + std::to_string(h.cap_lo) + ", " +
                           std::to_string(h.dim_hi) + " at cap " + std::to_string(h.cap_hi));
        else
          check(r, "HP stabilization", h.parity, true);
      }
      r.details["HP"] = inv.to_json()["HP"];
    });
    return;
  }
  guarded(r, r.task, std::nullopt, [&] {
    MixedComplex m = invariant_complex(t, cap);
    if (r.task == "hh")
      report_dims(r, quantity("HH", t), homology_report(m.hochschild_window()), opt_top(job));
    else
      report_dims(r, quantity("HC", t), homology_report(tot_window(m).tot), opt_top(job));
  });
}

void task_coproduct(JobResult& r, const Resolver& res, const Json& job, const std::string& where, int cap) {
  Target t = target(res, job, where, cap, SaydSide::RightLeft);
  PsiMap psi = job.contains("psi") ? parse_psi(job["psi"], t.m, where + ".psi") : diagonal_psi(t.m);
  std::set<std::string> parts{"rho", "hh", "coalgebra"};
  if (cohomological(t.m) && t.m.dim() == 1) parts.insert("shuffle");
  if (!cohomological(t.m)) parts.insert("hc");
  if (job.contains("parts")) {
    parts.clear();
    for (const auto& p : job["parts"]) parts.insert(p.get<std::string>());
  }
  int top = opt_top(job).value_or(cap - 1);
  std::map<int, CoproductResult> hh;
  auto record = [&](const std::string& name, int n, const CoproductResult& c) {
    if (c.inconclusive)
      inconclusive(r, name, n, c.witness);
    else
      check(r, name, n, c.ok(), c.witness);
    value(r, name + " source dim", n, c.classes.domain().dim());
    r.details[name][std::to_string(n)] = c.to_json();
  };
  auto coalgebra = [&] {
    if (!parts.count("coalgebra") || hh.size() != static_cast<std::size_t>(top + 1)) return;
    guarded(r, "coalgebra", std::nullopt, [&] {
      auto c = check_coalgebra([&](int n) { return hh.at(n).classes; },
                               [&](int n) { return hh.at(n).classes.domain().dim(); }, top);
      check(r, "coassociative", std::nullopt, c.coassociative, c.witness);
      check(r, "cocommutative", std::nullopt, c.cocommutative, c.witness);
    });
  };

  bool classes = parts.count("hh") || parts.count("coalgebra") || parts.count("hc") || parts.count("hp");
  if (cohomological(t.m) && !classes) {
    // rho alone is cheap; the Eilenberg-Zilber pair is not built
    std::unique_ptr<PhiRho> rho;
    guarded(r, "psi gate", std::nullopt, [&] { rho = std::make_unique<PhiRho>(t.h, t.m, psi, cap); });
    if (!rho) return;
    if (parts.count("rho")) axioms(r, "rho/", rho->check());
    if (parts.count("shuffle"))
      guarded(r, "shuffle formula", std::nullopt, [&] {
        auto s = check_shuffle_formula(*rho);
        check(r, "shuffle formula", std::nullopt, s.passed, s.witness);
        value(r, "shuffle formula instances", std::nullopt, s.instances);
      });
    return;
  }
  if (cohomological(t.m)) {
    std::unique_ptr<CochainCoproduct> cp;
    guarded(r, "psi gate", std::nullopt, [&] { cp = std::make_unique<CochainCoproduct>(t.h, t.m, psi, cap); });
    if (!cp) return;
    if (parts.count("rho")) axioms(r, "rho/", cp->phi_rho().check());
    if (parts.count("shuffle")) {
      guarded(r, "shuffle formula", std::nullopt, [&] {
        auto s = check_shuffle_formula(cp->phi_rho());
        check(r, "shuffle formula", std::nullopt, s.passed, s.witness);
        value(r, "shuffle formula instances", std::nullopt, s.instances);
      });
    }
    if (parts.count("hh") || parts.count("coalgebra"))
      for (int n = 0; n <= top; ++n) guarded(r, "HH coproduct", n, [&] { hh[n] = cp->hh(n); record("HH coproduct", n, hh[n]); });
    coalgebra();
    if (parts.count("hc"))
      for (int n = 0; n + 3 <= cap; ++n) guarded(r, "HC coproduct", n, [&] { record("HC coproduct", n, cp->hc(n)); });
    if (parts.count("hp"))
      for (int e = 0; e < 2; ++e) guarded(r, "HP coproduct", e, [&] { record("HP coproduct", e, cp->hp(e)); });
    return;
  }
  std::unique_ptr<ChainCoproduct> cp;
  guarded(r, "psi gate", std::nullopt, [&] { cp = std::make_unique<ChainCoproduct>(t.h, t.m, psi, cap); });
  if (!cp) return;
  if (parts.count("rho")) axioms(r, "rho/", cp->check_rho());
  if (parts.count("hh") || parts.count("coalgebra"))
    for (int n = 0; n <= top; ++n) guarded(r, "HH coproduct", n, [&] { hh[n] = cp->hh(n); record("HH coproduct", n, hh[n]); });
  coalgebra();
  if (parts.count("hc"))
    for (int n = 0; n <= top; ++n) guarded(r, "HC coproduct", n, [&] { record("HC coproduct", n, cp->hc(n)); });
}

void task_product(JobResult& r, const Resolver& res, const Json& job, const std::string& where, int cap) {
  auto [ta, tb] = target_pair(res, job, where, cap, SaydSide::LeftLeft);
  CyclicModule a = chain_module(ta, cap), b = chain_module(tb, cap);
  CupProducts ab(a, b), ba(b, a);
  std::string w;
  for (int n = 0; n + 2 <= cap; ++n)
    for (int p = 0; p <= n; ++p) {
      std::string deg = std::to_string(p) + "," + std::to_string(n - p);
      guarded(r, "B(x x By) = Bx x By", n, [&] {
        w.clear();
        bool ok = ab.check_b_cross(p, n - p, &w);
        check(r, "B(x x By) = Bx x By", n, ok, deg + " " + w);
      });
    }
  std::size_t rabt_nonzero = 0;
  Json signs = Json::object();
  for (int n = 0; n + 1 <= cap; ++n)
    for (int p = 0; p <= n; ++p)
      guarded(r, "star and the total differential", n, [&] {
        auto c = ab.rabt_sign(p, n - p);
        rabt_nonzero += c.nonzero;
        signs[std::to_string(p) + "," + std::to_string(n - p)] = c.nonzero ? c.sign : 0;
        check(r, "star and the total differential", n, c.sign != 0 || c.nonzero == 0, c.witness);
      });
  r.details["rabt sign"] = signs;
  value(r, "rabt nonzero instances", std::nullopt, rabt_nonzero);

  auto k = kunneth_maps(ab.ez().na().mixed, ab.ez().nb().mixed);
  std::size_t pairs = 0, nonzero = 0;
  for (int n = 0; n + 2 <= cap; ++n)
    for (int p = 0; p <= n; ++p) {
      std::string deg = std::to_string(p) + "," + std::to_string(n - p);
      guarded(r, "star commutativity", n, [&] {
        auto c = check_star_commutative(ab, ba, p, n - p);
        check(r, "star commutativity", n, c.passed, deg + " " + c.witness);
      });
      guarded(r, "connecting map = star", n, [&] {
        auto c = check_star_connecting(ab, k, p, n - p);
        pairs += c.pairs;
        nonzero += c.nonzero_images;
        check(r, "connecting map = star", n, c.sign == 1, deg + " " + c.witness);
      });
    }
  value(r, "connecting pairs", std::nullopt, pairs);
  value(r, "connecting nonzero images", std::nullopt, nonzero);
}

void task_ez(JobResult& r, const Resolver& res, const Json& job, const std::string& where, int cap) {
  auto [ta, tb] = target_pair(res, job, where, cap, SaydSide::RightLeft);
  EzPair ez(chain_module(ta, cap), chain_module(tb, cap));
  const auto &d = ez.diag(), &t = ez.tensor();
  std::string w;
  for (int n = 0; n <= cap; ++n) {
    check(r, "AW sh = id", n, compose(ez.aw(n), ez.sh(n)) == LinMap::identity(t.space(n)));
    if (n >= 1) {
      check(r, "[b, sh] = 0", n, compose(d.b_from(n), ez.sh(n)) == compose(ez.sh(n - 1), t.b_from(n)));
      check(r, "[b, AW] = 0", n, compose(t.b_from(n), ez.aw(n)) == compose(ez.aw(n - 1), d.b_from(n)));
    }
    if (n < cap) {
      w.clear();
      check(r, "descent to normalized chains", n, ez.check_descent(n, &w), w);
    }
    if (n + 2 <= cap) {
      LinMap lhs = compose(d.B_from(n), ez.sh(n)) - compose(ez.sh(n + 1), t.B_from(n)) +
                   compose(d.b_from(n + 2), ez.sh_prime(n));
      if (n >= 1) lhs = lhs - compose(ez.sh_prime(n - 1), t.b_from(n));
      check(r, "[B, sh] + [b, sh'] = 0", n, lhs.is_zero());
    }
    if (n + 3 <= cap)
      check(r, "[B, sh'] = 0", n,
            (compose(d.B_from(n + 2), ez.sh_prime(n)) - compose(ez.sh_prime(n + 1), t.B_from(n))).is_zero());
  }
  w.clear();
  check(r, "sh~ is an S-map", std::nullopt, smap_check(sh_tilde(ez), &w), w);
  w.clear();
  check(r, "AW~ is an S-map", std::nullopt, smap_check(aw_tilde(ez), &w), w);

  // Hochschild and cyclic dims of the diagonal against the tensor product
  auto compare = [&](const std::string& q, const HomologyReport& x, const HomologyReport& y) {
    for (const auto& [n, hx] : x.degrees) {
      const auto& hy = y.degrees.at(n);
      if (hx.tainted || hy.tainted) continue;
      value(r, q + " diagonal", n, hx.dim);
      value(r, q + " tensor", n, hy.dim);
      check(r, q + " dims agree", n, hx.dim == hy.dim,
            std::to_string(hx.dim) + " vs " + std::to_string(hy.dim));
    }
  };
  compare("HH", homology_report(d.hochschild_window()), homology_report(t.hochschild_window()));
  compare("HC", homology_report(tot_window(d).tot), homology_report(tot_window(t).tot));
}

void task_kunneth(JobResult& r, const Resolver& res, const Json& job, const std::string& where, int cap) {
  auto [ta, tb] = target_pair(res, job, where, cap, SaydSide::RightLeft);
  MixedComplex a = normalize(chain_module(ta, cap)).mixed, b = normalize(chain_module(tb, cap)).mixed;
  KunnethMaps k = kunneth_maps(a, b);
  auto ha = homology_report(a.hochschild_window()), hb = homology_report(b.hochschild_window()),
       ht = homology_report(k.tensor.hochschild_window());
  for (int n = 0; n < cap; ++n) {
    LinMap j = k.jay(n);
    check(r, "Kunneth map is an isomorphism", n,
          j.domain().dim() == j.codomain().dim() && rank(j) == j.domain().dim(),
          std::to_string(j.domain().dim()) + " -> " + std::to_string(j.codomain().dim()));
    value(r, "HH tensor", n, ht.degrees.at(n).dim, ht.degrees.at(n).tainted);
    value(r, "HH first", n, ha.degrees.at(n).dim, ha.degrees.at(n).tainted);
    value(r, "HH second", n, hb.degrees.at(n).dim, hb.degrees.at(n).tainted);
  }
  auto audit = k.les_audit();
  check(r, "long exact sequence exact", std::nullopt, audit.exact, audit.witness);
  check(r, "long exact sequence alternating sum", std::nullopt, audit.alternating_sum == 0,
        std::to_string(audit.alternating_sum));
  r.details["les"] = Json{{"terms", audit.terms}, {"dims", audit.dims}, {"ranks", audit.ranks},
                          {"alternating_sum", audit.alternating_sum}};
  std::string w;
  check(r, "nabla is a map of supercomplexes", std::nullopt, k.check_nabla(&w), w);
}

void task_omega(JobResult& r, const Resolver& res, const Json& job, const std::string& where, int cap) {
  std::vector<SaydSide> sides{SaydSide::RightLeft, SaydSide::LeftLeft};
  if (job.contains("modules")) sides = {Resolver::parse_side(res.spec(job["modules"][0].get<std::string>(), "module", where + ".modules[0]")["side"], where + ".modules[0]")};
  for (SaydSide side : sides) {
    auto [ta, tb] = target_pair(res, job, where, cap, side);
    if (ta.m.side != tb.m.side) bad(where + ".modules", "modules carry different sides");
    std::string name = side == SaydSide::RightLeft ? "Omega cocyclic" : "Omega cyclic";
    guarded(r, name, std::nullopt, [&] {
      OmegaIso o = side == SaydSide::RightLeft ? omega_cocyclic(ta.h, tb.h, ta.m, tb.m, cap)
                                               : omega_cyclic(ta.h, tb.h, ta.m, tb.m, cap);
      for (int n = 0; n <= cap; ++n) {
        bool inv = compose(o.inverse[n], o.forward[n]) == LinMap::identity(o.forward[n].domain()) &&
                   compose(o.forward[n], o.inverse[n]) == LinMap::identity(o.forward[n].codomain());
        check(r, name + " two-sided inverse", n, inv);
        value(r, name + " dim", n, o.forward[n].domain().dim());
      }
      check(r, name + " commutes with every operator", std::nullopt, true);
    });
  }
}

void task_lie(JobResult& r, const Resolver& res, const Json& job, const std::string& where, int cap) {
  LieAlgebraData l = res.lie(job["lie"].get<std::string>(), where + ".lie");
  ChevalleyComplex ce(l);
  std::string w;
  check(r, "cup_Lie is a chain map", std::nullopt, ce.check_cup_chain_map(&w), w);
  auto dims = ce.homology_dims();
  for (std::size_t n = 0; n < dims.size(); ++n) value(r, "Lambda g homology", static_cast<int>(n), dims[n]);
  int top = std::min(cap, ce.top());
  for (int n = 0; n <= top; ++n)
    guarded(r, "sh Omega Delta A", n, [&] {
      auto d = lie_diagram_check(l, n, cap);
      check(r, "sh Omega Delta A", n, d.sh_ok(), d.sh_witness);
      if (d.shp_checked) {
        // the sh' term itself must vanish; A d_Lie is a boundary, so a nonzero
        // value there is recorded as a finding rather than a failure
        check(r, "sh' term vanishes", n, d.shp_lhs_nonzero == 0, d.shp_witness);
        value(r, "A d_Lie nonzero instances", n, d.shp_rhs_nonzero);
        if (d.shp_rhs_nonzero)
          r.details["findings"].push_back("degree " + std::to_string(n) + ": sh' term is zero, A d_Lie is not (" +
                                          d.shp_witness + ")");
      }
      r.details["degrees"][std::to_string(n)] = d.to_json();
    });
}

void task_group(JobResult& r, const Resolver& res, const Json& job, const std::string& where, int cap) {
  FiniteGroup g = res.group(job["group"].get<std::string>(), where + ".group");
  int top = opt_top(job).value_or(cap - 1);
  bool theta_ok = false;
  guarded(r, "theta", std::nullopt, [&] {
    group_theta(g, cap);
    theta_ok = true;
    check(r, "theta", std::nullopt, true);
  });
  if (!theta_ok) return;
  for (int n = 0; n <= top; ++n)
    guarded(r, "coproduct diagram", n, [&] {
      auto d = group_diagram_check(g, n, cap);
      check(r, "coproduct diagram", n, d.failures == 0, d.witness);
      if (d.hh_checked) check(r, "classes agree", n, d.hh_agrees);
      value(r, "tuples", n, d.tuples);
      r.details["degrees"][std::to_string(n)] = d.to_json();
      if (n == top) {
        for (std::size_t k = 0; k < d.hh_dims.size(); ++k) value(r, "reduced HH", static_cast<int>(k), d.hh_dims[k]);
        for (std::size_t k = 0; k < d.bar_dims.size(); ++k) value(r, "bar homology", static_cast<int>(k), d.bar_dims[k]);
      }
    });
}

void task_mutation(JobResult& r, const Resolver& res, const Json& job, const std::string& where, int cap,
                   std::uint64_t seed) {
  Target t = target(res, job, where, cap, SaydSide::RightLeft);
  if (!cohomological(t.m)) bad(where + ".module", "mutation suite needs a right-left module");
  std::size_t count = job.contains("count") ? job["count"].get<std::size_t>() : 10;
  auto s = mutation_suite(t.h, t.m, cap, seed, count);
  check(r, "baseline passes", std::nullopt, s.baseline_failures.empty(),
        s.baseline_failures.empty() ? "" : s.baseline_failures.front());
  Json list = Json::array();
  for (std::size_t k = 0; k < s.mutations.size(); ++k) {
    const auto& m = s.mutations[k];
    check(r, "mutation detected", static_cast<int>(k), m.detected, m.table + " " + m.where);
    list.push_back({{"table", m.table}, {"where", m.where}, {"delta", m.delta}, {"failing", m.failing}});
  }
  r.details["seed"] = seed;
  r.details["mutations"] = list;
}

// --------------------------------------------------------------- timestamp

std::string now_utc() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void diff_rec(const Json& a, const Json& b, const std::string& path, DiffResult& d) {
  if (!d.equal) return;
  auto differ = [&](const std::string& why) {
    d.equal = false;
    d.path = path.empty() ? "/" : path;
    d.detail = why;
  };
  if (a.type() != b.type()) return differ("type " + std::string(a.type_name()) + " vs " + b.type_name());
  if (a.is_object()) {
    for (const auto& [k, v] : a.items())
      if (!b.contains(k)) return differ("member '" + k + "' missing from golden");
    for (const auto& [k, v] : b.items())
      if (!a.contains(k)) return differ("member '" + k + "' missing from report");
    for (const auto& [k, v] : a.items()) diff_rec(v, b.at(k), path + "/" + k, d);
    return;
  }
  if (a.is_array()) {
    if (a.size() != b.size())
      return differ("length " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) diff_rec(a[k], b[k], path + "/" + std::to_string(k), d);
    return;
  }
  if (a != b) differ(a.dump() + " vs " + b.dump());
}

void require_report(const Json& j, const std::string& which) {
  if (!j.is_object() || !j.contains("jobs") || !j["jobs"].is_array() || !j.contains("status"))
    throw ConfigError(which, "not a report (needs status and a jobs list)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(what + ":" + std::to_string(line) + ":" + std::to_string(col), "JSON syntax error");
  }
}

}  // namespace

// ------------------------------------------------------------------ config

JobConfig parse_config(const Json& j) {
  if (!j.is_object()) bad("config", "expected a JSON object");
  only_fields(j, {"cap", "inputs", "jobs", "output", "description"}, "config");
  JobConfig c;
  if (j.contains("cap")) {
    c.cap = as_int(j["cap"], "cap");
    if (c.cap < 1) bad("cap", "cap must be >= 1");
  }
  if (j.contains("inputs")) {
    if (!j["inputs"].is_object()) bad("inputs", "expected an object of named inputs");
    c.inputs = j["inputs"];
  }
  if (j.contains("output")) {
    const Json& o = j["output"];
    if (!o.is_object()) bad("output", "expected an object");
    only_fields(o, {"json", "table"}, "output");
    if (o.contains("json")) c.json_out = as_string(o["json"], "output.json");
    if (o.contains("table")) c.table_out = as_string(o["table"], "output.table");
  }
  const Json& jobs = member(j, "jobs", "config");
  if (!jobs.is_array() || jobs.empty()) bad("jobs", "expected a nonempty list");

  Resolver res(c.inputs);
  for (const auto& [name, spec] : c.inputs.items()) {
    std::string k = res.kind(name, "inputs." + name);
    if (k == "group") res.group(name, "inputs." + name);
    if (k == "lie") res.lie(name, "inputs." + name);
    if (k == "hopf") res.hopf(name, 1, "inputs." + name);
    if (k == "module") {
      std::string over = res.module_over(name, "inputs." + name);
      res.module(name, res.hopf(over, 1, "inputs." + name + ".module.over"), "inputs." + name);
    }
  }

  std::set<std::string> keys;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const Json& job = jobs[k];
    std::string p = job_path(k);
    if (!job.is_object()) bad(p, "expected an object");
    std::string key = as_string(member(job, "key", p), p + ".key");
    if (key.empty()) bad(p + ".key", "must be nonempty");
    if (!keys.insert(key).second) bad(p + ".key", "duplicate key '" + key + "'");
    std::string task = as_string(member(job, "task", p), p + ".task");
    if (!task_names().count(task)) bad(p + ".task", "unknown task '" + task + "'");
    const auto& shape = task_shapes().at(task);
    std::set<std::string> allowed{"key", "task", "cap"};
    allowed.insert(shape.required.begin(), shape.required.end());
    allowed.insert(shape.optional.begin(), shape.optional.end());
    only_fields(job, allowed, p);
    for (const auto& f : shape.required) member(job, f, p);
    if (job.contains("cap") && as_int(job["cap"], p + ".cap") < 1) bad(p + ".cap", "cap must be >= 1");
    if (job.contains("top") && as_int(job["top"], p + ".top") < 0) bad(p + ".top", "must be >= 0");
    if (job.contains("count") && as_int(job["count"], p + ".count") < 1) bad(p + ".count", "must be >= 1");
    auto ref = [&](const std::string& f, const std::string& kind) {
      if (job.contains(f)) res.spec(as_string(job[f], p + "." + f), kind, p + "." + f);
    };
    ref("hopf", "hopf");
    ref("module", "module");
    ref("lie", "lie");
    ref("group", "group");
    if (!shape.required.count("pair") && task != "lie-diagram" && task != "group-diagram" && !job.contains("hopf") &&
        !job.contains("module"))
      bad(p, "needs hopf or module");
    for (const char* f : {"pair", "modules"})
      if (job.contains(f)) {
        const Json& l = array_of(job[f], 2, p + "." + f);
        for (int i = 0; i < 2; ++i)
          res.spec(as_string(l[i], p + "." + f + "[" + std::to_string(i) + "]"),
                   std::string(f) == "pair" ? "hopf" : "module", p + "." + f + "[" + std::to_string(i) + "]");
      }
    if (job.contains("parts")) {
      if (!job["parts"].is_array()) bad(p + ".parts", "expected a list");
      for (const auto& x : job["parts"])
        if (!kCoproductParts.count(as_string(x, p + ".parts")))
          bad(p + ".parts", "unknown part '" + x.get<std::string>() + "'");
    }
    if (job.contains("psi") && !(job["psi"] == "diagonal" || (job["psi"].is_object() && job["psi"].contains("table"))))
      bad(p + ".psi", "expected \"diagonal\" or {table}");
  }
  c.jobs = jobs.get<std::vector<Json>>();
  return c;
}

JobConfig parse_config_text(const std::string& text) { return parse_config(parse_text(text, "config")); }

JobConfig load_config(const std::string& path) { return parse_config(parse_text(read_file(path), path)); }

// --------------------------------------------------------------------- run

JobResult run_job(const JobConfig& cfg, const Json& job, const Options& opt) {
  JobResult r;
  r.key = job.at("key").get<std::string>();
  r.task = job.at("task").get<std::string>();
  r.cap = job_cap(cfg, job, opt);
  r.inputs = Json::object();
  for (const char* f : {"hopf", "module", "pair", "modules", "lie", "group"})
    if (job.contains(f)) r.inputs[f] = job[f];
  if (opt.allowed && !opt.allowed->count(r.task)) bad("job " + r.key, "task '" + r.task + "' not allowed here");
  Resolver res(cfg.inputs);
  std::string where = "job " + r.key;
  try {
    if (r.task == "axioms") task_axioms(r, res, job, where, r.cap);
    else if (r.task == "hh" || r.task == "hc" || r.task == "hp") task_invariants(r, res, job, where, r.cap);
    else if (r.task == "coproduct") task_coproduct(r, res, job, where, r.cap);
    else if (r.task == "product") task_product(r, res, job, where, r.cap);
    else if (r.task == "ez") task_ez(r, res, job, where, r.cap);
    else if (r.task == "kunneth") task_kunneth(r, res, job, where, r.cap);
    else if (r.task == "omega") task_omega(r, res, job, where, r.cap);
    else if (r.task == "lie-diagram") task_lie(r, res, job, where, r.cap);
    else if (r.task == "group-diagram") task_group(r, res, job, where, r.cap);
    else if (r.task == "mutation") task_mutation(r, res, job, where, r.cap, opt.seed);
  } catch (const ConfigError&) {
    throw;
  } catch (const CapOverflow& e) {
    inconclusive(r, "run", std::nullopt, e.what());
  } catch (const StructuralError& e) {
    check(r, "run", std::nullopt, false, e.what());
  }
  r.status = Status::Pass;
  for (const auto& c : r.checks) {
    if (c.status == Status::Fail) r.status = Status::Fail;
    if (c.status == Status::Inconclusive && r.status == Status::Pass) r.status = Status::Inconclusive;
  }
  return r;
}

RunReport run(const JobConfig& cfg, const Options& opt) {
  if (opt.cap && *opt.cap < 1) bad("--cap", "cap must be >= 1");
  if (opt.allowed)
    for (std::size_t k = 0; k < cfg.jobs.size(); ++k)
      if (!opt.allowed->count(cfg.jobs[k]["task"].get<std::string>()))
        bad(job_path(k) + ".task", "task '" + cfg.jobs[k]["task"].get<std::string>() + "' not allowed by this subcommand");
  std::size_t n = cfg.jobs.size();
  std::vector<JobResult> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < n;) {
      try {
        out[k] = run_job(cfg, cfg.jobs[k], opt);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  RunReport r;
  r.seed = opt.seed;
  r.jobs = std::move(out);
  std::sort(r.jobs.begin(), r.jobs.end(), [](const JobResult& a, const JobResult& b) { return a.key < b.key; });
  for (const auto& j : r.jobs) {
    if (j.status == Status::Fail) r.status = Status::Fail;
    if (j.status == Status::Inconclusive && r.status == Status::Pass) r.status = Status::Inconclusive;
  }
  return r;
}

int exit_code(const RunReport& r, bool allow_inconclusive) {
  if (r.status == Status::Fail) return 1;
  if (r.status == Status::Inconclusive && !allow_inconclusive) return 3;
  return 0;
}

// ------------------------------------------------------------------ report

Json JobResult::to_json() const {
  Json cj = Json::array(), vj = Json::array();
  for (const auto& c : checks) {
    Json e{{"check", c.name}, {"status", status_name(c.status)}, {"degree", nullptr}};
    if (c.degree) e["degree"] = *c.degree;
    if (!c.witness.empty()) e["witness"] = c.witness;
    cj.push_back(e);
  }
  for (const auto& v : values) {
    Json e{{"quantity", v.quantity}, {"value", v.value}, {"cap", cap}, {"degree", nullptr},
           {"edge_tainted", v.edge_tainted}};
    if (v.degree) e["degree"] = *v.degree;
    vj.push_back(e);
  }
  return Json{{"key", key},     {"task", task},   {"cap", cap},         {"inputs", inputs},
              {"checks", cj},   {"values", vj},   {"details", details}, {"status", status_name(status)}};
}

Json RunReport::to_json(bool with_timestamp) const {
  Json j{{"tool", "hopfcup"}, {"report_version", 1}, {"seed", seed}, {"status", status_name(status)}};
  Json jobs_j = Json::array();
  for (const auto& x : jobs) jobs_j.push_back(x.to_json());
  j["jobs"] = jobs_j;
  if (with_timestamp) j["timestamp"] = now_utc();
  return j;
}

std::string RunReport::table() const {
  std::vector<std::array<std::string, 5>> rows{{"job", "check", "degree", "result", "detail"}};
  for (const auto& j : jobs) {
    for (const auto& c : j.checks)
      rows.push_back({j.key, c.name, c.degree ? std::to_string(*c.degree) : "-", status_name(c.status),
                      c.witness.substr(0, 60)});
    for (const auto& v : j.values)
      rows.push_back({j.key, v.quantity, v.degree ? std::to_string(*v.degree) : "-", std::to_string(v.value),
                      v.edge_tainted ? "edge-tainted" : ""});
    rows.push_back({j.key, "== " + j.task, "cap " + std::to_string(j.cap), status_name(j.status), ""});
  }
  std::array<std::size_t, 5> w{};
  for (const auto& r : rows)
    for (std::size_t k = 0; k < 5; ++k) w[k] = std::max(w[k], r[k].size());
  std::ostringstream os;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t k = 0; k < 5; ++k) {
      line += r[k];
      if (k + 1 < 5) line += std::string(w[k] - r[k].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  os << "overall: " << status_name(status) << '\n';
  return os.str();
}

Json canonical(const Json& j) {
  if (j.is_object()) {
    Json o = Json::object();
    for (const auto& [k, v] : j.items())
      if (k != "timestamp") o[k] = canonical(v);
    return o;
  }
  if (j.is_array()) {
    Json a = Json::array();
    for (const auto& v : j) a.push_back(canonical(v));
    return a;
  }
  return j;
}

std::string canonical_dump(const Json& j) { return canonical(j).dump(2) + "\n"; }

DiffResult diff_golden(const Json& report, const Json& golden) {
  require_report(report, "report");
  require_report(golden, "golden");
  DiffResult d;
  diff_rec(canonical(report), canonical(golden), "", d);
  // name the job when the difference sits inside one
  if (!d.equal && d.path.rfind("/jobs/", 0) == 0) {
    std::size_t k = std::stoul(d.path.substr(6));
    if (k < report["jobs"].size() && report["jobs"][k].contains("key"))
      d.detail += " (job " + report["jobs"][k]["key"].dump() + ")";
  }
  return d;
}

DiffResult diff_golden_files(const std::string& report_path, const std::string& golden_path) {
  return diff_golden(parse_text(read_file(report_path), report_path), parse_text(read_file(golden_path), golden_path));
}

// ---------------------------------------------------------------- mutation

namespace {

std::vector<std::string> suite_failures(const HopfAlgebra& h, const SAYDModule& m, const CocyclicModule& c,
                                        int cap) {
  std::vector<std::string> f;
  auto collect = [&](const std::string& prefix, const std::function<AxiomReport()>& run) {
    try {
      for (const auto& a : run())
        if (!a.passed) f.push_back(prefix + a.name);
    } catch (const StructuralError& e) {
      f.push_back(prefix + e.what());
    }
  };
  collect("hopf/", [&] { return check_hopf_axioms(h); });
  collect("sayd/", [&] { return check_sayd(m, h); });
  collect("presentation/", [&] { return check_cm_presentation(h, m, cap); });
  collect("cyclic identities/", [&] { return check_cocyclic_identities(c); });
  return f;
}

}  // namespace

MutationSuite mutation_suite(const HopfAlgebra& h, const SAYDModule& m, int cap, std::uint64_t seed,
                             std::size_t count) {
  MutationSuite s;
  CocyclicModule c = materialize_cocyclic(*cm_presentation(h, m, cap));
  s.baseline_failures = suite_failures(h, m, c, cap);
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::vector<Scalar> deltas{Scalar(1), Scalar(-1), Scalar(2), Scalar(-2), Scalar(1, 2)};
  for (std::size_t k = 0; k < count; ++k) {
    Mutation mu;
    Scalar delta = deltas[pick(deltas.size())];
    mu.delta = scalar_str(delta);
    HopfAlgebra hm = h;
    SAYDModule mm = m;
    CocyclicModule cm = c;
    switch (k % 3) {
      case 0: {
        std::size_t b = pick(h.dim()), row = pick(h.dim());
        axpy(hm.antipode_table[b], delta, unit_vec(row));
        mu.table = "antipode";
        mu.where = "S(e" + std::to_string(b) + ")[" + std::to_string(row) + "]";
        break;
      }
      case 1: {
        std::size_t i = pick(m.dim()), a = pick(h.dim()), j = pick(m.dim());
        auto& terms = mm.coaction_table[i];
        bool merged = false;
        for (auto it = terms.begin(); it != terms.end(); ++it)
          if (std::get<0>(*it) == a && std::get<1>(*it) == j) {
            std::get<2>(*it) += delta;
            if (std::get<2>(*it) == 0) terms.erase(it);
            merged = true;
            break;
          }
        if (!merged) terms.emplace_back(a, j, delta);
        mu.table = "coaction";
        mu.where = "m" + std::to_string(i) + " -> e" + std::to_string(a) + " (x) m" + std::to_string(j);
        break;
      }
      default: {
        int n = static_cast<int>(pick(static_cast<std::size_t>(cap) + 1));
        std::size_t dim = cm.space(n).dim();
        std::size_t col = pick(dim), row = pick(dim);
        cm.cyc[n].add_to(row, col, delta);
        mu.table = "tau";
        mu.where = "tau_" + std::to_string(n) + "[" + std::to_string(row) + "," + std::to_string(col) + "]";
        break;
      }
    }
    mu.failing = suite_failures(hm, mm, cm, cap);
    mu.detected = !mu.failing.empty();
    s.mutations.push_back(mu);
  }
  return s;
}

}  // namespace hopfcup::cli
