// subpack: bounds, constructions, verification and ILP export for subspace packings.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "subpack/bounds.hpp"
#include "subpack/codefile.hpp"
#include "subpack/constructions.hpp"
#include "subpack/ilp.hpp"
#include "subpack/oracle.hpp"
#include "subpack/rankmetric.hpp"
#include "subpack/table.hpp"

using namespace subpack;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kUsage = 2, kBudget = 3, kInternal = 4 };

// Thrown for bad command-line values that CLI11 cannot detect itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool paper_free = false;
  bool json = false;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget;
  std::string output;
  std::string known_values;
};

json big(const BigInt& x) {
  if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max()) return x.convert_to<std::uint64_t>();
  return x.str();
}

const char* side_name(BoundSide s) { return s == BoundSide::upper ? "upper" : "lower"; }

json bound_json(const BoundResult& r) {
  json methods = json::array();
  for (const auto& e : r.provenance)
    methods.push_back({{"method", e.method},
                       {"side", side_name(e.side)},
                       {"value", big(e.value)},
                       {"note", e.note},
                       {"applied", e.applied}});
  const auto& p = r.params;
  return {{"q", p.q},         {"n", p.n},           {"k", p.k},           {"t", p.t},
          {"lambda", p.lambda}, {"lower", big(r.lower)}, {"upper", big(r.upper)}, {"methods", methods}};
}

class Registry {
 public:
  explicit Registry(const Globals& g) {
    if (g.paper_free) return;
    if (g.known_values.empty()) {
      values_ = &KnownValues::bundled();
    } else {
      loaded_ = KnownValues::load(g.known_values);
      values_ = &loaded_;
    }
  }
  const KnownValues* get() const { return values_; }

 private:
  KnownValues loaded_;
  const KnownValues* values_ = nullptr;
};

void emit_text(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw std::runtime_error("cannot write " + g.output);
  out << text;
}

unsigned narrow(std::uint64_t v) {
  if (v > 1'000'000) throw UsageError("parameter " + std::to_string(v) + " is out of range");
  return static_cast<unsigned>(v);
}

// q n k t lambda
PackingParams packing_params(const std::vector<std::uint64_t>& v) {
  PackingParams p{narrow(v.at(0)), narrow(v.at(1)), narrow(v.at(2)), narrow(v.at(3)), v.at(4)};
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!is_supported_field_order(p.q)) throw UsageError("unsupported field order " + std::to_string(p.q));
  return p;
}

// ---- bound ----

int cmd_bound(const Globals& g, const PackingParams& p) {
  Registry reg(g);
  BoundEngine engine(reg.get());
  const auto r = engine.evaluate(p);
  if (g.json) {
    emit_text(g, bound_json(r).dump(2) + "\n");
    return kOk;
  }
  std::ostringstream out;
  out << describe(p) << '\n';
  out << "lower: " << r.lower << '\n';
  out << "upper: " << r.upper << '\n';
  out << "methods:\n";
  for (const auto& e : r.provenance) {
    out << "  " << side_name(e.side) << ' ' << e.method << ": " << e.value;
    if (!e.note.empty()) out << "  (" << e.note << ')';
    if (!e.applied) out << "  [not applied]";
    out << '\n';
  }
  emit_text(g, out.str());
  return kOk;
}

// ---- construct ----

struct ConstructArgs {
  std::string method;
  std::vector<std::uint64_t> params;  // q n k delta alpha, or q n k t lambda
  std::optional<unsigned> split;
  bool no_verify = false;
};

int cmd_construct(const Globals& g, const ConstructArgs& a) {
  PackingCode code(Field(2), 0, 0);
  BigInt formula;
  std::string formula_text;
  std::optional<VerifyReport> report;
  CoveringCheck check;
  check.seed = g.seed;
  if (g.budget) check.budget = *g.budget;

  if (a.method == "dual-linkage") {
    const auto p = packing_params(a.params);
    code = build_packing_code(p);
    formula = packing_lower(p);
    formula_text = "packing lower bound via the dual linkage construction";
    if (!a.no_verify) report = verify_packing(code, p.t, p.lambda);
  } else {
    CoveringParams c;
    try {
      c = {narrow(a.params.at(0)), narrow(a.params.at(1)), narrow(a.params.at(2)), narrow(a.params.at(3)),
           a.params.at(4)};
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (a.method == "lifted-mrd") {
      code = construction_1(c);
      const unsigned hi = std::max(c.k, c.n - c.k), lo = std::min(c.k, c.n - c.k);
      formula = BigInt(c.alpha - 1) * ipow(c.q, hi * (lo - c.delta + 1));
      formula_text = "(alpha-1) q^(max(k,n-k)(min(k,n-k)-delta+1))";
    } else if (a.method == "linkage") {
      if (a.split) {
        const unsigned t = *a.split;
        if (t >= c.n) throw std::invalid_argument("split t must be below n");
        const auto inner = build_covering_code({c.q, c.n - t, c.k, c.delta, c.alpha});
        if (t < c.k) {
          code = construction_2(c, t, inner, false);
          formula = BigInt(c.alpha - 1) * ipow(c.q, c.k * (t - c.delta + 1)) * inner.size();
          formula_text = "(alpha-1) q^(k(t-delta+1)) |inner|";
        } else {
          if (t + c.k < 2 * c.delta) throw std::invalid_argument("appendix ambient t+k-delta is too small");
          const unsigned app_n = t + c.k - c.delta;
          const auto app = build_covering_code({c.q, app_n, c.k, c.delta, c.alpha});
          PackingCode embedded(Field(c.q), c.n, c.k);
          for (const auto& b : app.blocks()) embedded.add(embed_with_leading_zeros(Field(c.q), b, c.n - app_n));
          code = construction_3(c, t, inner, embedded, false);
          formula = BigInt(c.alpha - 1) * ipow(c.q, t * (c.k - c.delta + 1)) * inner.size() + app.size();
          formula_text = "(alpha-1) q^(t(k-delta+1)) |inner| + |appendix|";
        }
      } else {
        const auto plan = linkage_plan(c);
        code = build_covering_code(c);
        formula = plan.value;
        formula_text = "best linkage recursion (" + to_string(plan.step) +
                       (plan.t ? ", t=" + std::to_string(plan.t) : std::string()) + ")";
      }
    } else {
      throw UsageError("unknown method '" + a.method + "' (lifted-mrd, linkage, dual-linkage)");
    }
    if (!a.no_verify) report = verify_covering(code, c.delta, c.alpha, check);
  }

  if (!g.output.empty()) write_code_file(g.output, code);
  const bool ok = !report || report->valid;
  if (g.json) {
    json j{{"method", a.method},
           {"size", code.size()},
           {"formula", big(formula)},
           {"formula_text", formula_text},
           {"verified", report ? json(report->valid) : json(nullptr)}};
    if (report) j["probabilistic"] = report->probabilistic;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "blocks: " << code.size() << '\n';
    std::cout << "formula: " << formula << "  " << formula_text << '\n';
    if (report)
      std::cout << "verification: " << report->summary();
    else
      std::cout << "verification: skipped\n";
    if (g.output.empty()) write_code(std::cout, code);
  }
  return ok ? kOk : kInvalid;
}

// ---- verify ----

struct VerifyArgs {
  std::string path;
  std::optional<unsigned> t;
  std::optional<std::uint64_t> lambda;
  std::optional<unsigned> delta;
  std::optional<std::uint64_t> alpha;
};

json report_json(const VerifyReport& r) {
  json j{{"valid", r.valid}, {"probabilistic", r.probabilistic}, {"blocks", r.code_size}};
  if (r.mode == VerifyMode::packing) {
    j["mode"] = "packing";
    j["t"] = r.t;
    j["lambda"] = r.lambda;
    j["max_coverage"] = r.max_coverage;
    json h = json::array();
    for (const auto& x : r.histogram) h.push_back(big(x));
    j["histogram"] = h;
    if (r.worst_subspace) j["worst"] = format_subspace_inline(*r.worst_subspace);
  } else {
    j["mode"] = "covering";
    j["delta"] = r.delta;
    j["alpha"] = r.alpha;
    j["min_span"] = r.min_span;
    j["subsets_checked"] = r.subsets_checked;
    j["subsets_total"] = big(r.subsets_total);
    j["worst"] = r.worst_subset;
  }
  return j;
}

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  const bool packing = a.t || a.lambda;
  const bool covering = a.delta || a.alpha;
  if (packing == covering) throw UsageError("give either --t and --lambda, or --delta and --alpha");
  if (packing && !(a.t && a.lambda)) throw UsageError("packing mode needs both --t and --lambda");
  if (covering && !(a.delta && a.alpha)) throw UsageError("covering mode needs both --delta and --alpha");

  PackingCode code(Field(2), 0, 0);
  try {
    code = read_code_file(a.path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  VerifyReport r;
  if (packing) {
    if (*a.t < 1 || *a.t > code.dim()) throw UsageError("--t must satisfy 1 <= t <= k");
    r = verify_packing(code, *a.t, *a.lambda);
  } else {
    CoveringCheck check;
    check.seed = g.seed;
    if (g.budget) check.budget = *g.budget;
    r = verify_covering(code, *a.delta, *a.alpha, check);
  }
  emit_text(g, g.json ? report_json(r).dump(2) + "\n" : r.summary());
  return r.valid ? kOk : kInvalid;
}

// ---- table ----

int cmd_table(const Globals& g, unsigned q, unsigned n, std::uint64_t lambda, bool compare) {
  if (!is_supported_field_order(q) || n < 3 || lambda < 1) throw UsageError("table needs a supported q, n >= 3, lambda >= 1");
  Registry reg(g);
  BoundEngine engine(reg.get());
  const KnownValues* fixtures = nullptr;
  KnownValues loaded;
  if (compare) {
    if (g.known_values.empty()) {
      fixtures = &KnownValues::bundled();
    } else {
      loaded = KnownValues::load(g.known_values);
      fixtures = &loaded;
    }
  }
  const auto table = build_table(q, n, lambda, engine, fixtures);
  if (g.json) {
    json cells = json::array();
    for (const auto& c : table.cells) {
      json j = bound_json(c.bounds);
      if (c.fixture) {
        j["fixture_lower"] = big(c.fixture->lower);
        j["fixture_upper"] = big(c.fixture->upper);
        j["consistent"] = c.consistent();
      }
      cells.push_back(j);
    }
    emit_text(g, json{{"q", q}, {"n", n}, {"lambda", lambda}, {"cells", cells}}.dump(2) + "\n");
  } else {
    emit_text(g, render_table(table, compare));
  }
  return kOk;
}

// ---- ilp ----

int cmd_ilp(const Globals& g, const PackingParams& p, const std::string& format_token, bool strengthen,
            std::string index_path) {
  IlpFormat format;
  try {
    format = parse_ilp_format(format_token);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Registry reg(g);
  BoundEngine engine(reg.get());
  IlpLimits limits;
  if (g.budget) limits.max_vars = limits.max_rows = *g.budget;
  const auto model = build_model(p, strengthen, engine, limits);
  emit_text(g, emit(model, format));
  if (index_path.empty() && !g.output.empty()) index_path = g.output + ".index";
  if (!index_path.empty()) {
    std::ofstream out(index_path);
    if (!out) throw std::runtime_error("cannot write " + index_path);
    out << emit_index(model);
  }
  std::ostream& info = g.output.empty() ? std::cerr : std::cout;
  info << "variables: " << model.num_vars() << "  rows: " << model.rows.size()
       << "  coverage rows: " << model.coverage_rows << '\n';
  return kOk;
}

// ---- search ----

int cmd_search(const Globals& g, const std::string& mode, const PackingParams& p, unsigned passes) {
  Registry reg(g);
  BoundEngine engine(reg.get());
  if (mode == "exhaustive") {
    SearchOptions opt;
    opt.engine = &engine;
    opt.seed = g.seed;
    if (g.budget) opt.node_budget = *g.budget;
    const auto r = exhaustive_max(p, opt);
    if (!g.output.empty()) write_code_file(g.output, r.witness);
    const bool valid = verify_packing(r.witness, p.t, p.lambda).valid;
    if (g.json) {
      std::cout << json{{"params", describe(p)},
                        {"value", r.value},
                        {"complete", r.complete},
                        {"cutoff", big(r.cutoff)},
                        {"nodes", r.nodes},
                        {"note", r.note},
                        {"witness_valid", valid}}
                       .dump(2)
                << '\n';
    } else {
      std::cout << describe(p) << (r.complete ? " = " : " >= ") << r.value << '\n';
      std::cout << "upper bound used as cutoff: " << r.cutoff << '\n';
      std::cout << "nodes: " << r.nodes << "  (" << r.note << ")\n";
      std::cout << "witness verified: " << (valid ? "yes" : "NO") << '\n';
    }
    if (!valid) return kInvalid;
    return r.complete ? kOk : kBudget;
  }
  if (mode == "greedy") {
    const auto code = greedy_lower(p, g.seed, passes);
    if (!g.output.empty()) write_code_file(g.output, code);
    if (g.json)
      std::cout << json{{"params", describe(p)}, {"size", code.size()}, {"seed", g.seed}, {"passes", passes}}.dump(2)
                << '\n';
    else
      std::cout << describe(p) << " >= " << code.size() << "  (seed " << g.seed << ", " << passes << " passes)\n";
    return kOk;
  }
  throw UsageError("search mode must be exhaustive or greedy");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds, constructions and verification for subspace packings A_q(n,k,t;lambda)"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--paper-free", g.paper_free, "Ignore the registry of known values");
  app.add_flag("--json", g.json, "Structured output");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--budget", g.budget, "Subset, node or size budget for the command");
  app.add_option("--output,-o", g.output, "Output path");
  app.add_option("--known-values", g.known_values, "Registry file replacing the bundled one");

  std::vector<std::uint64_t> params;

  auto* bound = app.add_subcommand("bound", "Lower and upper bounds with provenance");
  bound->add_option("params", params, "q n k t lambda")->expected(5)->required();

  ConstructArgs cons;
  auto* construct = app.add_subcommand("construct", "Build a code from MRD translates");
  construct->add_option("--method", cons.method, "lifted-mrd, linkage or dual-linkage")->required();
  construct->add_option("params", cons.params, "q n k delta alpha (q n k t lambda for dual-linkage)")
      ->expected(5)
      ->required();
  construct->add_option("--t", cons.split, "Split point for the linkage step");
  construct->add_flag("--no-verify", cons.no_verify, "Skip verification");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Check a code file");
  verify->add_option("path", ver.path, "Code file")->required()->check(CLI::ExistingFile);
  verify->add_option("--t", ver.t, "Packing: t");
  verify->add_option("--lambda", ver.lambda, "Packing: lambda");
  verify->add_option("--delta", ver.delta, "Covering: delta");
  verify->add_option("--alpha", ver.alpha, "Covering: alpha");

  unsigned tq = 2, tn = 6;
  std::uint64_t tl = 2;
  bool compare = false;
  auto* table = app.add_subcommand("table", "Bounds for A_q(n,k,t;lambda) over all k and t");
  table->add_option("q", tq)->required();
  table->add_option("n", tn)->required();
  table->add_option("lambda", tl)->required();
  table->add_flag("--compare", compare, "Compare with the fixture tables");

  std::string format = "lp";
  bool strengthen = false;
  std::string index_path;
  auto* ilp = app.add_subcommand("ilp", "Emit the integer linear program");
  ilp->add_option("params", params, "q n k t lambda")->expected(5)->required();
  ilp->add_option("--format", format, "lp or mps");
  ilp->add_flag("--strengthen", strengthen, "Add the i-subspace rows");
  ilp->add_option("--index", index_path, "Variable index file (default: <output>.index)");

  std::string mode;
  unsigned passes = 20;
  auto* search = app.add_subcommand("search", "Exhaustive or greedy search");
  search->add_option("mode", mode, "exhaustive or greedy")->required();
  search->add_option("params", params, "q n k t lambda")->expected(5)->required();
  search->add_option("--passes", passes, "Greedy restarts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*bound) return cmd_bound(g, packing_params(params));
    if (*construct) return cmd_construct(g, cons);
    if (*verify) return cmd_verify(g, ver);
    if (*table) return cmd_table(g, tq, tn, tl, compare);
    if (*ilp) return cmd_ilp(g, packing_params(params), format, strengthen, index_path);
    if (*search) return cmd_search(g, mode, packing_params(params), passes);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "size limit: " << e.what() << '\n';
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
