#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mingenus/adjunction.hpp"
#include "mingenus/catalog.hpp"
#include "mingenus/charvec_search.hpp"
#include "mingenus/cli.hpp"
#include "mingenus/constructions.hpp"
#include "mingenus/errors.hpp"
#include "mingenus/intersections.hpp"
#include "mingenus/manifest.hpp"

namespace mingenus::cli {
namespace {

using nlohmann::json;

// Exceptions that carry an exit code of their own.
class UsageError : public Error {
 public:
  using Error::Error;
};
class OracleFailure : public Error {
 public:
  OracleFailure(const std::string& what, int code, json report) : Error(what), code_(code), report_(std::move(report)) {}
  int code() const { return code_; }
  const json& report() const { return report_; }

 private:
  int code_;
  json report_;
};

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

Int parse_int_arg(const std::string& s, const std::string& name) {
  Int v;
  std::string t = (!s.empty() && s[0] == '+') ? s.substr(1) : s;
  if (t.empty() || t.find_first_not_of("-0123456789") != std::string::npos || v.set_str(t, 10) != 0)
    throw UsageError("--" + name + ": \"" + s + "\" is not an integer");
  return v;
}

std::vector<Int> parse_int_list(const std::string& s, const std::string& name) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int_arg(item, name));
  if (out.empty()) throw UsageError("--" + name + ": expected a comma-separated integer list");
  return out;
}

json witness_json(const CharWitness& w) {
  json pairings = json::array();
  for (const Int& p : w.pairings) pairings.push_back(int_to_json(p));
  return {{"c", vector_to_json(w.c)}, {"square", int_to_json(w.square)}, {"pairings", pairings}};
}

json bound_json(const BoundReport& r) {
  json out = {{"bound", int_to_json(r.bound)},
              {"strict", r.strict},
              {"method", to_string(r.method)},
              {"raw", int_to_json(r.raw)},
              {"exact", r.exact}};
  out["witness"] = r.witness ? witness_json(*r.witness) : json(nullptr);
  out["hypotheses"] = r.hypotheses;
  out["notes"] = r.notes;
  return out;
}

json kset_json(const KSetResult& k) {
  json values = json::array();
  for (const Int& v : k.k_values) values.push_back(int_to_json(v));
  return {{"d", int_to_json(k.d)},
          {"xi", vector_to_json(k.xi)},
          {"k_values", values},
          {"k0", k.k0 ? int_to_json(*k.k0) : json(nullptr)}};
}

json optional_int(const std::optional<Int>& v) { return v ? int_to_json(*v) : json(nullptr); }

std::string rational_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

struct Options {
  std::string command;
  std::string manifest_path;
  bool json_output = false;
  bool timing = false;
  std::optional<std::string> max_nodes;
  std::optional<std::string> max_abs_pairing;

  std::string class_name, class1, class2, c1_name, plan, family, params, reduced;
  std::optional<std::string> d, g1, g2, xi_sq, n, g, box;
  bool assume_hypotheses = false;
  bool assume_spheres = false;
  bool cross_check = false;
};

class Session {
 public:
  Session(const Options& opt, std::istream& in, const Environment& env) : opt_(opt), in_(in), env_(env) {}

  json run() {
    resolve_budget();
    json results;
    const std::string& c = opt_.command;
    if (c == "genus-lb") results = genus_lb();
    else if (c == "genus-ub") results = genus_ub();
    else if (c == "exact") results = exact();
    else if (c == "k-set") results = kset();
    else if (c == "dimension") results = dimension();
    else if (c == "intersect") results = intersect();
    else if (c == "list-reduced") results = list_reduced();
    else if (c == "verify") results = verify();
    else throw UsageError("unknown command " + c);
    return results;
  }

  json header() const {
    json h;
    h["command"] = opt_.command;
    h["args"] = args_;
    std::string canonical = opt_.command + "\n" + args_.dump() + "\n";
    if (manifest_) canonical += serialize_manifest(*manifest_);
    h["inputs_digest"] = "fnv1a64:" + hex64(fnv1a64(canonical));
    json b = {{"max_nodes", budget_.max_nodes}};
    b["max_abs_pairing"] = budget_.max_abs_pairing ? int_to_json(*budget_.max_abs_pairing) : json("default");
    b["source"] = budget_source_;
    h["budget"] = b;
    return h;
  }

 private:
  const Manifest& manifest() {
    if (manifest_) return *manifest_;
    if (opt_.manifest_path.empty()) throw UsageError("--manifest is required for " + opt_.command);
    std::string text;
    if (opt_.manifest_path == "-") {
      std::ostringstream ss;
      ss << in_.rdbuf();
      text = ss.str();
    } else {
      std::ifstream f(opt_.manifest_path, std::ios::binary);
      if (!f) throw SchemaError("cannot read manifest file " + opt_.manifest_path);
      std::ostringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    }
    manifest_ = parse_manifest(text);
    return *manifest_;
  }

  void resolve_budget() {
    std::vector<std::string> sources;
    auto node_value = [](const std::string& s, const std::string& where) {
      Int v;
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || v.set_str(s, 10) != 0 || v < 1 ||
          !v.fits_ulong_p())
        throw SchemaError(where + ": expected a positive integer, got \"" + s + "\"");
      return static_cast<std::uint64_t>(v.get_ui());
    };
    auto cap_value = [](const std::string& s, const std::string& where) {
      Int v;
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || v.set_str(s, 10) != 0)
        throw SchemaError(where + ": expected a nonnegative integer, got \"" + s + "\"");
      return v;
    };
    if (env_.max_nodes) {
      budget_.max_nodes = node_value(*env_.max_nodes, "MINGENUS_MAX_NODES");
      sources.push_back("env");
    }
    if (env_.max_abs_pairing) {
      budget_.max_abs_pairing = cap_value(*env_.max_abs_pairing, "MINGENUS_MAX_ABS_PAIRING");
      if (sources.empty()) sources.push_back("env");
    }
    if (!opt_.manifest_path.empty()) {
      const Manifest& m = manifest();
      if (m.budget.max_nodes) budget_.max_nodes = *m.budget.max_nodes;
      if (m.budget.max_abs_pairing) budget_.max_abs_pairing = *m.budget.max_abs_pairing;
      if (m.budget.max_nodes || m.budget.max_abs_pairing) sources.push_back("manifest");
    }
    if (opt_.max_nodes) budget_.max_nodes = node_value(*opt_.max_nodes, "--max-nodes");
    if (opt_.max_abs_pairing) budget_.max_abs_pairing = cap_value(*opt_.max_abs_pairing, "--max-abs-pairing");
    if (opt_.max_nodes || opt_.max_abs_pairing) sources.push_back("flags");
    budget_source_ = sources.empty() ? "defaults" : "";
    for (std::size_t i = 0; i < sources.size(); ++i) budget_source_ += (i ? "+" : "") + sources[i];
  }

  Int int_opt(const std::optional<std::string>& v, const std::string& name) {
    if (!v) throw UsageError("--" + name + " is required for " + opt_.command);
    Int out = parse_int_arg(*v, name);
    args_[name] = int_to_json(out);
    return out;
  }

  const ClassVector& named_class(const std::string& name, const std::string& option) {
    if (name.empty()) throw UsageError("--" + option + " is required for " + opt_.command);
    args_[option] = name;
    return manifest().class_named(name);
  }

  json genus_lb() {
    const Manifest& m = manifest();
    const Lattice lattice = m.lattice();
    const ClassVector& s = named_class(opt_.class_name, "class");
    ClassVector xi = s;
    Int d = 1;
    std::string d_source = "none";
    if (opt_.d) {
      d = int_opt(opt_.d, "d");
      if (d < 1) throw PreconditionError("d must be positive");
      d_source = "argument";
    } else {
      Divisibility div = divisibility(s);
      if (div.d > 1) {
        xi = div.primitive;
        d = div.d;
        d_source = "divisibility";
      }
    }
    const ClassVector target = d * xi;
    json r;
    r["class"] = vector_to_json(target);
    r["square"] = int_to_json(lattice.square(target));
    BoundReport adj = adjunction_genus_lb(lattice, target, budget_);
    r["adjunction"] = bound_json(adj);
    Int best = adj.bound;
    if (d > 1) {
      r["d"] = int_to_json(d);
      r["d_source"] = d_source;
      r["xi"] = vector_to_json(xi);
      r["k_set"] = kset_json(k_set(lattice, xi, d, budget_));
      BoundReport div = divisible_genus_lb(lattice, xi, d, budget_);
      r["divisible"] = bound_json(div);
      r["routes_agree"] = div.bound == adj.bound;
      best = std::max(best, div.bound);
    }
    if (m.flags.h1_zero && lattice.sigma() < 0) {
      if (auto cc = characteristic_class_bound(lattice, xi, d, true)) {
        r["characteristic_class"] = bound_json(*cc);
        best = std::max(best, cc->bound);
      }
    }
    r["bound"] = int_to_json(best);
    return r;
  }

  json genus_ub() {
    json r;
    if (!opt_.plan.empty()) {
      args_["plan"] = opt_.plan;
      ConstructionPlan plan = manifest().plan_named(opt_.plan);
      r["connected"] = plan.connected();
      r["copies"] = int_to_json(plan.total_copies());
      r["points"] = int_to_json(plan.total_points());
      r["genus"] = int_to_json(resolve_genus(plan));
      return r;
    }
    if (!opt_.reduced.empty()) {
      args_["reduced"] = opt_.reduced;
      std::vector<Int> v = parse_int_list(opt_.reduced, "reduced");
      const Int p = v.front();
      std::vector<Int> qs(v.begin() + 1, v.end());
      bool asserted = opt_.assume_spheres;
      if (!opt_.manifest_path.empty()) asserted = asserted || !manifest().flags.sphere_hypotheses.empty();
      args_["assume_spheres"] = asserted;
      if (!asserted)
        throw PreconditionError("reduced-class construction needs the basis classes represented by disjoint spheres; "
                                "pass --assume-spheres or list them in flags.sphere_hypotheses");
      std::optional<Int> g = reduced_class_construction(p, qs);
      if (!g) throw PreconditionError("no construction applies to this class");
      r["genus"] = int_to_json(*g);
      r["hypotheses"] = json::array({"basis classes represented by disjoint spheres"});
      if (auto plan = reduced_class_plan(p, qs)) {
        r["sphere_plan_genus"] = int_to_json(resolve_genus(*plan));
        r["sphere_plan_copies"] = int_to_json(plan->total_copies());
        r["sphere_plan_points"] = int_to_json(plan->total_points());
      }
      return r;
    }
    const Int xi_sq = int_opt(opt_.xi_sq, "xi-sq");
    const Int g1 = int_opt(opt_.g1, "g1");
    const Int d = int_opt(opt_.d, "d");
    ConstructionPlan plan = parallel_copies_plan(xi_sq, g1, d);
    r["genus"] = int_to_json(multiple_class_upper_bound(xi_sq, g1, d));
    r["copies"] = int_to_json(plan.total_copies());
    r["points"] = int_to_json(plan.total_points());
    return r;
  }

  json exact() {
    if (opt_.family.empty()) throw UsageError("--family is required for exact");
    if (opt_.params.empty()) throw UsageError("--params is required for exact");
    args_["family"] = opt_.family;
    args_["params"] = opt_.params;
    std::vector<Int> v = parse_int_list(opt_.params, "params");
    auto need = [&](std::size_t k) {
      if (v.size() != k)
        throw UsageError("--params for " + opt_.family + " needs " + std::to_string(k) + " integers");
    };
    CatalogQuery query;
    if (opt_.family == "cp2") {
      need(1);
      query = Cp2Class{v[0]};
    } else if (opt_.family == "h") {
      need(2);
      query = HyperbolicClass{v[0], v[1]};
    } else if (opt_.family == "e") {
      need(2);
      query = OddClass{v[0], v[1]};
    } else if (opt_.family == "reduced") {
      if (v.size() < 2) throw UsageError("--params for reduced needs p,q1,...,qn");
      Int d = 1;
      if (opt_.d) d = int_opt(opt_.d, "d");
      query = ReducedClass{ReducedForm(v[0], std::vector<Int>(v.begin() + 1, v.end())), d};
    } else {
      throw UsageError("--family must be one of cp2, h, e, reduced");
    }

    bool asserted = opt_.assume_hypotheses;
    if (!opt_.manifest_path.empty()) {
      const Manifest& m = manifest();
      asserted = asserted || m.flags.rational_surface || !m.flags.sphere_hypotheses.empty();
    }
    args_["assume_hypotheses"] = asserted;

    json r;
    try {
      r["closed_form"] = bound_json(closed_form_lb(query));
    } catch (const PreconditionError& e) {
      r["closed_form"] = nullptr;
      r["closed_form_error"] = e.what();
    }
    std::optional<BoundReport> ex = exact_genus(query, asserted);
    r["exact"] = ex ? bound_json(*ex) : json(nullptr);
    if (!ex) r["exact_note"] = "geometric hypotheses not asserted";
    if (opt_.cross_check) {
      args_["cross_check"] = true;
      auto [lattice, cls] = catalog_instance(query);
      BoundReport engine = adjunction_genus_lb(lattice, cls, budget_);
      r["engine"] = bound_json(engine);
      if (ex) r["gap"] = int_to_json(ex->bound - engine.bound);
    }
    return r;
  }

  json kset() {
    const Manifest& m = manifest();
    const Lattice lattice = m.lattice();
    const ClassVector& xi = named_class(opt_.class_name, "class");
    const Int d = int_opt(opt_.d, "d");
    json r;
    KSetResult k = k_set(lattice, xi, d, budget_);
    r["k_set"] = kset_json(k);
    CharacteristicNumbers cn = characteristic_numbers(lattice.square(xi), d);
    r["k_parity"] = cn.parity == KParity::kEven ? "even" : "opposite of d";
    r["divisible"] = bound_json(divisible_genus_lb(lattice, xi, d, budget_));
    return r;
  }

  json dimension() {
    const Manifest& m = manifest();
    const Lattice lattice = m.lattice();
    const ClassVector& xi = named_class(opt_.class_name, "class");
    const ClassVector& c1 = named_class(opt_.c1_name, "c1");
    const Int d = int_opt(opt_.d, "d");
    json r;
    r["k"] = int_to_json(characteristic_number_of(lattice, c1, xi, d));
    r["formal_dimension"] = rational_string(formal_dimension(lattice, c1, xi, d));
    return r;
  }

  json intersect() {
    const Manifest& m = manifest();
    const Lattice lattice = m.lattice();
    const ClassVector& s1 = named_class(opt_.class1, "class1");
    const ClassVector& s2 = named_class(opt_.class2, "class2");
    const Int g1 = int_opt(opt_.g1, "g1");
    const Int g2 = int_opt(opt_.g2, "g2");
    IntersectionReport ir = intersection_lb(lattice, s1, s2, g1, g2, budget_);
    json r;
    r["n_lb"] = int_to_json(ir.n_lb);
    r["hypothesis_ok"] = ir.hypothesis_ok;
    r["t1"] = optional_int(ir.t1);
    r["t2"] = optional_int(ir.t2);
    r["witness"] = ir.witness ? witness_json(*ir.witness) : json(nullptr);
    r["gilmer_lb"] = optional_int(ir.gilmer_lb);
    if (ir.gilmer_lb) r["improves_on_gilmer"] = ir.n_lb > *ir.gilmer_lb;
    return r;
  }

  json list_reduced() {
    const Int n = int_opt(opt_.n, "n");
    const Int g = int_opt(opt_.g, "g");
    if (n < 2 || n > 9) throw PreconditionError("n must lie in [2, 9]");
    ReducedListing listing = list_reduced_classes_with_genus_le(static_cast<int>(n.get_si()), g);
    json classes = json::array();
    for (const ReducedForm& f : listing.classes) {
      BoundReport b = closed_form_lb(ReducedClass{f, 1});
      classes.push_back({{"class", f.to_string()}, {"square", int_to_json(f.square())}, {"bound", int_to_json(b.bound)}});
    }
    json r;
    r["count"] = classes.size();
    r["classes"] = classes;
    r["q1_cutoff"] = int_to_json(listing.q1_cutoff);
    r["cutoff_rule"] = listing.cutoff_rule;
    return r;
  }

  json verify() {
    const Manifest& m = manifest();
    const Lattice lattice = m.lattice();
    const ClassVector& xi = named_class(opt_.class_name, "class");
    long box = 9;
    if (opt_.box) {
      Int b = int_opt(opt_.box, "box");
      if (b < 0 || b > 1000) throw PreconditionError("box must lie in [0, 1000]");
      box = b.get_si();
      Int cells = 1;
      for (std::size_t i = 0; i < lattice.rank(); ++i) cells *= 2 * box + 1;
      if (cells > 100'000'000) throw PreconditionError("rank too large for box " + std::to_string(box));
    } else {
      args_["box"] = box;
      if (lattice.rank() > 4) throw PreconditionError("rank too large for the default box (rank <= 4)");
    }
    MinPairingResult engine = min_abs_pairing(lattice, xi, budget_);
    std::optional<MinPairingResult> oracle = brute_force_min_pairing(lattice, xi, box);
    json r;
    r["engine"] = {{"m", int_to_json(engine.m)}, {"witness", witness_json(engine.witness)}};
    r["oracle"] = oracle ? json{{"m", int_to_json(oracle->m)}, {"witness", witness_json(oracle->witness)}}
                         : json(nullptr);
    if (!oracle) {
      r["status"] = "box too small";
      throw OracleFailure("oracle found no admissible vector in the box", kBoxTooSmall, r);
    }
    bool inside = true;
    for (const Int& x : engine.witness.c.coeffs()) inside = inside && abs(x) <= box;
    r["engine_witness_in_box"] = inside;
    if (oracle->m == engine.m) {
      r["status"] = "agree";
    } else if (oracle->m > engine.m && !inside) {
      // Every vector attaining the engine's value lies outside the box.
      r["status"] = "agree (engine minimum lies outside the box)";
    } else {
      r["status"] = "disagree";
      throw OracleFailure("engine and oracle disagree", kOracleMismatch, r);
    }
    r["m"] = int_to_json(engine.m);
    return r;
  }

  const Options& opt_;
  std::istream& in_;
  const Environment& env_;
  std::optional<Manifest> manifest_;
  SearchBudget budget_;
  std::string budget_source_ = "defaults";
  json args_ = json::object();
};

void render_table(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  auto scalar = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    return v.dump();
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_table(v, prefix.empty() ? k : prefix + "." + k, rows);
    return;
  }
  if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_primitive(); });
    if (flat) {
      std::string s = "(";
      for (std::size_t i = 0; i < j.size(); ++i) s += (i ? "," : "") + scalar(j[i]);
      rows.emplace_back(prefix, s + ")");
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) render_table(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    return;
  }
  rows.emplace_back(prefix, scalar(j));
}

std::string human(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  render_table(report, "", rows);
  std::size_t width = 0;
  for (const auto& [k, _] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
  return os.str();
}

void add_budget_flags(CLI::App* sub, Options& o) {
  sub->add_option("--max-nodes", o.max_nodes, "Node cap per enumeration");
  sub->add_option("--max-abs-pairing", o.max_abs_pairing, "Cap on the pairing scan");
}

void add_manifest_flag(CLI::App* sub, Options& o, bool required) {
  auto* opt = sub->add_option("--manifest,-m", o.manifest_path, "Manifest file, or - for stdin");
  if (required) opt->required();
}

}  // namespace

Environment Environment::from_process() {
  Environment env;
  if (const char* v = std::getenv("MINGENUS_MAX_NODES")) env.max_nodes = v;
  if (const char* v = std::getenv("MINGENUS_MAX_ABS_PAIRING")) env.max_abs_pairing = v;
  return env;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const Environment& env) {
  Options o;
  CLI::App app{"Exact minimal-genus and intersection bounds from an intersection form", "mingenus"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json_output, "Machine-readable JSON report");
  app.add_flag("--timing", o.timing, "Include wall-clock timing (makes reports run-dependent)");

  auto* lb = app.add_subcommand("genus-lb", "Lower bound for the genus of a class");
  add_manifest_flag(lb, o, true);
  lb->add_option("--class", o.class_name, "Class name")->required();
  lb->add_option("--d", o.d, "Multiplicity: bound d * class");

  auto* ub = app.add_subcommand("genus-ub", "Upper bound from an explicit construction");
  add_manifest_flag(ub, o, false);
  ub->add_option("--plan", o.plan, "Plan name in the manifest");
  ub->add_option("--xi-sq", o.xi_sq, "Square of the primitive class");
  ub->add_option("--g1", o.g1, "Genus of the primitive representative");
  ub->add_option("--d", o.d, "Number of parallel copies");
  ub->add_option("--reduced", o.reduced, "p,q1,...,qn in <1> + n<-1>");
  ub->add_flag("--assume-spheres", o.assume_spheres, "Assert the basis classes are disjoint spheres");

  auto* ex = app.add_subcommand("exact", "Closed-form bound and exact genus for catalog families");
  add_manifest_flag(ex, o, false);
  ex->add_option("--family", o.family, "cp2, h, e or reduced")->required();
  ex->add_option("--params", o.params, "Comma-separated parameters")->required();
  ex->add_option("--d", o.d, "Multiplicity (reduced family)");
  ex->add_flag("--assume-hypotheses", o.assume_hypotheses, "Assert the family's geometric hypotheses");
  ex->add_flag("--cross-check", o.cross_check, "Also run the search engine on the same class");

  auto* ks = app.add_subcommand("k-set", "Admissible k values for d * xi");
  add_manifest_flag(ks, o, true);
  ks->add_option("--class", o.class_name, "Primitive class xi")->required();
  ks->add_option("--d", o.d, "Multiplicity")->required();

  auto* dim = app.add_subcommand("dimension", "Characteristic number and formal dimension");
  add_manifest_flag(dim, o, true);
  dim->add_option("--class", o.class_name, "Primitive class xi")->required();
  dim->add_option("--c1", o.c1_name, "Characteristic class c1")->required();
  dim->add_option("--d", o.d, "Multiplicity")->required();

  auto* is = app.add_subcommand("intersect", "Lower bound on intersection pairs of two disjoint classes");
  add_manifest_flag(is, o, true);
  is->add_option("--class1", o.class1)->required();
  is->add_option("--class2", o.class2)->required();
  is->add_option("--g1", o.g1)->required();
  is->add_option("--g2", o.g2)->required();

  auto* lr = app.add_subcommand("list-reduced", "Reduced classes whose bound is at most g");
  lr->add_option("--n", o.n, "Number of -1 summands (2..9)")->required();
  lr->add_option("--g", o.g, "Genus threshold")->required();

  auto* vf = app.add_subcommand("verify", "Cross-check the engine against box enumeration");
  add_manifest_flag(vf, o, true);
  vf->add_option("--class", o.class_name)->required();
  vf->add_option("--box", o.box, "Coefficient box (default 9, rank <= 4)");

  for (auto* sub : {lb, ub, ex, ks, dim, is, lr, vf}) add_budget_flags(sub, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  o.command = app.get_subcommands().front()->get_name();

  Session session(o, in, env);
  const auto start = std::chrono::steady_clock::now();
  json results;
  int code = kOk;
  json error;
  try {
    results = session.run();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const SchemaError& e) {
    code = kSchema;
    error = {{"kind", "schema"}, {"message", e.what()}};
  } catch (const LatticeError& e) {
    code = kSchema;
    error = {{"kind", "schema"}, {"message", e.what()}};
  } catch (const PreconditionError& e) {
    code = kPrecondition;
    error = {{"kind", "precondition"}, {"message", e.what()}};
  } catch (const BudgetExhausted& e) {
    code = kBudget;
    error = {{"kind", "budget"}, {"message", e.what()}, {"scan_state", e.scan_state()}};
  } catch (const OracleFailure& e) {
    code = e.code();
    results = e.report();
    error = {{"kind", code == kBoxTooSmall ? "box too small" : "oracle mismatch"}, {"message", e.what()}};
  }

  json report;
  try {
    report = session.header();
  } catch (const Error& e) {
    report = {{"command", o.command}};
  }
  if (!results.is_null()) report["results"] = results;
  if (!error.is_null()) report["error"] = error;
  report["status"] = code == kOk ? "ok" : "error";
  if (o.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timing_ms"] = ms;
  }
  if (!error.is_null()) err << "error: " << error["message"].get<std::string>() << "\n";
  out << (o.json_output ? report.dump(2) + "\n" : human(report));
  out.flush();
  return code;
}

}  // namespace mingenus::cli
