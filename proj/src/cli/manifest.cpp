#include "mingenus/manifest.hpp"

#include <iterator>
#include <limits>

namespace mingenus {
namespace {

using nlohmann::json;

// Input iterator that counts newlines, so the parse callback can attribute
// each value to a source line. The lexer reads one character past a
// number, so the newline count excludes the most recent character.
class LineCountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  LineCountingIterator(const char* p, std::size_t* line, bool* last_newline)
      : p_(p), line_(line), last_newline_(last_newline) {}
  reference operator*() const { return *p_; }
  LineCountingIterator& operator++() {
    if (*last_newline_) ++*line_;
    *last_newline_ = (*p_ == '\n');
    ++p_;
    return *this;
  }
  bool operator==(const LineCountingIterator& o) const { return p_ == o.p_; }
  bool operator!=(const LineCountingIterator& o) const { return p_ != o.p_; }

 private:
  const char* p_;
  std::size_t* line_;
  bool* last_newline_;
};

class Reader {
 public:
  explicit Reader(const std::string& text) {
    std::size_t line = 1;
    bool last_newline = false;
    struct Frame {
      bool is_array;
      std::size_t index;
      std::string key;
      std::string path;
    };
    std::vector<Frame> stack;
    auto child_path = [&]() {
      if (stack.empty()) return std::string();
      Frame& f = stack.back();
      return f.path + "/" + (f.is_array ? std::to_string(f.index++) : f.key);
    };
    auto cb = [&](int, json::parse_event_t ev, json& parsed) {
      switch (ev) {
        case json::parse_event_t::key:
          stack.back().key = parsed.get<std::string>();
          break;
        case json::parse_event_t::object_start:
        case json::parse_event_t::array_start: {
          std::string path = child_path();
          lines_.emplace(path, line);
          stack.push_back({ev == json::parse_event_t::array_start, 0, {}, path});
          break;
        }
        case json::parse_event_t::object_end:
        case json::parse_event_t::array_end:
          stack.pop_back();
          break;
        case json::parse_event_t::value:
          lines_.emplace(child_path(), line);
          break;
      }
      return true;
    };
    try {
      LineCountingIterator first(text.data(), &line, &last_newline);
      LineCountingIterator last(text.data() + text.size(), &line, &last_newline);
      root_ = json::parse(first, last, cb);
    } catch (const json::parse_error& e) {
      throw SchemaError(std::string("manifest is not valid JSON: ") + e.what());
    }
  }

  const json& root() const { return root_; }

  [[noreturn]] void fail(const std::string& where, const std::string& what) const {
    std::string loc = where;
    auto it = lines_.find(loc);
    while (it == lines_.end() && !loc.empty()) {
      loc = loc.substr(0, loc.rfind('/'));
      it = lines_.find(loc);
    }
    std::string msg = "manifest " + (where.empty() ? std::string("/") : where);
    if (it != lines_.end()) msg += " (line " + std::to_string(it->second) + ")";
    throw SchemaError(msg + ": " + what);
  }

  Int parse_int(const json& j, const std::string& where) const {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
      return Int(std::to_string(j.get<std::int64_t>()));
    }
    if (j.is_number_float()) fail(where, "expected an integer, got a non-integer number");
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
        fail(where, "string \"" + s + "\" is not a decimal integer");
      return Int(s[0] == '+' ? s.substr(1) : s);
    }
    fail(where, "expected an integer");
  }

  std::vector<Int> parse_int_array(const json& j, const std::string& where) const {
    if (!j.is_array()) fail(where, "expected an array of integers");
    std::vector<Int> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_int(j[i], where + "/" + std::to_string(i)));
    return out;
  }

  IntMatrix parse_matrix(const json& j, const std::string& where) const {
    if (!j.is_array()) fail(where, "expected an array of rows");
    IntMatrix out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_int_array(j[i], where + "/" + std::to_string(i)));
    return out;
  }

  bool parse_bool(const json& j, const std::string& where) const {
    if (!j.is_boolean()) fail(where, "expected true or false");
    return j.get<bool>();
  }

  void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) const {
    if (!obj.is_object()) fail(where, "expected an object");
    for (const auto& [key, _] : obj.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) fail(where + "/" + key, "unknown key \"" + key + "\"");
    }
  }

  std::uint64_t to_u64(const Int& v, const std::string& where) const {
    if (v < 1 || !v.fits_ulong_p()) fail(where, "expected a positive 64-bit integer");
    return v.get_ui();
  }

 private:
  json root_;
  std::map<std::string, std::size_t> lines_;
};

}  // namespace

json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return json(static_cast<std::int64_t>(v.get_si()));
  return json(v.get_str());
}

json vector_to_json(const ClassVector& v) {
  json out = json::array();
  for (const Int& x : v.coeffs()) out.push_back(int_to_json(x));
  return out;
}

Lattice Manifest::lattice() const {
  try {
    return Lattice(gram);
  } catch (const LatticeError& e) {
    throw SchemaError(std::string("manifest /gram: ") + e.what());
  }
}

const ClassVector& Manifest::class_named(const std::string& name) const {
  auto it = classes.find(name);
  if (it == classes.end()) throw SchemaError("manifest /classes: no class named \"" + name + "\"");
  return it->second;
}

ConstructionPlan Manifest::plan_named(const std::string& name) const {
  auto it = plans.find(name);
  if (it == plans.end()) throw SchemaError("manifest /plans: no plan named \"" + name + "\"");
  return ConstructionPlan(it->second.components, it->second.intersections);
}

Manifest parse_manifest(const std::string& text) {
  const Reader r(text);
  const json& root = r.root();
  r.check_keys(root, "", {"gram", "classes", "flags", "budget", "plans"});
  if (!root.contains("gram")) r.fail("", "missing required key \"gram\"");

  Manifest m;
  m.gram = r.parse_matrix(root["gram"], "/gram");
  const std::size_t rank = m.gram.size();
  try {
    Lattice check(m.gram);
  } catch (const LatticeError& e) {
    r.fail("/gram", e.what());
  }

  if (root.contains("classes")) {
    const json& cls = root["classes"];
    if (!cls.is_object()) r.fail("/classes", "expected an object of name -> vector");
    for (const auto& [name, vec] : cls.items()) {
      const std::string where = "/classes/" + name;
      std::vector<Int> coeffs = r.parse_int_array(vec, where);
      if (coeffs.size() != rank)
        r.fail(where, "length " + std::to_string(coeffs.size()) + " does not match rank " + std::to_string(rank));
      m.classes.emplace(name, ClassVector(std::move(coeffs)));
    }
  }

  if (root.contains("flags")) {
    const json& f = root["flags"];
    r.check_keys(f, "/flags", {"h1_zero", "sphere_hypotheses", "rational_surface"});
    if (f.contains("h1_zero")) m.flags.h1_zero = r.parse_bool(f["h1_zero"], "/flags/h1_zero");
    if (f.contains("rational_surface"))
      m.flags.rational_surface = r.parse_bool(f["rational_surface"], "/flags/rational_surface");
    if (f.contains("sphere_hypotheses")) {
      const json& s = f["sphere_hypotheses"];
      if (!s.is_array()) r.fail("/flags/sphere_hypotheses", "expected an array of class names");
      for (std::size_t i = 0; i < s.size(); ++i) {
        const std::string where = "/flags/sphere_hypotheses/" + std::to_string(i);
        if (!s[i].is_string()) r.fail(where, "expected a class name");
        const std::string name = s[i].get<std::string>();
        if (!m.classes.count(name)) r.fail(where, "no class named \"" + name + "\"");
        m.flags.sphere_hypotheses.push_back(name);
      }
    }
  }

  if (root.contains("budget")) {
    const json& b = root["budget"];
    r.check_keys(b, "/budget", {"max_nodes", "max_abs_pairing"});
    if (b.contains("max_nodes"))
      m.budget.max_nodes = r.to_u64(r.parse_int(b["max_nodes"], "/budget/max_nodes"), "/budget/max_nodes");
    if (b.contains("max_abs_pairing")) {
      Int cap = r.parse_int(b["max_abs_pairing"], "/budget/max_abs_pairing");
      if (cap < 0) r.fail("/budget/max_abs_pairing", "expected a nonnegative integer");
      m.budget.max_abs_pairing = cap;
    }
  }

  if (root.contains("plans")) {
    const json& plans = root["plans"];
    if (!plans.is_object()) r.fail("/plans", "expected an object of name -> plan");
    for (const auto& [name, pj] : plans.items()) {
      const std::string where = "/plans/" + name;
      r.check_keys(pj, where, {"components", "intersections"});
      if (!pj.contains("components") || !pj["components"].is_array())
        r.fail(where + "/components", "expected an array of components");
      PlanSpec spec;
      const json& comps = pj["components"];
      for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string cw = where + "/components/" + std::to_string(i);
        r.check_keys(comps[i], cw, {"genus", "multiplicity"});
        if (!comps[i].contains("genus") || !comps[i].contains("multiplicity"))
          r.fail(cw, "needs \"genus\" and \"multiplicity\"");
        spec.components.push_back(
            {r.parse_int(comps[i]["genus"], cw + "/genus"), r.parse_int(comps[i]["multiplicity"], cw + "/multiplicity")});
      }
      if (!pj.contains("intersections")) r.fail(where, "missing \"intersections\"");
      spec.intersections = r.parse_matrix(pj["intersections"], where + "/intersections");
      try {
        ConstructionPlan(spec.components, spec.intersections);
      } catch (const PreconditionError& e) {
        r.fail(where, e.what());
      }
      m.plans.emplace(name, std::move(spec));
    }
  }
  return m;
}

json manifest_to_json(const Manifest& m) {
  json root = json::object();
  json gram = json::array();
  for (const auto& row : m.gram) gram.push_back(vector_to_json(ClassVector(row)));
  root["gram"] = gram;
  json cls = json::object();
  for (const auto& [name, v] : m.classes) cls[name] = vector_to_json(v);
  root["classes"] = cls;
  root["flags"] = {{"h1_zero", m.flags.h1_zero},
                   {"sphere_hypotheses", m.flags.sphere_hypotheses},
                   {"rational_surface", m.flags.rational_surface}};
  json budget = json::object();
  if (m.budget.max_nodes) budget["max_nodes"] = *m.budget.max_nodes;
  if (m.budget.max_abs_pairing) budget["max_abs_pairing"] = int_to_json(*m.budget.max_abs_pairing);
  root["budget"] = budget;
  json plans = json::object();
  for (const auto& [name, spec] : m.plans) {
    json comps = json::array();
    for (const auto& c : spec.components)
      comps.push_back({{"genus", int_to_json(c.genus)}, {"multiplicity", int_to_json(c.multiplicity)}});
    json inter = json::array();
    for (const auto& row : spec.intersections) inter.push_back(vector_to_json(ClassVector(row)));
    plans[name] = {{"components", comps}, {"intersections", inter}};
  }
  root["plans"] = plans;
  return root;
}

std::string serialize_manifest(const Manifest& m) { return manifest_to_json(m).dump(2) + "\n"; }

}  // namespace mingenus
