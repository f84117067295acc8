#include "mingenus/catalog.hpp"

#include <algorithm>
#include <sstream>

#include "mingenus/errors.hpp"

namespace mingenus {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

BoundReport catalog_report(const Int& raw, bool strict) {
  BoundReport r;
  r.raw = raw;
  r.strict = strict;
  r.bound = std::max<Int>(strict ? raw + 1 : raw, 0);
  r.method = BoundMethod::kCatalog;
  return r;
}

void require_reduced_domain(const ReducedClass& rc) {
  const ReducedForm& f = rc.form;
  if (!is_reduced(f)) throw PreconditionError("class " + f.to_string() + " is not reduced");
  if (f.m() < 2 || f.m() > 9) throw PreconditionError("reduced-class bound needs 2 <= m <= 9");
  if (f.square() <= 0) throw PreconditionError("reduced-class bound needs positive square");
  if (rc.d < 1) throw PreconditionError("multiplicity must be positive");
}

// (d xi^2 - delta) d / 2; the product is always even.
Int reduced_value(const ReducedForm& f, const Int& d) { return (d * f.square() - f.delta()) * d / 2; }

}  // namespace

ReducedForm::ReducedForm(Int p, std::vector<Int> qs) : p_(std::move(p)), qs_(std::move(qs)) {
  if (p_ <= 0) throw PreconditionError("reduced form needs p > 0");
  for (std::size_t i = 0; i < qs_.size(); ++i) {
    if (qs_[i] < 0) throw PreconditionError("reduced form needs q_i >= 0");
    if (i > 0 && qs_[i] > qs_[i - 1]) throw PreconditionError("reduced form needs nonincreasing q_i");
  }
}

std::size_t ReducedForm::m() const {
  return static_cast<std::size_t>(std::count_if(qs_.begin(), qs_.end(), [](const Int& q) { return q != 0; }));
}

Int ReducedForm::square() const {
  Int s = p_ * p_;
  for (const Int& q : qs_) s -= q * q;
  return s;
}

Int ReducedForm::delta() const {
  Int s = 3 * p_;
  for (const Int& q : qs_) s -= q;
  return s;
}

bool ReducedForm::is_exceptional() const { return m() == 2 && qs_[0] == p_ - 1 && qs_[1] == 1; }

ClassVector ReducedForm::to_class() const {
  std::vector<Int> v{p_};
  v.insert(v.end(), qs_.begin(), qs_.end());
  return ClassVector(std::move(v));
}

Lattice ReducedForm::lattice() const {
  std::vector<long> diag(qs_.size() + 1, -1);
  diag[0] = 1;
  return Lattice::diagonal(diag);
}

std::string ReducedForm::to_string() const { return to_class().to_string(); }

bool is_reduced(const ReducedForm& rf) {
  if (rf.m() > 9) return false;
  Int top3 = 0;
  for (std::size_t i = 0; i < std::min<std::size_t>(3, rf.n()); ++i) top3 += rf.qs()[i];
  return rf.p() >= top3;
}

BoundReport closed_form_lb(const CatalogQuery& query) {
  return std::visit(
      Overloaded{
          [](const Cp2Class& c) {
            if (c.d == 0) throw PreconditionError("CP2 bound needs d != 0");
            const Int d = abs(c.d);
            return catalog_report((d - 1) * (d - 2) / 2, false);
          },
          [](const HyperbolicClass& h) {
            if (h.p * h.q == 0) throw PreconditionError("H bound needs pq != 0");
            return catalog_report((abs(h.p) - 1) * (abs(h.q) - 1), false);
          },
          [](const OddClass& e) {
            if (e.p * e.p <= e.q * e.q) throw PreconditionError("E bound needs positive square (|p| > |q|)");
            const Int p = abs(e.p), q = abs(e.q);
            return catalog_report((p * p - q * q - 3 * p + q) / 2, true);
          },
          [](const ReducedClass& rc) {
            require_reduced_domain(rc);
            BoundReport r = catalog_report(reduced_value(rc.form, rc.d), true);
            if (rc.d == 1 && rc.form.is_exceptional())
              r.notes.push_back("exceptional class (p,p-1,1): genus 0 permitted");
            return r;
          },
      },
      query);
}

std::optional<BoundReport> exact_genus(const CatalogQuery& query, bool hypotheses_asserted) {
  if (!hypotheses_asserted) return std::nullopt;
  BoundReport r = std::visit(
      Overloaded{
          [](const Cp2Class& c) {
            const Int d = abs(c.d);
            BoundReport out = catalog_report(d == 0 ? Int(0) : (d - 1) * (d - 2) / 2, false);
            out.hypotheses = {"X is CP2; a smooth algebraic curve attains the value"};
            return out;
          },
          [](const HyperbolicClass& h) {
            BoundReport out = catalog_report(h.p * h.q == 0 ? Int(0) : (abs(h.p) - 1) * (abs(h.q) - 1), false);
            out.hypotheses = {"basis classes represented by spheres meeting transversely once"};
            return out;
          },
          [](const OddClass& e) {
            const Int p = abs(e.p), q = abs(e.q);
            Int value = 0;
            if (p > q)
              value = (p * p - q * q - 3 * p + q) / 2 + 1;
            else if (q > p)
              value = (q * q - p * p - 3 * q + p) / 2 + 1;
            BoundReport out = catalog_report(value, false);
            out.hypotheses = {"basis classes represented by disjoint spheres"};
            return out;
          },
          [](const ReducedClass& rc) {
            const ReducedForm& f = rc.form;
            if (!is_reduced(f) || f.n() > 9 || f.square() <= 0 || rc.d < 1)
              throw PreconditionError("rational-surface formula needs a reduced class of positive square, n <= 9");
            BoundReport out = catalog_report(reduced_value(f, rc.d) + 1, false);
            out.hypotheses = {"X is the rational surface CP2 # n(-CP2)"};
            return out;
          },
      },
      query);
  r.exact = true;
  return r;
}

std::pair<Lattice, ClassVector> catalog_instance(const CatalogQuery& query) {
  return std::visit(
      Overloaded{
          [](const Cp2Class& c) { return std::pair{Lattice::from_rows({{1}}), ClassVector{std::vector<Int>{c.d}}}; },
          [](const HyperbolicClass& h) {
            return std::pair{Lattice::from_rows({{0, 1}, {1, 0}}), ClassVector{std::vector<Int>{h.p, h.q}}};
          },
          [](const OddClass& e) {
            return std::pair{Lattice::diagonal({1, -1}), ClassVector{std::vector<Int>{e.p, e.q}}};
          },
          [](const ReducedClass& rc) { return std::pair{rc.form.lattice(), rc.d * rc.form.to_class()}; },
      },
      query);
}

ReducedListing list_reduced_classes_with_genus_le(int n, const Int& g) {
  if (n < 2 || n > 9) throw PreconditionError("n must lie in [2, 9]");
  ReducedListing out;
  // For m >= 2 and non-exceptional classes, xi^2 - delta >= 2 q_1 - 4, so a
  // closed-form bound (xi^2 - delta)/2 + 1 <= g forces q_1 <= g + 1. For a
  // fixed q-tuple, xi^2 - delta = p^2 - 3p - sum(q_i^2 - q_i) is
  // nondecreasing in p >= 1, so the p scan stops at the first overshoot.
  out.q1_cutoff = std::max<Int>(g + 1, 1);
  out.cutoff_rule = "q1 <= max(g + 1, 1); per q-tuple p ascends from max(q1+q2+q3, floor(sqrt(sum q^2)) + 1) "
                    "while xi^2 - delta <= 2g - 2";
  if (g < 0) return out;
  const Int limit = 2 * g - 2;

  std::vector<Int> qs(n, Int(0));
  auto visit_tuple = [&]() {
    Int sq = 0, sum = 0;
    for (const Int& q : qs) {
      sq += q * q;
      sum += q;
    }
    const Int top3 = qs[0] + qs[1] + (n > 2 ? qs[2] : Int(0));
    Int root;
    mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
    for (Int p = std::max<Int>(top3, root + 1);; ++p) {
      const Int f = p * p - 3 * p - sq + sum;
      ReducedForm form(p, qs);
      if (form.is_exceptional()) continue;
      if (f > limit) break;
      out.classes.push_back(std::move(form));
    }
  };
  // Nonincreasing tuples with q1 in [1, cutoff] and q2 >= 1.
  auto rec = [&](auto&& self, std::size_t pos, const Int& cap) -> void {
    if (pos == static_cast<std::size_t>(n)) {
      if (qs[1] >= 1) visit_tuple();
      return;
    }
    const Int floor_v = pos <= 1 ? Int(1) : Int(0);
    for (Int v = floor_v; v <= cap; ++v) {
      qs[pos] = v;
      self(self, pos + 1, v);
    }
    qs[pos] = 0;
  };
  rec(rec, 0, out.q1_cutoff);
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

}  // namespace mingenus
