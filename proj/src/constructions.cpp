#include "mingenus/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "mingenus/errors.hpp"

namespace mingenus {
namespace {

Int choose2(const Int& n) { return n * (n - 1) / 2; }

}  // namespace

ConstructionPlan::ConstructionPlan(std::vector<SurfaceComponent> components, IntMatrix intersections)
    : components_(std::move(components)), intersections_(std::move(intersections)) {
  const std::size_t n = components_.size();
  if (n == 0) throw PreconditionError("construction plan needs at least one component");
  if (intersections_.size() != n) throw PreconditionError("intersection matrix size does not match components");
  for (std::size_t i = 0; i < n; ++i) {
    if (components_[i].genus < 0) throw PreconditionError("component genus must be nonnegative");
    if (components_[i].multiplicity <= 0) throw PreconditionError("component multiplicity must be positive");
    if (intersections_[i].size() != n) throw PreconditionError("intersection matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (intersections_[i][j] < 0) throw PreconditionError("intersection counts must be nonnegative");
      if (intersections_[i][j] != intersections_[j][i]) throw PreconditionError("intersection matrix is not symmetric");
    }
  }
}

bool ConstructionPlan::connected() const {
  const std::size_t n = components_.size();
  if (n == 1) return components_[0].multiplicity == 1 || intersections_[0][0] > 0;
  // With two or more component types every copy of i meets every copy of a
  // neighbouring type, so copies of i are joined through that neighbour.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (intersections_[i][j] > 0) parent[find(i)] = find(j);
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < n; ++i)
    if (find(i) != root) return false;
  return true;
}

Int ConstructionPlan::total_copies() const {
  Int total = 0;
  for (const auto& c : components_) total += c.multiplicity;
  return total;
}

Int ConstructionPlan::total_points() const {
  Int total = 0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    total += choose2(components_[i].multiplicity) * intersections_[i][i];
    for (std::size_t j = i + 1; j < components_.size(); ++j)
      total += components_[i].multiplicity * components_[j].multiplicity * intersections_[i][j];
  }
  return total;
}

Int resolve_genus(const ConstructionPlan& plan) {
  if (!plan.connected()) throw PreconditionError("construction plan is disconnected; resolution gives no single surface");
  Int genera = 0;
  for (const auto& c : plan.components()) genera += c.genus * c.multiplicity;
  return genera + plan.total_points() - (plan.total_copies() - 1);
}

Int multiple_class_upper_bound(const Int& xi_sq, const Int& g1, const Int& d) {
  if (xi_sq <= 0) throw PreconditionError("class must have positive square");
  if (g1 < 0) throw PreconditionError("genus must be nonnegative");
  if (d < 1) throw PreconditionError("multiplicity must be positive");
  return d * g1 + xi_sq * choose2(d) - (d - 1);
}

ConstructionPlan parallel_copies_plan(const Int& xi_sq, const Int& g1, const Int& d) {
  return ConstructionPlan({{g1, d}}, {{xi_sq}});
}

ConstructionPlan hyperbolic_spheres_plan(const Int& p, const Int& q) {
  if (p <= 0 || q <= 0) throw PreconditionError("hyperbolic plan needs p, q > 0");
  return ConstructionPlan({{0, p}, {0, q}}, {{Int(0), Int(1)}, {Int(1), Int(0)}});
}

ConstructionPlan odd_form_plan(const Int& p, const Int& q) {
  if (!(p > q && q >= 0)) throw PreconditionError("odd form plan needs p > q >= 0");
  const Int r = p - q;
  const Int big_genus = (r - 1) * (r - 2) / 2;
  if (q == 0) return ConstructionPlan({{big_genus, 1}}, {{Int(0)}});
  return ConstructionPlan({{big_genus, 1}, {0, q}}, {{Int(0), r}, {r, Int(0)}});
}

std::optional<Int> reduced_class_construction(const Int& p, const std::vector<Int>& qs) {
  if (p <= 0 || qs.size() > 9) return std::nullopt;
  Int big_sum = 0, sum = 0, sq = 0;
  for (const Int& q : qs) {
    if (q <= 0) return std::nullopt;
    if (q > 2) big_sum += q;
    sum += q;
    sq += q * q;
  }
  const Int xi_sq = p * p - sq;
  if (big_sum > p || xi_sq <= 0) return std::nullopt;
  return (xi_sq - 3 * p + sum) / 2 + 1;
}

std::optional<ConstructionPlan> reduced_class_plan(const Int& p, const std::vector<Int>& qs) {
  if (!reduced_class_construction(p, qs)) return std::nullopt;
  if (std::any_of(qs.begin(), qs.end(), [](const Int& q) { return q <= 2; })) return std::nullopt;
  Int q_total = 0;
  for (const Int& q : qs) q_total += q;
  std::vector<SurfaceComponent> comps;
  // Line class copies meet each other and every line + e_i copy once;
  // line + e_i copies are disjoint among themselves and meet line + e_j once.
  const bool has_line = p - q_total > 0;
  if (has_line) comps.push_back({0, p - q_total});
  for (const Int& q : qs) comps.push_back({0, q});
  const std::size_t n = comps.size();
  IntMatrix inter(n, std::vector<Int>(n, Int(1)));
  for (std::size_t i = 0; i < n; ++i) inter[i][i] = (has_line && i == 0) ? 1 : 0;
  return ConstructionPlan(std::move(comps), std::move(inter));
}

Rational primitive_bound_transfer(const Int& xi_sq, const Int& d, const Int& delta) {
  if (d <= 1) throw PreconditionError("transfer needs d > 1");
  Rational v(xi_sq - delta, 2);
  v.canonicalize();
  return v;
}

Int min_genus_above(const Rational& v) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return std::max<Int>(fl + 1, 0);
}

}  // namespace mingenus
