#pragma once

#include <optional>
#include <vector>

#include "mingenus/lattice.hpp"

namespace mingenus {

/// A configuration of surfaces to be resolved into one connected surface.
///
/// Component i stands for `multiplicity` parallel copies of a genus-`genus`
/// surface. For i != j, intersections[i][j] counts the positive transverse
/// points between each copy of i and each copy of j; intersections[i][i]
/// counts the points between two distinct copies of i.
struct SurfaceComponent {
  Int genus;
  Int multiplicity;
};

class ConstructionPlan {
 public:
  /// Throws PreconditionError on negative data, zero multiplicity or an
  /// asymmetric intersection matrix.
  ConstructionPlan(std::vector<SurfaceComponent> components, IntMatrix intersections);

  const std::vector<SurfaceComponent>& components() const { return components_; }
  const IntMatrix& intersections() const { return intersections_; }

  /// Whether the intersection graph of all expanded copies is connected.
  bool connected() const;
  Int total_copies() const;
  Int total_points() const;

 private:
  std::vector<SurfaceComponent> components_;
  IntMatrix intersections_;
};

/// Genus after resolving every intersection point:
/// sum of copy genera + P - (copies - 1). Throws PreconditionError when
/// the plan is disconnected.
Int resolve_genus(const ConstructionPlan& plan);

/// d * g1 + xi_sq * C(d,2) - (d - 1): genus of the resolution of d parallel
/// copies of a genus-g1 representative of a class of square xi_sq.
Int multiple_class_upper_bound(const Int& xi_sq, const Int& g1, const Int& d);

/// The plan behind multiple_class_upper_bound.
ConstructionPlan parallel_copies_plan(const Int& xi_sq, const Int& g1, const Int& d);

/// p copies of one sphere meeting q copies of another once each.
ConstructionPlan hyperbolic_spheres_plan(const Int& p, const Int& q);

/// For p > q >= 0 in CP2 # -CP2: q disjoint spheres in (1,1) and one surface
/// of genus (p-q-1)(p-q-2)/2 in (p-q)(1,0) meeting each sphere p - q times.
ConstructionPlan odd_form_plan(const Int& p, const Int& q);

/// (p^2 - sum q_i^2 - 3p + sum q_i)/2 + 1 for (p, q_1, ..., q_m) when
/// m <= 9, the q_i greater than 2 sum to at most p, and the square is
/// positive. Empty otherwise. Assumes the basis classes are represented by
/// disjoint spheres.
std::optional<Int> reduced_class_construction(const Int& p, const std::vector<Int>& qs);

/// Sphere configuration for the case where every q_i exceeds 2:
/// p - sum q copies of the line class and q_i copies of line + e_i.
std::optional<ConstructionPlan> reduced_class_plan(const Int& p, const std::vector<Int>& qs);

/// g_xi(d) > (d xi^2 - delta) d / 2 transfers to g_xi > (xi^2 - delta) / 2.
/// Returns the right-hand side value v of the strict inequality g > v.
Rational primitive_bound_transfer(const Int& xi_sq, const Int& d, const Int& delta);

/// Smallest nonnegative integer g with g > v.
Int min_genus_above(const Rational& v);

}  // namespace mingenus
