#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mingenus/adjunction.hpp"
#include "mingenus/lattice.hpp"

namespace mingenus {

/// A class (p, q_1, ..., q_n) in the basis where the form is <1> + n<-1>,
/// with p > 0 and q_1 >= q_2 >= ... >= q_n >= 0.
class ReducedForm {
 public:
  /// Throws PreconditionError unless p > 0 and qs is nonincreasing and nonnegative.
  ReducedForm(Int p, std::vector<Int> qs);

  const Int& p() const { return p_; }
  const std::vector<Int>& qs() const { return qs_; }
  std::size_t n() const { return qs_.size(); }
  /// Number of nonzero q_i.
  std::size_t m() const;
  Int square() const;
  /// <(3,-1,...,-1), xi> = 3p - sum q_i.
  Int delta() const;
  /// (p, p-1, 1) with m = 2: the family allowed to be a sphere.
  bool is_exceptional() const;

  ClassVector to_class() const;
  /// diag(1, -1, ..., -1) of rank n + 1.
  Lattice lattice() const;

  std::string to_string() const;
  friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
  friend bool operator<(const ReducedForm& a, const ReducedForm& b) {
    return a.p_ != b.p_ ? a.p_ < b.p_ : a.qs_ < b.qs_;
  }

 private:
  Int p_;
  std::vector<Int> qs_;
};

/// m <= 9 and p >= q_1 + q_2 + q_3 (missing entries count as 0).
bool is_reduced(const ReducedForm& rf);

struct Cp2Class {
  Int d;
};
struct HyperbolicClass {
  Int p;
  Int q;
};
struct OddClass {
  Int p;
  Int q;
};
struct ReducedClass {
  ReducedForm form;
  Int d = 1;
};

using CatalogQuery = std::variant<Cp2Class, HyperbolicClass, OddClass, ReducedClass>;

/// Closed-form lower bounds for CP2 (Thom), H, E = <1> + <-1> and reduced
/// classes in <1> + n<-1>. Throws PreconditionError outside the family's domain.
BoundReport closed_form_lb(const CatalogQuery& query);

/// Exact minimal genus under the family's geometric hypotheses (genuine
/// CP2, basis spheres, genuine rational surface). Returns nullopt when the
/// caller has not asserted them.
std::optional<BoundReport> exact_genus(const CatalogQuery& query, bool hypotheses_asserted);

/// The lattice and class a catalog query refers to, for running the engine
/// on the same input. For CP2 the class is (d); for reduced classes d * xi.
std::pair<Lattice, ClassVector> catalog_instance(const CatalogQuery& query);

struct ReducedListing {
  std::vector<ReducedForm> classes;
  Int q1_cutoff;
  std::string cutoff_rule;
};

/// All non-exceptional reduced classes in <1> + n<-1> (2 <= n <= 9) with
/// 2 <= m, positive square and closed-form bound at most g.
ReducedListing list_reduced_classes_with_genus_le(int n, const Int& g);

}  // namespace mingenus
