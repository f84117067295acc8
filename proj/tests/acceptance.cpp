// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mingenus/adjunction.hpp"
#include "mingenus/catalog.hpp"
#include "mingenus/charvec_search.hpp"
#include "mingenus/cli.hpp"
#include "mingenus/constructions.hpp"
#include "mingenus/intersections.hpp"
#include "test_support.hpp"

using namespace mingenus;
using testing_support::from_vec;
using testing_support::to_mat;
using testing_support::to_vec;

namespace {

// Collects the first few failures of a criterion.
struct Checker {
  long checks = 0;
  long failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want;
    expect(got == want, os.str());
  }
};

std::string str(const ClassVector& v) { return v.to_string(); }

const Lattice kCp2 = Lattice::from_rows({{1}});
const Lattice kH = Lattice::from_rows({{0, 1}, {1, 0}});
const Lattice kE = Lattice::diagonal({1, -1});

Lattice minus_ones(std::size_t n) {
  std::vector<long> diag(n + 1, -1);
  diag[0] = 1;
  return Lattice::diagonal(diag);
}

void thom(Checker& c) {
  for (long d = 1; d <= 30; ++d) {
    std::istringstream in(R"({"gram": [[1]], "classes": {"x": [)" + std::to_string(d) + "]}}");
    std::ostringstream out, err;
    const int code = cli::run({"--json", "genus-lb", "-m", "-", "--class", "x"}, in, out, err, {});
    c.equal(code, 0, "exit code d=" + std::to_string(d));
    if (code != 0) continue;
    const long want = (d - 1) * (d - 2) / 2;
    c.equal(nlohmann::json::parse(out.str())["results"]["bound"].get<long>(), want, "genus-lb d=" + std::to_string(d));
    c.equal(multiple_class_upper_bound(1, 0, d), want, "upper bound d=" + std::to_string(d));
  }
}

void signature_zero(Checker& c) {
  // With pq < 0 the class has negative square; genus does not see
  // orientation, so it is bounded on the reversed form -H instead.
  const Lattice reversed_h = Lattice::from_rows({{0, -1}, {-1, 0}});
  for (long p = -12; p <= 12; ++p)
    for (long q = -12; q <= 12; ++q) {
      if (p == 0 || q == 0) continue;
      const Lattice& l = p * q > 0 ? kH : reversed_h;
      c.equal(adjunction_genus_lb(l, {p, q}).bound, (std::labs(p) - 1) * (std::labs(q) - 1),
              "H (" + std::to_string(p) + "," + std::to_string(q) + ")");
    }
  for (long p = 1; p <= 12; ++p)
    for (long q = 0; q < p; ++q) {
      const long want = std::max(0L, (p * p - q * q - 3 * p + q) / 2 + 1);
      c.equal(adjunction_genus_lb(kE, {p, q}).bound, want, "E (" + std::to_string(p) + "," + std::to_string(q) + ")");
    }
}

// Every nonincreasing q-tuple of length 2..9 with positive entries, at most p.
void for_each_reduced(long p_max, const std::function<void(long, const std::vector<long>&)>& f) {
  std::vector<long> qs;
  std::function<void(long, long)> rec = [&](long p, long cap) {
    if (qs.size() >= 2) {
      const long top3 = qs[0] + qs[1] + (qs.size() > 2 ? qs[2] : 0);
      long sq = p * p;
      for (long q : qs) sq -= q * q;
      if (p >= top3 && sq > 0) f(p, qs);
    }
    if (qs.size() == 9) return;
    for (long v = 1; v <= cap; ++v) {
      qs.push_back(v);
      rec(p, v);
      qs.pop_back();
    }
  };
  for (long p = 1; p <= p_max; ++p) rec(p, p);
}

void reduced_sharpness(Checker& c) {
  for_each_reduced(10, [&](long p, const std::vector<long>& qs) {
    long sq = p * p, sum = 0;
    for (long q : qs) {
      sq -= q * q;
      sum += q;
    }
    const long want = (sq - 3 * p + sum) / 2 + 1;
    std::vector<Int> v{p};
    v.insert(v.end(), qs.begin(), qs.end());
    const ClassVector xi(v);
    c.equal(adjunction_genus_lb(minus_ones(qs.size()), xi).bound, want, "reduced " + str(xi));
  });
}

void kset_identity(Checker& c) {
  std::vector<std::pair<Lattice, ClassVector>> corpus = {
      {kCp2, {1}}, {kH, {1, 1}}, {kH, {2, 1}}, {kH, {3, 1}}, {kE, {2, 1}}, {kE, {3, 1}}, {kE, {3, 2}}};
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<Int> a(n + 1, Int(0)), b(n + 1, Int(1));
    a[0] = 2;
    a[1] = 1;
    b[0] = static_cast<long>(n) + 1;
    corpus.push_back({minus_ones(n), ClassVector(a)});
    corpus.push_back({minus_ones(n), ClassVector(b)});
  }
  for (const auto& [l, xi] : corpus) {
    const Int xsq = l.square(xi);
    const Int mt = min_abs_pairing(l, xi).m;
    for (long d = 2; d <= 6; ++d) {
      const std::string tag = str(xi) + " d=" + std::to_string(d);
      KSetResult k = k_set(l, xi, d);
      if (mt <= d * xsq) {
        c.expect(k.k0.has_value(), "k0 missing " + tag);
        if (k.k0) c.equal(*k.k0, d * xsq - mt, "k0 " + tag);
      } else {
        c.expect(!k.k0.has_value(), "k0 present " + tag);
      }
      c.equal(divisible_genus_lb(l, xi, d).bound, adjunction_genus_lb(l, Int(d) * xi).bound, "routes " + tag);
    }
  }
}

void dimension_formula(Checker& c) {
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<long> coef(-6, 6), shift(-5, 5), mult(1, 6);
  for (int t = 0; t < 1000; ++t) {
    Lattice l = testing_support::random_bplus1_lattice(rng, 5);
    const ClassVector xi = divisibility(testing_support::random_positive_class(rng, l, 3)).primitive;
    oracle::Vec lam(l.rank());
    for (auto& v : lam) v = coef(rng);
    const ClassVector c1 = l.characteristic_basepoint() + Int(2) * from_vec(lam);
    const Int d = mult(rng);
    const Int s = shift(rng);
    const ClassVector shifted = c1 + Int(2) * d * s * xi;
    const std::string tag = "trial " + std::to_string(t);
    c.equal(formal_dimension(l, c1, xi, d), formal_dimension(l, shifted, xi, d), "dimension shift " + tag);
    c.equal(characteristic_number_of(l, c1, xi, d), characteristic_number_of(l, shifted, xi, d), "k shift " + tag);
  }
  for (long d = 1; d <= 12; ++d)
    for (long k = 0; k <= d; ++k) {
      if ((k + d) % 2 == 0) continue;
      const ClassVector c1{k + d};
      Rational want(Int((k - d) * (k - d) - 1), Int(4));
      want.canonicalize();
      const std::string tag = "CP2 d=" + std::to_string(d) + " k=" + std::to_string(k);
      c.equal(characteristic_number_of(kCp2, c1, {1}, d), k, "k " + tag);
      c.equal(formal_dimension(kCp2, c1, {1}, d), want, "dimension " + tag);
    }
}

void intersection_suite(Checker& c) {
  const Lattice hh = Lattice::direct_sum(kH, kH);
  IntersectionReport r = intersection_lb(hh, {2, 2, 0, 0}, {0, 0, 2, 2}, 0, 0);
  c.equal(r.n_lb, 2 * 2 + 1 * 1, "H+H n_lb");
  c.expect(r.gilmer_lb.has_value(), "Gilmer value missing");
  if (r.gilmer_lb) {
    c.equal(*r.gilmer_lb, (8 + 8) / 4 - 1, "Gilmer value");
    c.expect(*r.gilmer_lb < r.n_lb, "Gilmer value not smaller");
  }
  const Lattice two = Lattice::diagonal({1, 1});
  for (long p = 2; p <= 8; ++p) {
    const long g = (p * p + 1 - 3 * (p + 1)) / 2 + 2;
    c.equal(intersection_lb(two, {p, 1}, {1, -p}, g, g).n_lb, p - 1, "CP2#CP2 p=" + std::to_string(p));
  }
}

void oracle_equivalence(Checker& c) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    Lattice l = testing_support::random_bplus1_lattice(rng, 3);
    ClassVector xi = testing_support::random_positive_class(rng, l, 3);
    const MinPairingResult got = min_abs_pairing(l, xi);
    const auto want = oracle::min_pairing(to_mat(l.gram()), l.sigma(), to_vec(xi), 9);
    const std::string tag = "trial " + std::to_string(t) + " xi " + str(xi);
    c.expect(want.has_value(), "oracle empty " + tag);
    if (want) c.equal(got.m, want->m, "m " + tag);
  }
}

void construction_calculus(Checker& c) {
  for (long p = 1; p <= 12; ++p)
    for (long q = 1; q <= 12; ++q) c.equal(resolve_genus(hyperbolic_spheres_plan(p, q)), (p - 1) * (q - 1), "H plan");
  for (long p = 1; p <= 12; ++p)
    for (long q = 0; q < p; ++q)
      c.equal(resolve_genus(odd_form_plan(p, q)), (p * p - q * q - 3 * p + q) / 2 + 1, "E plan");
  for (long d = 1; d <= 10; ++d)
    for (long g1 = 0; g1 <= 5; ++g1)
      for (long xs = 1; xs <= 6; ++xs) {
        // d copies, each pair meeting xs times: d g1 + xs d(d-1)/2 - (d-1).
        const long want = d * g1 + xs * d * (d - 1) / 2 - (d - 1);
        c.equal(resolve_genus(parallel_copies_plan(xs, g1, d)), want, "parallel copies");
        c.equal(multiple_class_upper_bound(xs, g1, d), want, "upper bound formula");
      }
  for (long p = 1; p <= 10; ++p)
    for (long q1 = 1; q1 < p; ++q1)
      for (long q2 = 1; q2 <= q1; ++q2)
        for (long q3 = 0; q3 <= q2; ++q3) {
          if (p < q1 + q2 + q3) continue;
          std::vector<Int> qs = {q1, q2};
          if (q3) qs.push_back(q3);
          const long sq = p * p - q1 * q1 - q2 * q2 - q3 * q3;
          if (sq <= 0) continue;
          const long want = (sq - 3 * p + q1 + q2 + q3) / 2 + 1;
          const std::string tag = "reduced plan p=" + std::to_string(p);
          auto g = reduced_class_construction(p, qs);
          c.expect(g.has_value(), "no construction " + tag);
          if (g) c.equal(*g, want, tag);
          if (auto plan = reduced_class_plan(p, qs)) c.equal(resolve_genus(*plan), want, tag + " (plan)");
        }
}

void finiteness(Checker& c) {
  for (int n = 2; n <= 9; ++n)
    for (long g = 0; g <= 2; ++g) {
      std::vector<oracle::Vec> got;
      for (const ReducedForm& f : list_reduced_classes_with_genus_le(n, g).classes) got.push_back(to_vec(f.to_class()));
      const auto want = oracle::reduced_listing(n, g, g + 8, 40);
      c.expect(got == want, "n=" + std::to_string(n) + " g=" + std::to_string(g) + ": got " +
                                std::to_string(got.size()) + " classes, oracle " + std::to_string(want.size()));
    }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    void (*run)(Checker&);
  };
  const Criterion criteria[] = {
      {1, "Thom suite", 1, thom},
      {2, "signature-zero suite", 5, signature_zero},
      {3, "reduced-class sharpness", 60, reduced_sharpness},
      {4, "K-set identity", 60, kset_identity},
      {5, "dimension formula", 60, dimension_formula},
      {6, "intersection suite", 30, intersection_suite},
      {7, "oracle equivalence", 60, oracle_equivalence},
      {8, "construction calculus", 5, construction_calculus},
      {9, "finiteness", 120, finiteness},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Checker c;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool slow = s > cr.limit_s;
    const bool ok = error.empty() && c.failures == 0 && !slow;
    failed += !ok;
    std::printf("%s %d %s (%ld checks, %.2f s, limit %.0f s)", ok ? "PASS" : "FAIL", cr.id, cr.name, c.checks, s,
                cr.limit_s);
    if (!error.empty()) std::printf(" exception: %s", error.c_str());
    if (c.failures) std::printf(" %ld failures, first: %s", c.failures, c.first.c_str());
    if (slow) std::printf(" over time limit");
    std::printf("\n");
  }
  return failed == 0 ? 0 : 1;
}
