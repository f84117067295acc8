#include <gtest/gtest.h>

#include <random>

#include "mingenus/errors.hpp"
#include "mingenus/intersections.hpp"

using namespace mingenus;

namespace {

const Lattice kH = Lattice::from_rows({{0, 1}, {1, 0}});
const Lattice kHH = Lattice::direct_sum(kH, kH);
const Lattice kTwoCp2 = Lattice::diagonal({1, 1});
const Lattice kMixed = Lattice::diagonal({1, 1, -1, -1});

TEST(IntersectionLb, HyperbolicPairExample) {
  IntersectionReport r = intersection_lb(kHH, {2, 2, 0, 0}, {0, 0, 2, 2}, 0, 0);
  EXPECT_TRUE(r.hypothesis_ok);
  EXPECT_EQ(r.n_lb, 5);
  ASSERT_TRUE(r.gilmer_lb);
  EXPECT_EQ(*r.gilmer_lb, 3);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(kHH.is_characteristic(r.witness->c));
  EXPECT_GT(r.witness->square, kHH.sigma());
}

TEST(IntersectionLb, HyperbolicSphereGrid) {
  for (long p = 2; p <= 4; ++p)
    for (long q = 2; q <= 4; ++q)
      for (long r = 2; r <= 4; ++r)
        for (long s = 2; s <= 4; ++s) {
          if (p + q < r + s) continue;
          IntersectionReport rep = intersection_lb(kHH, {p, q, 0, 0}, {0, 0, r, s}, 0, 0);
          EXPECT_EQ(rep.n_lb, p * q + (r - 1) * (s - 1)) << p << q << r << s;
        }
}

TEST(IntersectionLb, TwoLinesFamilyIsSharp) {
  for (long p = 2; p <= 8; ++p) {
    const long g = (p * p + 1 - 3 * (p + 1)) / 2 + 2;
    IntersectionReport r = intersection_lb(kTwoCp2, {p, 1}, {1, -p}, g, g);
    EXPECT_EQ(r.n_lb, p - 1) << "p=" << p;
  }
}

TEST(IntersectionLb, MixedFormFormulaIsALowerBound) {
  // With g_i at most the summands, the bound on g1 + g2 + N is at least the
  // value the vector (3,1,1,1) gives.
  for (long p = 3; p <= 6; ++p)
    for (long q = 1; q + 2 <= p; ++q)
      for (long r = 2; r <= 5; ++r)
        for (long s = 1; s < r; ++s) {
          const long first = (p * p - q * q - 3 * p + q) / 2;
          const long second = (r * r - s * s - r + s) / 2;
          for (long g1 : {0L, first})
            for (long g2 : {0L, second}) {
              IntersectionReport rep = intersection_lb(kMixed, {p, 0, q, 0}, {0, r, 0, s}, g1, g2);
              ASSERT_TRUE(rep.hypothesis_ok);
              EXPECT_GE(rep.n_lb + g1 + g2, first + second + 1) << p << q << r << s;
            }
        }
}

TEST(IntersectionLb, Preconditions) {
  EXPECT_THROW(intersection_lb(kHH, {1, 1, 0, 0}, {1, 1, 0, 0}, 0, 0), PreconditionError);
  EXPECT_THROW(intersection_lb(kH, {1, 1}, {1, 1}, 0, 0), PreconditionError);
  EXPECT_THROW(intersection_lb(kHH, {1, 1, 0, 0}, {0, 0, 1, 1}, -1, 0), PreconditionError);
}

TEST(Gilmer, Examples) {
  EXPECT_EQ(gilmer_lb(8, 8, 0, 0, true), 3);
  EXPECT_FALSE(gilmer_lb(8, 8, 0, 0, false));
  EXPECT_EQ(gilmer_lb(8, 8, 5, 5, true), 0);
  EXPECT_THROW(gilmer_lb(0, 8, 0, 0, true), PreconditionError);
}

TEST(Disjointness, Examples) {
  const ClassVector classes[] = {{2, 2, 0, 0}, {0, 0, 2, 2}};
  const Int spheres[] = {0, 0};
  auto w = disjointness_obstruction(kHH, classes, spheres);
  ASSERT_TRUE(w);
  EXPECT_TRUE(kHH.is_characteristic(w->c));
  EXPECT_GT(w->square, kHH.sigma());
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_GE(w->pairings[i], 0);
    EXPECT_LT(w->pairings[i], 2 + kHH.square(classes[i]));
  }
  const Int large[] = {5, 5};
  EXPECT_FALSE(disjointness_obstruction(kHH, classes, large));
  const ClassVector skew[] = {{1, 1, 0, 0}, {1, 1, 1, 1}};
  EXPECT_THROW(disjointness_obstruction(kHH, skew, spheres), PreconditionError);
}

// Properties over small families of orthogonal pairs.

struct Pair {
  Lattice l;
  ClassVector s1, s2;
};

std::vector<Pair> pair_corpus() {
  std::vector<Pair> out;
  for (long p = 1; p <= 3; ++p)
    for (long q = 1; q <= 3; ++q) out.push_back({kHH, {p, q, 0, 0}, {0, 0, q + 1, p}});
  for (long a = 1; a <= 4; ++a)
    for (long b = 1; b <= 4; ++b) out.push_back({kTwoCp2, {a, b}, {b, -a}});
  for (long p = 2; p <= 4; ++p)
    for (long r = 2; r <= 4; ++r) out.push_back({kMixed, {p, 0, 1, 0}, {0, r, 0, r - 1}});
  return out;
}

TEST(IntersectionProperties, Symmetry) {
  for (const Pair& c : pair_corpus())
    for (long g1 = 0; g1 <= 2; ++g1)
      for (long g2 = 0; g2 <= 2; ++g2) {
        IntersectionReport a = intersection_lb(c.l, c.s1, c.s2, g1, g2);
        IntersectionReport b = intersection_lb(c.l, c.s2, c.s1, g2, g1);
        EXPECT_EQ(a.n_lb, b.n_lb);
        EXPECT_EQ(a.hypothesis_ok, b.hypothesis_ok);
        EXPECT_EQ(a.gilmer_lb, b.gilmer_lb);
      }
}

TEST(IntersectionProperties, GenusMonotonicity) {
  for (const Pair& c : pair_corpus())
    for (long g1 = 0; g1 <= 3; ++g1)
      for (long g2 = 0; g2 <= 2; ++g2) {
        const Int n = intersection_lb(c.l, c.s1, c.s2, g1, g2).n_lb;
        const Int up1 = intersection_lb(c.l, c.s1, c.s2, g1 + 1, g2).n_lb;
        const Int up2 = intersection_lb(c.l, c.s1, c.s2, g1, g2 + 1).n_lb;
        EXPECT_LE(up1, n + 1);
        EXPECT_LE(up1, n);
        EXPECT_LE(up1, std::max<Int>(n - 1, 0));
        EXPECT_LE(up2, std::max<Int>(n - 1, 0));
      }
}

TEST(IntersectionProperties, WitnessAndObstructionConsistency) {
  for (const Pair& c : pair_corpus())
    for (long g1 = 0; g1 <= 2; ++g1)
      for (long g2 = 0; g2 <= 2; ++g2) {
        IntersectionReport r = intersection_lb(c.l, c.s1, c.s2, g1, g2);
        const ClassVector classes[] = {c.s1, c.s2};
        const Int genera[] = {g1, g2};
        auto obstruction = disjointness_obstruction(c.l, classes, genera);
        EXPECT_EQ(r.hypothesis_ok, obstruction.has_value());
        if (r.n_lb > 0) EXPECT_TRUE(obstruction);
        if (!r.witness) continue;
        const CharWitness& w = *r.witness;
        EXPECT_TRUE(c.l.is_characteristic(w.c));
        EXPECT_GT(c.l.square(w.c), c.l.sigma());
        EXPECT_EQ(c.l.pairing(w.c, c.s1), *r.t1);
        EXPECT_EQ(c.l.pairing(w.c, c.s2), *r.t2);
        EXPECT_GE(*r.t1, 0);
        EXPECT_GE(*r.t2, 0);
        EXPECT_LT(*r.t1, 2 - 2 * g1 + c.l.square(c.s1));
        EXPECT_LT(*r.t2, 2 - 2 * g2 + c.l.square(c.s2));
      }
}

}  // namespace
