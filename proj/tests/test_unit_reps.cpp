#include <gtest/gtest.h>

#include "support.hpp"

using namespace freeness;
using namespace freeness::testing;

namespace {

ZLattice modulus(const SkewField& d, long m) { return d.field->principal_ideal(d.field->embed(Rat(m))); }

// |{A in M_2(Z/N) : det A = +-1}| by brute force
std::size_t det_pm1_count(long n) {
  std::size_t c = 0;
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long x = 0; x < n; ++x)
        for (long y = 0; y < n; ++y) {
          long det = ((a * y - b * x) % n + n) % n;
          if (det == 1 % n || det == (n - 1) % n) ++c;
        }
  return c;
}

}  // namespace

TEST(ResidueRing, HurwitzModTwo) {
  SkewField d = hurwitz();
  ResidueRing r(d, modulus(d, 2));
  EXPECT_EQ(r.size(), 16);
  std::mt19937_64 rng(71);
  for (int t = 0; t < 50; ++t) {
    RatVec x = rand_elem(rng, d.delta, 5), y = rand_elem(rng, d.delta, 5);
    EXPECT_EQ(r.mul(r.from_delta(x), r.from_delta(y)), r.from_delta(d.mul(x, y)));
    EXPECT_EQ(r.add(r.from_delta(x), r.from_delta(y)), r.from_delta(x + y));
    // lift of the residue is congruent
    EXPECT_TRUE(r.modulus().contains(r.lift(r.from_delta(x)) - x));
  }
}

TEST(ElementaryGenerators, Counts) {
  SkewField z = integers();
  auto e = elementary_generators(ResidueRing(z, modulus(z, 2)), 2);
  EXPECT_EQ(e.size(), 2u);
  SkewField d = hurwitz();
  ResidueRing r(d, modulus(d, 2));
  auto eh = elementary_generators(r, 2);
  EXPECT_EQ(eh.size(), 8u);
  MatrixSpace ms(d, 2);
  for (const auto& g : eh) EXPECT_EQ(ms.alg.mul(g.lift, g.lift_inv), ms.alg.one());
}

TEST(Sk1, Hurwitz) {
  SkewField d = hurwitz();
  SK1Data s = sk1_generators(d);
  ASSERT_EQ(s.gens.size(), 1u);
  const auto& g = s.gens[0];
  EXPECT_EQ(g.p, 2);
  EXPECT_EQ(g.group_order, 3);
  MatrixSpace ms(d, 2);
  EXPECT_EQ(reduced_norm_2x2(ms, g.g), d.field->one());
  RatVec gi = ms.inverse(g.g);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_TRUE(d.delta.contains(ms.entry(g.g, i, j)));
      EXPECT_TRUE(d.delta.contains(ms.entry(gi, i, j)));
    }
  // w^sigma alpha = alpha w: conjugation by alpha induces the Frobenius on W
  EXPECT_EQ(d.mul(d.quat->conj(g.w), g.alpha), d.mul(g.alpha, g.w));
  std::vector<RatVec> a1{g.alpha, d.one()};
  EXPECT_EQ(ms.alg.mul(g.T, ms.diag(a1)), ms.alg.mul(ms.diag(a1), g.S));
}

TEST(Sk1, MinusOneMinusThree) {
  auto q = std::make_shared<QuatAlgebra>(Rat(-1), Rat(-3));
  SkewField d = SkewField::from_quaternion(q, q->maximal_order(q->standard_order()));
  SK1Data s = sk1_generators(d);
  ASSERT_EQ(s.gens.size(), 1u);
  EXPECT_EQ(s.gens[0].p, 3);
  EXPECT_EQ(s.gens[0].group_order, 4);
  MatrixSpace ms(d, 2);
  EXPECT_EQ(reduced_norm_2x2(ms, s.gens[0].g), d.field->one());
}

TEST(Sk1, Schur2x2NormMatchesRegularNorm) {
  // M_2(D) has degree 4 over Q: det of the 16x16 left regular matrix is nr^4
  SkewField d = hurwitz();
  MatrixSpace ms(d, 2);
  std::mt19937_64 rng(72);
  for (int t = 0; t < 10; ++t) {
    RatVec x = rand_vec(rng, 16, -2, 2);
    Rat n = reduced_norm_2x2(ms, x)[0];
    Rat det = determinant(ms.alg.left_matrix(x));
    EXPECT_EQ(det, n * n * n * n);
  }
}

TEST(RepSet, IntegersRankOne) {
  SkewField z = integers();
  RepSet r5 = unit_representatives(z, modulus(z, 5), 1);
  std::set<ResidueRing::Elem> s;
  for (std::size_t i = 0; i < r5.size(); ++i) s.insert(r5.residue(i)[0]);
  EXPECT_EQ(s, (std::set<ResidueRing::Elem>{{1}, {4}}));
  RepSet r2 = unit_representatives(z, modulus(z, 2), 1);
  EXPECT_EQ(r2.size(), 1u);
  EXPECT_TRUE(r2.complete);
}

TEST(RepSet, IntegersRankTwoAgreesWithDeterminantCount) {
  SkewField z = integers();
  for (long n : {2L, 3L, 4L, 5L, 6L}) {
    RepSet r = unit_representatives(z, modulus(z, n), 2);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(r.size(), det_pm1_count(n)) << n;
  }
}

TEST(RepSet, LiftsAreUnitsAndReduceCorrectly) {
  SkewField d = hurwitz();
  RepSet r = unit_representatives(d, modulus(d, 2), 2);
  ASSERT_TRUE(r.complete);
  std::mt19937_64 rng(73);
  std::vector<std::vector<ZLattice>> blocks(2, std::vector<ZLattice>(2, d.delta));
  ZLattice m2 = r.space.block_lattice(blocks);
  for (int t = 0; t < 30; ++t) {
    std::size_t i = rand_int(rng, 0, static_cast<long>(r.size()) - 1).get_si();
    RatVec l = r.lift(i), li = r.lift_inverse(i);
    EXPECT_TRUE(m2.contains(l));
    EXPECT_TRUE(m2.contains(li));
    EXPECT_EQ(r.space.alg.mul(l, li), r.space.alg.one());
    EXPECT_EQ(res_reduce(r.ring, 2, l), r.residue(i));
  }
}

TEST(RepSet, RealQuadraticRankOne) {
  SkewField k = quadratic(5);
  for (long m : {2L, 3L, 11L}) {
    RepSet r = unit_representatives(k, modulus(k, m), 1);
    ResidueRing ring(k, modulus(k, m));
    // oracle: residues of +-eps^j
    RatVec eps = k.field->units().fundamental[0];
    std::set<ResidueRing::Elem> want;
    RatVec p = k.one();
    for (int j = 0; j < 200; ++j) {
      want.insert(ring.from_delta(p));
      want.insert(ring.from_delta(scale(p, Rat(-1))));
      p = k.mul(p, eps);
    }
    std::set<ResidueRing::Elem> got;
    for (std::size_t i = 0; i < r.size(); ++i) got.insert(r.residue(i)[0]);
    EXPECT_EQ(got, want) << m;
  }
}

TEST(RepSet, HurwitzRankOneThreeRoutes) {
  SkewField d = hurwitz();
  ZLattice g = modulus(d, 2);
  RepSet rs = unit_representatives(d, g, 1);
  std::set<ResidueRing::Elem> direct, k1, brute;
  for (std::size_t i = 0; i < rs.size(); ++i) direct.insert(rs.residue(i)[0]);
  for (const auto& e : unit_image_via_k1(d, g)) k1.insert(e);
  for (const auto& u : hurwitz_units_bruteforce(d)) brute.insert(rs.ring.from_delta(u));
  EXPECT_EQ(direct.size(), 12u);
  EXPECT_EQ(direct, brute);
  EXPECT_EQ(k1, brute);
}

TEST(RepSet, CapTruncates) {
  SkewField z = integers();
  RepSetOptions opt;
  opt.cap = 10;
  RepSet r = unit_representatives(z, modulus(z, 5), 2, opt);
  EXPECT_FALSE(r.complete);
  EXPECT_NE(r.note.find("truncated"), std::string::npos);
}

TEST(Reduction, UnitIdealIsIdentity) {
  SkewField d = hurwitz();
  NiceOrder lam = build_nice(d, d.delta, 2);
  ReductionData r = reduction_step(lam, modulus(d, 3));
  EXPECT_TRUE(d.delta.contains(r.xi) && d.delta.contains(*d.inv(r.xi)));
  EXPECT_EQ(r.b_ideal, d.delta);
}

TEST(Reduction, NonPrincipalOverSqrtMinus5) {
  SkewField k = quadratic(-5);
  ZLattice p = left_ideal(k, {k.field->embed(Rat(2)), {Rat(1), Rat(1)}});
  NiceOrder lam = build_nice(k, p, 2);
  const MatrixSpace& ms = lam.space;
  std::vector<std::vector<ZLattice>> blocks(2, std::vector<ZLattice>(2, k.delta));
  ZLattice m2 = ms.block_lattice(blocks);
  for (long gm : {2L, 3L, 6L}) {
    ReductionData r = reduction_step(lam, modulus(k, gm));
    // a = xi b, b + g Delta = Delta, b + y = 1
    EXPECT_EQ(k.product(left_principal(k, r.xi), r.b_ideal), p);
    EXPECT_EQ(r.b_ideal + k.delta.scaled(Rat(gm)), k.delta);
    EXPECT_EQ(r.b + r.y, k.one());
    for (std::size_t j = 0; j < m2.rank(); ++j) {
      RatVec b = m2.basis_vector(j);
      RatVec a = reduction_f1(r, ms, b);
      EXPECT_TRUE(lam.lattice.contains(a));
      EXPECT_TRUE(m2.scaled(Rat(gm)).contains(reduction_f2(r, ms, a) - b));
    }
    for (std::size_t j = 0; j < lam.lattice.rank(); ++j) {
      RatVec a = lam.lattice.basis_vector(j);
      RatVec b = reduction_f2(r, ms, a);
      EXPECT_TRUE(m2.contains(b));
      EXPECT_TRUE(lam.lattice.scaled(Rat(gm)).contains(reduction_f1(r, ms, b) - a));
    }
  }
}
