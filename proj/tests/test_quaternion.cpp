#include <gtest/gtest.h>

#include "support.hpp"

using namespace freeness;
using namespace freeness::testing;

TEST(Quaternion, NormAndTrace) {
  QuatAlgebra h(Rat(-1), Rat(-1));
  EXPECT_EQ(h.reduced_norm(h.algebra().one()), RatVec{Rat(1)});
  EXPECT_EQ(h.reduced_trace(h.algebra().one()), RatVec{Rat(2)});
  RatVec x = h.i() + h.j();
  EXPECT_EQ(h.reduced_norm(x), RatVec{Rat(2)});
  EXPECT_EQ(h.reduced_trace(x), RatVec{Rat(0)});
}

TEST(Quaternion, NormMultiplicative) {
  std::mt19937_64 rng(31);
  QuatAlgebra q(Rat(-2), Rat(-5));
  for (int t = 0; t < 30; ++t) {
    RatVec x = rand_vec(rng, 4, -5, 5), y = rand_vec(rng, 4, -5, 5);
    EXPECT_EQ(q.reduced_norm(q.algebra().mul(x, y))[0], q.reduced_norm(x)[0] * q.reduced_norm(y)[0]);
    // x conj(x) = nr(x)
    EXPECT_EQ(q.algebra().mul(x, q.conj(x)), q.embed_center(q.reduced_norm(x)));
  }
}

TEST(Quaternion, NormMultiplicativeOverRealQuadratic) {
  auto f = std::make_shared<NumberField>(NumberField::quadratic(Int(2)));
  QuatAlgebra q(f, f->embed(Rat(-1)), f->embed(Rat(-1)));
  EXPECT_TRUE(q.is_totally_definite());
  std::mt19937_64 rng(32);
  for (int t = 0; t < 10; ++t) {
    RatVec x = rand_vec(rng, 8, -3, 3), y = rand_vec(rng, 8, -3, 3);
    EXPECT_EQ(q.reduced_norm(q.algebra().mul(x, y)), f->mul(q.reduced_norm(x), q.reduced_norm(y)));
  }
}

TEST(Quaternion, MaximalOrderFromLipschitz) {
  QuatAlgebra h(Rat(-1), Rat(-1));
  ZLattice lip = h.standard_order();
  ZLattice hur = h.maximal_order(lip);
  EXPECT_TRUE(hur.contains(lip));
  EXPECT_EQ(lattice_index(hur, lip), 2);
  EXPECT_TRUE(hur.contains(RatVec{Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)}));
  EXPECT_TRUE(is_order(h.algebra(), hur));
  // discriminant of the trace form on a maximal order of (-1,-1): d(Delta)^2 = 4 for the reduced one
  EXPECT_EQ(abs(determinant(h.trace_form_gram(hur))), 4);
  EXPECT_EQ(h.maximal_order(hur), hur);
}

TEST(Quaternion, MaximalOrderOfScaledOrder) {
  QuatAlgebra q(Rat(-1), Rat(-3));
  // Z + 5 O with O the standard order
  std::vector<RatVec> g{q.algebra().one()};
  ZLattice o = q.standard_order();
  for (std::size_t j = 0; j < o.rank(); ++j) g.push_back(scale(o.basis_vector(j), Rat(5)));
  ZLattice small = ZLattice::from_vectors(g, 4);
  ASSERT_TRUE(is_order(q.algebra(), small));
  ZLattice m = q.maximal_order(small);
  EXPECT_TRUE(m.contains(small));
  EXPECT_TRUE(is_maximal_order(q.algebra(), m));
  // reduced discriminant 3: trace form determinant 9
  EXPECT_EQ(abs(determinant(q.trace_form_gram(m))), 9);
}

TEST(Quaternion, RamifiedPrimes) {
  QuatAlgebra h(Rat(-1), Rat(-1));
  EXPECT_EQ(h.ramified_primes(), std::vector<Int>{Int(2)});
  EXPECT_TRUE(h.ramified_at_infinity());
  QuatAlgebra split(Rat(1), Rat(7));
  EXPECT_TRUE(split.ramified_primes().empty());
  EXPECT_FALSE(split.ramified_at_infinity());
  QuatAlgebra q3(Rat(-1), Rat(-3));
  EXPECT_EQ(q3.ramified_primes(), std::vector<Int>{Int(3)});
  EXPECT_TRUE(q3.ramified_at_infinity());
}

TEST(Quaternion, IdealInverseAndOrders) {
  SkewField d = hurwitz();
  EXPECT_EQ(d.inverse(d.delta), d.delta);
  EXPECT_EQ(left_order(d.alg, d.delta), d.delta);
  EXPECT_EQ(right_order(d.alg, d.delta), d.delta);
  std::mt19937_64 rng(33);
  for (int t = 0; t < 10; ++t) {
    RatVec xi = rand_nonzero_elem(rng, d.delta, 3);
    ZLattice m = left_mul(d.alg, xi, d.delta);  // xi Delta, a right ideal
    ZLattice m_inv = d.inverse(m);
    EXPECT_EQ(m_inv, left_principal(d, *d.inv(xi)));
    EXPECT_EQ(d.product(m_inv, m), d.delta);
    EXPECT_EQ(d.product(m, m_inv), left_order(d.alg, m));
  }
  RatVec one_i = {Rat(1), Rat(1), Rat(0), Rat(0)};
  ZLattice p = d.right_mul(d.delta, one_i) + d.delta.scaled(Rat(2));
  EXPECT_EQ(d.product(p, d.inverse(p)), d.delta);
}

TEST(Quaternion, UnitCounts) {
  SkewField d = hurwitz();
  EXPECT_EQ(d.quat->norm_one_units(d.delta).size(), 24u);
  EXPECT_EQ(d.quat->norm_one_units(d.quat->standard_order()).size(), 8u);
  EXPECT_EQ(hurwitz_units_bruteforce(d).size(), 24u);

  // (-1,-11): brute force over a box in i, j, ij coordinates with the half-integer grid
  auto q = std::make_shared<QuatAlgebra>(Rat(-1), Rat(-11));
  ZLattice delta = q->maximal_order(q->standard_order());
  std::size_t box = 0;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int e = -2; e <= 2; ++e) {
          RatVec x = {Rat(Rat(a) / 4), Rat(Rat(b) / 4), Rat(Rat(c) / 4), Rat(Rat(e) / 4)};
          if (!delta.contains(x)) continue;
          if (q->reduced_norm(x)[0] == 1) ++box;
        }
  EXPECT_EQ(q->norm_one_units(delta).size(), box);
}

TEST(Quaternion, PipAnchors) {
  SkewField d = hurwitz();
  PipResult r = d.principal(d.delta);
  ASSERT_EQ(r.status, PipStatus::Principal);
  EXPECT_EQ(left_principal(d, r.generator), d.delta);
  // the two-sided ideal of norm 2
  RatVec w = {Rat(1), Rat(1), Rat(0), Rat(0)};
  ZLattice p = left_principal(d, w);
  EXPECT_EQ(p, d.right_mul(d.delta, w));
  PipResult r2 = d.principal(p);
  ASSERT_EQ(r2.status, PipStatus::Principal);
  EXPECT_EQ(d.quat->reduced_norm(r2.generator), RatVec{Rat(2)});
  EXPECT_EQ(left_principal(d, r2.generator), p);
}

TEST(Quaternion, PipRoundTrip) {
  std::mt19937_64 rng(34);
  auto q = std::make_shared<QuatAlgebra>(Rat(-1), Rat(-3));
  SkewField d = SkewField::from_quaternion(q, q->maximal_order(q->standard_order()));
  for (int t = 0; t < 30; ++t) {
    RatVec xi = rand_nonzero_elem(rng, d.delta, 4);
    ZLattice a = left_principal(d, xi);
    PipResult r = d.principal(a);
    ASSERT_EQ(r.status, PipStatus::Principal);
    EXPECT_EQ(left_principal(d, r.generator), a);
  }
}

TEST(Quaternion, NormIdealIsGeneratedByNorms) {
  std::mt19937_64 rng(35);
  SkewField d = hurwitz();
  for (int t = 0; t < 20; ++t) {
    ZLattice a = left_ideal(d, {rand_nonzero_elem(rng, d.delta, 3), d.embed_center(d.field->embed(Rat(rand_int(rng, 1, 9))))});
    ZLattice n = d.quat->norm_ideal(a);
    // oracle: gcd of the norms of many elements of a
    Int g = 0;
    for (int k = 0; k < 200; ++k) {
      RatVec x = rand_elem(rng, a, 3);
      Rat nr = d.quat->reduced_norm(x)[0];
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Int(nr.get_num()).get_mpz_t());
    }
    EXPECT_EQ(n, ZLattice::from_vectors({{Rat(g)}}, 1));
  }
}
