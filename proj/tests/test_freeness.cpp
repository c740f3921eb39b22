#include <gtest/gtest.h>

#include "support.hpp"

using namespace freeness;
using namespace freeness::testing;

namespace {

// X = Z[i] in Q(i) = Q^2 with C2 acting by complex conjugation
ProblemInstance gaussian_instance() {
  ProblemInstance inst;
  inst.reg = registry("C2");
  RatMat g = RatMat::identity(2);
  g(1, 1) = Rat(-1);
  inst.action = {RatMat::identity(2), g};
  inst.lattice = ZLattice::standard(2);
  inst.order = group_ring_lattice(inst.reg);
  inst.rank = 1;
  return inst;
}

bool has_reason(const FreenessCertificate& c, const std::string& s) {
  for (const auto& r : c.reasons)
    if (r.find(s) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(RankCheck, Anchors) {
  EXPECT_EQ(rank_check(registry("Q8"), 8), 1u);
  EXPECT_EQ(rank_check(registry("C2"), 6), 3u);
  EXPECT_THROW(rank_check(registry("C4"), 6), InvalidInput);
  EXPECT_THROW(rank_check(registry("C4"), 0), InvalidInput);
}

TEST(Validate, RejectsNonFreeAmbientSpace) {
  ProblemInstance inst = gaussian_instance();
  inst.action[1] = RatMat::identity(2);
  EXPECT_THROW(validate_instance(inst), InvalidInput);
}

TEST(Validate, RejectsUnstableLattice) {
  ProblemInstance inst = gaussian_instance();
  // g (1/3, 1) = (1/3, -1) is not in the lattice
  inst.lattice = ZLattice::from_vectors({{Rat(1), Rat(0)}, {Rat(1, 3), Rat(1)}}, 2);
  EXPECT_THROW(validate_instance(inst), InvalidInput);
}

TEST(IsFree, RegularModuleOfEveryRegistryGroup) {
  for (const auto& id : registry_ids()) {
    Registry r = registry(id);
    if (r.order() > 12) continue;
    ProblemInstance inst = regular_instance(r, r.qg.one());
    FreenessCertificate c = is_free(inst);
    ASSERT_EQ(c.verdict, Verdict::Free) << id;
    EXPECT_TRUE(generators_span(inst, c.generators)) << id;
    EXPECT_TRUE(verify_certificate(inst, c)) << id;
  }
}

TEST(IsFree, MaximalOrderAsOrder) {
  Registry r = registry("D4");
  ProblemInstance inst = regular_instance(r, r.qg.one());
  inst.order = r.maximal_order;
  inst.lattice = r.maximal_order;
  FreenessCertificate c = is_free(inst);
  ASSERT_EQ(c.verdict, Verdict::Free);
  for (const auto& log : c.components) EXPECT_EQ(log.repset_size, 1u);
  EXPECT_TRUE(generators_span(inst, c.generators));
}

TEST(IsFree, RandomTwistsOfC2xC2) {
  std::mt19937_64 rng(81);
  Registry r = registry("C2xC2");
  for (int t = 0; t < 5; ++t) {
    ProblemInstance inst = regular_instance(r, random_unit_of_qg(rng, r, 3));
    FreenessCertificate c = is_free(inst);
    ASSERT_EQ(c.verdict, Verdict::Free);
    EXPECT_TRUE(generators_span(inst, c.generators));
  }
}

TEST(IsFree, RankTwo) {
  Registry r = registry("C3");
  ProblemInstance inst;
  inst.reg = r;
  for (std::size_t g = 0; g < 3; ++g) {
    RatMat l = r.qg.left_matrix(r.qg.basis_element(g)), m(6, 6);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = m(i + 3, j + 3) = l(i, j);
    inst.action.push_back(m);
  }
  inst.order = group_ring_lattice(r);
  // Z[G] + Z[G] sheared by (1 - g) into the second summand
  std::vector<RatVec> v;
  for (std::size_t k = 0; k < 3; ++k) {
    RatVec a(6), b(6);
    a[k] = 1;
    b[3 + k] = 1;
    b[k] = k == 0 ? Rat(1) : k == 1 ? Rat(-1) : Rat(0);
    v.push_back(a);
    v.push_back(b);
  }
  inst.lattice = ZLattice::from_vectors(v, 6);
  inst.rank = 2;
  FreenessCertificate c = is_free(inst);
  ASSERT_EQ(c.verdict, Verdict::Free);
  EXPECT_EQ(c.generators.size(), 2u);
  EXPECT_TRUE(generators_span(inst, c.generators));
}

TEST(Verify, MutationBreaksCertificate) {
  ProblemInstance inst = load_instance(fixture("c2_sqrt5.json"));
  FreenessCertificate c = is_free(inst);
  ASSERT_EQ(c.verdict, Verdict::Free);
  ASSERT_TRUE(verify_certificate(inst, c));
  for (std::size_t k = 0; k < inst.lattice.rank(); ++k) {
    // alpha + w/2 leaves X
    FreenessCertificate h = c;
    h.generators[0] = h.generators[0] + scale(inst.lattice.basis_vector(k), Rat(1, 2));
    EXPECT_FALSE(verify_certificate(inst, h));
  }
  // alpha + w stays in X but need not generate
  FreenessCertificate w = c;
  w.generators[0] = c.generators[0] + inst.lattice.basis_vector(0);
  EXPECT_EQ(verify_certificate(inst, w), generators_span(inst, w.generators));
  FreenessCertificate z = c;
  z.generators[0] = scale(c.generators[0], Rat(2));
  EXPECT_FALSE(verify_certificate(inst, z));
  FreenessCertificate u = c;
  u.verdict = Verdict::NotFree;
  EXPECT_FALSE(verify_certificate(inst, u));
}

TEST(Determinism, ByteIdenticalCertificates) {
  Registry r = registry("Q8");
  std::mt19937_64 rng(82);
  ProblemInstance inst = regular_instance(r, random_unit_of_qg(rng, r, 2));
  FreenessOptions opt;
  opt.seed = 5;
  std::string a = certificate_to_json(is_free(inst, opt));
  std::string b = certificate_to_json(is_free(inst, opt));
  EXPECT_EQ(a, b);
  FreenessCertificate back = parse_certificate(a);
  EXPECT_EQ(certificate_to_json(back), a);
  EXPECT_TRUE(verify_certificate(inst, back));
}

TEST(AssociatedOrder, Anchors) {
  Registry r = registry("C2");
  ProblemInstance reg = regular_instance(r, r.qg.one());
  EXPECT_EQ(associated_order(r, reg.action, reg.lattice), group_ring_lattice(r));

  ProblemInstance s5 = load_instance(fixture("c2_sqrt5.json"));
  EXPECT_EQ(associated_order(r, s5.action, s5.lattice), group_ring_lattice(r));

  // Z[i]: both (1 +- g)/2 preserve Z[i], so the stabilizer is the maximal order
  ProblemInstance gi = gaussian_instance();
  ZLattice a = associated_order(r, gi.action, gi.lattice);
  EXPECT_TRUE(a.contains(group_ring_lattice(r)));
  EXPECT_TRUE(is_order(r.qg, a));
  EXPECT_EQ(a, r.maximal_order);
}

TEST(AssociatedOrder, IsTheExactStabilizer) {
  std::mt19937_64 rng(83);
  Registry r = registry("C4");
  ProblemInstance inst = regular_instance(r, random_unit_of_qg(rng, r, 2));
  // a sublattice of X that is not Z[G]-stable in general
  std::vector<RatVec> v;
  for (std::size_t k = 0; k < inst.lattice.rank(); ++k)
    v.push_back(scale(inst.lattice.basis_vector(k), k == 0 ? Rat(1) : Rat(2)));
  ZLattice x = ZLattice::from_vectors(v, 4);
  ZLattice a = associated_order(r, inst.action, x);
  EXPECT_TRUE(is_order(r.qg, a));
  for (std::size_t k = 0; k < a.rank(); ++k) {
    RatMat m = module_action(inst.action, a.basis_vector(k));
    for (std::size_t l = 0; l < x.rank(); ++l) EXPECT_TRUE(x.contains(m * x.basis_vector(l)));
  }
  // oracle: (1/2) b for a basis vector b of A never stabilizes X when b is primitive in A
  for (std::size_t k = 0; k < a.rank(); ++k) {
    RatMat m = module_action(inst.action, scale(a.basis_vector(k), Rat(1, 2)));
    bool stable = true;
    for (std::size_t l = 0; l < x.rank(); ++l) stable = stable && x.contains(m * x.basis_vector(l));
    EXPECT_FALSE(stable);
  }
}

TEST(LocalFreeness, Fixtures) {
  std::mt19937_64 rng(84);
  ProblemInstance bad = load_instance(fixture("c2_nonlocfree.json"));
  LocalFreeness lf = locally_free_check(bad, 1, {Int(2)}, rng);
  EXPECT_EQ(lf.status, LocalFreeness::Status::No);
  ASSERT_EQ(lf.primes.size(), 1u);
  EXPECT_EQ(lf.primes[0].status, LocalBasisResult::Status::NotExist);

  ProblemInstance good = load_instance(fixture("c2_sqrt5.json"));
  LocalFreeness lg = locally_free_check(good, 1, {Int(2)}, rng);
  EXPECT_EQ(lg.status, LocalFreeness::Status::Yes);
  ASSERT_EQ(lg.primes.size(), 1u);
  ASSERT_EQ(lg.primes[0].witness.size(), 1u);
  // witness generates X locally: index of A w in X is odd
  std::vector<RatVec> v;
  for (std::size_t k = 0; k < good.order.rank(); ++k)
    v.push_back(module_action(good.action, good.order.basis_vector(k)) * lg.primes[0].witness[0]);
  ZLattice s = ZLattice::from_vectors(v, 2);
  ASSERT_TRUE(s.is_full());
  EXPECT_NE(lattice_index(good.lattice, s).get_num() % 2, 0);

  ProblemInstance gi = gaussian_instance();
  FreenessCertificate c = is_free(gi);
  EXPECT_EQ(c.verdict, Verdict::NotLocallyFree);
  EXPECT_TRUE(verify_certificate(gi, c));
}

TEST(ThreeValued, TruncationNeverGivesNotFree) {
  Registry r = registry("D4");
  std::mt19937_64 rng(85);
  ProblemInstance inst = regular_instance(r, random_unit_of_qg(rng, r, 2));
  FreenessOptions opt;
  opt.tuple_cap = 1;
  FreenessCertificate c = is_free(inst, opt);
  EXPECT_NE(c.verdict, Verdict::NotFree);
  if (c.verdict == Verdict::Unknown) EXPECT_TRUE(has_reason(c, "truncated"));
  if (c.verdict == Verdict::Free) EXPECT_TRUE(generators_span(inst, c.generators));

  FreenessOptions small;
  small.repset_cap = 4;
  FreenessCertificate c2 = is_free(inst, small);
  EXPECT_NE(c2.verdict, Verdict::NotFree);
  if (c2.verdict == Verdict::Unknown) EXPECT_TRUE(has_reason(c2, "incomplete") || has_reason(c2, "truncated"));
}

TEST(ThreeValued, StopAfterStepFive) {
  ProblemInstance inst = load_instance(fixture("c2_sqrt13.json"));
  FreenessOptions opt;
  opt.stop_after_step5 = true;
  FreenessCertificate c = is_free(inst, opt);
  EXPECT_EQ(c.verdict, Verdict::Unknown);
  ASSERT_EQ(c.components.size(), 2u);
  for (const auto& log : c.components) {
    EXPECT_EQ(log.step5, "basis");
    EXPECT_EQ(log.steinitz_class, "trivial");
  }
}
