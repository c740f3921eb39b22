// One line per acceptance criterion. Exit status is the number of failures.
#include <cstdio>
#include <functional>
#include <iostream>

#include "support.hpp"

using namespace freeness;
using namespace freeness::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void check(bool c, const std::string& what) {
    if (!c && ok) detail = what;
    ok = ok && c;
  }
};

Outcome idempotents() {
  Outcome o;
  Stopwatch sw;
  for (const auto& id : registry_ids()) {
    Registry r = registry(id);
    const Algebra& a = r.qg;
    auto e = central_idempotents(r);
    RatVec sum = a.zero();
    for (std::size_t i = 0; i < e.size(); ++i) {
      sum = sum + e[i];
      o.check(a.mul(e[i], e[i]) == e[i], id + ": e_i^2 != e_i");
      for (std::size_t j = 0; j < e.size(); ++j)
        if (i != j) o.check(is_zero(a.mul(e[i], e[j])), id + ": e_i e_j != 0");
      for (std::size_t g = 0; g < r.order(); ++g) {
        RatVec x = a.basis_element(g);
        o.check(a.mul(x, e[i]) == a.mul(e[i], x), id + ": e_i not central");
      }
    }
    o.check(sum == a.one(), id + ": sum of e_i != 1");
  }
  o.check(sw.seconds() < 5, "slower than 5 s");
  return o;
}

Outcome hurwitz_anchors() {
  Outcome o;
  Stopwatch sw;
  SkewField d = hurwitz();
  auto units = hurwitz_units_bruteforce(d);
  o.check(units.size() == 24, "Hurwitz unit count " + std::to_string(units.size()));
  o.check(d.quat->norm_one_units(d.delta).size() == 24, "norm_one_units disagrees with enumeration");
  ZLattice lip = d.quat->standard_order();
  std::size_t lip_units = 0;
  for (const auto& u : units) lip_units += lip.contains(u);
  o.check(lip_units == 8, "Lipschitz unit count " + std::to_string(lip_units));
  o.check(d.quat->ramified_primes() == std::vector<Int>{Int(2)}, "S_ram != {2}");
  SK1Data s = sk1_generators(d);
  o.check(s.gens.size() == 1 && s.gens[0].p == 2 && s.gens[0].group_order == 3, "SK1 target order != 3");
  if (!s.gens.empty()) {
    MatrixSpace ms(d, 2);
    const auto& g = s.gens[0];
    o.check(ms.alg.mul(g.S, g.g) == g.T, "S g != T");
    o.check(reduced_norm_2x2(ms, g.g) == d.field->one(), "nr(S^-1 T) != 1");
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) o.check(d.delta.contains(ms.entry(g.g, i, j)), "entry outside Delta");
  }
  o.check(sw.seconds() < 10, "slower than 10 s");
  return o;
}

Outcome conductor_anchor() {
  Outcome o;
  Stopwatch sw;
  Registry r = registry("C2");
  // e+ = (1+g)/2, e- = (1-g)/2
  ZLattice m = ZLattice::from_vectors({{Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(-1, 2)}}, 2);
  o.check(r.maximal_order == m, "registry maximal order is not Z e+ + Z e-");
  ConductorData c = conductor(r, group_ring_lattice(r));
  o.check(c.c == m.scaled(Rat(2)), "conductor != 2M");
  // direct stabilizer: x in M with x M in Z[G], over the box (1/2) Z^2 / 4
  std::vector<RatVec> stab;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b) {
      RatVec x = {Rat(Rat(a) / 2), Rat(Rat(b) / 2)};
      if (!m.contains(x)) continue;
      bool in = true;
      for (std::size_t j = 0; j < 2; ++j) in = in && group_ring_lattice(r).contains(r.qg.mul(x, m.basis_vector(j)));
      if (in) stab.push_back(x);
    }
  o.check(ZLattice::from_vectors(stab, 2) == c.c, "stabilizer oracle disagrees");
  o.check(sw.seconds() < 1, "slower than 1 s");
  return o;
}

struct Ring {
  std::string name;
  SkewField d;
};
std::vector<Ring> rings() {
  return {{"Z", integers()}, {"Z[i]", quadratic(-1)}, {"Z[sqrt-5]", quadratic(-5)}, {"Hurwitz", hurwitz()}};
}

ZLattice random_ideal(std::mt19937_64& rng, const SkewField& d) {
  return left_ideal(d, {rand_nonzero_elem(rng, d.delta, 3), d.embed_center(d.field->embed(Rat(rand_int(rng, 1, 6))))});
}

Outcome pseudo_hnf_span() {
  Outcome o;
  Stopwatch sw;
  std::mt19937_64 rng(11);
  for (const auto& [name, d] : rings()) {
    const std::size_t t = d.dim();
    for (int trial = 0; trial < 200;) {
      std::size_t r = 1 + trial % 3, m = r + rand_int(rng, 0, 2).get_si();
      PseudoMatrix p;
      p.rows = r;
      for (std::size_t j = 0; j < m; ++j) {
        RatVec col(r * t);
        for (std::size_t i = 0; i < r; ++i) dvec_set(col, i, scale(rand_elem(rng, d.delta, 2), Rat(1, rand_int(rng, 1, 3))));
        p.cols.push_back(col);
        p.ideals.push_back(random_ideal(rng, d));
      }
      PseudoMatrix h;
      try {
        h = pseudo_hnf(d, p);
      } catch (const RankError&) {
        continue;
      }
      ++trial;
      ZLattice before = pseudo_span(d, p);
      o.check(pseudo_span(d, h) == before, name + ": pseudo-HNF changed the span");
      SteinitzForm st = steinitz(d, h);
      PseudoMatrix sp;
      sp.rows = r;
      for (const auto& z : st.free) {
        sp.cols.push_back(z);
        sp.ideals.push_back(d.delta);
      }
      sp.cols.push_back(st.last);
      sp.ideals.push_back(st.ideal);
      o.check(pseudo_span(d, sp) == before, name + ": Steinitz form changed the span");
      o.check(lattice_index(pseudo_span(d, sp), before) == 1, name + ": Steinitz index != 1");
    }
  }
  o.check(sw.seconds() < 120, "slower than 2 min");
  return o;
}

Outcome extended_euclid() {
  Outcome o;
  Stopwatch sw;
  std::mt19937_64 rng(12);
  const long primes[] = {2, 3, 5, 7, 11, 13};
  for (const auto& [name, d] : rings()) {
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t m = 2 + trial % 2;
      std::vector<ZLattice> ideals;
      // a_j contains the product of the other (distinct prime) moduli, so the sum contains 1
      std::vector<long> mods;
      for (std::size_t j = 0; j < m; ++j) mods.push_back(primes[(trial + j) % 6]);
      for (std::size_t j = 0; j < m; ++j) {
        long c = 1;
        for (std::size_t l = 0; l < m; ++l)
          if (l != j) c *= mods[l];
        ideals.push_back(left_ideal(d, {rand_nonzero_elem(rng, d.delta, 4), d.embed_center(d.field->embed(Rat(c)))}));
      }
      auto alpha = ext_euclid(d, ideals);
      RatVec s = d.zero();
      for (std::size_t j = 0; j < m; ++j) {
        o.check(ideals[j].contains(alpha[j]), name + ": alpha_j outside a_j");
        s = s + alpha[j];
      }
      o.check(s == d.one(), name + ": sum alpha_j != 1");
    }
  }
  o.check(sw.seconds() < 60, "slower than 1 min");
  return o;
}

Outcome pip_roundtrip() {
  Outcome o;
  Stopwatch sw;
  std::mt19937_64 rng(13);
  for (const auto& [name, d] : rings()) {
    for (int trial = 0; trial < 100; ++trial) {
      RatVec xi = rand_nonzero_elem(rng, d.delta, 4);
      // scrambled generating set: random Z-combinations of b_l xi plus the basis
      std::vector<RatVec> gens;
      ZLattice a = left_principal(d, xi);
      for (std::size_t l = 0; l < a.rank() + 2; ++l) gens.push_back(rand_elem(rng, a, 5));
      for (std::size_t l = 0; l < a.rank(); ++l) gens.push_back(a.basis_vector(l));
      ZLattice scrambled = ZLattice::from_vectors(gens, d.dim());
      PipResult p = d.principal(scrambled);
      o.check(p.status == PipStatus::Principal, name + ": principal ideal not recognized");
      if (p.status == PipStatus::Principal)
        o.check(left_principal(d, p.generator) == a, name + ": generator does not generate");
    }
  }
  SkewField k = quadratic(-5);
  RatVec two = k.field->embed(Rat(2)), w = {Rat(1), Rat(1)};
  PipResult p = k.principal(left_ideal(k, {two, w}));
  o.check(p.status == PipStatus::NotPrincipal, "(2, 1+sqrt-5) not certified non-principal");
  o.check(sw.seconds() < 120, "slower than 2 min");
  return o;
}

Outcome hilbert_speiser() {
  Outcome o;
  for (const char* f : {"c2_sqrt5.json", "c2_sqrt13.json", "c2_sqrt17.json"}) {
    Stopwatch sw;
    ProblemInstance inst = load_instance(fixture(f));
    FreenessCertificate c = is_free(inst);
    o.check(c.verdict == Verdict::Free, std::string(f) + ": not FREE");
    o.check(c.generators.size() == 1 && generators_span(inst, c.generators), std::string(f) + ": generator check");
    o.check(verify_certificate(inst, parse_certificate(certificate_to_json(c))), std::string(f) + ": verifier rejects");
    o.check(sw.seconds() < 30, std::string(f) + ": slower than 30 s");
  }
  Stopwatch sw;
  ProblemInstance inst = load_instance(fixture("c2_nonlocfree.json"));
  FreenessCertificate c = is_free(inst);
  o.check(c.verdict == Verdict::NotLocallyFree, "Z e+ + Z e- not NOT_LOCALLY_FREE");
  bool witness = false;
  for (const auto& [p, s] : c.local_primes) witness = witness || (p == "2" && s == "not_exist");
  o.check(witness, "no exhaustive witness at p = 2");
  o.check(verify_certificate(inst, c), "verifier rejects the NOT_LOCALLY_FREE certificate");
  o.check(sw.seconds() < 30, "slower than 30 s");
  return o;
}

Outcome roundtrip() {
  Outcome o;
  Stopwatch sw;
  std::mt19937_64 rng(14);
  for (const char* id : {"C4", "C2xC2", "D4", "Q8", "Q12"}) {
    Registry r = registry(id);
    for (int trial = 0; trial < 20; ++trial) {
      ProblemInstance inst = regular_instance(r, random_unit_of_qg(rng, r, 2));
      FreenessCertificate c = is_free(inst);
      o.check(c.verdict == Verdict::Free, std::string(id) + ": " + to_string(c.verdict));
      if (c.verdict == Verdict::Free) {
        o.check(generators_span(inst, c.generators), std::string(id) + ": generators do not span");
        o.check(verify_certificate(inst, c), std::string(id) + ": verifier rejects");
      }
    }
  }
  o.check(sw.seconds() < 600, "slower than 10 min");
  return o;
}

Outcome three_valued() {
  Outcome o;
  Registry r = registry("Q8xC2");
  std::mt19937_64 rng(7);
  ProblemInstance inst = regular_instance(r, random_unit_of_qg(rng, r, 2));
  FreenessOptions opt;
  opt.tuple_cap = 4;
  FreenessCertificate c = is_free(inst, opt);
  o.check(c.verdict != Verdict::NotFree, "truncated enumeration produced NOT_FREE");
  o.check(c.verdict == Verdict::Unknown, "verdict " + to_string(c.verdict));
  bool truncated = false;
  for (const auto& s : c.reasons) truncated = truncated || s.find("truncated") != std::string::npos;
  o.check(truncated, "reasons do not record the truncation");
  return o;
}

Outcome unit_reps_crosscheck() {
  Outcome o;
  Stopwatch sw;
  SkewField d = hurwitz();
  ZLattice g = d.field->principal_ideal(d.field->embed(Rat(2)));
  RepSet rs = unit_representatives(d, g, 1);
  std::set<ResidueRing::Elem> direct, via_k1, brute;
  for (std::size_t i = 0; i < rs.size(); ++i) direct.insert(rs.residue(i)[0]);
  for (const auto& e : unit_image_via_k1(d, g)) via_k1.insert(e);
  for (const auto& u : hurwitz_units_bruteforce(d)) brute.insert(rs.ring.from_delta(u));
  o.check(rs.complete, "RepSet incomplete");
  o.check(direct == brute, "RepSet image != enumerated unit image");
  o.check(via_k1 == brute, "K1 image != enumerated unit image");
  o.check(sw.seconds() < 30, "slower than 30 s");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"idempotents of every registry group", idempotents},
      {"Hurwitz order anchors", hurwitz_anchors},
      {"conductor of Z[C2] is 2M", conductor_anchor},
      {"pseudo-HNF and Steinitz span preservation", pseudo_hnf_span},
      {"extended Euclid postconditions", extended_euclid},
      {"PIP round trips and (2, 1+sqrt-5)", pip_roundtrip},
      {"C2 normal integral bases", hilbert_speiser},
      {"round-trip freeness of A theta", roundtrip},
      {"truncated Q8xC2 search stays UNKNOWN", three_valued},
      {"Hurwitz unit image modulo 2", unit_reps_crosscheck},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Stopwatch sw;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %2zu %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                sw.seconds(), o.ok ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.ok;
  }
  return failures;
}
