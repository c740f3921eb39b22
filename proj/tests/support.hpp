#pragma once

#include <chrono>
#include <random>
#include <set>

#include "freeness/freeness.hpp"
#include "freeness/io.hpp"

namespace freeness::testing {

inline Registry registry(const std::string& id) { return load_registry(id, FREENESS_REGISTRY_DIR); }

inline std::string fixture(const std::string& name) {
  return std::string(FREENESS_FIXTURE_DIR) + "/" + name;
}

inline std::vector<std::string> registry_ids() {
  return {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C13",
          "C14", "C15", "C16", "C2xC2", "C2xC4", "D4", "D6", "Q8", "Q12", "Q16", "Q8xC2", "A4"};
}

inline Int rand_int(std::mt19937_64& rng, long lo, long hi) {
  return Int(std::uniform_int_distribution<long>(lo, hi)(rng));
}

inline RatVec rand_vec(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  RatVec v(n);
  for (auto& x : v) x = Rat(rand_int(rng, lo, hi));
  return v;
}

// Random element of the lattice with small coefficients.
inline RatVec rand_elem(std::mt19937_64& rng, const ZLattice& l, long bound) {
  RatVec v(l.dim());
  for (std::size_t j = 0; j < l.rank(); ++j) v = v + scale(l.basis_vector(j), Rat(rand_int(rng, -bound, bound)));
  return v;
}

inline RatVec rand_nonzero_elem(std::mt19937_64& rng, const ZLattice& l, long bound) {
  for (;;) {
    RatVec v = rand_elem(rng, l, bound);
    if (!is_zero(v)) return v;
  }
}

// Delta x, spanned by b_l x for the basis b_l of Delta.
inline ZLattice left_principal(const SkewField& d, const RatVec& x) {
  std::vector<RatVec> v;
  for (std::size_t l = 0; l < d.delta.rank(); ++l) v.push_back(d.mul(d.delta.basis_vector(l), x));
  return ZLattice::from_vectors(v, d.dim());
}

inline ZLattice left_ideal(const SkewField& d, const std::vector<RatVec>& gens) {
  std::vector<RatVec> v;
  for (const auto& x : gens)
    for (std::size_t l = 0; l < d.delta.rank(); ++l) v.push_back(d.mul(d.delta.basis_vector(l), x));
  return ZLattice::from_vectors(v, d.dim());
}

inline SkewField hurwitz() {
  auto q = std::make_shared<QuatAlgebra>(Rat(-1), Rat(-1));
  return SkewField::from_quaternion(q, q->maximal_order(q->standard_order()));
}

inline SkewField quadratic(long D) {
  return SkewField::from_field(std::make_shared<NumberField>(NumberField::quadratic(Int(D))));
}

inline SkewField integers() {
  return SkewField::from_field(std::make_shared<NumberField>(NumberField::rationals()));
}

// Brute force over i,j,k coordinates in {-1, -1/2, 0, 1/2, 1}: the units of a
// definite quaternion order containing Z[i, j] have norm 1, so every
// coordinate lies in [-1, 1]; the order is inside (1/2) Z^4 for (-1,-1).
inline std::vector<RatVec> hurwitz_units_bruteforce(const SkewField& d) {
  std::vector<RatVec> out;
  const Rat vals[] = {Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 2), Rat(1)};
  for (const auto& a : vals)
    for (const auto& b : vals)
      for (const auto& c : vals)
        for (const auto& e : vals) {
          RatVec x = {a, b, c, e};
          if (a * a + b * b + c * c + e * e != 1) continue;
          if (d.delta.contains(x)) out.push_back(x);
        }
  return out;
}

// The regular module X = A theta inside V = Q[G].
inline ProblemInstance regular_instance(const Registry& r, const RatVec& theta) {
  ProblemInstance inst;
  inst.reg = r;
  for (std::size_t g = 0; g < r.order(); ++g) inst.action.push_back(r.qg.left_matrix(r.qg.basis_element(g)));
  inst.order = group_ring_lattice(r);
  inst.lattice = right_mul(r.qg, inst.order, theta);
  inst.rank = 1;
  return inst;
}

inline RatVec random_unit_of_qg(std::mt19937_64& rng, const Registry& r, long bound) {
  for (;;) {
    RatVec t = rand_vec(rng, r.order(), -bound, bound);
    if (r.qg.inverse(t)) return t;
  }
}

// Oracle for the generators of a FREE verdict: every alpha_j lies in X and the
// Z-span of {g alpha_j} equals X.
inline bool generators_span(const ProblemInstance& inst, const std::vector<RatVec>& alpha) {
  std::vector<RatVec> v;
  for (const auto& a : alpha) {
    if (!inst.lattice.contains(a)) return false;
    for (std::size_t k = 0; k < inst.order.rank(); ++k)
      v.push_back(module_action(inst.action, inst.order.basis_vector(k)) * a);
  }
  return ZLattice::from_vectors(v, inst.lattice.dim()) == inst.lattice;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

}  // namespace freeness::testing
