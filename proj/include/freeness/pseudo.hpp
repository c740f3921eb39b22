#pragma once

#include <random>

#include "freeness/skewfield.hpp"

namespace freeness {

// Vectors in D^r are flattened: entry i occupies coordinates [i*t, (i+1)*t).
RatVec dvec_entry(const RatVec& v, std::size_t i, std::size_t t);
void dvec_set(RatVec& v, std::size_t i, const RatVec& x);
RatVec dvec_left(const SkewField& d, const RatVec& s, const RatVec& v);   // s v
RatVec dvec_right(const SkewField& d, const RatVec& v, const RatVec& s);  // v s

// Sum of a_j x_j for left ideals a_j of the maximal order and x_j in D^r.
struct PseudoMatrix {
  std::size_t rows = 0;
  std::vector<RatVec> cols;
  std::vector<ZLattice> ideals;
};
ZLattice pseudo_span(const SkewField& d, const PseudoMatrix& p);

// alpha_j in a_j with sum alpha_j = 1 (requires 1 in a_1 + ... + a_m).
std::vector<RatVec> ext_euclid(const SkewField& d, const std::vector<ZLattice>& ideals);

// Pseudo-Hermite form: columns H_0..H_{r-1} with H_i having 1 in row i and
// zeros below; the span is the direct sum of ideals[i] H_i. Throws RankError
// if the span does not have full rank.
PseudoMatrix pseudo_hnf(const SkewField& d, const PseudoMatrix& p);

// Steinitz form: span = Delta z_1 + ... + Delta z_{r-1} + b w.
struct SteinitzForm {
  std::vector<RatVec> free;
  ZLattice ideal;
  RatVec last;
};
SteinitzForm steinitz(const SkewField& d, const std::vector<ZLattice>& ideals,
                      const std::vector<RatVec>& vecs);
SteinitzForm steinitz(const SkewField& d, const PseudoMatrix& hnf);
// Steinitz form of a full left Delta-lattice in D^rows.
SteinitzForm steinitz(const SkewField& d, const ZLattice& l, std::size_t rows);

// xi in D^x with M xi in N and [N : M xi] coprime to a.
RatVec roiter(const SkewField& d, const ZLattice& m, const ZLattice& n, const Int& a);

// Local bases: x_1..x_d in L with sum O x_j + pL = L, where O acts on the
// ambient space through the given matrices (a Z-basis of the order).
struct LocalBasisResult {
  enum class Status { Found, NotExist, GaveUp };
  Status status = Status::GaveUp;
  std::vector<RatVec> elems;
};
LocalBasisResult local_basis(const ZLattice& l, const std::vector<RatMat>& action, const Int& p,
                             std::size_t d, std::mt19937_64& rng,
                             std::uint64_t exhaustive_limit = 1u << 16,
                             std::size_t random_tries = 512);
// Left action of the maximal order of D on itself.
std::vector<RatMat> left_action(const SkewField& d, const ZLattice& order);

}  // namespace freeness
