#pragma once

#include <functional>

#include "freeness/pseudo.hpp"

namespace freeness {

// M_n(D) with coordinates ((i*n+j)*t + l); column vectors in D^n use i*t + l.
struct MatrixSpace {
  SkewField D;
  std::size_t n = 1;
  Algebra alg;

  MatrixSpace() = default;
  MatrixSpace(const SkewField& d, std::size_t n);
  std::size_t t() const { return D.dim(); }
  RatVec entry(const RatVec& x, std::size_t i, std::size_t j) const;
  RatVec unit(std::size_t i, std::size_t j, const RatVec& d) const;  // E_ij d
  RatVec diag(const std::vector<RatVec>& d) const;
  RatVec from_columns(const std::vector<RatVec>& cols) const;
  RatVec apply(const RatVec& x, const RatVec& v) const;  // x v, v in D^n
  RatVec inverse(const RatVec& x) const;                 // throws RankError
  // { x : x_ij in blocks[i][j] }
  ZLattice block_lattice(const std::vector<std::vector<ZLattice>>& blocks) const;
  ZLattice conjugate(const ZLattice& l, const RatVec& s) const;  // s L s^-1
};

// Lambda_{a,n}: Delta off the last row and column, a^-1 in the last column,
// a in the last row and O_l(a) in the corner.
struct NiceOrder {
  MatrixSpace space;
  ZLattice a;      // right Delta-ideal
  ZLattice a_inv;  // left Delta-ideal
  ZLattice left_order_a;
  ZLattice lattice;
};
NiceOrder build_nice(const SkewField& d, const ZLattice& a, std::size_t n);

// Lambda = S Lambda_{a,n} S^-1 for a maximal order Lambda of M_n(D).
struct NiceConjugation {
  RatVec S, S_inv;
  ZLattice a;
  std::vector<Int> bad_primes;
};
NiceConjugation conjugate_to_nice(const SkewField& d, const ZLattice& lambda, std::size_t n);
// If a = xi Delta, rewrite the conjugation so that a = Delta. Returns false when
// a is not principal (or the search is inconclusive).
bool normalize_nice(const SkewField& d, std::size_t n, NiceConjugation& c);

// a = xi Delta for a right Delta-ideal a.
PipResult right_principal(const SkewField& d, const ZLattice& a);

// The maximal order S M_n(Delta) S^-1 of a component, together with the action
// of the component on the ambient space of the module.
struct ComponentFrame {
  MatrixSpace space;
  RatVec S, S_inv;
  ZLattice order;  // S M_n(Delta) S^-1
  std::function<RatMat(const RatVec&)> act;  // component element -> matrix on V

  RatMat act_frame(const RatVec& y) const;   // act(S y S^-1)
  static ComponentFrame standard(const SkewField& d, std::size_t n,
                                 std::function<RatMat(const RatVec&)> act);
};

struct FreeTestResult {
  enum class Status { Basis, NotFree, Unknown };
  Status status = Status::Unknown;
  std::vector<RatVec> basis;  // beta_1..beta_d in V
  ZLattice steinitz_ideal;    // b in e_11 X = Delta b_1 + ... + b b_{nd}
  PipResult pip;
  std::string note;
};
std::string to_string(FreeTestResult::Status s);

// Is X (a full lattice in e_i V stable under the frame order) free of rank d?
// NotFree is returned only when cancellation is available or n d = 1.
FreeTestResult max_order_free_test(const ComponentFrame& f, const ZLattice& x, std::size_t d,
                                   bool cancellation);

}  // namespace freeness
