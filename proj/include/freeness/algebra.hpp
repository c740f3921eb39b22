#pragma once

#include "freeness/lattice.hpp"

namespace freeness {

// Finite-dimensional associative Q-algebra given by structure constants
// e_i e_j = sum_k c_ijk e_k.
class Algebra {
 public:
  Algebra() = default;
  Algebra(std::size_t dim, const std::vector<Rat>& structure, RatVec one);
  // Full matrix algebra M_n(B) over an algebra B; coordinates ((i*n+j)*dim B + l).
  static Algebra matrix_algebra(const Algebra& base, std::size_t n);
  static Algebra rationals();

  std::size_t dim() const { return n_; }
  const RatVec& one() const { return one_; }
  RatVec basis_element(std::size_t i) const;
  RatVec zero() const { return RatVec(n_); }
  const Rat& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * n_ + j) * n_ + k];
  }

  RatVec mul(const RatVec& x, const RatVec& y) const;
  RatMat left_matrix(const RatVec& x) const;   // y -> x y
  RatMat right_matrix(const RatVec& x) const;  // y -> y x
  Rat trace(const RatVec& x) const;            // regular trace
  std::optional<RatVec> inverse(const RatVec& x) const;
  RatVec power(const RatVec& x, unsigned long e) const;
  Algebra opposite() const;
  RatMat trace_gram() const;  // Tr(e_i e_j)
  bool is_commutative() const;

 private:
  std::size_t n_ = 0;
  std::vector<Rat> c_;
  RatVec one_;
  struct Term {
    std::size_t k;
    Rat c;
  };
  std::vector<std::vector<Term>> sparse_;  // index i*n+j
  void build_sparse();
};

// Lattice operations inside an algebra.
ZLattice lattice_product(const Algebra& a, const ZLattice& l, const ZLattice& m);
ZLattice left_mul(const Algebra& a, const RatVec& x, const ZLattice& l);   // x L
ZLattice right_mul(const Algebra& a, const ZLattice& l, const RatVec& x);  // L x
ZLattice left_order(const Algebra& a, const ZLattice& l);
ZLattice right_order(const Algebra& a, const ZLattice& l);
// { x : L x L in L }
ZLattice lattice_inverse(const Algebra& a, const ZLattice& l);
// { x : x M in N } and { x : M x in N }
ZLattice left_colon(const Algebra& a, const ZLattice& m, const ZLattice& n);
ZLattice right_colon(const Algebra& a, const ZLattice& m, const ZLattice& n);
bool is_order(const Algebra& a, const ZLattice& l);
// Smallest order containing the given vectors (and 1).
ZLattice order_generated(const Algebra& a, const std::vector<RatVec>& gens);
// Discriminant with respect to the regular trace form.
Rat discriminant(const Algebra& a, const ZLattice& l);
// A maximal order containing the order o (semisimple a).
ZLattice maximal_order_containing(const Algebra& a, const ZLattice& o);
bool is_maximal_order(const Algebra& a, const ZLattice& o);

// Enumerates representatives x of the finite group L / M (M inside L).
void enumerate_quotient(const ZLattice& l, const ZLattice& m,
                        const std::function<bool(const RatVec&)>& visit);

}  // namespace freeness
