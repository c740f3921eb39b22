#pragma once

#include <functional>

#include "freeness/matrix.hpp"

namespace freeness {

// Column Hermite normal form. H = A U with U unimodular; H = (0 | H') where the
// nonzero columns H' come last and are in upper-triangular echelon form:
// the pivot of each column is its lowest nonzero entry, pivots are positive and
// entries to the right of a pivot are reduced into [0, pivot).
struct HnfResult {
  IntMat h;
  IntMat u;
  std::size_t rank = 0;
};
HnfResult hnf_with_transform(const IntMat& a);
// Nonzero columns of the HNF only (no transform), built incrementally.
IntMat hnf_basis(const IntMat& a);
// Basis (columns) of {x in Z^n : A x = 0}.
IntMat integer_kernel(const IntMat& a);

Int xgcd(const Int& a, const Int& b, Int& u, Int& v);
std::vector<Int> prime_factors(Int n);  // distinct primes of |n|, ascending
Int p_part(Int n, const Int& p);
Int coprime_part(Int n, const Int& p);
bool is_prime(const Int& n);
Int crt(const std::vector<Int>& residues, const std::vector<Int>& moduli);

// A Z-lattice in Q^n: span of the columns of hnf / den with hnf in column HNF.
class ZLattice {
 public:
  ZLattice() = default;
  static ZLattice from_generators(const RatMat& gens);  // columns
  static ZLattice from_vectors(const std::vector<RatVec>& v, std::size_t dim);
  static ZLattice standard(std::size_t n);
  static ZLattice zero(std::size_t n);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return h_.cols(); }
  bool is_full() const { return rank() == dim_; }
  const IntMat& hnf() const { return h_; }
  const Int& denominator() const { return den_; }
  RatMat basis() const;
  RatVec basis_vector(std::size_t j) const;

  // Rational coordinates in the HNF basis; nullopt if outside the span.
  std::optional<RatVec> coordinates(const RatVec& x) const;
  bool contains(const RatVec& x) const;
  bool contains(const ZLattice& o) const;
  bool operator==(const ZLattice& o) const {
    return dim_ == o.dim_ && den_ == o.den_ && h_ == o.h_;
  }
  bool operator!=(const ZLattice& o) const { return !(*this == o); }

  ZLattice operator+(const ZLattice& o) const;
  ZLattice scaled(const Rat& s) const;
  ZLattice transformed(const RatMat& t) const;  // { T x : x in L }

 private:
  std::size_t dim_ = 0;
  IntMat h_;
  Int den_ = 1;
  std::vector<std::size_t> piv_;  // pivot row of each column
  void normalize();
};

// [a : b] for full-rank lattices (rational when b is not inside a).
Rat lattice_index(const ZLattice& a, const ZLattice& b);
// Integral coordinate matrix of the basis of b in the basis of a (b inside a).
IntMat relative_basis(const ZLattice& a, const ZLattice& b);
ZLattice dual(const ZLattice& l, const RatMat& gram);
ZLattice intersect(const ZLattice& a, const ZLattice& b, const RatMat& gram);
ZLattice intersect(const ZLattice& a, const ZLattice& b);
// { x in Q^n : T x in Z^K } for T of full column rank.
ZLattice preimage(const RatMat& t);
// Lattice equal to k at p and to m at every other prime.
ZLattice replace_at_prime(const ZLattice& m, const ZLattice& k, const Int& p);

// Fincke-Pohst: all x != 0 with x^T G x <= bound, up to sign (the last nonzero
// coordinate is positive). The visitor returns false to stop early.
void enumerate_short_vectors(const RatMat& gram, const Rat& bound,
                             const std::function<bool(const IntVec&, const Rat&)>& visit);
std::vector<IntVec> short_vectors(const RatMat& gram, const Rat& bound);
// Unimodular U with U^T G U LLL-reduced (delta = 3/4).
IntMat lll_gram(const RatMat& gram);
Rat quadratic_form(const RatMat& gram, const IntVec& x);

}  // namespace freeness
