#pragma once

#include "freeness/numberfield.hpp"

namespace freeness {

// Hilbert symbol (a, b)_p for nonzero rationals; p = 0 means the real place.
int hilbert_symbol(const Rat& a, const Rat& b, const Int& p);

// Quaternion algebra (a, b | F). Coordinates: block k * [F:Q] + l holds the
// power-basis coefficient l of the F-coefficient of 1, i, j, ij (k = 0..3).
class QuatAlgebra {
 public:
  QuatAlgebra(std::shared_ptr<const NumberField> center, RatVec a, RatVec b);
  QuatAlgebra(const Rat& a, const Rat& b);

  const NumberField& center() const { return *f_; }
  std::shared_ptr<const NumberField> center_ptr() const { return f_; }
  const Algebra& algebra() const { return alg_; }
  const RatVec& a() const { return a_; }
  const RatVec& b() const { return b_; }
  std::size_t dim() const { return alg_.dim(); }

  RatVec embed_center(const RatVec& f) const;
  RatVec component(const RatVec& x, int k) const;  // F-coefficient of 1, i, j, ij
  RatVec from_components(const RatVec& c0, const RatVec& c1, const RatVec& c2,
                         const RatVec& c3) const;
  RatVec i() const;
  RatVec j() const;
  RatVec conj(const RatVec& x) const;
  RatVec reduced_norm(const RatVec& x) const;   // in F
  RatVec reduced_trace(const RatVec& x) const;  // in F

  bool is_totally_definite() const;
  // Finite ramified primes (F = Q only).
  std::vector<Int> ramified_primes() const;
  bool ramified_at_infinity() const;  // F = Q only

  // Gram matrix of x -> Tr_{F/Q} nr(x) on the basis of l.
  RatMat norm_form_gram(const ZLattice& l) const;
  // Gram matrix of the reduced trace form trd(x y) composed with Tr_{F/Q}.
  RatMat trace_form_gram(const ZLattice& l) const;

  // Maximal order containing o; for F = Q the reduced discriminant is checked.
  ZLattice maximal_order(const ZLattice& o) const;
  // Order generated by O_F, i and j.
  ZLattice standard_order() const;

  // Totally definite algebras with [F:Q] <= 2.
  std::vector<RatVec> norm_one_units(const ZLattice& delta) const;
  std::vector<RatVec> unit_generators(const ZLattice& delta) const;
  // The O_F-ideal generated by the reduced norms of elements of l.
  ZLattice norm_ideal(const ZLattice& l) const;
  // l = O_l(l) xi for some xi; search by the norm form.
  PipResult pip(const ZLattice& l) const;

 private:
  std::shared_ptr<const NumberField> f_;
  RatVec a_, b_;
  Algebra alg_;
  void build();
  void require_supported(const char* what) const;
};

}  // namespace freeness
