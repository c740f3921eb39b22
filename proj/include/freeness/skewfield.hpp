#pragma once

#include "freeness/quaternion.hpp"

namespace freeness {

// A division algebra D (a number field or a quaternion algebra) together with a
// maximal order. The opposite algebra shares coordinates with D.
struct SkewField {
  enum class Kind { Field, Quaternion };
  Kind kind = Kind::Field;
  std::shared_ptr<const NumberField> field;  // the center
  std::shared_ptr<const QuatAlgebra> quat;
  Algebra alg;
  ZLattice delta;
  bool op = false;

  static SkewField from_field(std::shared_ptr<const NumberField> f);
  static SkewField from_quaternion(std::shared_ptr<const QuatAlgebra> q, const ZLattice& delta);
  SkewField opposite() const;

  std::size_t dim() const { return alg.dim(); }
  RatVec one() const { return alg.one(); }
  RatVec zero() const { return alg.zero(); }
  RatVec mul(const RatVec& x, const RatVec& y) const { return alg.mul(x, y); }
  std::optional<RatVec> inv(const RatVec& x) const { return alg.inverse(x); }
  RatVec embed_center(const RatVec& f) const;
  RatVec reduced_norm(const RatVec& x) const;  // element of the center
  std::string describe() const;

  // Lattices in D.
  ZLattice product(const ZLattice& a, const ZLattice& b) const {
    return lattice_product(alg, a, b);
  }
  ZLattice inverse(const ZLattice& a) const { return lattice_inverse(alg, a); }
  ZLattice right_mul(const ZLattice& a, const RatVec& x) const {
    return freeness::right_mul(alg, a, x);
  }
  bool is_left_ideal(const ZLattice& a) const;

  // a = O_l(a) xi
  PipResult principal(const ZLattice& a) const;
  // a = b xi for left ideals a, b with the same left order
  PipResult isomorphism(const ZLattice& a, const ZLattice& b) const;
  std::vector<RatVec> unit_generators() const;
};

}  // namespace freeness
