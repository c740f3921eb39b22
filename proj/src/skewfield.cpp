#include "freeness/skewfield.hpp"

namespace freeness {

SkewField SkewField::from_field(std::shared_ptr<const NumberField> f) {
  SkewField s;
  s.kind = Kind::Field;
  s.field = f;
  s.alg = f->algebra();
  s.delta = f->maximal_order();
  return s;
}

SkewField SkewField::from_quaternion(std::shared_ptr<const QuatAlgebra> q, const ZLattice& delta) {
  SkewField s;
  s.kind = Kind::Quaternion;
  s.field = q->center_ptr();
  s.quat = q;
  s.alg = q->algebra();
  if (!is_order(s.alg, delta)) throw InvalidInput("SkewField: lattice is not an order");
  s.delta = delta;
  return s;
}

SkewField SkewField::opposite() const {
  SkewField s = *this;
  s.alg = alg.opposite();
  s.op = !op;
  return s;
}

RatVec SkewField::embed_center(const RatVec& f) const {
  if (kind == Kind::Field) return f;
  return quat->embed_center(f);
}

RatVec SkewField::reduced_norm(const RatVec& x) const {
  if (kind == Kind::Field) return x;
  return quat->reduced_norm(x);
}

std::string SkewField::describe() const {
  std::string s;
  if (kind == Kind::Field) {
    s = field->degree() == 1 ? "Q" : "number field of degree " + std::to_string(field->degree());
  } else {
    s = "quaternion algebra over " +
        (field->degree() == 1 ? std::string("Q")
                              : "a field of degree " + std::to_string(field->degree()));
  }
  if (op) s += " (opposite)";
  return s;
}

bool SkewField::is_left_ideal(const ZLattice& a) const {
  return a.is_full() && a.dim() == dim() && a.contains(product(delta, a));
}

PipResult SkewField::principal(const ZLattice& a) const {
  if (kind == Kind::Field) return field->pip(a);
  return quat->pip(a);
}

PipResult SkewField::isomorphism(const ZLattice& a, const ZLattice& b) const {
  ZLattice c = product(inverse(b), a);
  PipResult r = principal(c);
  if (r.status == PipStatus::Principal) {
    if (right_mul(b, r.generator) != a) throw Error("isomorphism: generator check failed");
  }
  return r;
}

std::vector<RatVec> SkewField::unit_generators() const {
  if (kind == Kind::Quaternion) return quat->unit_generators(delta);
  const auto& u = field->units();
  if (!u.complete) throw Unsupported("unit group of the field is not known");
  std::vector<RatVec> g{u.torsion};
  for (const auto& e : u.fundamental) g.push_back(e);
  return g;
}

}  // namespace freeness
