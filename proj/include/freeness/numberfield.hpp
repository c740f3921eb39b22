#pragma once

#include <memory>

#include "freeness/algebra.hpp"

namespace freeness {

// Dense polynomials over Q, coefficients low degree first.
using Poly = std::vector<Rat>;
Poly poly_trim(Poly p);
int poly_degree(const Poly& p);
Rat poly_eval(const Poly& p, const Rat& x);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_rem(const Poly& a, const Poly& b);
Poly poly_derivative(const Poly& p);
Poly cyclotomic_polynomial(unsigned m);
// Number of distinct real roots in (lo, hi].
int sturm_count(const Poly& p, const Rat& lo, const Rat& hi);

enum class PipStatus { Principal, NotPrincipal, Unknown };
std::string to_string(PipStatus s);

struct PipResult {
  PipStatus status = PipStatus::Unknown;
  RatVec generator;
  std::string note;
};

// Real embedding given by an isolating interval of a root of the defining polynomial.
struct RealPlace {
  Rat lo, hi;
};

// A number field Q(theta) with elements in power-basis coordinates.
class NumberField {
 public:
  NumberField() = default;
  // monic defining polynomial; the maximal order is computed unless supplied
  explicit NumberField(const Poly& min_poly, std::optional<ZLattice> maximal_order = std::nullopt);
  static NumberField rationals();
  static NumberField quadratic(const Int& d);  // Q(sqrt d), d squarefree
  static NumberField cyclotomic(unsigned m);

  std::size_t degree() const { return n_; }
  const Poly& min_poly() const { return f_; }
  const Algebra& algebra() const { return alg_; }
  const ZLattice& maximal_order() const { return o_; }
  RatVec one() const { return alg_.one(); }
  RatVec embed(const Rat& q) const;
  RatVec theta() const;

  RatVec mul(const RatVec& x, const RatVec& y) const { return alg_.mul(x, y); }
  std::optional<RatVec> inv(const RatVec& x) const { return alg_.inverse(x); }
  Rat norm(const RatVec& x) const;
  Rat trace(const RatVec& x) const { return alg_.trace(x); }
  bool is_rational(const RatVec& x) const;
  bool is_integral(const RatVec& x) const { return o_.contains(x); }

  const std::vector<RealPlace>& real_places() const { return places_; }
  bool is_totally_real() const { return places_.size() == n_; }
  int sign_at(const RatVec& x, std::size_t place) const;
  std::vector<int> signs(const RatVec& x) const;
  bool is_totally_positive(const RatVec& x) const;

  // Complex conjugation as a matrix on power-basis coordinates, when the field
  // is totally real or CM with a known conjugation.
  const std::optional<RatMat>& conjugation() const { return conj_; }
  RatMat t2_gram(const ZLattice& l) const;  // Tr(x conj y) on the basis of l

  // For quadratic fields: squarefree d and an element s with s^2 = d.
  std::pair<Int, RatVec> quadratic_sqrt() const;

  // Units: torsion generator, fundamental units and whether the list is complete.
  struct Units {
    RatVec torsion;
    unsigned torsion_order = 2;
    std::vector<RatVec> fundamental;
    bool complete = false;
  };
  const Units& units() const;
  void set_unit_generators(const std::vector<RatVec>& fundamental, bool complete);
  // Generators of the totally positive units (up to finite index when incomplete).
  std::vector<RatVec> totally_positive_unit_generators() const;

  // Ideals are full-rank Z-lattices in power-basis coordinates.
  ZLattice principal_ideal(const RatVec& x) const;
  ZLattice ideal_product(const ZLattice& a, const ZLattice& b) const;
  ZLattice ideal_inverse(const ZLattice& a) const;
  Rat ideal_norm(const ZLattice& a) const;  // [O : a]
  bool is_ideal(const ZLattice& a) const;
  Int integral_scale(const ZLattice& a) const;  // least c > 0 with c a in O
  PipResult pip(const ZLattice& a, std::size_t search_limit = 200000) const;

 private:
  std::size_t n_ = 0;
  Poly f_;
  Algebra alg_;
  ZLattice o_;
  std::vector<RealPlace> places_;
  std::optional<RatMat> conj_;
  mutable std::shared_ptr<Units> units_;
  void init_places();
  void init_conjugation();
  Units compute_units() const;
};

}  // namespace freeness
