#include "freeness/quaternion.hpp"

#include <algorithm>

namespace freeness {

namespace {

// (v, u) with x = p^v u, u a p-adic unit written as an integer ratio numerator*denominator
std::pair<long, Int> split_valuation(const Rat& x, const Int& p) {
  Int n = x.get_num(), d = x.get_den();
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return {v, n * d};
}

int legendre(const Int& a, const Int& p) {
  Int r = a % p;
  if (r < 0) r += p;
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

int mod8(const Int& u) {
  Int r = u % 8;
  if (r < 0) r += 8;
  return static_cast<int>(r.get_si());
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const Int& p) {
  if (a == 0 || b == 0) throw InvalidInput("hilbert_symbol: zero argument");
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  auto [al, u] = split_valuation(a, p);
  auto [be, v] = split_valuation(b, p);
  if (p != 2) {
    int s = 1;
    if ((al & 1) && (be & 1) && ((p - 1) / 2) % 2 != 0) s = -s;
    if (be & 1) s *= legendre(u, p);
    if (al & 1) s *= legendre(v, p);
    return s;
  }
  int uu = mod8(u), vv = mod8(v);
  auto eps = [](int x) { return ((x - 1) / 2) & 1; };
  auto omega = [](int x) { return ((x * x - 1) / 8) & 1; };
  int e = eps(uu) * eps(vv) + (al & 1) * omega(vv) + (be & 1) * omega(uu);
  return (e & 1) ? -1 : 1;
}

QuatAlgebra::QuatAlgebra(std::shared_ptr<const NumberField> center, RatVec a, RatVec b)
    : f_(std::move(center)), a_(std::move(a)), b_(std::move(b)) {
  build();
}

QuatAlgebra::QuatAlgebra(const Rat& a, const Rat& b)
    : f_(std::make_shared<NumberField>(NumberField::rationals())), a_{a}, b_{b} {
  build();
}

void QuatAlgebra::build() {
  const NumberField& F = *f_;
  const std::size_t f = F.degree(), N = 4 * f;
  if (a_.size() != f || b_.size() != f) throw InvalidInput("QuatAlgebra: parameter size mismatch");
  if (is_zero(a_) || is_zero(b_)) throw InvalidInput("QuatAlgebra: parameters must be nonzero");
  RatVec one = F.one(), ab = F.mul(a_, b_);
  RatVec mone = scale(one, Rat(-1));
  struct Entry {
    RatVec c;
    int k;
  };
  Entry t[4][4];
  for (int k = 0; k < 4; ++k) {
    t[0][k] = {one, k};
    t[k][0] = {one, k};
  }
  t[1][1] = {a_, 0};
  t[1][2] = {one, 3};
  t[1][3] = {a_, 2};
  t[2][1] = {mone, 3};
  t[2][2] = {b_, 0};
  t[2][3] = {scale(b_, Rat(-1)), 1};
  t[3][1] = {scale(a_, Rat(-1)), 2};
  t[3][2] = {b_, 1};
  t[3][3] = {scale(ab, Rat(-1)), 0};
  std::vector<Rat> c(N * N * N);
  for (int k = 0; k < 4; ++k)
    for (int kk = 0; kk < 4; ++kk)
      for (std::size_t l = 0; l < f; ++l)
        for (std::size_t ll = 0; ll < f; ++ll) {
          RatVec v = F.mul(t[k][kk].c, F.mul(F.algebra().basis_element(l),
                                             F.algebra().basis_element(ll)));
          std::size_t row = k * f + l, col = kk * f + ll;
          for (std::size_t m = 0; m < f; ++m)
            c[(row * N + col) * N + t[k][kk].k * f + m] = v[m];
        }
  RatVec o(N);
  for (std::size_t m = 0; m < f; ++m) o[m] = one[m];
  alg_ = Algebra(N, c, o);
}

RatVec QuatAlgebra::embed_center(const RatVec& x) const {
  RatVec v(dim());
  for (std::size_t m = 0; m < x.size(); ++m) v[m] = x[m];
  return v;
}

RatVec QuatAlgebra::component(const RatVec& x, int k) const {
  const std::size_t f = f_->degree();
  return RatVec(x.begin() + k * f, x.begin() + (k + 1) * f);
}

RatVec QuatAlgebra::from_components(const RatVec& c0, const RatVec& c1, const RatVec& c2,
                                    const RatVec& c3) const {
  RatVec v;
  for (const auto* c : {&c0, &c1, &c2, &c3}) v.insert(v.end(), c->begin(), c->end());
  return v;
}

RatVec QuatAlgebra::i() const {
  RatVec z(f_->degree());
  return from_components(z, f_->one(), z, z);
}

RatVec QuatAlgebra::j() const {
  RatVec z(f_->degree());
  return from_components(z, z, f_->one(), z);
}

RatVec QuatAlgebra::conj(const RatVec& x) const {
  RatVec y = x;
  for (std::size_t m = f_->degree(); m < y.size(); ++m) y[m] = -y[m];
  return y;
}

RatVec QuatAlgebra::reduced_norm(const RatVec& x) const {
  return component(alg_.mul(x, conj(x)), 0);
}

RatVec QuatAlgebra::reduced_trace(const RatVec& x) const {
  return scale(component(x, 0), Rat(2));
}

bool QuatAlgebra::is_totally_definite() const {
  const NumberField& F = *f_;
  if (!F.is_totally_real()) return false;
  for (std::size_t p = 0; p < F.real_places().size(); ++p)
    if (F.sign_at(a_, p) > 0 || F.sign_at(b_, p) > 0) return false;
  return true;
}

std::vector<Int> QuatAlgebra::ramified_primes() const {
  if (f_->degree() != 1) throw Unsupported("ramified_primes: center must be Q");
  Rat a = a_[0], b = b_[0];
  Int m = 2 * a.get_num() * a.get_den() * b.get_num() * b.get_den();
  std::vector<Int> out;
  for (const auto& p : prime_factors(m))
    if (hilbert_symbol(a, b, p) == -1) out.push_back(p);
  return out;
}

bool QuatAlgebra::ramified_at_infinity() const {
  if (f_->degree() != 1) throw Unsupported("ramified_at_infinity: center must be Q");
  return hilbert_symbol(a_[0], b_[0], Int(0)) == -1;
}

RatMat QuatAlgebra::norm_form_gram(const ZLattice& l) const {
  const std::size_t r = l.rank();
  std::vector<RatVec> b, cb;
  for (std::size_t i = 0; i < r; ++i) {
    b.push_back(l.basis_vector(i));
    cb.push_back(conj(b.back()));
  }
  RatMat g(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      g(i, j) = f_->trace(component(alg_.mul(b[i], cb[j]), 0));
      g(j, i) = g(i, j);
    }
  return g;
}

RatMat QuatAlgebra::trace_form_gram(const ZLattice& l) const {
  const std::size_t r = l.rank();
  RatMat g(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      g(i, j) = f_->trace(reduced_trace(alg_.mul(l.basis_vector(i), l.basis_vector(j))));
  return g;
}

ZLattice QuatAlgebra::standard_order() const {
  std::vector<RatVec> gens;
  const ZLattice& of = f_->maximal_order();
  for (std::size_t k = 0; k < of.rank(); ++k) gens.push_back(embed_center(of.basis_vector(k)));
  gens.push_back(i());
  gens.push_back(j());
  return order_generated(alg_, gens);
}

ZLattice QuatAlgebra::maximal_order(const ZLattice& o) const {
  ZLattice m = maximal_order_containing(alg_, o);
  if (f_->degree() == 1) {
    Int d = 1;
    for (const auto& p : ramified_primes()) d *= p;
    Rat disc = abs(determinant(trace_form_gram(m)));
    if (disc != Rat(d * d)) throw Error("maximal_order: discriminant check failed");
  }
  return m;
}

void QuatAlgebra::require_supported(const char* what) const {
  if (!is_totally_definite() || f_->degree() > 2)
    throw Unsupported(std::string(what) +
                      ": only totally definite algebras over fields of degree <= 2 are supported");
}

std::vector<RatVec> QuatAlgebra::norm_one_units(const ZLattice& delta) const {
  require_supported("norm_one_units");
  RatMat g = norm_form_gram(delta);
  RatMat b = delta.basis();
  RatVec one = f_->one();
  std::vector<RatVec> out;
  for (const auto& v : short_vectors(g, Rat(static_cast<long>(f_->degree())))) {
    RatVec x = b * to_rat(v);
    if (reduced_norm(x) == one) {
      out.push_back(x);
      out.push_back(scale(x, Rat(-1)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RatVec> QuatAlgebra::unit_generators(const ZLattice& delta) const {
  require_supported("unit_generators");
  std::vector<RatVec> out = norm_one_units(delta);
  const auto& u = f_->units();
  if (!u.complete) throw Unsupported("unit_generators: unit group of the center is not known");
  out.push_back(embed_center(u.torsion));
  for (const auto& e : u.fundamental) out.push_back(embed_center(e));
  RatMat g = norm_form_gram(delta);
  RatMat b = delta.basis();
  for (const auto& t : f_->totally_positive_unit_generators()) {
    Rat bound = f_->trace(t);
    enumerate_short_vectors(g, bound, [&](const IntVec& v, const Rat&) {
      RatVec x = b * to_rat(v);
      if (reduced_norm(x) == t) {
        out.push_back(x);
        return false;
      }
      return true;
    });
  }
  std::vector<RatVec> dedup;
  for (auto& x : out)
    if (std::find(dedup.begin(), dedup.end(), x) == dedup.end()) dedup.push_back(x);
  return dedup;
}

ZLattice QuatAlgebra::norm_ideal(const ZLattice& l) const {
  std::vector<RatVec> vals;
  for (std::size_t i = 0; i < l.rank(); ++i) {
    RatVec bi = l.basis_vector(i);
    for (std::size_t j = i; j < l.rank(); ++j) {
      // nr(b_i) on the diagonal, trd(b_i conj b_j) off it
      RatVec c = component(alg_.mul(bi, conj(l.basis_vector(j))), 0);
      vals.push_back(j == i ? c : scale(c, Rat(2)));
    }
  }
  const ZLattice& of = f_->maximal_order();
  std::vector<RatVec> gens;
  for (const auto& v : vals) {
    if (is_zero(v)) continue;
    for (std::size_t k = 0; k < of.rank(); ++k) gens.push_back(f_->mul(v, of.basis_vector(k)));
  }
  return ZLattice::from_vectors(gens, f_->degree());
}

PipResult QuatAlgebra::pip(const ZLattice& l) const {
  require_supported("pip");
  const NumberField& F = *f_;
  PipResult res;
  ZLattice n = norm_ideal(l);
  PipResult fr = F.pip(n);
  if (fr.status == PipStatus::NotPrincipal) {
    res.status = PipStatus::NotPrincipal;
    res.note = "reduced norm ideal is not principal";
    return res;
  }
  if (fr.status != PipStatus::Principal) {
    res.note = "reduced norm ideal: " + fr.note;
    return res;
  }
  RatVec nu = fr.generator;
  // make nu totally positive
  const auto& u = F.units();
  std::vector<RatVec> ugens{u.torsion};
  for (const auto& e : u.fundamental) ugens.push_back(e);
  bool positive = F.is_totally_positive(nu);
  for (std::size_t mask = 1; mask < (1u << ugens.size()) && !positive; ++mask) {
    RatVec w = F.one();
    for (std::size_t k = 0; k < ugens.size(); ++k)
      if (mask >> k & 1) w = F.mul(w, ugens[k]);
    RatVec cand = F.mul(nu, w);
    if (F.is_totally_positive(cand)) {
      nu = cand;
      positive = true;
    }
  }
  if (!positive) {
    res.status = PipStatus::NotPrincipal;
    res.note = "reduced norm ideal has no totally positive generator";
    return res;
  }
  // bound: for every class of totally positive units modulo squares, the
  // minimal trace of nu times the class
  std::vector<RatVec> tp = F.totally_positive_unit_generators();
  auto minimize = [&](RatVec x) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (const auto& t : tp) {
        for (int dir = 0; dir < 2; ++dir) {
          RatVec s = dir == 0 ? t : *F.inv(t);
          RatVec y = F.mul(x, s);
          if (F.trace(y) < F.trace(x)) {
            x = y;
            moved = true;
          }
        }
      }
    }
    return x;
  };
  Rat bound = 0;
  for (std::size_t mask = 0; mask < (1u << tp.size()); ++mask) {
    RatVec w = nu;
    for (std::size_t k = 0; k < tp.size(); ++k)
      if (mask >> k & 1) w = F.mul(w, tp[k]);
    bound = std::max(bound, F.trace(minimize(w)));
  }
  Rat target = abs(F.norm(nu));
  RatMat g = norm_form_gram(l);
  RatMat b = l.basis();
  bool found = false;
  enumerate_short_vectors(g, bound, [&](const IntVec& v, const Rat&) {
    RatVec x = b * to_rat(v);
    if (abs(F.norm(reduced_norm(x))) == target) {
      res.generator = x;
      found = true;
      return false;
    }
    return true;
  });
  if (found) {
    res.status = PipStatus::Principal;
    res.note = "generator found by norm form enumeration";
  } else {
    res.status = PipStatus::NotPrincipal;
    res.note = "no element of reduced norm nr(a) within the complete bound";
  }
  return res;
}

}  // namespace freeness
