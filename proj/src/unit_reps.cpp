#include "freeness/unit_reps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace freeness {

namespace {

using i128 = __int128;

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t to_i64(const Int& x) {
  if (!x.fits_slong_p()) throw Unsupported("residue ring: modulus too large");
  return x.get_si();
}

}  // namespace

// ---------------------------------------------------------------- ResidueRing

ResidueRing::ResidueRing(const SkewField& d, const ZLattice& g) : d_(d) {
  const std::size_t t = d.dim();
  r_ = d.delta.rank();
  std::vector<RatVec> gens;
  for (std::size_t k = 0; k < g.rank(); ++k) {
    RatVec c = d.embed_center(g.basis_vector(k));
    for (std::size_t l = 0; l < r_; ++l) gens.push_back(d.mul(c, d.delta.basis_vector(l)));
  }
  gdelta_ = ZLattice::from_vectors(gens, t);
  if (!gdelta_.is_full() || !d.delta.contains(gdelta_))
    throw InvalidInput("residue ring: g Delta is not a full sublattice of Delta");
  IntMat h = hnf_basis(relative_basis(d.delta, gdelta_));
  if (h.rows() != r_ || h.cols() != r_) throw Error("residue ring: bad relative HNF");
  h_.assign(r_, std::vector<std::int64_t>(r_, 0));
  box_.resize(r_);
  for (std::size_t j = 0; j < r_; ++j) {
    for (std::size_t i = 0; i < r_; ++i) {
      if (i > j && h(i, j) != 0) throw Error("residue ring: relative HNF not triangular");
      h_[j][i] = to_i64(h(i, j));
    }
    box_[j] = h_[j][j];
    if (box_[j] <= 0 || box_[j] >= (std::int64_t(1) << 31))
      throw Unsupported("residue ring: modulus out of range");
  }
  mult_.resize(r_ * r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < r_; ++j)
      mult_[i * r_ + j] =
          from_delta(d.mul(d.delta.basis_vector(i), d.delta.basis_vector(j)));
  one_ = from_delta(d.one());
}

Int ResidueRing::size() const {
  Int s = 1;
  for (auto b : box_) s *= Int(static_cast<long>(b));
  return s;
}

ResidueRing::Elem ResidueRing::reduce(Elem v) const {
  std::vector<i128> w(v.begin(), v.end());
  for (std::size_t j = r_; j-- > 0;) {
    i128 q = floor_div(w[j], h_[j][j]);
    if (q == 0) continue;
    for (std::size_t i = 0; i <= j; ++i) w[i] -= q * h_[j][i];
  }
  for (std::size_t i = 0; i < r_; ++i) v[i] = static_cast<std::int64_t>(w[i]);
  return v;
}

ResidueRing::Elem ResidueRing::from_delta(const RatVec& x) const {
  auto c = d_.delta.coordinates(x);
  if (!c || !is_integral(*c)) throw InvalidInput("residue ring: element not in Delta");
  IntVec z(r_);
  for (std::size_t i = 0; i < r_; ++i) z[i] = (*c)[i].get_num();
  for (std::size_t j = r_; j-- > 0;) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), z[j].get_mpz_t(), Int(static_cast<long>(h_[j][j])).get_mpz_t());
    if (q == 0) continue;
    for (std::size_t i = 0; i <= j; ++i) z[i] -= q * Int(static_cast<long>(h_[j][i]));
  }
  Elem e(r_);
  for (std::size_t i = 0; i < r_; ++i) e[i] = z[i].get_si();
  return e;
}

RatVec ResidueRing::lift(const Elem& e) const {
  RatVec c(r_);
  for (std::size_t i = 0; i < r_; ++i) c[i] = Rat(static_cast<long>(e[i]));
  return d_.delta.basis() * c;
}

ResidueRing::Elem ResidueRing::mul(const Elem& a, const Elem& b) const {
  std::vector<i128> acc(r_, 0);
  for (std::size_t i = 0; i < r_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < r_; ++j) {
      if (b[j] == 0) continue;
      i128 s = static_cast<i128>(a[i]) * b[j];
      const auto& m = mult_[i * r_ + j];
      for (std::size_t l = 0; l < r_; ++l)
        if (m[l] != 0) acc[l] += s * m[l];
    }
  }
  for (std::size_t j = r_; j-- > 0;) {
    i128 q = floor_div(acc[j], h_[j][j]);
    if (q == 0) continue;
    for (std::size_t i = 0; i <= j; ++i) acc[i] -= q * h_[j][i];
  }
  Elem out(r_);
  for (std::size_t i = 0; i < r_; ++i) out[i] = static_cast<std::int64_t>(acc[i]);
  return out;
}

ResidueRing::Elem ResidueRing::add(const Elem& a, const Elem& b) const {
  Elem c(r_);
  for (std::size_t i = 0; i < r_; ++i) c[i] = a[i] + b[i];
  return reduce(c);
}

ResidueRing::Elem ResidueRing::sub(const Elem& a, const Elem& b) const {
  Elem c(r_);
  for (std::size_t i = 0; i < r_; ++i) c[i] = a[i] - b[i];
  return reduce(c);
}

std::vector<ResidueRing::Elem> ResidueRing::spanning_set() const {
  std::vector<Elem> out;
  for (std::size_t j = 0; j < r_; ++j) {
    Elem e(r_, 0);
    e[j] = 1;
    e = reduce(e);
    if (e == zero() || std::find(out.begin(), out.end(), e) != out.end()) continue;
    out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------- matrices

ResMat res_identity(const ResidueRing& r, std::size_t k) {
  ResMat m(k * k, r.zero());
  for (std::size_t i = 0; i < k; ++i) m[i * k + i] = r.one();
  return m;
}

ResMat res_mul(const ResidueRing& r, std::size_t k, const ResMat& a, const ResMat& b) {
  ResMat m(k * k, r.zero());
  const auto z = r.zero();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      ResidueRing::Elem s = z;
      for (std::size_t l = 0; l < k; ++l) {
        if (a[i * k + l] == z || b[l * k + j] == z) continue;
        s = r.add(s, r.mul(a[i * k + l], b[l * k + j]));
      }
      m[i * k + j] = s;
    }
  return m;
}

ResMat res_reduce(const ResidueRing& r, std::size_t k, const RatVec& x) {
  const std::size_t t = r.skew().dim();
  ResMat m(k * k);
  for (std::size_t e = 0; e < k * k; ++e)
    m[e] = r.from_delta(RatVec(x.begin() + e * t, x.begin() + (e + 1) * t));
  return m;
}

MatrixCoder::MatrixCoder(const ResidueRing& r, std::size_t k) : k_(k), r_(r.rank()), box_(r.box()) {
  double bits = 0;
  for (auto b : box_) bits += std::log2(static_cast<double>(b));
  if (bits * static_cast<double>(k * k) > 126.0)
    throw Unsupported("residue matrices do not fit the 128-bit encoding");
}

Code MatrixCoder::encode(const ResMat& m) const {
  Code c = 0;
  for (std::size_t e = 0; e < k_ * k_; ++e)
    for (std::size_t l = 0; l < r_; ++l) c = c * static_cast<Code>(box_[l]) + static_cast<Code>(m[e][l]);
  return c;
}

ResMat MatrixCoder::decode(Code c) const {
  ResMat m(k_ * k_, ResidueRing::Elem(r_));
  for (std::size_t e = k_ * k_; e-- > 0;)
    for (std::size_t l = r_; l-- > 0;) {
      Code b = static_cast<Code>(box_[l]);
      m[e][l] = static_cast<std::int64_t>(c % b);
      c /= b;
    }
  return m;
}

GroupClosure close_group(const ResidueRing& r, std::size_t k, const std::vector<ResMat>& gens,
                         std::size_t cap) {
  MatrixCoder coder(r, k);
  GroupClosure g;
  Code id = coder.encode(res_identity(r, k));
  g.codes.push_back(id);
  g.parent.push_back(0);
  g.gen.push_back(std::numeric_limits<std::uint32_t>::max());
  g.index.emplace(id, 0);
  const std::size_t limit = std::min<std::size_t>(cap, std::numeric_limits<std::uint32_t>::max());
  for (std::size_t head = 0; head < g.codes.size(); ++head) {
    ResMat a = coder.decode(g.codes[head]);
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Code c = coder.encode(res_mul(r, k, a, gens[s]));
      if (g.index.count(c)) continue;
      if (g.codes.size() >= limit) {
        g.complete = false;
        return g;
      }
      g.index.emplace(c, static_cast<std::uint32_t>(g.codes.size()));
      g.codes.push_back(c);
      g.parent.push_back(static_cast<std::uint32_t>(head));
      g.gen.push_back(static_cast<std::uint32_t>(s));
    }
  }
  return g;
}

// ---------------------------------------------------------------- norms

RatVec reduced_norm_2x2(const MatrixSpace& ms, const RatVec& x) {
  if (ms.n != 2) throw InvalidInput("reduced_norm_2x2: not a 2x2 matrix");
  const SkewField& D = ms.D;
  RatVec a = ms.entry(x, 0, 0), b = ms.entry(x, 0, 1), c = ms.entry(x, 1, 0), d = ms.entry(x, 1, 1);
  const NumberField& F = *D.field;
  if (!is_zero(a)) {
    RatVec ai = *D.inv(a);
    RatVec s = d - D.mul(D.mul(c, ai), b);
    return F.mul(D.reduced_norm(a), D.reduced_norm(s));
  }
  RatVec v = F.mul(D.reduced_norm(c), D.reduced_norm(b));
  // the block swap has reduced norm (-1)^m with m the degree of D
  if (D.kind == SkewField::Kind::Field) v = scale(v, Rat(-1));
  return v;
}

// ---------------------------------------------------------------- SK1

namespace {

struct Fp2 {
  // O_W / p O_W for p inert in W, elements as coordinates in the basis of O_W
  const NumberField* w;
  RatMat basis, basis_inv;
  Int p;

  IntVec coords(const RatVec& x) const {
    RatVec c = basis_inv * x;
    if (!is_integral(c)) throw Error("sk1: element not in O_W");
    IntVec z = to_int(c);
    for (auto& v : z) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return z;
  }
  RatVec elem(const IntVec& c) const { return basis * to_rat(c); }
  IntVec mul(const IntVec& a, const IntVec& b) const { return coords(w->mul(elem(a), elem(b))); }
  IntVec pow(IntVec a, Int e) const {
    IntVec r = coords(w->one());
    while (e > 0) {
      if (e % 2 == 1) r = mul(r, a);
      a = mul(a, a);
      e /= 2;
    }
    return r;
  }
};

bool quad_irreducible_mod(const Int& t, const Int& n, const Int& p) {
  if (p == 2) return t % 2 != 0 && n % 2 != 0;
  Int disc = t * t - 4 * n;
  Int m = disc % p;
  if (m < 0) m += p;
  if (m == 0) return false;
  return mpz_legendre(m.get_mpz_t(), p.get_mpz_t()) == -1;
}

SK1Generator sk1_at(const SkewField& d, const MatrixSpace& ms, const Int& p) {
  const QuatAlgebra& Q = *d.quat;
  const Algebra& A = d.alg;
  SK1Generator out;
  out.p = p;
  out.group_order = p + 1;

  // W = Q(w) with x^2 - t x + n irreducible mod p and O_W inside Delta
  RatMat gram = Q.norm_form_gram(d.delta);
  RatMat db = d.delta.basis();
  std::shared_ptr<NumberField> wf;
  Int tw, nw;
  for (Rat bound = 2; !wf && bound <= 4096; bound *= 2) {
    std::vector<IntVec> cand = short_vectors(gram, bound);
    std::stable_sort(cand.begin(), cand.end(), [&](const IntVec& x, const IntVec& y) {
      return quadratic_form(gram, x) < quadratic_form(gram, y);
    });
    for (const auto& v : cand) {
      RatVec x = db * to_rat(v);
      if (is_zero(Q.component(x, 1)) && is_zero(Q.component(x, 2)) && is_zero(Q.component(x, 3)))
        continue;
      Rat tr = Q.reduced_trace(x)[0], nr = Q.reduced_norm(x)[0];
      if (tr.get_den() != 1 || nr.get_den() != 1) continue;
      if (!quad_irreducible_mod(tr.get_num(), nr.get_num(), p)) continue;
      auto f = std::make_shared<NumberField>(Poly{Rat(nr), Rat(-tr), Rat(1)});
      bool inside = true;
      for (std::size_t k = 0; k < 2 && inside; ++k) {
        RatVec c = f->maximal_order().basis_vector(k);
        inside = d.delta.contains(scale(d.one(), c[0]) + scale(x, c[1]));
      }
      if (!inside) continue;
      wf = f;
      out.w = x;
      tw = tr.get_num();
      nw = nr.get_num();
      break;
    }
  }
  if (!wf) throw Error("sk1: no inert quadratic subfield found");
  const NumberField& W = *wf;
  auto to_d = [&](const RatVec& c) -> RatVec { return scale(d.one(), c[0]) + scale(out.w, c[1]); };
  auto sigma = [&](const RatVec& c) -> RatVec { return RatVec{c[0] + c[1] * Rat(tw), -c[1]}; };
  RatMat wm = RatMat::from_cols({d.one(), out.w}, d.dim());
  auto from_d = [&](const RatVec& x) -> RatVec {
    auto c = solve(wm, x);
    if (!c) throw Error("sk1: element outside W");
    return *c;
  };

  // alpha with w^sigma alpha = alpha w
  RatMat lin = A.right_matrix(out.w) - A.left_matrix(Q.conj(out.w));
  RatMat ker = kernel(lin);
  if (ker.cols() == 0) throw Error("sk1: no Skolem-Noether element");
  {
    RatVec c = *d.delta.coordinates(ker.col(0));
    Int den = denominator_lcm(c);
    IntVec z = to_int(scale(c, Rat(den)));
    Int g = 0;
    for (const auto& v : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.alpha = db * scale(to_rat(z), Rat(Rat(1) / Rat(g)));
  }
  if (A.mul(Q.conj(out.w), out.alpha) != A.mul(out.alpha, out.w))
    throw Error("sk1: Skolem-Noether check failed");

  // rho: a shortest nonzero element of alpha Delta inside W
  ZLattice ad = left_mul(A, out.alpha, d.delta);
  RatMat annih = kernel(wm.transpose()).transpose();
  RatMat cond = annih * ad.basis();
  IntMat ci = to_int(scale(cond, Rat(denominator_lcm(cond))));
  IntMat kz = integer_kernel(ci);
  std::vector<RatVec> sub;
  for (std::size_t j = 0; j < kz.cols(); ++j) sub.push_back(ad.basis() * to_rat(kz.col(j)));
  ZLattice aw = ZLattice::from_vectors(sub, d.dim());
  if (aw.rank() != 2) throw Error("sk1: alpha Delta meets W in the wrong rank");
  RatMat g2 = Q.norm_form_gram(aw);
  Rat bound = std::min(g2(0, 0), g2(1, 1));
  IntVec best;
  Rat bestv = -1;
  for (const auto& v : short_vectors(g2, bound)) {
    Rat q = quadratic_form(g2, v);
    if (bestv < 0 || q < bestv) {
      bestv = q;
      best = v;
    }
  }
  RatVec rho = from_d(aw.basis() * to_rat(best));

  // xi: generator of (O_W / p)^x
  Fp2 fp{&W, W.maximal_order().basis(), inverse(W.maximal_order().basis()), p};
  Int ord = p * p - 1;
  auto lprimes = prime_factors(ord);
  IntVec one = fp.coords(W.one());
  IntVec xi;
  for (Int idx = 1; idx < p * p && xi.empty(); ++idx) {
    IntVec c{idx % p, idx / p};
    bool prim = true;
    for (const auto& l : lprimes)
      if (fp.pow(c, ord / l) == one) {
        prim = false;
        break;
      }
    if (prim) xi = c;
  }
  if (xi.empty()) throw Error("sk1: no primitive root");
  RatVec xiw = fp.elem(xi);

  // eta = xi^sigma mod p, eta = 1 modulo the other primes dividing rho
  Int nrho = Rat(abs(W.norm(rho))).get_num();
  Int rad = 1;
  for (const auto& q : prime_factors(nrho))
    if (q != p) rad *= q;
  IntVec cs = fp.coords(sigma(xiw));
  RatMat ob = W.maximal_order().basis();
  IntVec c1 = to_int(fp.basis_inv * W.one());
  IntVec ce(2);
  for (std::size_t k = 0; k < 2; ++k)
    ce[k] = rad == 1 ? cs[k] : crt({cs[k], c1[k]}, {p, rad});
  RatVec eta = ob * to_rat(ce);
  RatVec omega = sigma(eta);

  auto wsk = SkewField::from_field(wf);
  auto bz = ext_euclid(wsk, {W.principal_ideal(eta), W.principal_ideal(rho)});
  RatVec beta = W.mul(bz[0], *W.inv(eta));
  RatVec eta2 = scale(W.mul(bz[1], *W.inv(rho)), Rat(-1));
  if (!W.is_integral(beta) || !W.is_integral(eta2)) throw Error("sk1: Bezout coefficients not integral");
  if (W.mul(beta, eta) - W.mul(eta2, rho) != W.one()) throw Error("sk1: Bezout check failed");

  out.rho = to_d(rho);
  out.xi = to_d(xiw);
  out.eta = to_d(eta);
  out.omega = to_d(omega);
  out.beta = to_d(beta);
  out.eta2 = to_d(eta2);
  RatVec ainv = *d.inv(out.alpha);
  out.S = ms.unit(0, 0, out.omega) + ms.unit(0, 1, d.mul(ainv, out.rho)) +
          ms.unit(1, 0, d.mul(out.eta2, out.alpha)) + ms.unit(1, 1, out.beta);
  out.T = ms.unit(0, 0, out.eta) + ms.unit(0, 1, out.rho) + ms.unit(1, 0, out.eta2) +
          ms.unit(1, 1, out.beta);
  out.g = ms.alg.mul(ms.inverse(out.S), out.T);

  RatVec da = ms.diag({out.alpha, d.one()});
  if (ms.alg.mul(out.T, da) != ms.alg.mul(da, out.S)) throw Error("sk1: square does not commute");
  RatVec ginv = ms.alg.mul(ms.inverse(out.T), out.S);
  for (const RatVec* m : {&out.S, &out.T, &out.g, &ginv})
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        if (!d.delta.contains(ms.entry(*m, i, j))) throw Error("sk1: matrix not over Delta");
  if (reduced_norm_2x2(ms, out.g) != d.field->one()) throw Error("sk1: reduced norm is not 1");
  return out;
}

}  // namespace

SK1Data sk1_generators(const SkewField& d) {
  SK1Data out;
  if (d.kind != SkewField::Kind::Quaternion) return out;
  const NumberField& F = *d.field;
  if (F.degree() != 1) {
    Rat disc = abs(determinant(d.quat->trace_form_gram(d.delta)));
    Rat df = abs(discriminant(F.algebra(), F.maximal_order()));
    Rat r = disc / (df * df * df * df);
    if (r != 1) throw Unsupported("SK1 generators over a ramified algebra with center != Q");
    return out;
  }
  MatrixSpace ms(d, 2);
  for (const auto& p : d.quat->ramified_primes()) out.gens.push_back(sk1_at(d, ms, p));
  return out;
}

// ---------------------------------------------------------------- generators

std::vector<UnitGenerator> elementary_generators(const ResidueRing& r, std::size_t k) {
  const SkewField& D = r.skew();
  MatrixSpace ms(D, k);
  std::vector<UnitGenerator> out;
  for (const auto& b : r.spanning_set()) {
    RatVec bl = r.lift(b);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        UnitGenerator g;
        g.lift = ms.alg.one() + ms.unit(i, j, bl);
        g.lift_inv = ms.alg.one() - ms.unit(i, j, bl);
        g.kind = "elementary";
        out.push_back(std::move(g));
      }
  }
  return out;
}

namespace {

// Units of Delta whose reduced norms generate nr(Delta^x); flags incompleteness.
std::vector<RatVec> norm_generators(const SkewField& d, bool& complete, std::string& note) {
  std::vector<RatVec> out;
  if (d.kind == SkewField::Kind::Field) {
    const auto& u = d.field->units();
    out.push_back(u.torsion);
    for (const auto& e : u.fundamental) out.push_back(e);
    if (!u.complete) {
      complete = false;
      note = "unit group of the field is only known up to finite index";
    }
    return out;
  }
  for (const auto& x : d.unit_generators())
    if (d.reduced_norm(x) != d.field->one()) out.push_back(x);
  return out;
}

std::vector<RatVec> all_unit_generators(const SkewField& d, bool& complete, std::string& note) {
  if (d.kind == SkewField::Kind::Quaternion) return d.unit_generators();
  return norm_generators(d, complete, note);
}

RatVec embed_block(const MatrixSpace& big, const MatrixSpace& small, const RatVec& x) {
  RatVec y = big.alg.one();
  for (std::size_t i = 0; i < small.n; ++i)
    for (std::size_t j = 0; j < small.n; ++j) {
      RatVec e = small.entry(x, i, j);
      for (std::size_t l = 0; l < big.t(); ++l) y[(i * big.n + j) * big.t() + l] = e[l];
    }
  return y;
}

}  // namespace

RatVec RepSet::lift(std::size_t i) const {
  std::vector<std::uint32_t> word;
  while (i != 0) {
    word.push_back(closure.gen[i]);
    i = closure.parent[i];
  }
  RatVec x = space.alg.one();
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = space.alg.mul(x, gens[*it].lift);
  return x;
}

RatVec RepSet::lift_inverse(std::size_t i) const {
  RatVec x = space.alg.one();
  while (i != 0) {
    x = space.alg.mul(x, gens[closure.gen[i]].lift_inv);
    i = closure.parent[i];
  }
  return x;
}

RepSet unit_representatives(const SkewField& d, const ZLattice& g, std::size_t k,
                            const RepSetOptions& opt) {
  if (k == 0) throw InvalidInput("unit_representatives: k must be positive");
  RepSet rs;
  rs.ring = ResidueRing(d, g);
  rs.k = k;
  rs.space = MatrixSpace(d, k);
  rs.coder = MatrixCoder(rs.ring, k);
  if (k == 1) {
    for (const auto& u : all_unit_generators(d, rs.complete, rs.note))
      rs.gens.push_back({u, *d.inv(u), "unit"});
  } else {
    rs.gens = elementary_generators(rs.ring, k);
    for (const auto& v : norm_generators(d, rs.complete, rs.note)) {
      std::vector<RatVec> dg(k, d.one()), di(k, d.one());
      dg[0] = v;
      di[0] = *d.inv(v);
      rs.gens.push_back({rs.space.diag(dg), rs.space.diag(di), "nr"});
    }
    MatrixSpace two(d, 2);
    for (const auto& s : sk1_generators(d).gens) {
      RatVec gi = two.inverse(s.g);
      rs.gens.push_back({embed_block(rs.space, two, s.g), embed_block(rs.space, two, gi), "sk1"});
    }
  }
  std::vector<ResMat> res;
  for (const auto& u : rs.gens) res.push_back(res_reduce(rs.ring, k, u.lift));
  rs.closure = close_group(rs.ring, k, res, opt.cap);
  if (!rs.closure.complete) {
    rs.complete = false;
    if (!rs.note.empty()) rs.note += "; ";
    rs.note += "closure truncated at " + std::to_string(opt.cap) + " elements";
  }
  return rs;
}

std::vector<ResidueRing::Elem> unit_image_via_k1(const SkewField& d, const ZLattice& g,
                                                 std::size_t cap) {
  ResidueRing ring(d, g);
  MatrixSpace two(d, 2);
  std::vector<ResMat> gens;
  for (const auto& e : elementary_generators(ring, 2)) gens.push_back(res_reduce(ring, 2, e.lift));
  for (const auto& s : sk1_generators(d).gens) gens.push_back(res_reduce(ring, 2, s.g));
  GroupClosure sl = close_group(ring, 2, gens, cap);
  if (!sl.complete) throw Unsupported("unit_image_via_k1: closure truncated");
  MatrixCoder coder(ring, 2);
  std::vector<ResMat> small;
  for (const auto& c : sl.codes) {
    ResMat m = coder.decode(c);
    if (m[1] == ring.zero() && m[2] == ring.zero() && m[3] == ring.one()) small.push_back({m[0]});
  }
  bool complete = true;
  std::string note;
  for (const auto& v : norm_generators(d, complete, note)) small.push_back({ring.from_delta(v)});
  if (!complete) throw Unsupported("unit_image_via_k1: " + note);
  GroupClosure u = close_group(ring, 1, small, cap);
  if (!u.complete) throw Unsupported("unit_image_via_k1: closure truncated");
  MatrixCoder c1(ring, 1);
  std::vector<ResidueRing::Elem> out;
  for (const auto& c : u.codes) out.push_back(c1.decode(c)[0]);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- reduction

ReductionData reduction_step(const NiceOrder& lam, const ZLattice& g) {
  const SkewField& d = lam.space.D;
  const MatrixSpace& ms = lam.space;
  const std::size_t n = ms.n;
  SkewField dop = d.opposite();
  Int gn = d.field->ideal_norm(g).get_num();
  // xi' a inside Delta with index coprime to g
  RatVec xp = roiter(dop, lam.a, d.delta, gn);
  ReductionData r;
  r.xi = *d.inv(xp);
  r.b_ideal = left_mul(d.alg, xp, lam.a);
  ResidueRing ring(d, g);
  auto bz = ext_euclid(dop, {r.b_ideal, ring.modulus()});
  r.b = bz[0];
  r.y = bz[1];
  std::vector<RatVec> p1(n, d.one()), p2(n, d.one());
  p1[n - 1] = xp;
  p2[n - 1] = d.mul(r.xi, r.b);
  r.phi1 = ms.diag(p1);
  r.phi2 = ms.diag(p2);
  return r;
}

RatVec reduction_f1(const ReductionData& r, const MatrixSpace& ms, const RatVec& a) {
  return ms.alg.mul(ms.alg.mul(r.phi2, a), r.phi1);
}

RatVec reduction_f2(const ReductionData& r, const MatrixSpace& ms, const RatVec& b) {
  return ms.alg.mul(ms.alg.mul(r.phi1, b), r.phi2);
}

}  // namespace freeness
