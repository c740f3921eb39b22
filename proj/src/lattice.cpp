#include "freeness/lattice.hpp"

#include <algorithm>

namespace freeness {

Int xgcd(const Int& a, const Int& b, Int& u, Int& v) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g < 0) {
    g = -g;
    u = -u;
    v = -v;
  }
  return g;
}

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// col_k <- u col_k + v col_j ; col_j <- x col_j - y col_k(old)
void combine(IntMat& a, std::size_t k, std::size_t j, const Int& u, const Int& v, const Int& x,
             const Int& y) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Int ak = a(r, k), aj = a(r, j);
    if (ak == 0 && aj == 0) continue;
    a(r, k) = u * ak + v * aj;
    a(r, j) = x * aj - y * ak;
  }
}

void add_multiple(IntMat& a, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (a(r, src) != 0) a(r, dst) -= q * a(r, src);
}

void negate_col(IntMat& a, std::size_t k) {
  for (std::size_t r = 0; r < a.rows(); ++r) a(r, k) = -a(r, k);
}

// Returns the index of the first nonzero column.
std::size_t hnf_inplace(IntMat& a, IntMat* u) {
  const std::size_t m = a.rows(), n = a.cols();
  long k = static_cast<long>(n) - 1;
  for (long i = static_cast<long>(m) - 1; i >= 0 && k >= 0; --i) {
    for (long j = k - 1; j >= 0; --j) {
      if (a(i, j) == 0) continue;
      Int s, t;
      Int d = xgcd(a(i, k), a(i, j), s, t);
      Int x = a(i, k) / d, y = a(i, j) / d;
      combine(a, k, j, s, t, x, y);
      if (u) combine(*u, k, j, s, t, x, y);
    }
    if (a(i, k) < 0) {
      negate_col(a, k);
      if (u) negate_col(*u, k);
    }
    if (a(i, k) == 0) continue;
    for (std::size_t j = k + 1; j < n; ++j) {
      Int q = floor_div(a(i, j), a(i, k));
      if (q == 0) continue;
      add_multiple(a, j, k, q);
      if (u) add_multiple(*u, j, k, q);
    }
    --k;
  }
  return static_cast<std::size_t>(k + 1);
}

}  // namespace

HnfResult hnf_with_transform(const IntMat& a) {
  HnfResult r;
  r.h = a;
  r.u = IntMat::identity(a.cols());
  std::size_t first = hnf_inplace(r.h, &r.u);
  r.rank = a.cols() - first;
  return r;
}

IntMat hnf_basis(const IntMat& a) {
  IntMat h(a.rows(), 0);
  std::vector<std::size_t> piv;
  auto in_span = [&](IntVec x) {
    for (long j = static_cast<long>(h.cols()) - 1; j >= 0; --j) {
      const Int& pv = h(piv[j], j);
      if (x[piv[j]] == 0) continue;
      Int q, rem;
      mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), x[piv[j]].get_mpz_t(), pv.get_mpz_t());
      if (rem != 0) return false;
      for (std::size_t r = 0; r <= piv[j]; ++r) x[r] -= q * h(r, j);
    }
    return is_zero(x);
  };
  for (std::size_t c = 0; c < a.cols(); ++c) {
    IntVec g = a.col(c);
    if (is_zero(g) || in_span(g)) continue;
    IntMat w = h.hcat(IntMat::from_cols({g}, a.rows()));
    std::size_t first = hnf_inplace(w, nullptr);
    std::vector<std::size_t> idx;
    for (std::size_t j = first; j < w.cols(); ++j) idx.push_back(j);
    h = w.select_cols(idx);
    piv.clear();
    for (std::size_t j = 0; j < h.cols(); ++j) {
      std::size_t r = h.rows();
      while (r > 0 && h(r - 1, j) == 0) --r;
      piv.push_back(r - 1);
    }
  }
  return h;
}

IntMat integer_kernel(const IntMat& a) {
  auto r = hnf_with_transform(a);
  std::size_t nk = a.cols() - r.rank;
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < nk; ++j) idx.push_back(j);
  IntMat k = r.u.select_cols(idx);
  return hnf_basis(k);
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    auto f = [&](const Int& v) {
      Int w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Int diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(Int n, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<Int> prime_factors(Int n) {
  if (n < 0) n = -n;
  if (n == 0) throw InvalidInput("prime_factors: zero");
  std::vector<Int> out;
  for (unsigned long p = 2; p < 10000 && n > 1; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.push_back(Int(p));
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
    }
  }
  factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Int p_part(Int n, const Int& p) {
  if (n < 0) n = -n;
  Int r = 1;
  while (n != 0 && n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

Int coprime_part(Int n, const Int& p) {
  if (n < 0) n = -n;
  while (n != 0 && n % p == 0) n /= p;
  return n;
}

Int crt(const std::vector<Int>& residues, const std::vector<Int>& moduli) {
  Int x = 0, m = 1;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    Int u, v;
    Int g = xgcd(m, moduli[i], u, v);
    if (g != 1) throw InvalidInput("crt: moduli not coprime");
    // x + m * t with t = (r - x) * u mod moduli[i]
    Int t = (residues[i] - x) * u;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), moduli[i].get_mpz_t());
    x += m * t;
    m *= moduli[i];
  }
  mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return x;
}

// ---------------------------------------------------------------- ZLattice

ZLattice ZLattice::from_generators(const RatMat& gens) {
  ZLattice l;
  l.dim_ = gens.rows();
  l.den_ = denominator_lcm(gens);
  IntMat ig(gens.rows(), gens.cols());
  for (std::size_t i = 0; i < gens.rows(); ++i)
    for (std::size_t j = 0; j < gens.cols(); ++j) {
      Rat q = gens(i, j) * l.den_;
      ig(i, j) = q.get_num();
    }
  l.h_ = hnf_basis(ig);
  l.normalize();
  return l;
}

ZLattice ZLattice::from_vectors(const std::vector<RatVec>& v, std::size_t dim) {
  return from_generators(RatMat::from_cols(v, dim));
}

ZLattice ZLattice::standard(std::size_t n) { return from_generators(RatMat::identity(n)); }

ZLattice ZLattice::zero(std::size_t n) {
  ZLattice l;
  l.dim_ = n;
  l.h_ = IntMat(n, 0);
  return l;
}

void ZLattice::normalize() {
  Int g = den_;
  for (const auto& x : h_.data()) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  if (h_.cols() == 0) g = den_;
  if (g != 1) {
    for (std::size_t i = 0; i < h_.rows(); ++i)
      for (std::size_t j = 0; j < h_.cols(); ++j) h_(i, j) /= g;
    den_ /= g;
  }
  piv_.clear();
  for (std::size_t j = 0; j < h_.cols(); ++j) {
    std::size_t r = h_.rows();
    while (r > 0 && h_(r - 1, j) == 0) --r;
    piv_.push_back(r - 1);
  }
}

RatMat ZLattice::basis() const {
  RatMat b(dim_, h_.cols());
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < h_.cols(); ++j) {
      b(i, j) = Rat(h_(i, j), den_);
      b(i, j).canonicalize();
    }
  return b;
}

RatVec ZLattice::basis_vector(std::size_t j) const {
  RatVec v(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    v[i] = Rat(h_(i, j), den_);
    v[i].canonicalize();
  }
  return v;
}

std::optional<RatVec> ZLattice::coordinates(const RatVec& x) const {
  if (x.size() != dim_) throw InvalidInput("coordinates: dimension mismatch");
  RatVec y(dim_);
  for (std::size_t i = 0; i < dim_; ++i) y[i] = x[i] * den_;
  RatVec c(h_.cols());
  for (long j = static_cast<long>(h_.cols()) - 1; j >= 0; --j) {
    std::size_t r = piv_[j];
    if (y[r] == 0) continue;
    c[j] = y[r] / h_(r, j);
    for (std::size_t i = 0; i <= r; ++i)
      if (h_(i, j) != 0) y[i] -= c[j] * h_(i, j);
  }
  if (!is_zero(y)) return std::nullopt;
  return c;
}

bool ZLattice::contains(const RatVec& x) const {
  auto c = coordinates(x);
  return c && is_integral(*c);
}

bool ZLattice::contains(const ZLattice& o) const {
  for (std::size_t j = 0; j < o.rank(); ++j)
    if (!contains(o.basis_vector(j))) return false;
  return true;
}

ZLattice ZLattice::operator+(const ZLattice& o) const {
  if (dim_ != o.dim_) throw InvalidInput("lattice sum: dimension mismatch");
  return from_generators(basis().hcat(o.basis()));
}

ZLattice ZLattice::scaled(const Rat& s) const {
  if (s == 0) return zero(dim_);
  return from_generators(freeness::scale(basis(), s));
}

ZLattice ZLattice::transformed(const RatMat& t) const { return from_generators(t * basis()); }

Rat lattice_index(const ZLattice& a, const ZLattice& b) {
  if (!a.is_full() || !b.is_full() || a.dim() != b.dim())
    throw RankError("lattice_index: lattices must be of full rank");
  // det of HNF basis = product of diagonal / den^n
  auto vol = [](const ZLattice& l) -> Rat {
    Rat v = 1;
    for (std::size_t j = 0; j < l.rank(); ++j) v *= l.hnf()(j, j);
    Rat d = 1;
    for (std::size_t j = 0; j < l.rank(); ++j) d *= l.denominator();
    return v / d;
  };
  return vol(b) / vol(a);
}

IntMat relative_basis(const ZLattice& a, const ZLattice& b) {
  IntMat m(a.rank(), b.rank());
  for (std::size_t j = 0; j < b.rank(); ++j) {
    auto c = a.coordinates(b.basis_vector(j));
    if (!c || !is_integral(*c)) throw InvalidInput("relative_basis: not a sublattice");
    for (std::size_t i = 0; i < a.rank(); ++i) m(i, j) = (*c)[i].get_num();
  }
  return m;
}

ZLattice dual(const ZLattice& l, const RatMat& gram) {
  if (!l.is_full()) throw RankError("dual: lattice must be of full rank");
  RatMat bt = l.basis().transpose();
  return ZLattice::from_generators(inverse(bt * gram));
}

ZLattice intersect(const ZLattice& a, const ZLattice& b, const RatMat& gram) {
  return dual(dual(a, gram) + dual(b, gram), gram);
}

ZLattice intersect(const ZLattice& a, const ZLattice& b) {
  if (a.is_full() && b.is_full()) return intersect(a, b, RatMat::identity(a.dim()));
  // general case: integer kernel of (Ba | -Bb)
  RatMat ba = a.basis(), bb = b.basis();
  RatMat m = ba.hcat(freeness::scale(bb, Rat(-1)));
  Int d = denominator_lcm(m);
  IntMat im = to_int(freeness::scale(m, Rat(d)));
  IntMat k = integer_kernel(im);
  std::vector<RatVec> vs;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    RatVec c(ba.cols());
    for (std::size_t i = 0; i < ba.cols(); ++i) c[i] = k(i, j);
    vs.push_back(ba * c);
  }
  if (vs.empty()) return ZLattice::zero(a.dim());
  return ZLattice::from_vectors(vs, a.dim());
}

ZLattice preimage(const RatMat& t) {
  ZLattice rows = ZLattice::from_generators(t.transpose());
  if (!rows.is_full()) throw RankError("preimage: map must have full column rank");
  return dual(rows, RatMat::identity(t.cols()));
}

ZLattice replace_at_prime(const ZLattice& m, const ZLattice& k, const Int& p) {
  ZLattice t = m + k;
  ZLattice i = intersect(m, k);
  Rat idx = lattice_index(t, i);
  Int h = idx.get_num();
  Int pa = p_part(h, p), hp = coprime_part(h, p);
  ZLattice left = k + t.scaled(Rat(pa));
  ZLattice right = m + t.scaled(Rat(hp));
  return intersect(left, right);
}

// ---------------------------------------------------------- short vectors

Rat quadratic_form(const RatMat& gram, const IntVec& x) {
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0) s += gram(i, j) * x[i] * x[j];
  }
  return s;
}

void enumerate_reduced(const RatMat& gram, const Rat& bound,
                       const std::function<bool(const IntVec&, const Rat&)>& visit);

namespace {

Int isqrt_floor(const Rat& s) {
  if (s <= 0) return 0;
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  Int r;
  mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
  return r;
}

Int ceil_q(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int floor_q(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

struct FinckePohst {
  std::size_t n;
  RatMat q;  // q(i,i) diagonal, q(i,j) for j > i the mu coefficients
  Rat bound;
  const RatMat& gram;
  const std::function<bool(const IntVec&, const Rat&)>& visit;
  IntVec x;
  bool stop = false;

  void rec(long i, const Rat& used, bool all_zero_above) {
    if (stop) return;
    Rat c = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[j] != 0) c += q(i, j) * x[j];
    Rat rem = bound - used;
    if (rem < 0) return;
    Rat s = rem / q(i, i);
    Int r = isqrt_floor(s) + 1;
    Int lo = ceil_q(-c - r), hi = floor_q(-c + r);
    if (all_zero_above && lo < 0) lo = 0;
    for (Int v = lo; v <= hi && !stop; ++v) {
      Rat t = v + c;
      Rat add = q(i, i) * t * t;
      if (used + add > bound) continue;
      x[i] = v;
      if (i == 0) {
        if (all_zero_above && v == 0) continue;
        Rat nrm = quadratic_form(gram, x);
        if (nrm <= bound && nrm > 0 && !visit(x, nrm)) stop = true;
      } else {
        rec(i - 1, used + add, all_zero_above && v == 0);
      }
    }
    x[i] = 0;
  }
};

}  // namespace

IntMat lll_gram(const RatMat& gram) {
  const std::size_t n = gram.rows();
  IntMat u = IntMat::identity(n);
  RatMat a = gram;
  RatMat mu(n, n);
  std::vector<Rat> bs(n);
  auto gso = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rat s = a(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * bs[k];
        mu(i, j) = s / bs[j];
      }
      Rat s = a(i, i);
      for (std::size_t k = 0; k < i; ++k) s -= mu(i, k) * mu(i, k) * bs[k];
      if (s <= 0) throw InvalidInput("lll: form not positive definite");
      bs[i] = s;
    }
  };
  // b_k -= q b_j
  auto sub = [&](std::size_t k, std::size_t j, const Int& q) {
    for (std::size_t i = 0; i < n; ++i) u(i, k) -= q * u(i, j);
    for (std::size_t i = 0; i < n; ++i) a(i, k) -= q * a(i, j);
    for (std::size_t i = 0; i < n; ++i) a(k, i) -= q * a(j, i);
    for (std::size_t l = 0; l < j; ++l) mu(k, l) -= q * mu(j, l);
    mu(k, j) -= q;
  };
  gso();
  const Rat delta(3, 4);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      Int q = floor_q(mu(k, j) + Rat(1, 2));
      if (q != 0) sub(k, j, q);
    }
    if (bs[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bs[k - 1]) {
      ++k;
      continue;
    }
    u.swap_cols(k, k - 1);
    a.swap_cols(k, k - 1);
    a = a.transpose();
    a.swap_cols(k, k - 1);
    a = a.transpose();
    gso();
    if (k > 1) --k;
  }
  return u;
}

void enumerate_short_vectors(const RatMat& gram, const Rat& bound,
                             const std::function<bool(const IntVec&, const Rat&)>& visit) {
  const std::size_t n = gram.rows();
  if (n == 0) return;
  // enumerate in an LLL-reduced basis, report in the original one
  const IntMat u = lll_gram(gram);
  const RatMat ur = to_rat(u);
  const RatMat red = ur.transpose() * gram * ur;
  auto back = [&](const IntVec& y, const Rat& nrm) {
    IntVec x(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (y[j] != 0) x[i] += u(i, j) * y[j];
    std::size_t last = n;
    while (last > 0 && x[last - 1] == 0) --last;
    if (last > 0 && x[last - 1] < 0)
      for (auto& v : x) v = -v;
    return visit(x, nrm);
  };
  enumerate_reduced(red, bound, back);
}

void enumerate_reduced(const RatMat& gram, const Rat& bound,
                       const std::function<bool(const IntVec&, const Rat&)>& visit) {
  const std::size_t n = gram.rows();
  RatMat q = gram;
  for (std::size_t i = 0; i < n; ++i) {
    if (q(i, i) <= 0) throw InvalidInput("short_vectors: form not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) = q(i, j) / q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  FinckePohst fp{n, q, bound, gram, visit, IntVec(n)};
  fp.rec(static_cast<long>(n) - 1, Rat(0), true);
}

std::vector<IntVec> short_vectors(const RatMat& gram, const Rat& bound) {
  std::vector<IntVec> out;
  enumerate_short_vectors(gram, bound, [&](const IntVec& x, const Rat&) {
    out.push_back(x);
    return true;
  });
  return out;
}

}  // namespace freeness
