#include "freeness/pseudo.hpp"

namespace freeness {

RatVec dvec_entry(const RatVec& v, std::size_t i, std::size_t t) {
  return RatVec(v.begin() + i * t, v.begin() + (i + 1) * t);
}

void dvec_set(RatVec& v, std::size_t i, const RatVec& x) {
  for (std::size_t l = 0; l < x.size(); ++l) v[i * x.size() + l] = x[l];
}

RatVec dvec_left(const SkewField& d, const RatVec& s, const RatVec& v) {
  const std::size_t t = d.dim(), r = v.size() / t;
  RatVec out(v.size());
  for (std::size_t i = 0; i < r; ++i) dvec_set(out, i, d.mul(s, dvec_entry(v, i, t)));
  return out;
}

RatVec dvec_right(const SkewField& d, const RatVec& v, const RatVec& s) {
  const std::size_t t = d.dim(), r = v.size() / t;
  RatVec out(v.size());
  for (std::size_t i = 0; i < r; ++i) dvec_set(out, i, d.mul(dvec_entry(v, i, t), s));
  return out;
}

ZLattice pseudo_span(const SkewField& d, const PseudoMatrix& p) {
  std::vector<RatVec> g;
  for (std::size_t j = 0; j < p.cols.size(); ++j)
    for (std::size_t k = 0; k < p.ideals[j].rank(); ++k)
      g.push_back(dvec_left(d, p.ideals[j].basis_vector(k), p.cols[j]));
  if (g.empty()) return ZLattice::zero(p.rows * d.dim());
  return ZLattice::from_vectors(g, p.rows * d.dim());
}

namespace {

// Integer solution c of H c = b for H in column HNF with nonzero columns.
std::optional<IntVec> solve_hnf(const IntMat& h, std::size_t first, IntVec b) {
  IntVec c(h.cols());
  for (long j = static_cast<long>(h.cols()) - 1; j >= static_cast<long>(first); --j) {
    std::size_t r = h.rows();
    while (r > 0 && h(r - 1, j) == 0) --r;
    --r;
    if (b[r] % h(r, j) != 0) return std::nullopt;
    c[j] = b[r] / h(r, j);
    for (std::size_t i = 0; i <= r; ++i) b[i] -= c[j] * h(i, j);
  }
  if (!is_zero(b)) return std::nullopt;
  return c;
}

}  // namespace

std::vector<RatVec> ext_euclid(const SkewField& d, const std::vector<ZLattice>& ideals) {
  const std::size_t t = d.dim();
  RatMat a(t, 0);
  for (const auto& id : ideals) a = a.hcat(id.basis());
  Int den = denominator_lcm(a);
  IntMat ai = to_int(scale(a, Rat(den)));
  auto res = hnf_with_transform(ai);
  IntVec target(t);
  for (std::size_t i = 0; i < t; ++i) target[i] = Rat(d.one()[i] * den).get_num();
  std::size_t first = ai.cols() - res.rank;
  auto c = solve_hnf(res.h, first, target);
  if (!c) throw InvalidInput("ext_euclid: ideals are not coprime");
  IntVec z = res.u * *c;
  std::vector<RatVec> out;
  std::size_t off = 0;
  for (const auto& id : ideals) {
    RatVec coeff(id.rank());
    for (std::size_t k = 0; k < id.rank(); ++k) coeff[k] = z[off + k];
    out.push_back(id.basis() * coeff);
    off += id.rank();
  }
  return out;
}

PseudoMatrix pseudo_hnf(const SkewField& d, const PseudoMatrix& p) {
  const std::size_t t = d.dim(), r = p.rows;
  std::vector<RatVec> cols = p.cols;
  std::vector<ZLattice> ids = p.ideals;
  PseudoMatrix h;
  h.rows = r;
  h.cols.assign(r, RatVec());
  h.ideals.assign(r, ZLattice());
  for (long row = static_cast<long>(r) - 1; row >= 0; --row) {
    std::vector<RatVec> keep_c, piv_c;
    std::vector<ZLattice> keep_i, piv_i;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      RatVec a = dvec_entry(cols[j], row, t);
      if (is_zero(a)) {
        if (!is_zero(cols[j])) {
          keep_c.push_back(cols[j]);
          keep_i.push_back(ids[j]);
        }
        continue;
      }
      RatVec ainv = *d.inv(a);
      piv_c.push_back(dvec_left(d, ainv, cols[j]));
      piv_i.push_back(d.right_mul(ids[j], a));
    }
    if (piv_c.empty()) throw RankError("pseudo_hnf: module does not have full rank");
    ZLattice c = piv_i[0];
    for (std::size_t j = 1; j < piv_i.size(); ++j) c = c + piv_i[j];
    ZLattice cinv = d.inverse(c);
    std::vector<ZLattice> parts;
    for (const auto& b : piv_i) parts.push_back(d.product(cinv, b));
    std::vector<RatVec> alpha = ext_euclid(d, parts);
    RatVec cv(r * t);
    for (std::size_t j = 0; j < piv_c.size(); ++j) cv = cv + dvec_left(d, alpha[j], piv_c[j]);
    h.cols[row] = cv;
    h.ideals[row] = c;
    for (std::size_t j = 0; j < piv_c.size(); ++j) {
      RatVec nv = piv_c[j] - cv;
      if (!is_zero(nv)) {
        keep_c.push_back(nv);
        keep_i.push_back(piv_i[j]);
      }
    }
    cols = std::move(keep_c);
    ids = std::move(keep_i);
  }
  return h;
}

namespace {

Int integral_scale(const ZLattice& order, const ZLattice& a) {
  Int c = 1;
  for (std::size_t j = 0; j < a.rank(); ++j) {
    auto x = order.coordinates(a.basis_vector(j));
    mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), denominator_lcm(*x).get_mpz_t());
  }
  return c;
}

struct PairStep {
  RatVec z;
  ZLattice b;
  RatVec w;
};

PairStep steinitz_pair(const SkewField& d, const ZLattice& a1, const RatVec& x1,
                       const ZLattice& a2, const RatVec& x2) {
  if (a1 == d.delta) return {x1, a2, x2};
  Int c = integral_scale(d.delta, a1);
  ZLattice a1s = a1.scaled(Rat(c));
  RatVec x1s = scale(x1, Rat(1, c));
  Int alpha = denominator_lcm(*a1s.coordinates(d.one()));
  RatVec xi = roiter(d, a2, d.delta, alpha);
  ZLattice a2t = d.right_mul(a2, xi);
  RatVec x2t = dvec_left(d, *d.inv(xi), x2);
  auto al = ext_euclid(d, {a1s, a2t});
  RatVec z = dvec_left(d, al[0], x1s) + dvec_left(d, al[1], x2t);
  return {z, intersect(a1s, a2t), x1s - x2t};
}

// b w = (b nu^-1)(nu w) for a short nu in b (first LLL vector); keeps b near Delta.
void shrink(const SkewField& d, SteinitzForm& s) {
  RatMat basis = s.ideal.basis();
  IntMat u = lll_gram(basis.transpose() * basis);
  RatVec nu = basis * to_rat(u.col(0));
  s.ideal = d.right_mul(s.ideal, *d.inv(nu));
  s.last = dvec_left(d, nu, s.last);
}

}  // namespace

SteinitzForm steinitz(const SkewField& d, const std::vector<ZLattice>& ideals,
                      const std::vector<RatVec>& vecs) {
  if (ideals.empty()) throw InvalidInput("steinitz: empty pseudo-basis");
  SteinitzForm s;
  s.ideal = ideals[0];
  s.last = vecs[0];
  for (std::size_t k = 1; k < ideals.size(); ++k) {
    PairStep st = steinitz_pair(d, s.ideal, s.last, ideals[k], vecs[k]);
    s.free.push_back(st.z);
    s.ideal = st.b;
    s.last = st.w;
    shrink(d, s);
  }
  return s;
}

SteinitzForm steinitz(const SkewField& d, const PseudoMatrix& hnf) {
  return steinitz(d, hnf.ideals, hnf.cols);
}

SteinitzForm steinitz(const SkewField& d, const ZLattice& l, std::size_t rows) {
  PseudoMatrix p;
  p.rows = rows;
  for (std::size_t k = 0; k < l.rank(); ++k) {
    p.cols.push_back(l.basis_vector(k));
    p.ideals.push_back(d.delta);
  }
  return steinitz(d, pseudo_hnf(d, p));
}

std::vector<RatMat> left_action(const SkewField& d, const ZLattice& order) {
  std::vector<RatMat> out;
  for (std::size_t k = 0; k < order.rank(); ++k) out.push_back(d.alg.left_matrix(order.basis_vector(k)));
  return out;
}

RatVec roiter(const SkewField& d, const ZLattice& m, const ZLattice& n, const Int& a) {
  auto primes = prime_factors(a);
  auto act = left_action(d, d.delta);
  std::mt19937_64 rng(0x5eed);
  if (primes.empty()) {
    // any xi with M xi in N
    Int c = integral_scale(n, m);
    return d.embed_center(d.field->embed(Rat(c)));
  }
  RatVec xi = d.zero();
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const Int& p = primes[i];
    auto om = local_basis(m, act, p, 1, rng);
    auto nu = local_basis(n, act, p, 1, rng);
    if (om.status != LocalBasisResult::Status::Found || nu.status != LocalBasisResult::Status::Found)
      throw Error("roiter: no local generator found");
    RatVec xp = d.mul(*d.inv(om.elems[0]), nu.elems[0]);
    ZLattice s = d.right_mul(m, xp) + n;
    Int cp = lattice_index(s, n).get_num();
    std::vector<Int> res, mods;
    for (std::size_t k = 0; k < primes.size(); ++k) {
      res.push_back(k == i ? Int(1) : Int(0));
      mods.push_back(primes[k]);
    }
    Int beta = crt(res, mods);
    xi = xi + scale(xp, Rat(beta * cp));
  }
  ZLattice mx = d.right_mul(m, xi);
  if (!mx.is_full() || !n.contains(mx)) throw Error("roiter: M xi is not inside N");
  Int idx = lattice_index(n, mx).get_num();
  for (const auto& p : primes)
    if (idx % p == 0) throw Error("roiter: index not coprime");
  return xi;
}

namespace {

using Row = std::vector<std::int64_t>;

std::int64_t mod_p(const Int& x, std::int64_t p) {
  Int r = x % p;
  if (r < 0) r += p;
  return r.get_si();
}

std::size_t rank_mod_p(std::vector<Row> rows, std::int64_t p) {
  if (rows.empty()) return 0;
  const std::size_t n = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    // inverse of pivot
    Int inv, pv(static_cast<long>(rows[rank][c])), pp(static_cast<long>(p));
    mpz_invert(inv.get_mpz_t(), pv.get_mpz_t(), pp.get_mpz_t());
    std::int64_t iv = inv.get_si();
    for (auto& x : rows[rank]) x = static_cast<std::int64_t>((__int128)x * iv % p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      std::int64_t f = rows[i][c];
      for (std::size_t k = 0; k < n; ++k) {
        __int128 v = rows[i][k] - (__int128)f * rows[rank][k];
        v %= p;
        if (v < 0) v += p;
        rows[i][k] = static_cast<std::int64_t>(v);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

LocalBasisResult local_basis(const ZLattice& l, const std::vector<RatMat>& action, const Int& p,
                             std::size_t d, std::mt19937_64& rng, std::uint64_t exhaustive_limit,
                             std::size_t random_tries) {
  const std::size_t m = l.rank();
  if (!p.fits_slong_p() || p > Int(1) << 56) throw Unsupported("local_basis: prime too large");
  const std::int64_t pp = p.get_si();
  RatMat b = l.basis();
  // action in lattice coordinates, reduced mod p
  std::vector<std::vector<Row>> am;
  for (const auto& a : action) {
    RatMat img = a * b;
    std::vector<Row> mat(m, Row(m));
    for (std::size_t j = 0; j < m; ++j) {
      auto c = l.coordinates(img.col(j));
      if (!c || !is_integral(*c)) throw InvalidInput("local_basis: lattice is not stable under the action");
      for (std::size_t i = 0; i < m; ++i) mat[i][j] = mod_p((*c)[i].get_num(), pp);
    }
    am.push_back(std::move(mat));
  }
  auto spans = [&](const std::vector<Row>& xs) {
    std::vector<Row> rows;
    for (const auto& x : xs)
      for (const auto& a : am) {
        Row v(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
          __int128 s = 0;
          for (std::size_t k = 0; k < m; ++k) s += (__int128)a[i][k] * x[k];
          v[i] = static_cast<std::int64_t>(s % pp);
        }
        rows.push_back(std::move(v));
      }
    return rank_mod_p(rows, pp) == m;
  };
  auto lift = [&](const std::vector<Row>& xs) {
    LocalBasisResult r;
    r.status = LocalBasisResult::Status::Found;
    for (const auto& x : xs) {
      RatVec c(m);
      for (std::size_t i = 0; i < m; ++i) c[i] = x[i];
      r.elems.push_back(b * c);
    }
    return r;
  };
  // size of (L/pL)^d
  long double total = 1;
  for (std::size_t k = 0; k < m * d; ++k) total *= static_cast<long double>(pp);
  if (total <= static_cast<long double>(exhaustive_limit)) {
    std::vector<Row> xs(d, Row(m, 0));
    while (true) {
      if (spans(xs)) return lift(xs);
      // increment mixed radix counter
      std::size_t pos = 0;
      for (; pos < m * d; ++pos) {
        auto& digit = xs[pos / m][pos % m];
        if (++digit < pp) break;
        digit = 0;
      }
      if (pos == m * d) break;
    }
    return {LocalBasisResult::Status::NotExist, {}};
  }
  std::uniform_int_distribution<std::int64_t> dist(0, pp - 1);
  for (std::size_t t = 0; t < random_tries; ++t) {
    std::vector<Row> xs(d, Row(m));
    for (auto& x : xs)
      for (auto& v : x) v = dist(rng);
    if (spans(xs)) return lift(xs);
  }
  return {LocalBasisResult::Status::GaveUp, {}};
}

}  // namespace freeness
