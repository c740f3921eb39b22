#include "freeness/nice_order.hpp"

namespace freeness {

MatrixSpace::MatrixSpace(const SkewField& d, std::size_t n_)
    : D(d), n(n_), alg(Algebra::matrix_algebra(d.alg, n_)) {}

RatVec MatrixSpace::entry(const RatVec& x, std::size_t i, std::size_t j) const {
  return RatVec(x.begin() + (i * n + j) * t(), x.begin() + (i * n + j + 1) * t());
}

RatVec MatrixSpace::unit(std::size_t i, std::size_t j, const RatVec& d) const {
  RatVec x(alg.dim());
  for (std::size_t l = 0; l < t(); ++l) x[(i * n + j) * t() + l] = d[l];
  return x;
}

RatVec MatrixSpace::diag(const std::vector<RatVec>& d) const {
  RatVec x(alg.dim());
  for (std::size_t i = 0; i < n; ++i) x = x + unit(i, i, d[i]);
  return x;
}

RatVec MatrixSpace::from_columns(const std::vector<RatVec>& cols) const {
  RatVec x(alg.dim());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) x = x + unit(i, j, dvec_entry(cols[j], i, t()));
  return x;
}

RatVec MatrixSpace::apply(const RatVec& x, const RatVec& v) const {
  RatVec out(n * t());
  for (std::size_t i = 0; i < n; ++i) {
    RatVec s = D.zero();
    for (std::size_t j = 0; j < n; ++j) s = s + D.mul(entry(x, i, j), dvec_entry(v, j, t()));
    dvec_set(out, i, s);
  }
  return out;
}

RatVec MatrixSpace::inverse(const RatVec& x) const {
  auto r = alg.inverse(x);
  if (!r) throw RankError("matrix over D is not invertible");
  return *r;
}

ZLattice MatrixSpace::block_lattice(const std::vector<std::vector<ZLattice>>& blocks) const {
  std::vector<RatVec> v;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < blocks[i][j].rank(); ++k)
        v.push_back(unit(i, j, blocks[i][j].basis_vector(k)));
  return ZLattice::from_vectors(v, alg.dim());
}

ZLattice MatrixSpace::conjugate(const ZLattice& l, const RatVec& s) const {
  return l.transformed(alg.left_matrix(s) * alg.right_matrix(inverse(s)));
}

NiceOrder build_nice(const SkewField& d, const ZLattice& a, std::size_t n) {
  if (n == 0) throw InvalidInput("build_nice: n must be positive");
  if (!a.is_full() || a.dim() != d.dim() || !a.contains(d.product(a, d.delta)))
    throw InvalidInput("build_nice: not a right ideal of the maximal order");
  NiceOrder o;
  o.space = MatrixSpace(d, n);
  o.a = a;
  o.a_inv = d.inverse(a);
  o.left_order_a = left_order(d.alg, a);
  if (n == 1) {
    o.lattice = o.left_order_a;
  } else {
    std::vector<std::vector<ZLattice>> b(n, std::vector<ZLattice>(n, d.delta));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      b[i][n - 1] = o.a_inv;
      b[n - 1][i] = a;
    }
    b[n - 1][n - 1] = o.left_order_a;
    o.lattice = o.space.block_lattice(b);
  }
  if (!is_order(o.space.alg, o.lattice)) throw Error("build_nice: result is not an order");
  return o;
}

PipResult right_principal(const SkewField& d, const ZLattice& a) {
  if (d.kind == SkewField::Kind::Field) return d.field->pip(a);
  std::vector<RatVec> c;
  for (std::size_t k = 0; k < a.rank(); ++k) c.push_back(d.quat->conj(a.basis_vector(k)));
  PipResult r = d.quat->pip(ZLattice::from_vectors(c, d.dim()));
  if (r.status == PipStatus::Principal) r.generator = d.quat->conj(r.generator);
  return r;
}

NiceConjugation conjugate_to_nice(const SkewField& d, const ZLattice& lambda, std::size_t n) {
  if (n < 2) throw InvalidInput("conjugate_to_nice: n must be at least 2");
  MatrixSpace ms(d, n);
  if (!lambda.is_full() || lambda.dim() != ms.alg.dim() || !is_order(ms.alg, lambda))
    throw InvalidInput("conjugate_to_nice: not an order of M_n(D)");
  std::vector<std::vector<ZLattice>> blocks(n, std::vector<ZLattice>(n, d.delta));
  ZLattice lp = ms.block_lattice(blocks);
  NiceConjugation c;
  c.S = ms.alg.one();
  c.S_inv = ms.alg.one();
  c.a = d.delta;
  if (lambda == lp) return c;

  std::vector<RatVec> mv;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d.delta.rank(); ++k) {
      RatVec v(n * d.dim());
      dvec_set(v, i, d.delta.basis_vector(k));
      mv.push_back(v);
    }
  const ZLattice m = ZLattice::from_vectors(mv, n * d.dim());

  Rat h = lattice_index(intersect(lambda, lp), lambda + lp);
  c.bad_primes = prime_factors(h.get_num());
  // N = Lambda Delta^n is a right Delta-lattice with End(N) = Lambda (Lambda maximal)
  std::vector<RatVec> nv;
  for (std::size_t k = 0; k < lambda.rank(); ++k)
    for (std::size_t j = 0; j < m.rank(); ++j) nv.push_back(ms.apply(lambda.basis_vector(k), m.basis_vector(j)));
  const ZLattice nlat = ZLattice::from_vectors(nv, n * d.dim());

  SkewField dop = d.opposite();
  SteinitzForm st = steinitz(dop, nlat, n);
  std::vector<RatVec> cols = st.free;
  cols.push_back(st.last);
  c.S = ms.from_columns(cols);
  c.S_inv = ms.inverse(c.S);
  c.a = st.ideal;
  if (ms.conjugate(build_nice(d, c.a, n).lattice, c.S) != lambda)
    throw Error("conjugate_to_nice: conjugation check failed");
  return c;
}

bool normalize_nice(const SkewField& d, std::size_t n, NiceConjugation& c) {
  if (c.a == d.delta) return true;
  PipResult r = right_principal(d, c.a);
  if (r.status != PipStatus::Principal) return false;
  MatrixSpace ms(d, n);
  std::vector<RatVec> dg(n, d.one());
  dg[n - 1] = r.generator;
  RatVec p = ms.diag(dg);
  RatVec s = ms.alg.mul(c.S, p);
  std::vector<std::vector<ZLattice>> blocks(n, std::vector<ZLattice>(n, d.delta));
  if (ms.conjugate(ms.block_lattice(blocks), s) != ms.conjugate(build_nice(d, c.a, n).lattice, c.S))
    throw Error("normalize_nice: conjugation check failed");
  c.S = s;
  c.S_inv = ms.inverse(s);
  c.a = d.delta;
  return true;
}

RatMat ComponentFrame::act_frame(const RatVec& y) const {
  if (S == space.alg.one()) return act(y);
  return act(space.alg.mul(space.alg.mul(S, y), S_inv));
}

ComponentFrame ComponentFrame::standard(const SkewField& d, std::size_t n,
                                        std::function<RatMat(const RatVec&)> act) {
  ComponentFrame f;
  f.space = MatrixSpace(d, n);
  f.S = f.space.alg.one();
  f.S_inv = f.S;
  std::vector<std::vector<ZLattice>> blocks(n, std::vector<ZLattice>(n, d.delta));
  f.order = f.space.block_lattice(blocks);
  f.act = std::move(act);
  return f;
}

std::string to_string(FreeTestResult::Status s) {
  switch (s) {
    case FreeTestResult::Status::Basis: return "basis";
    case FreeTestResult::Status::NotFree: return "not_free";
    default: return "unknown";
  }
}

FreeTestResult max_order_free_test(const ComponentFrame& f, const ZLattice& x, std::size_t d,
                                   bool cancellation) {
  const MatrixSpace& ms = f.space;
  const SkewField& D = ms.D;
  const std::size_t n = ms.n, t = ms.t(), k = n * d;
  RatMat eps = f.act_frame(ms.unit(0, 0, D.one()));
  const std::size_t m = eps.rows();
  if (x.dim() != m || x.rank() != d * n * n * t)
    throw InvalidInput("max_order_free_test: lattice has the wrong rank");

  std::vector<RatVec> yv;
  for (std::size_t j = 0; j < x.rank(); ++j) yv.push_back(eps * x.basis_vector(j));
  ZLattice y = ZLattice::from_vectors(yv, m);

  std::vector<RatMat> scal;
  for (std::size_t l = 0; l < t; ++l) scal.push_back(f.act_frame(ms.unit(0, 0, D.alg.basis_element(l))));
  std::vector<RatVec> dbasis;
  RatMat p(m, 0);
  for (std::size_t j = 0; j < y.rank() && dbasis.size() < k; ++j) {
    RatVec v = y.basis_vector(j);
    RatMat cand = p;
    for (const auto& s : scal) cand = cand.hcat(RatMat::from_cols({s * v}, m));
    if (rank(cand) == p.cols() + t) {
      p = cand;
      dbasis.push_back(v);
    }
  }
  if (dbasis.size() < k) throw InvalidInput("max_order_free_test: e_11 X has the wrong D-rank");

  auto rows = independent_columns(p.transpose());
  RatMat q(rows.size(), p.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) q(i, j) = p(rows[i], j);
  RatMat qinv = inverse(q);
  auto coords = [&](const RatVec& v) {
    RatVec r(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) r[i] = v[rows[i]];
    RatVec c = qinv * r;
    if (p * c != v) throw Error("max_order_free_test: vector outside e_11 V");
    return c;
  };
  std::vector<RatVec> yc;
  for (std::size_t j = 0; j < y.rank(); ++j) yc.push_back(coords(y.basis_vector(j)));
  SteinitzForm st = steinitz(D, ZLattice::from_vectors(yc, k * t), k);

  FreeTestResult res;
  res.steinitz_ideal = st.ideal;
  res.pip = D.principal(st.ideal);
  if (res.pip.status == PipStatus::NotPrincipal) {
    if (cancellation || k == 1) {
      res.status = FreeTestResult::Status::NotFree;
      res.note = "Steinitz class is not trivial";
    } else {
      res.status = FreeTestResult::Status::Unknown;
      res.note = "Steinitz class is not trivial but cancellation is not available";
    }
    return res;
  }
  if (res.pip.status == PipStatus::Unknown) {
    res.status = FreeTestResult::Status::Unknown;
    res.note = "principal ideal search inconclusive: " + res.pip.note;
    return res;
  }
  std::vector<RatVec> u = st.free;
  u.push_back(dvec_left(D, res.pip.generator, st.last));
  for (std::size_t j = 0; j < d; ++j) {
    RatVec w(m);
    for (std::size_t i = 0; i < n; ++i) w = w + f.act_frame(ms.unit(i, 0, D.one())) * (p * u[j * n + i]);
    res.basis.push_back(w);
  }
  std::vector<RatVec> gens;
  for (std::size_t l = 0; l < f.order.rank(); ++l) {
    RatMat a = f.act(f.order.basis_vector(l));
    for (const auto& w : res.basis) gens.push_back(a * w);
  }
  if (ZLattice::from_vectors(gens, m) != x || gens.size() != x.rank())
    throw Error("max_order_free_test: basis check failed");
  res.status = FreeTestResult::Status::Basis;
  return res;
}

}  // namespace freeness
