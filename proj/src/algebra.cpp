#include "freeness/algebra.hpp"

namespace freeness {

Algebra::Algebra(std::size_t dim, const std::vector<Rat>& structure, RatVec one)
    : n_(dim), c_(structure), one_(std::move(one)) {
  if (c_.size() != n_ * n_ * n_ || one_.size() != n_)
    throw InvalidInput("Algebra: structure constant size mismatch");
  build_sparse();
}

void Algebra::build_sparse() {
  sparse_.assign(n_ * n_, {});
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) {
        const Rat& c = constant(i, j, k);
        if (c != 0) sparse_[i * n_ + j].push_back({k, c});
      }
}

Algebra Algebra::rationals() { return Algebra(1, {Rat(1)}, {Rat(1)}); }

Algebra Algebra::matrix_algebra(const Algebra& base, std::size_t n) {
  const std::size_t t = base.dim(), N = n * n * t;
  std::vector<Rat> c(N * N * N);
  auto idx = [&](std::size_t i, std::size_t j, std::size_t l) { return (i * n + j) * t + l; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t a = 0; a < t; ++a)
          for (std::size_t b = 0; b < t; ++b)
            for (std::size_t k = 0; k < t; ++k) {
              const Rat& s = base.constant(a, b, k);
              if (s == 0) continue;
              c[(idx(i, j, a) * N + idx(j, l, b)) * N + idx(i, l, k)] = s;
            }
  RatVec one(N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < t; ++l) one[idx(i, i, l)] = base.one()[l];
  return Algebra(N, c, one);
}

RatVec Algebra::basis_element(std::size_t i) const {
  RatVec v(n_);
  v[i] = 1;
  return v;
}

RatVec Algebra::mul(const RatVec& x, const RatVec& y) const {
  RatVec z(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (y[j] == 0) continue;
      Rat xy = x[i] * y[j];
      for (const auto& t : sparse_[i * n_ + j]) z[t.k] += xy * t.c;
    }
  }
  return z;
}

RatMat Algebra::left_matrix(const RatVec& x) const {
  RatMat m(n_, n_);
  for (std::size_t j = 0; j < n_; ++j) m.set_col(j, mul(x, basis_element(j)));
  return m;
}

RatMat Algebra::right_matrix(const RatVec& x) const {
  RatMat m(n_, n_);
  for (std::size_t j = 0; j < n_; ++j) m.set_col(j, mul(basis_element(j), x));
  return m;
}

Rat Algebra::trace(const RatVec& x) const {
  Rat s = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j)
      for (const auto& t : sparse_[i * n_ + j])
        if (t.k == j) s += x[i] * t.c;
  }
  return s;
}

std::optional<RatVec> Algebra::inverse(const RatVec& x) const {
  // x y = 1
  auto y = solve(left_matrix(x), one_);
  if (!y) return std::nullopt;
  if (mul(*y, x) != one_) return std::nullopt;
  return y;
}

RatVec Algebra::power(const RatVec& x, unsigned long e) const {
  RatVec r = one_, b = x;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

Algebra Algebra::opposite() const {
  std::vector<Rat> c(n_ * n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) c[(i * n_ + j) * n_ + k] = constant(j, i, k);
  return Algebra(n_, c, one_);
}

RatMat Algebra::trace_gram() const {
  RatMat g(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) g(i, j) = trace(mul(basis_element(i), basis_element(j)));
  return g;
}

bool Algebra::is_commutative() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (constant(i, j, k) != constant(j, i, k)) return false;
  return true;
}

// ------------------------------------------------------------ lattices

ZLattice lattice_product(const Algebra& a, const ZLattice& l, const ZLattice& m) {
  std::vector<RatVec> g;
  for (std::size_t i = 0; i < l.rank(); ++i) {
    RatVec x = l.basis_vector(i);
    for (std::size_t j = 0; j < m.rank(); ++j) g.push_back(a.mul(x, m.basis_vector(j)));
  }
  if (g.empty()) return ZLattice::zero(a.dim());
  return ZLattice::from_vectors(g, a.dim());
}

ZLattice left_mul(const Algebra& a, const RatVec& x, const ZLattice& l) {
  return l.transformed(a.left_matrix(x));
}

ZLattice right_mul(const Algebra& a, const ZLattice& l, const RatVec& x) {
  return l.transformed(a.right_matrix(x));
}

namespace {

ZLattice preimage_of_maps(const ZLattice& target, const std::vector<RatMat>& maps) {
  RatMat binv = inverse(target.basis());
  RatMat t(0, target.dim());
  for (const auto& m : maps) t = t.vcat(binv * m);
  return preimage(t);
}

}  // namespace

ZLattice left_colon(const Algebra& a, const ZLattice& m, const ZLattice& n) {
  std::vector<RatMat> maps;
  for (std::size_t k = 0; k < m.rank(); ++k) maps.push_back(a.right_matrix(m.basis_vector(k)));
  return preimage_of_maps(n, maps);
}

ZLattice right_colon(const Algebra& a, const ZLattice& m, const ZLattice& n) {
  std::vector<RatMat> maps;
  for (std::size_t k = 0; k < m.rank(); ++k) maps.push_back(a.left_matrix(m.basis_vector(k)));
  return preimage_of_maps(n, maps);
}

ZLattice left_order(const Algebra& a, const ZLattice& l) { return left_colon(a, l, l); }

ZLattice right_order(const Algebra& a, const ZLattice& l) { return right_colon(a, l, l); }

ZLattice lattice_inverse(const Algebra& a, const ZLattice& l) {
  std::vector<RatMat> maps;
  std::vector<RatMat> lefts, rights;
  for (std::size_t k = 0; k < l.rank(); ++k) {
    lefts.push_back(a.left_matrix(l.basis_vector(k)));
    rights.push_back(a.right_matrix(l.basis_vector(k)));
  }
  for (const auto& x : lefts)
    for (const auto& y : rights) maps.push_back(x * y);
  return preimage_of_maps(l, maps);
}

bool is_order(const Algebra& a, const ZLattice& l) {
  if (!l.is_full() || !l.contains(a.one())) return false;
  return l.contains(lattice_product(a, l, l));
}

ZLattice order_generated(const Algebra& a, const std::vector<RatVec>& gens) {
  std::vector<RatVec> v = gens;
  v.push_back(a.one());
  ZLattice l = ZLattice::from_vectors(v, a.dim());
  for (int it = 0; it < 64; ++it) {
    ZLattice next = l + lattice_product(a, l, l);
    if (next == l) return l;
    l = next;
  }
  throw InvalidInput("order_generated: elements are not integral");
}

Rat discriminant(const Algebra& a, const ZLattice& l) {
  RatMat b = l.basis();
  return determinant(b.transpose() * a.trace_gram() * b);
}

void enumerate_quotient(const ZLattice& l, const ZLattice& m,
                        const std::function<bool(const RatVec&)>& visit) {
  IntMat h = hnf_basis(relative_basis(l, m));
  const std::size_t n = l.rank();
  if (h.cols() != n) throw RankError("enumerate_quotient: infinite quotient");
  std::vector<Int> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = h(i, i);
  RatMat b = l.basis();
  RatVec c(n);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == n) return visit(b * c);
    for (Int v = 0; v < d[i]; ++v) {
      c[i] = v;
      if (!rec(i + 1)) return false;
    }
    c[i] = 0;
    return true;
  };
  rec(0);
}

namespace {

std::optional<ZLattice> extend_order(const Algebra& a, const ZLattice& o, const RatVec& x,
                                     const ZLattice& sharp) {
  ZLattice r = o + ZLattice::from_vectors({x}, a.dim());
  for (int it = 0; it < 64; ++it) {
    if (!sharp.contains(r)) return std::nullopt;
    ZLattice next = r + lattice_product(a, r, r);
    if (next == r) return r;
    r = next;
  }
  return std::nullopt;
}

std::vector<Int> square_divisors(const Rat& disc) {
  std::vector<Int> out;
  Int n = abs(disc.get_num());
  for (const auto& p : prime_factors(n))
    if (n % (p * p) == 0) out.push_back(p);
  return out;
}

}  // namespace

ZLattice maximal_order_containing(const Algebra& a, const ZLattice& o0) {
  if (!is_order(a, o0)) throw InvalidInput("maximal_order_containing: not an order");
  const RatMat g = a.trace_gram();
  ZLattice o = o0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : square_divisors(discriminant(a, o))) {
      ZLattice sharp = dual(o, g);
      ZLattice l = intersect(sharp, o.scaled(Rat(1, p)));
      std::optional<ZLattice> found;
      enumerate_quotient(l, o, [&](const RatVec& x) {
        if (is_zero(x)) return true;
        found = extend_order(a, o, x, sharp);
        return !found.has_value();
      });
      if (found) {
        o = *found;
        changed = true;
        break;
      }
    }
  }
  return o;
}

bool is_maximal_order(const Algebra& a, const ZLattice& o) {
  if (!is_order(a, o)) return false;
  return maximal_order_containing(a, o) == o;
}

}  // namespace freeness
