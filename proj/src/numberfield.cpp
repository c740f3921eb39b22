#include "freeness/numberfield.hpp"

#include <map>
#include <numeric>

namespace freeness {

// ------------------------------------------------------------ polynomials

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int poly_degree(const Poly& p) {
  Poly q = poly_trim(p);
  return static_cast<int>(q.size()) - 1;
}

Rat poly_eval(const Poly& p, const Rat& x) {
  Rat r = 0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return poly_trim(c);
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  return poly_trim(c);
}

Poly poly_rem(const Poly& a, const Poly& b) {
  Poly r = poly_trim(a), d = poly_trim(b);
  if (d.empty()) throw InvalidInput("poly_rem: division by zero");
  while (r.size() >= d.size()) {
    Rat q = r.back() / d.back();
    std::size_t s = r.size() - d.size();
    for (std::size_t i = 0; i < d.size(); ++i) r[s + i] -= q * d[i];
    r.pop_back();
    r = poly_trim(r);
  }
  return r;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  return poly_trim(d);
}

Poly cyclotomic_polynomial(unsigned m) {
  static std::map<unsigned, Poly> cache;
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  // x^m - 1 divided by Phi_d for all proper divisors d
  Poly num(m + 1);
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d) continue;
    Poly den = cyclotomic_polynomial(d);
    // exact division
    Poly q(num.size() - den.size() + 1);
    Poly r = num;
    for (std::size_t s = q.size(); s-- > 0;) {
      q[s] = r[s + den.size() - 1] / den.back();
      for (std::size_t i = 0; i < den.size(); ++i) r[s + i] -= q[s] * den[i];
    }
    num = poly_trim(q);
  }
  cache[m] = num;
  return num;
}

namespace {

std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> s{poly_trim(p), poly_derivative(p)};
  while (!s.back().empty()) {
    Poly r = poly_rem(s[s.size() - 2], s.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    s.push_back(r);
  }
  if (s.back().empty()) s.pop_back();
  return s;
}

int sign_changes(const std::vector<Poly>& s, const Rat& x) {
  int changes = 0, last = 0;
  for (const auto& p : s) {
    int sg = sgn(poly_eval(p, x));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

}  // namespace

int sturm_count(const Poly& p, const Rat& lo, const Rat& hi) {
  auto s = sturm_sequence(p);
  return sign_changes(s, lo) - sign_changes(s, hi);
}

std::string to_string(PipStatus s) {
  switch (s) {
    case PipStatus::Principal:
      return "principal";
    case PipStatus::NotPrincipal:
      return "not_principal";
    default:
      return "unknown";
  }
}

// ------------------------------------------------------------ NumberField

NumberField::NumberField(const Poly& min_poly, std::optional<ZLattice> maximal_order)
    : f_(poly_trim(min_poly)) {
  if (f_.empty() || f_.back() != 1) throw InvalidInput("NumberField: polynomial must be monic");
  for (const auto& c : f_)
    if (c.get_den() != 1) throw InvalidInput("NumberField: polynomial must be integral");
  n_ = f_.size() - 1;
  if (n_ == 0) throw InvalidInput("NumberField: constant polynomial");
  // theta^k reduced mod f for k < 2n-1
  std::vector<RatVec> pw;
  for (std::size_t k = 0; k + 1 < 2 * n_; ++k) {
    Poly xk(k + 1);
    xk[k] = 1;
    Poly r = poly_rem(xk, f_);
    r.resize(n_);
    pw.push_back(r);
  }
  std::vector<Rat> c(n_ * n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) c[(i * n_ + j) * n_ + k] = pw[i + j][k];
  RatVec one(n_);
  one[0] = 1;
  alg_ = Algebra(n_, c, one);
  if (maximal_order) {
    o_ = *maximal_order;
    if (!is_order(alg_, o_)) throw InvalidInput("NumberField: supplied lattice is not an order");
  } else {
    o_ = maximal_order_containing(alg_, ZLattice::standard(n_));
  }
  init_places();
  init_conjugation();
}

NumberField NumberField::rationals() { return NumberField(Poly{0, 1}, ZLattice::standard(1)); }

NumberField NumberField::quadratic(const Int& d) {
  if (d == 0 || d == 1) throw InvalidInput("quadratic: d must be squarefree and != 0, 1");
  Int m = d % 4;
  if (m < 0) m += 4;
  RatMat b = RatMat::identity(2);
  if (m == 1) {
    b(0, 1) = Rat(1, 2);
    b(1, 1) = Rat(1, 2);
  }
  return NumberField(Poly{Rat(-d), 0, 1}, ZLattice::from_generators(b));
}

NumberField NumberField::cyclotomic(unsigned m) {
  if (m <= 2) return rationals();
  Poly f = cyclotomic_polynomial(m);
  return NumberField(f, ZLattice::standard(f.size() - 1));
}

RatVec NumberField::embed(const Rat& q) const {
  RatVec v(n_);
  v[0] = q;
  return v;
}

RatVec NumberField::theta() const {
  if (n_ == 1) return embed(-f_[0]);
  RatVec v(n_);
  v[1] = 1;
  return v;
}

Rat NumberField::norm(const RatVec& x) const { return determinant(alg_.left_matrix(x)); }

bool NumberField::is_rational(const RatVec& x) const {
  for (std::size_t i = 1; i < n_; ++i)
    if (x[i] != 0) return false;
  return true;
}

void NumberField::init_places() {
  places_.clear();
  if (n_ == 1) {
    places_.push_back({-f_[0] - 1, -f_[0] + 1});
    return;
  }
  Rat bound = 1;
  for (std::size_t i = 0; i < n_; ++i) bound = std::max(bound, Rat(abs(f_[i]) + 1));
  std::function<void(const Rat&, const Rat&)> iso = [&](const Rat& lo, const Rat& hi) {
    int c = sturm_count(f_, lo, hi);
    if (c == 0) return;
    if (c == 1) {
      places_.push_back({lo, hi});
      return;
    }
    Rat mid = (lo + hi) / 2;
    iso(lo, mid);
    iso(mid, hi);
  };
  iso(-bound, bound);
}

int NumberField::sign_at(const RatVec& x, std::size_t place) const {
  Poly g = poly_trim(x);
  if (g.size() <= 1) return g.empty() ? 0 : sgn(g[0]);
  Rat lo = places_.at(place).lo, hi = places_.at(place).hi;
  for (int it = 0; it < 10000; ++it) {
    if (poly_eval(g, hi) != 0 && sturm_count(g, lo, hi) == 0) return sgn(poly_eval(g, hi));
    Rat mid = (lo + hi) / 2;
    if (sturm_count(f_, lo, mid) == 1)
      hi = mid;
    else
      lo = mid;
  }
  throw Error("sign_at: refinement did not converge");
}

std::vector<int> NumberField::signs(const RatVec& x) const {
  std::vector<int> s;
  for (std::size_t i = 0; i < places_.size(); ++i) s.push_back(sign_at(x, i));
  return s;
}

bool NumberField::is_totally_positive(const RatVec& x) const {
  for (int s : signs(x))
    if (s <= 0) return false;
  return true;
}

void NumberField::init_conjugation() {
  if (is_totally_real()) {
    conj_ = RatMat::identity(n_);
    return;
  }
  if (n_ == 2) {
    RatMat c(2, 2);
    c(0, 0) = 1;
    c(0, 1) = -f_[1];
    c(1, 1) = -1;
    conj_ = c;
    return;
  }
  for (unsigned m = 3; m <= 4 * n_ * n_ + 4; ++m) {
    unsigned phi = 0;
    for (unsigned k = 1; k <= m; ++k)
      if (std::gcd(k, m) == 1) ++phi;
    if (phi != n_ || cyclotomic_polynomial(m) != f_) continue;
    auto ti = alg_.inverse(theta());
    RatMat c(n_, n_);
    RatVec p = one();
    for (std::size_t k = 0; k < n_; ++k) {
      c.set_col(k, p);
      p = alg_.mul(p, *ti);
    }
    conj_ = c;
    return;
  }
}

RatMat NumberField::t2_gram(const ZLattice& l) const {
  if (!conj_) throw Unsupported("t2_gram: no complex conjugation known for this field");
  std::size_t r = l.rank();
  RatMat g(r, r);
  std::vector<RatVec> b, cb;
  for (std::size_t i = 0; i < r; ++i) {
    b.push_back(l.basis_vector(i));
    cb.push_back((*conj_) * b.back());
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g(i, j) = trace(mul(b[i], cb[j]));
  return g;
}

std::pair<Int, RatVec> NumberField::quadratic_sqrt() const {
  if (n_ != 2) throw InvalidInput("quadratic_sqrt: field is not quadratic");
  // theta^2 + a theta + b = 0, (2 theta + a)^2 = a^2 - 4 b
  Rat a = f_[1], b = f_[0];
  Int disc = Rat(a * a - 4 * b).get_num();
  Int sq = 1, d = disc;
  for (const auto& p : prime_factors(disc))
    while (d % (p * p) == 0) {
      d /= p * p;
      sq *= p;
    }
  RatVec s{a / sq, Rat(2) / sq};
  return {d, s};
}

namespace {

bool is_square(const Int& n, Int& r) {
  if (n < 0) return false;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r * r == n;
}

}  // namespace

NumberField::Units NumberField::compute_units() const {
  Units u;
  u.torsion = embed(-1);
  u.torsion_order = 2;
  if (n_ == 1) {
    u.complete = true;
    return u;
  }
  if (conj_) {
    // roots of unity have T2 = n
    RatMat g = t2_gram(o_);
    RatMat b = o_.basis();
    for (const auto& v : short_vectors(g, Rat(static_cast<long>(n_)))) {
      RatVec x = b * to_rat(v);
      for (int sign : {1, -1}) {
        RatVec y = scale(x, Rat(sign));
        RatVec p = y;
        for (unsigned k = 1; k <= 4 * n_ * n_ + 4; ++k) {
          if (p == one()) {
            if (k > u.torsion_order) {
              u.torsion = y;
              u.torsion_order = k;
            }
            break;
          }
          p = mul(p, y);
        }
      }
    }
  }
  if (n_ == 2 && is_totally_real()) {
    auto [d, s] = quadratic_sqrt();
    bool quarter = (d % 4 == 1);
    Int x;
    for (Int y = 1; y < 100000000; ++y) {
      for (int e : {-1, 1}) {
        Int rhs = d * y * y + (quarter ? 4 * e : e);
        if (is_square(rhs, x)) {
          Rat den = quarter ? 2 : 1;
          RatVec eps = embed(Rat(x) / den) + scale(s, Rat(Rat(y) / den));
          u.fundamental = {eps};
          u.complete = true;
          return u;
        }
      }
    }
    throw Error("fundamental unit search exhausted");
  }
  if (n_ == 2) u.complete = true;
  return u;
}

const NumberField::Units& NumberField::units() const {
  if (!units_) units_ = std::make_shared<Units>(compute_units());
  return *units_;
}

void NumberField::set_unit_generators(const std::vector<RatVec>& fundamental, bool complete) {
  Units u = compute_units();
  if (n_ > 2) {
    u.fundamental = fundamental;
    u.complete = complete;
  }
  for (const auto& e : u.fundamental) {
    Rat nm = norm(e);
    if (!o_.contains(e) || (nm != 1 && nm != -1)) throw InvalidInput("unit generator is not a unit");
  }
  units_ = std::make_shared<Units>(u);
}

std::vector<RatVec> NumberField::totally_positive_unit_generators() const {
  const Units& u = units();
  std::vector<RatVec> gens{u.torsion};
  for (const auto& e : u.fundamental) gens.push_back(e);
  if (places_.empty()) return gens;
  std::vector<RatVec> out;
  for (const auto& g : gens)
    if (RatVec g2 = mul(g, g); g2 != one()) out.push_back(g2);
  // kernel of the sign map over F_2
  const std::size_t k = gens.size(), r = places_.size();
  std::vector<std::vector<int>> rows(k, std::vector<int>(r + k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    auto s = signs(gens[i]);
    for (std::size_t j = 0; j < r; ++j) rows[i][j] = s[j] < 0 ? 1 : 0;
    rows[i][r + i] = 1;
  }
  std::size_t row = 0;
  for (std::size_t c = 0; c < r && row < k; ++c) {
    std::size_t p = row;
    while (p < k && rows[p][c] == 0) ++p;
    if (p == k) continue;
    std::swap(rows[p], rows[row]);
    for (std::size_t i = 0; i < k; ++i)
      if (i != row && rows[i][c])
        for (std::size_t j = 0; j < r + k; ++j) rows[i][j] ^= rows[row][j];
    ++row;
  }
  for (std::size_t i = row; i < k; ++i) {
    RatVec x = one();
    for (std::size_t j = 0; j < k; ++j)
      if (rows[i][r + j]) x = mul(x, gens[j]);
    if (x != one()) out.push_back(x);
  }
  return out;
}

// ------------------------------------------------------------ ideals

ZLattice NumberField::principal_ideal(const RatVec& x) const { return left_mul(alg_, x, o_); }

ZLattice NumberField::ideal_product(const ZLattice& a, const ZLattice& b) const {
  return lattice_product(alg_, a, b);
}

ZLattice NumberField::ideal_inverse(const ZLattice& a) const { return lattice_inverse(alg_, a); }

Rat NumberField::ideal_norm(const ZLattice& a) const { return lattice_index(o_, a); }

bool NumberField::is_ideal(const ZLattice& a) const {
  return a.is_full() && a.dim() == n_ && a.contains(lattice_product(alg_, o_, a));
}

Int NumberField::integral_scale(const ZLattice& a) const {
  Int c = 1;
  for (std::size_t j = 0; j < a.rank(); ++j) {
    auto x = o_.coordinates(a.basis_vector(j));
    mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), denominator_lcm(*x).get_mpz_t());
  }
  return c;
}

namespace {

Int ceil_sqrt_upper(const Rat& q) {
  // an integer >= sqrt(q)
  Int f;
  mpz_cdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Int r;
  mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
  return r + 1;
}

}  // namespace

PipResult NumberField::pip(const ZLattice& a, std::size_t search_limit) const {
  if (!is_ideal(a)) throw InvalidInput("pip: not a fractional ideal of the maximal order");
  Int c = integral_scale(a);
  ZLattice b = a.scaled(Rat(c));
  Rat nb = ideal_norm(b);
  PipResult res;
  if (n_ == 1) {
    res.status = PipStatus::Principal;
    res.generator = embed(nb / c);
    res.note = "Z is a principal ideal domain";
    return res;
  }
  if (!conj_) {
    res.note = "no positive definite norm form available";
    return res;
  }
  RatMat g = t2_gram(b);
  RatMat bb = b.basis();
  bool complete = false;
  std::vector<Rat> bounds;
  if (n_ == 2 && !is_totally_real()) {
    bounds.push_back(2 * nb);
    complete = true;
  } else if (n_ == 2) {
    const RatVec& eps = units().fundamental.at(0);
    auto [d, s] = quadratic_sqrt();
    // eps = x + y s, upper bound for eps and for 1/eps
    Rat x = eps[0] - s[0] * (eps[1] / s[1]), y = eps[1] / s[1];
    Rat up = abs(x) + abs(y) * Rat(ceil_sqrt_upper(Rat(d)));
    bounds.push_back(nb * (up + 1));
    complete = true;
  } else {
    // n N^{2/n} is the minimum of T2 on generators; escalate
    Rat base = Rat(static_cast<long>(n_)) * Rat(ceil_sqrt_upper(nb));
    for (int k = 0; k < 12; ++k) bounds.push_back(base * (1 << k));
  }
  std::size_t seen = 0;
  for (const auto& bound : bounds) {
    bool found = false, overflow = false;
    enumerate_short_vectors(g, bound, [&](const IntVec& v, const Rat&) {
      if (++seen > search_limit) {
        overflow = true;
        return false;
      }
      RatVec x = bb * to_rat(v);
      if (abs(norm(x)) == nb) {
        res.generator = scale(x, Rat(1, c));
        found = true;
        return false;
      }
      return true;
    });
    if (found) {
      res.status = PipStatus::Principal;
      res.note = "generator found by T2 enumeration";
      return res;
    }
    if (overflow) break;
  }
  if (complete && seen <= search_limit) {
    res.status = PipStatus::NotPrincipal;
    res.note = "no element of norm N(a) within the complete T2 bound";
  } else {
    res.note = "bounded search found no generator";
  }
  return res;
}

}  // namespace freeness
