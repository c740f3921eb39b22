#include "freeness/matrix.hpp"

namespace freeness {

RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

RatVec to_rat(const IntVec& v) { return RatVec(v.begin(), v.end()); }

bool is_integral(const RatVec& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

bool is_integral(const RatMat& m) { return is_integral(m.data()); }

IntVec to_int(const RatVec& v) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw InvalidInput("to_int: non-integral entry");
    r[i] = v[i].get_num();
  }
  return r;
}

IntMat to_int(const RatMat& m) {
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw InvalidInput("to_int: non-integral entry");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

Int denominator_lcm(const RatVec& v) {
  Int d = 1;
  for (const auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

Int denominator_lcm(const RatMat& m) { return denominator_lcm(m.data()); }

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(RatMat& a, Rat* det = nullptr) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  if (det) *det = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
      if (det) *det = -*det;
    }
    Rat inv = 1 / a(r, c);
    if (det) *det *= a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (a(r, j) != 0) a(i, j) -= f * a(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

Rat determinant(const RatMat& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant: non-square");
  RatMat a = m;
  Rat det;
  auto piv = echelon(a, &det);
  if (piv.size() < m.rows()) return 0;
  return det;
}

std::size_t rank(const RatMat& m) {
  RatMat a = m;
  return echelon(a).size();
}

RatMat inverse(const RatMat& m) {
  std::size_t n = m.rows();
  if (n != m.cols()) throw InvalidInput("inverse: non-square");
  RatMat a = m.hcat(RatMat::identity(n));
  auto piv = echelon(a);
  if (piv.size() < n || piv[n - 1] != n - 1) throw RankError("inverse: singular matrix");
  return a.block(0, n, n, n);
}

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
  RatMat aug = a.hcat(RatMat::from_cols({b}, a.rows()));
  auto piv = echelon(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  RatVec x(a.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, a.cols());
  return x;
}

RatMat kernel(const RatMat& a) {
  RatMat e = a;
  auto piv = echelon(e);
  std::vector<bool> is_piv(a.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_piv[f]) continue;
    RatVec x(a.cols());
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -e(r, f);
    basis.push_back(std::move(x));
  }
  return RatMat::from_cols(basis, a.cols());
}

std::vector<std::size_t> independent_columns(const RatMat& a) {
  RatMat e = a;
  return echelon(e);
}

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw InvalidInput("not a rational: '" + s + "'");
  if (q.get_den() == 0) throw InvalidInput("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace freeness
