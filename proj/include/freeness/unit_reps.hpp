#pragma once

#include <unordered_map>

#include "freeness/nice_order.hpp"

namespace freeness {

// Delta / g Delta. Elements are coordinate vectors in the basis of Delta reduced
// into the box 0 <= c_j < h_j given by the HNF of g Delta.
class ResidueRing {
 public:
  using Elem = std::vector<std::int64_t>;

  ResidueRing() = default;
  // g: a nonzero ideal of O_F in center coordinates
  ResidueRing(const SkewField& d, const ZLattice& g);

  const SkewField& skew() const { return d_; }
  const ZLattice& modulus() const { return gdelta_; }  // g Delta in D coordinates
  std::size_t rank() const { return r_; }
  const std::vector<std::int64_t>& box() const { return box_; }
  Int size() const;
  bool trivial() const { return size() == 1; }

  Elem reduce(Elem v) const;
  Elem from_delta(const RatVec& x) const;  // x must lie in Delta
  RatVec lift(const Elem& e) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem one() const { return one_; }
  Elem zero() const { return Elem(r_, 0); }
  std::vector<Elem> spanning_set() const;  // images of the Z-basis of Delta, zeros dropped

 private:
  SkewField d_;
  ZLattice gdelta_;
  std::size_t r_ = 0;
  std::vector<std::vector<std::int64_t>> h_;    // column HNF of g Delta in Delta coordinates
  std::vector<std::int64_t> box_;
  std::vector<std::vector<std::int64_t>> mult_;  // (i*r + j) -> coordinates of b_i b_j
  Elem one_;
};

// k x k matrices over a residue ring, row-major.
using ResMat = std::vector<ResidueRing::Elem>;
ResMat res_identity(const ResidueRing& r, std::size_t k);
ResMat res_mul(const ResidueRing& r, std::size_t k, const ResMat& a, const ResMat& b);
ResMat res_reduce(const ResidueRing& r, std::size_t k, const RatVec& x);  // x in M_k(Delta)

using Code = unsigned __int128;
struct CodeHash {
  std::size_t operator()(const Code& c) const {
    std::uint64_t lo = static_cast<std::uint64_t>(c), hi = static_cast<std::uint64_t>(c >> 64);
    return std::hash<std::uint64_t>()(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
  }
};

// Mixed-radix encoding of k x k residue matrices.
class MatrixCoder {
 public:
  MatrixCoder() = default;
  MatrixCoder(const ResidueRing& r, std::size_t k);
  Code encode(const ResMat& m) const;
  ResMat decode(Code c) const;

 private:
  std::size_t k_ = 0, r_ = 0;
  std::vector<std::int64_t> box_;
};

// An element of GL_k(Delta) used as a generator: exact lift and inverse in M_k(D).
struct UnitGenerator {
  RatVec lift;
  RatVec lift_inv;
  std::string kind;  // "unit", "elementary", "nr", "sk1"
};

// Subgroup of GL_k(Delta/g Delta) generated by the images of the generators,
// with one lift per element given by its word in the generators.
struct GroupClosure {
  std::vector<Code> codes;
  std::vector<std::uint32_t> parent;  // index of the prefix; self for the identity
  std::vector<std::uint32_t> gen;
  std::unordered_map<Code, std::uint32_t, CodeHash> index;
  bool complete = true;
};
GroupClosure close_group(const ResidueRing& r, std::size_t k, const std::vector<ResMat>& gens,
                         std::size_t cap);

// 2x2 reduced norm over D via the Schur complement.
RatVec reduced_norm_2x2(const MatrixSpace& ms, const RatVec& x);

// SK1 generators for a definite quaternion maximal order over Q.
struct SK1Generator {
  Int p;
  Int group_order;  // (q^m - 1)/(q - 1) with m = 2
  RatVec w;         // W = Q(w) inside D, inert at p
  RatVec alpha;     // w^sigma alpha = alpha w
  RatVec rho, xi, eta, omega, beta, eta2;  // elements of W, as elements of D
  RatVec S, T, g;                          // g = S^-1 T in SL_2(Delta)
};
struct SK1Data {
  std::vector<SK1Generator> gens;
};
SK1Data sk1_generators(const SkewField& d);

// E_ij(b) for i != j and b running over the spanning set of Delta / g Delta.
std::vector<UnitGenerator> elementary_generators(const ResidueRing& r, std::size_t k);

struct RepSetOptions {
  std::size_t cap = std::size_t(1) << 24;
};

// Representatives of the image of GL_k(Delta) in GL_k(Delta / g Delta).
struct RepSet {
  ResidueRing ring;
  std::size_t k = 1;
  MatrixSpace space;  // M_k(D)
  MatrixCoder coder;
  std::vector<UnitGenerator> gens;
  GroupClosure closure;
  bool complete = true;  // generators known to generate and closure not truncated
  std::string note;

  std::size_t size() const { return closure.codes.size(); }
  ResMat residue(std::size_t i) const { return coder.decode(closure.codes[i]); }
  RatVec lift(std::size_t i) const;
  RatVec lift_inverse(std::size_t i) const;
};
RepSet unit_representatives(const SkewField& d, const ZLattice& g, std::size_t k,
                            const RepSetOptions& opt = {});

// The image of Delta^x in (Delta / g Delta)^x computed through SL_2 and SK_1
// (the k = 1 construction from elementary matrices and the SK1 generators).
std::vector<ResidueRing::Elem> unit_image_via_k1(const SkewField& d, const ZLattice& g,
                                                 std::size_t cap = std::size_t(1) << 24);

// Reduction from Lambda_{a,n} to M_n(Delta) modulo g.
struct ReductionData {
  RatVec xi;  // a = xi b
  ZLattice b_ideal;
  RatVec b, y;  // b + y = 1, b in b_ideal, y in g Delta
  RatVec phi1, phi2;
};
ReductionData reduction_step(const NiceOrder& lam, const ZLattice& g);
// Blockwise f_1(A) = Phi_2 A Phi_1 and f_2(B) = Phi_1 B Phi_2 on M_n(D).
RatVec reduction_f1(const ReductionData& r, const MatrixSpace& ms, const RatVec& a);
RatVec reduction_f2(const ReductionData& r, const MatrixSpace& ms, const RatVec& b);

}  // namespace freeness
