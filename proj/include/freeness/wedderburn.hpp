#pragma once

#include <string>

#include "freeness/skewfield.hpp"

namespace freeness {

struct GroupTable {
  std::string id;
  std::size_t order = 0;
  std::vector<std::vector<std::uint32_t>> mul;
  std::vector<std::uint32_t> inv;
  std::vector<std::size_t> generators;
  std::vector<std::string> generator_names;
};

// Q[G] with basis the group elements in table order.
Algebra group_algebra(const GroupTable& g);

// A simple component M_n(D) of Q[G].
struct WedderburnComponent {
  std::string label;
  std::size_t n = 1;
  SkewField D;
  std::size_t schur_index = 1;
  std::size_t char_degree = 1;
  RatVec char_values;          // per group element
  std::vector<RatVec> images;  // per group element, M_n(D) coordinates
  Algebra alg;                 // M_n(D)
  ZLattice max_order;          // M_n(Delta)

  std::size_t dim() const { return alg.dim(); }
  std::size_t t() const { return D.dim(); }
  RatVec scalar(const RatVec& center_elem) const;  // f * identity
  RatVec matrix_entry(const RatVec& x, std::size_t i, std::size_t j) const;
  RatVec unit_matrix(std::size_t i, std::size_t j, const RatVec& d) const;  // E_ij (x) d
};

struct Registry {
  std::string version;
  GroupTable group;
  Algebra qg;
  std::vector<WedderburnComponent> components;
  std::vector<std::size_t> offsets;  // block offsets in the product coordinates
  RatMat phi;                        // Q[G] -> product of components
  RatMat phi_inv;
  std::vector<RatVec> idempotents;
  ZLattice maximal_order;  // in Q[G]

  std::size_t order() const { return group.order; }
  RatVec project(const RatVec& x, std::size_t i) const;       // Phi_i(x)
  RatVec lift(std::size_t i, const RatVec& a) const;          // Phi^{-1} of a in slot i
  ZLattice component_lattice(const ZLattice& l, std::size_t i) const;  // Phi_i(l)
};

std::string default_registry_dir();
// Accepts a group id (looked up in dir) or a path to a JSON file.
Registry load_registry(const std::string& id_or_path, const std::string& dir = "");
Registry parse_registry(const std::string& json_text);

// e_i = (chi(1)/|G|) sum psi(g^-1) g from the character data.
std::vector<RatVec> central_idempotents(const Registry& r);

struct ConductorData {
  ZLattice c;                  // {x : M x M in A} in Q[G]
  std::vector<ZLattice> g;     // g_i = c_i cap O_{F_i}, center coordinates
  std::vector<ZLattice> f;     // f_i = g_i M_i, component coordinates
};
ConductorData conductor(const Registry& r, const ZLattice& order);
// Same, relative to another maximal order containing every e_i.
ConductorData conductor(const Registry& r, const ZLattice& order, const ZLattice& maximal);

// Conditions (a)-(d) of the hypothesis on (E[G], d), per component.
struct H2Component {
  std::string label;
  bool totally_definite = false;
  bool cancellation_needed = false;  // n d > 1
  std::string cancellation;          // yes | no | unknown
  std::string nr_surjective;         // yes | unknown | not needed
  std::string units;                 // complete | partial | unavailable
  std::string pip;                   // complete | best-effort | unavailable
  bool has_cancellation() const { return cancellation == "yes"; }
};
struct H2Report {
  std::vector<H2Component> components;
  std::string overall;  // full | weakened | unsupported
  std::vector<std::string> notes;
};
H2Report h2prime_report(const Registry& r, std::size_t d);

// The order Z[G] as a lattice in Q[G].
ZLattice group_ring_lattice(const Registry& r);

}  // namespace freeness
