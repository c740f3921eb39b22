#include "freeness/wedderburn.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace freeness {

using nlohmann::json;

Algebra group_algebra(const GroupTable& g) {
  const std::size_t n = g.order;
  std::vector<Rat> c(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) c[(a * n + b) * n + g.mul[a][b]] = 1;
  RatVec one(n);
  one[0] = 1;
  return Algebra(n, c, one);
}

RatVec WedderburnComponent::scalar(const RatVec& f) const {
  RatVec d = D.embed_center(f);
  RatVec x(dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < t(); ++l) x[(i * n + i) * t() + l] = d[l];
  return x;
}

RatVec WedderburnComponent::matrix_entry(const RatVec& x, std::size_t i, std::size_t j) const {
  return RatVec(x.begin() + (i * n + j) * t(), x.begin() + (i * n + j + 1) * t());
}

RatVec WedderburnComponent::unit_matrix(std::size_t i, std::size_t j, const RatVec& d) const {
  RatVec x(dim());
  for (std::size_t l = 0; l < t(); ++l) x[(i * n + j) * t() + l] = d[l];
  return x;
}

RatVec Registry::project(const RatVec& x, std::size_t i) const {
  RatVec y = phi * x;
  return RatVec(y.begin() + offsets[i], y.begin() + offsets[i] + components[i].dim());
}

RatVec Registry::lift(std::size_t i, const RatVec& a) const {
  RatVec y(order());
  for (std::size_t k = 0; k < a.size(); ++k) y[offsets[i] + k] = a[k];
  return phi_inv * y;
}

ZLattice Registry::component_lattice(const ZLattice& l, std::size_t i) const {
  std::vector<RatVec> v;
  for (std::size_t k = 0; k < l.rank(); ++k) v.push_back(project(l.basis_vector(k), i));
  return ZLattice::from_vectors(v, components[i].dim());
}

std::string default_registry_dir() {
  if (const char* env = std::getenv("FREENESS_REGISTRY")) return env;
  return FREENESS_REGISTRY_DIR;
}

namespace {

RatVec parse_vec(const json& j) {
  RatVec v;
  for (const auto& e : j) v.push_back(parse_rat(e.get<std::string>()));
  return v;
}

bool is_cyclotomic(const Poly& f) {
  const std::size_t n = f.size() - 1;
  for (unsigned m = 1; m <= 4 * n * n + 4; ++m) {
    Poly c = cyclotomic_polynomial(m);
    if (c.size() == f.size() && c == f) return true;
  }
  return false;
}

[[noreturn]] void fail(const std::string& id, const std::string& what) {
  throw InvalidInput("registry " + id + ": " + what);
}

}  // namespace

Registry parse_registry(const std::string& text) {
  json j = json::parse(text);
  Registry r;
  r.version = j.at("registry_version").get<std::string>();
  GroupTable& g = r.group;
  g.id = j.at("id").get<std::string>();
  g.order = j.at("order").get<std::size_t>();
  for (const auto& row : j.at("mul_table")) g.mul.push_back(row.get<std::vector<std::uint32_t>>());
  g.inv = j.at("inverse").get<std::vector<std::uint32_t>>();
  g.generators = j.at("generators").get<std::vector<std::size_t>>();
  if (j.contains("generator_names"))
    g.generator_names = j.at("generator_names").get<std::vector<std::string>>();
  const std::size_t N = g.order;
  if (g.mul.size() != N || g.inv.size() != N) fail(g.id, "table size mismatch");
  for (std::size_t a = 0; a < N; ++a) {
    if (g.mul[a].size() != N) fail(g.id, "table size mismatch");
    if (g.mul[a][g.inv[a]] != 0 || g.mul[0][a] != a || g.mul[a][0] != a)
      fail(g.id, "identity or inverse check failed");
  }
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t c = 0; c < N; ++c)
        if (g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]]) fail(g.id, "associativity failed");
  r.qg = group_algebra(g);

  std::map<std::string, std::shared_ptr<NumberField>> fields;
  for (const auto& cj : j.at("components")) {
    WedderburnComponent c;
    c.label = cj.at("label").get<std::string>();
    c.n = cj.at("n").get<std::size_t>();
    const auto& center = cj.at("center");
    Poly f = parse_vec(center.at("min_poly"));
    std::string key = center.dump();
    if (!fields.count(key)) {
      std::optional<ZLattice> ob;
      if (center.contains("integral_basis")) {
        std::vector<RatVec> bv;
        for (const auto& v : center.at("integral_basis")) bv.push_back(parse_vec(v));
        ob = ZLattice::from_vectors(bv, f.size() - 1);
      } else if (f.size() == 2 || is_cyclotomic(f)) {
        ob = ZLattice::standard(f.size() - 1);
      }
      auto nf = std::make_shared<NumberField>(f, ob);
      if (center.contains("unit_generators")) {
        std::vector<RatVec> us;
        for (const auto& u : center.at("unit_generators")) us.push_back(parse_vec(u));
        nf->set_unit_generators(us, center.value("units_complete", false));
      }
      fields[key] = nf;
    }
    auto F = fields[key];
    c.schur_index = cj.at("schur_index").get<std::size_t>();
    c.char_degree = cj.at("char_degree").get<std::size_t>();
    c.char_values = parse_vec(cj.at("char_values"));
    for (const auto& im : cj.at("rho_images")) c.images.push_back(parse_vec(im));
    if (c.images.size() != N || c.char_values.size() != N) fail(g.id, "component data size mismatch");
    std::string kind = cj.at("kind").get<std::string>();
    if (kind == "field") {
      c.D = SkewField::from_field(F);
    } else if (kind == "quaternion") {
      auto q = std::make_shared<QuatAlgebra>(F, parse_vec(cj.at("quaternion").at("a")),
                                             parse_vec(cj.at("quaternion").at("b")));
      const std::size_t t = q->dim();
      std::vector<RatVec> gens;
      const ZLattice& of = F->maximal_order();
      for (std::size_t k = 0; k < of.rank(); ++k) gens.push_back(q->embed_center(of.basis_vector(k)));
      for (const auto& im : c.images)
        for (std::size_t e = 0; e < c.n * c.n; ++e)
          gens.push_back(RatVec(im.begin() + e * t, im.begin() + (e + 1) * t));
      ZLattice o = order_generated(q->algebra(), gens);
      c.D = SkewField::from_quaternion(q, q->maximal_order(o));
    } else {
      fail(g.id, "unknown component kind '" + kind + "'");
    }
    c.alg = Algebra::matrix_algebra(c.D.alg, c.n);
    std::vector<RatVec> mb;
    for (std::size_t i = 0; i < c.n; ++i)
      for (std::size_t l = 0; l < c.n; ++l)
        for (std::size_t k = 0; k < c.D.delta.rank(); ++k)
          mb.push_back(c.unit_matrix(i, l, c.D.delta.basis_vector(k)));
    c.max_order = ZLattice::from_vectors(mb, c.alg.dim());
    for (const auto& im : c.images) {
      if (im.size() != c.alg.dim()) fail(g.id, c.label + ": image has wrong size");
      if (!c.max_order.contains(im)) fail(g.id, c.label + ": image outside the maximal order");
    }
    if (c.images[0] != c.alg.one()) fail(g.id, c.label + ": identity image is not 1");
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b)
        if (c.alg.mul(c.images[a], c.images[b]) != c.images[g.mul[a][b]])
          fail(g.id, c.label + ": images are not a homomorphism");
    r.components.push_back(std::move(c));
  }

  std::size_t off = 0;
  for (const auto& c : r.components) {
    r.offsets.push_back(off);
    off += c.dim();
  }
  if (off != N) fail(g.id, "component dimensions do not sum to |G|");
  r.phi = RatMat(N, N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t i = 0; i < r.components.size(); ++i)
      for (std::size_t k = 0; k < r.components[i].dim(); ++k)
        r.phi(r.offsets[i] + k, a) = r.components[i].images[a][k];
  try {
    r.phi_inv = inverse(r.phi);
  } catch (const RankError&) {
    fail(g.id, "the components do not give an isomorphism");
  }
  r.idempotents = central_idempotents(r);
  for (std::size_t i = 0; i < r.components.size(); ++i)
    for (std::size_t k = 0; k < r.components.size(); ++k) {
      RatVec p = r.project(r.idempotents[i], k);
      RatVec want = k == i ? r.components[k].alg.one() : r.components[k].alg.zero();
      if (p != want) fail(g.id, "character values do not produce the central idempotents");
    }
  std::vector<RatVec> mb;
  for (std::size_t i = 0; i < r.components.size(); ++i)
    for (std::size_t k = 0; k < r.components[i].max_order.rank(); ++k)
      mb.push_back(r.lift(i, r.components[i].max_order.basis_vector(k)));
  r.maximal_order = ZLattice::from_vectors(mb, N);
  if (!r.maximal_order.contains(ZLattice::standard(N))) fail(g.id, "Z[G] is not inside the maximal order");
  return r;
}

Registry load_registry(const std::string& id_or_path, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::path p(id_or_path);
  if (!(p.extension() == ".json" && fs::exists(p))) {
    p = fs::path(dir.empty() ? default_registry_dir() : dir) / (id_or_path + ".json");
  }
  std::ifstream in(p);
  if (!in) throw InvalidInput("registry: cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_registry(ss.str());
}

std::vector<RatVec> central_idempotents(const Registry& r) {
  const std::size_t N = r.order();
  std::vector<RatVec> out;
  for (const auto& c : r.components) {
    RatVec e(N);
    Rat s(static_cast<long>(c.char_degree), static_cast<long>(N));
    s.canonicalize();
    for (std::size_t g = 0; g < N; ++g) e[g] = s * c.char_values[r.group.inv[g]];
    out.push_back(e);
  }
  return out;
}

ZLattice group_ring_lattice(const Registry& r) { return ZLattice::standard(r.order()); }

ConductorData conductor(const Registry& r, const ZLattice& order) {
  return conductor(r, order, r.maximal_order);
}

ConductorData conductor(const Registry& r, const ZLattice& order, const ZLattice& M) {
  const std::size_t N = r.order();
  if (!M.contains(order)) throw InvalidInput("conductor: order is not inside the maximal order");
  std::vector<RatMat> lefts, rights;
  for (std::size_t k = 0; k < M.rank(); ++k) {
    lefts.push_back(r.qg.left_matrix(M.basis_vector(k)));
    rights.push_back(r.qg.right_matrix(M.basis_vector(k)));
  }
  RatMat binv = inverse(order.basis());
  RatMat t(0, N);
  for (const auto& l : lefts) {
    RatMat bl = binv * l;
    for (const auto& rr : rights) t = t.vcat(bl * rr);
  }
  ConductorData cd;
  cd.c = preimage(t);
  RatMat cinv = inverse(cd.c.basis());
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    const auto& comp = r.components[i];
    const NumberField& F = *comp.D.field;
    const std::size_t f = F.degree();
    RatMat li(N, f);
    for (std::size_t k = 0; k < f; ++k) li.set_col(k, r.lift(i, comp.scalar(F.algebra().basis_element(k))));
    ZLattice gi = preimage(cinv * li);
    cd.g.push_back(gi);
    ZLattice mi = M == r.maximal_order ? comp.max_order : r.component_lattice(M, i);
    std::vector<RatVec> fv;
    for (std::size_t a = 0; a < gi.rank(); ++a) {
      RatVec s = comp.scalar(gi.basis_vector(a));
      for (std::size_t b = 0; b < mi.rank(); ++b) fv.push_back(comp.alg.mul(s, mi.basis_vector(b)));
    }
    cd.f.push_back(ZLattice::from_vectors(fv, comp.dim()));
  }
  return cd;
}

H2Report h2prime_report(const Registry& r, std::size_t d) {
  H2Report rep;
  const std::size_t order = r.order();
  bool unsupported = false, weakened = false;
  for (const auto& c : r.components) {
    H2Component h;
    h.label = c.label;
    const NumberField& F = *c.D.field;
    const bool quat = c.D.kind == SkewField::Kind::Quaternion;
    h.totally_definite = quat && c.D.quat->is_totally_definite();
    h.cancellation_needed = c.n * d > 1;
    // Eichler components (and commutative Delta) cancel; totally definite
    // quaternion components do for every group of order < 32.
    if (!h.totally_definite || order < 32) h.cancellation = "yes";
    else h.cancellation = "unknown";
    if (!h.cancellation_needed) h.nr_surjective = "not needed";
    else if (!h.totally_definite || F.degree() == 1 || order < 40) h.nr_surjective = "yes";
    else h.nr_surjective = "unknown";
    if (!quat) {
      h.units = F.units().complete ? "complete" : "partial";
      h.pip = F.degree() <= 2 ? "complete" : "best-effort";
    } else if (h.totally_definite && F.degree() <= 2) {
      h.units = F.units().complete ? "complete" : "partial";
      h.pip = "complete";
    } else {
      h.units = "unavailable";
      h.pip = "unavailable";
    }
    if (h.cancellation_needed && h.cancellation == "no") unsupported = true;
    if (h.units == "unavailable" || h.pip == "unavailable") unsupported = true;
    if (h.cancellation_needed && h.cancellation == "unknown") weakened = true;
    if (h.nr_surjective == "unknown" || h.units == "partial" || h.pip == "best-effort")
      weakened = true;
    if (h.cancellation_needed && !h.has_cancellation())
      rep.notes.push_back(c.label + ": locally free cancellation not established, NOT_FREE unprovable");
    if (h.pip == "best-effort")
      rep.notes.push_back(c.label + ": principal ideal search is best-effort");
    if (h.units == "partial")
      rep.notes.push_back(c.label + ": unit group known only up to finite index");
    rep.components.push_back(std::move(h));
  }
  rep.overall = unsupported ? "unsupported" : weakened ? "weakened" : "full";
  return rep;
}

}  // namespace freeness
