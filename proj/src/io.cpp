#include "freeness/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace freeness {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw InvalidInput("instance" + path + ": " + what);
}

Rat rat_at(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const std::exception&) {
      schema(path, "not a rational number");
    }
  }
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  schema(path, "expected a rational as a \"p/q\" string");
}

RatVec vec_at(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  RatVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rat_at(j[i], path + "/" + std::to_string(i)));
  return v;
}

RatMat mat_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a non-empty array of rows");
  std::vector<RatVec> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(vec_at(j[i], path + "/" + std::to_string(i)));
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != rows[0].size()) schema(path + "/" + std::to_string(i), "ragged matrix");
  return RatMat::from_rows(rows);
}

ZLattice pseudo_basis_at(const json& j, std::size_t dim, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a non-empty array");
  std::vector<RatVec> v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    if (!j[i].is_object() || !j[i].contains("coords")) schema(p, "expected {ideal, coords}");
    Rat ideal = j[i].contains("ideal") ? rat_at(j[i]["ideal"], p + "/ideal") : Rat(1);
    if (ideal == 0) schema(p + "/ideal", "ideal must be nonzero");
    RatVec c = vec_at(j[i]["coords"], p + "/coords");
    if (c.size() != dim) schema(p + "/coords", "expected " + std::to_string(dim) + " coordinates");
    v.push_back(scale(c, ideal));
  }
  return ZLattice::from_vectors(v, dim);
}

ojson vec_json(const RatVec& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

ojson mat_json(const RatMat& m) {
  ojson a = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i)));
  return a;
}

ojson pseudo_basis_json(const ZLattice& l) {
  ojson a = ojson::array();
  for (std::size_t k = 0; k < l.rank(); ++k) a.push_back({{"ideal", "1"}, {"coords", vec_json(l.basis_vector(k))}});
  return a;
}

}  // namespace

ProblemInstance parse_instance(const std::string& text, const std::string& registry_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("instance: ") + e.what());
  }
  if (!j.is_object()) schema("", "expected an object");
  ProblemInstance inst;
  if (!j.contains("group")) schema("/group", "missing");
  if (j["group"].is_string()) inst.reg = load_registry(j["group"].get<std::string>(), registry_dir);
  else if (j["group"].is_object()) inst.reg = parse_registry(j["group"].dump());
  else schema("/group", "expected a registry id or an inline table");
  if (j.contains("field") && j["field"] != "Q") schema("/field", "only \"Q\" is supported");
  const std::size_t n = inst.reg.order();

  if (!j.contains("lattice") || !j["lattice"].is_object()) schema("/lattice", "missing");
  const json& lat = j["lattice"];
  if (!lat.contains("action") || !lat["action"].is_object()) schema("/lattice/action", "missing");
  std::vector<std::optional<RatMat>> given(n);
  std::size_t m = 0;
  for (const auto& [key, val] : lat["action"].items()) {
    const std::string p = "/lattice/action/" + key;
    std::size_t g = n;
    const auto& names = inst.reg.group.generator_names;
    for (std::size_t s = 0; s < names.size(); ++s)
      if (names[s] == key) g = inst.reg.group.generators[s];
    if (g == n) {
      try {
        std::size_t pos = 0;
        unsigned long v = std::stoul(key, &pos);
        if (pos == key.size()) g = v;
      } catch (const std::exception&) {
      }
    }
    if (g >= n) schema(p, "unknown group element");
    RatMat a = mat_at(val, p);
    if (a.rows() != a.cols()) schema(p, "matrix is not square");
    if (m == 0) m = a.rows();
    if (a.rows() != m) schema(p, "matrix size differs from the others");
    given[g] = a;
  }
  if (m == 0) schema("/lattice/action", "empty");
  // fill in the remaining elements as products
  const auto& mul = inst.reg.group.mul;
  inst.action.assign(n, RatMat());
  std::vector<bool> known(n, false);
  inst.action[0] = RatMat::identity(m);
  known[0] = true;
  for (std::size_t g = 0; g < n; ++g)
    if (given[g]) {
      inst.action[g] = *given[g];
      known[g] = true;
    }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t s = 0; s < n; ++s) {
        if (!known[a] || !given[s]) continue;
        std::size_t b = mul[a][s];
        if (known[b]) continue;
        inst.action[b] = inst.action[a] * *given[s];
        known[b] = changed = true;
      }
  }
  for (std::size_t g = 0; g < n; ++g)
    if (!known[g]) schema("/lattice/action", "given elements do not generate the group");

  if (!lat.contains("pseudo_basis")) schema("/lattice/pseudo_basis", "missing");
  inst.lattice = pseudo_basis_at(lat["pseudo_basis"], m, "/lattice/pseudo_basis");

  if (j.contains("rank")) {
    if (!j["rank"].is_number_unsigned()) schema("/rank", "expected a positive integer");
    inst.rank = j["rank"].get<std::size_t>();
  }
  const json order = j.contains("order") ? j["order"] : json("group_ring");
  if (order.is_string()) {
    inst.order_kind = order.get<std::string>();
    if (inst.order_kind == "group_ring") inst.order = group_ring_lattice(inst.reg);
    else if (inst.order_kind == "associated") inst.order = associated_order(inst.reg, inst.action, inst.lattice);
    else schema("/order", "expected \"group_ring\", \"associated\" or {pseudo_basis}");
  } else if (order.is_object() && order.contains("pseudo_basis")) {
    inst.order_kind = "explicit";
    inst.order = pseudo_basis_at(order["pseudo_basis"], n, "/order/pseudo_basis");
  } else {
    schema("/order", "expected \"group_ring\", \"associated\" or {pseudo_basis}");
  }
  validate_instance(inst);
  return inst;
}

ProblemInstance load_instance(const std::string& path, const std::string& registry_dir) {
  return parse_instance(read_file(path), registry_dir);
}

std::string serialize_instance(const ProblemInstance& inst) {
  ojson j;
  j["group"] = inst.reg.group.id;
  j["field"] = "Q";
  ojson act = ojson::object();
  for (std::size_t g = 0; g < inst.action.size(); ++g) act[std::to_string(g)] = mat_json(inst.action[g]);
  j["lattice"] = {{"pseudo_basis", pseudo_basis_json(inst.lattice)}, {"action", act}};
  if (inst.order_kind == "explicit") j["order"] = {{"pseudo_basis", pseudo_basis_json(inst.order)}};
  else j["order"] = inst.order_kind;
  if (inst.rank) j["rank"] = inst.rank;
  return j.dump(2) + "\n";
}

std::string certificate_to_json(const FreenessCertificate& c) {
  ojson j;
  j["verdict"] = to_string(c.verdict);
  j["group"] = c.group;
  j["rank"] = c.rank;
  ojson gens = ojson::array();
  for (const auto& g : c.generators) gens.push_back(vec_json(g));
  j["generators"] = gens;
  ojson comps = ojson::array();
  for (const auto& l : c.components) {
    ojson s = ojson::array();
    for (const auto& v : l.steinitz_ideal) s.push_back(vec_json(v));
    comps.push_back({{"component", l.label},
                     {"step5", l.step5},
                     {"steinitz_class", l.steinitz_class},
                     {"steinitz_ideal", s},
                     {"pip_result", l.pip},
                     {"conductor_norm", l.conductor_norm},
                     {"repset_size", l.repset_size},
                     {"repset_complete", l.repset_complete},
                     {"note", l.note}});
  }
  j["component_log"] = comps;
  ojson primes = ojson::array();
  for (const auto& [p, s] : c.local_primes) primes.push_back({{"p", p}, {"status", s}});
  j["local_freeness"] = {{"status", c.local_freeness}, {"primes", primes}};
  j["h2prime"] = c.h2prime;
  j["reasons"] = c.reasons;
  j["tuples_tried"] = c.tuples_tried;
  j["seeds"] = {{"seed", c.seed}, {"tuple_cap", c.tuple_cap}};
  j["registry_version"] = c.registry_version;
  ojson t = ojson::object();
  for (const auto& [k, v] : c.timings) t[k] = v;
  j["timings"] = t;
  return j.dump(2) + "\n";
}

FreenessCertificate parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
    FreenessCertificate c;
    c.verdict = parse_verdict(j.at("verdict").get<std::string>());
    c.group = j.value("group", "");
    c.rank = j.value("rank", std::size_t(0));
    for (std::size_t i = 0; i < j.at("generators").size(); ++i)
      c.generators.push_back(vec_at(j["generators"][i], "/generators/" + std::to_string(i)));
    if (j.contains("component_log"))
      for (const auto& l : j["component_log"]) {
        ComponentLog cl;
        cl.label = l.value("component", "");
        cl.step5 = l.value("step5", "");
        cl.steinitz_class = l.value("steinitz_class", "");
        if (l.contains("steinitz_ideal"))
          for (std::size_t k = 0; k < l["steinitz_ideal"].size(); ++k)
            cl.steinitz_ideal.push_back(vec_at(l["steinitz_ideal"][k], "/component_log/steinitz_ideal"));
        cl.pip = l.value("pip_result", "");
        cl.conductor_norm = l.value("conductor_norm", "");
        cl.repset_size = l.value("repset_size", std::size_t(0));
        cl.repset_complete = l.value("repset_complete", false);
        cl.note = l.value("note", "");
        c.components.push_back(std::move(cl));
      }
    if (j.contains("local_freeness")) {
      c.local_freeness = j["local_freeness"].value("status", "yes");
      for (const auto& p : j["local_freeness"].value("primes", json::array()))
        c.local_primes.emplace_back(p.at("p").get<std::string>(), p.at("status").get<std::string>());
    }
    c.h2prime = j.value("h2prime", "");
    c.reasons = j.value("reasons", std::vector<std::string>{});
    c.tuples_tried = j.value("tuples_tried", "0");
    if (j.contains("seeds")) {
      c.seed = j["seeds"].value("seed", std::uint64_t(1));
      c.tuple_cap = j["seeds"].value("tuple_cap", std::uint64_t(0));
    }
    c.registry_version = j.value("registry_version", "");
    // key order matters for byte-identical output
    ojson oj = ojson::parse(text);
    if (oj.contains("timings"))
      for (const auto& [k, v] : oj["timings"].items()) c.timings.emplace_back(k, v.get<double>());
    return c;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("certificate: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

}  // namespace freeness
