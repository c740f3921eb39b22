#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "freeness/io.hpp"
#include "json.hpp"

namespace freeness {

using ojson = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  return out;
}

RatVec parse_list(const std::string& s) {
  RatVec v;
  for (const auto& t : split(s, ',')) v.push_back(parse_rat(t));
  return v;
}

ojson vec_json(const RatVec& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

ojson lattice_json(const ZLattice& l) {
  ojson a = ojson::array();
  for (std::size_t k = 0; k < l.rank(); ++k) a.push_back(vec_json(l.basis_vector(k)));
  return a;
}

std::string vec_str(const RatVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

bool looks_like_instance(const std::string& arg) {
  if (arg.size() < 5 || arg.substr(arg.size() - 5) != ".json") return false;
  try {
    return nlohmann::json::parse(read_file(arg)).contains("lattice");
  } catch (const std::exception&) {
    return false;
  }
}

// D from --poly (a number field) or --algebra (a quaternion algebra over Q)
SkewField skew_from(const std::string& poly, const std::string& algebra) {
  if (!algebra.empty()) {
    RatVec ab = parse_list(algebra);
    if (ab.size() != 2) throw InvalidInput("--algebra expects \"a,b\"");
    auto q = std::make_shared<QuatAlgebra>(ab[0], ab[1]);
    return SkewField::from_quaternion(q, q->maximal_order(q->standard_order()));
  }
  Poly f = poly.empty() ? Poly{Rat(0), Rat(1)} : parse_list(poly);
  return SkewField::from_field(std::make_shared<NumberField>(f));
}

struct Globals {
  std::uint64_t seed = 1;
  std::string registry;
  std::uint64_t tuple_cap = std::uint64_t(1) << 28;
  std::string json_out;
  bool timings = false;
  unsigned jobs = 1;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Freeness of lattices over orders in rational group algebras", "freegen"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--registry", g.registry, "registry directory");
  app.add_option("--tuple-cap", g.tuple_cap, "maximum number of tuples in step 8");
  app.add_option("--json-out", g.json_out, "write the result as JSON");
  app.add_flag("--timings", g.timings, "record step timings in the certificate");
  app.add_option("--jobs", g.jobs, "worker threads for the tuple search")->check(CLI::Range(1u, 256u));

  std::string target, cert_path, poly, algebra, ideal, modulus = "2", route = "direct";
  std::size_t k = 1;

  auto* wed = app.add_subcommand("wedderburn", "components and central idempotents");
  wed->add_option("group", target, "registry id or file")->required();
  auto* cond = app.add_subcommand("conductor", "conductor of Z[G] or of an instance's order");
  cond->add_option("target", target, "registry id or instance file")->required();
  auto* ste = app.add_subcommand("steinitz", "Steinitz forms of M_i X");
  ste->add_option("instance", target)->required();
  auto* pip = app.add_subcommand("pip", "principal ideal test");
  pip->add_option("--poly", poly, "defining polynomial, constant term first");
  pip->add_option("--algebra", algebra, "quaternion algebra a,b over Q");
  pip->add_option("--ideal", ideal, "generators separated by ';', coordinates by ','")->required();
  auto* sk1 = app.add_subcommand("sk1", "SK1 generators of a quaternion maximal order");
  sk1->add_option("--algebra", algebra, "quaternion algebra a,b over Q")->required();
  auto* ur = app.add_subcommand("unit-reps", "image of GL_k(Delta) modulo g Delta");
  ur->add_option("--poly", poly, "defining polynomial, constant term first");
  ur->add_option("--algebra", algebra, "quaternion algebra a,b over Q");
  ur->add_option("--modulus", modulus, "positive integer generating g");
  ur->add_option("-k", k, "matrix size");
  ur->add_option("--route", route, "direct or k1 (k = 1 only)")->check(CLI::IsMember({"direct", "k1"}));
  auto* isf = app.add_subcommand("isfree", "decide freeness and compute generators");
  isf->add_option("instance", target)->required();
  auto* ver = app.add_subcommand("verify", "re-check a certificate");
  ver->add_option("certificate", cert_path)->required();
  ver->add_option("instance", target)->required();
  auto* aso = app.add_subcommand("assoc-order", "associated order of an instance's lattice");
  aso->add_option("instance", target)->required();

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  ojson result;
  int code = 0;
  try {
    FreenessOptions fo;
    fo.seed = g.seed;
    fo.tuple_cap = g.tuple_cap;
    fo.jobs = g.jobs;
    fo.timings = g.timings;

    if (*wed) {
      Registry r = load_registry(target, g.registry);
      result["group"] = r.group.id;
      result["order"] = r.order();
      ojson comps = ojson::array();
      auto e = central_idempotents(r);
      out << "group " << r.group.id << " of order " << r.order() << "\n";
      for (std::size_t i = 0; i < r.components.size(); ++i) {
        const auto& c = r.components[i];
        out << c.label << ": M_" << c.n << "(" << c.D.describe() << "), e = " << vec_str(e[i]) << "\n";
        comps.push_back({{"label", c.label},
                         {"n", c.n},
                         {"skew_field", c.D.describe()},
                         {"center_min_poly", vec_json(c.D.field->min_poly())},
                         {"idempotent", vec_json(e[i])}});
      }
      result["components"] = comps;
    } else if (*cond) {
      Registry r;
      ZLattice order;
      if (looks_like_instance(target)) {
        ProblemInstance inst = load_instance(target, g.registry);
        r = inst.reg;
        order = inst.order;
      } else {
        r = load_registry(target, g.registry);
        order = group_ring_lattice(r);
      }
      ZLattice mo = r.maximal_order.contains(order) ? r.maximal_order : maximal_order_containing(r.qg, order);
      ConductorData cd = conductor(r, order, mo);
      result["group"] = r.group.id;
      result["index_in_maximal_order"] = to_string(lattice_index(mo, cd.c));
      result["conductor"] = lattice_json(cd.c);
      ojson comps = ojson::array();
      out << "[M : c] = " << to_string(lattice_index(mo, cd.c)) << "\n";
      for (std::size_t i = 0; i < r.components.size(); ++i) {
        const auto& c = r.components[i];
        out << c.label << ": N(g) = " << to_string(c.D.field->ideal_norm(cd.g[i])) << "\n";
        comps.push_back({{"label", c.label},
                         {"g", lattice_json(cd.g[i])},
                         {"norm", to_string(c.D.field->ideal_norm(cd.g[i]))}});
      }
      result["components"] = comps;
    } else if (*ste) {
      ProblemInstance inst = load_instance(target, g.registry);
      fo.stop_after_step5 = true;
      FreenessCertificate c = is_free(inst, fo);
      ojson comps = ojson::array();
      for (const auto& l : c.components) {
        out << l.label << ": " << l.step5 << ", Steinitz class " << l.steinitz_class << "\n";
        ojson s = ojson::array();
        for (const auto& v : l.steinitz_ideal) s.push_back(vec_json(v));
        comps.push_back({{"component", l.label},
                         {"step5", l.step5},
                         {"steinitz_class", l.steinitz_class},
                         {"steinitz_ideal", s},
                         {"pip_result", l.pip}});
      }
      result["components"] = comps;
      if (c.verdict == Verdict::NotFreeOverMaxOrder) code = 2;
    } else if (*pip) {
      SkewField d = skew_from(poly, algebra);
      std::vector<RatVec> gens;
      for (const auto& s : split(ideal, ';')) {
        RatVec x = parse_list(s);
        if (x.size() != d.dim()) throw InvalidInput("--ideal: wrong number of coordinates");
        for (std::size_t l = 0; l < d.delta.rank(); ++l) gens.push_back(d.mul(d.delta.basis_vector(l), x));
      }
      ZLattice a = ZLattice::from_vectors(gens, d.dim());
      if (!a.is_full()) throw InvalidInput("--ideal: generators do not span a full ideal");
      PipResult p = d.principal(a);
      out << to_string(p.status);
      if (p.status == PipStatus::Principal) out << " " << vec_str(p.generator);
      out << "\n";
      result["status"] = to_string(p.status);
      if (p.status == PipStatus::Principal) result["generator"] = vec_json(p.generator);
      result["note"] = p.note;
      if (p.status == PipStatus::Unknown) code = 3;
    } else if (*sk1) {
      SkewField d = skew_from("", algebra);
      SK1Data s = sk1_generators(d);
      MatrixSpace ms(d, 2);
      ojson gens = ojson::array();
      if (s.gens.empty()) out << "no finite ramification: SK1 is trivial\n";
      for (const auto& x : s.gens) {
        out << "p = " << x.p << ", group order " << x.group_order << "\n";
        for (std::size_t i = 0; i < 2; ++i) {
          out << "  ";
          for (std::size_t j = 0; j < 2; ++j) out << vec_str(ms.entry(x.g, i, j)) << (j ? "\n" : "  ");
        }
        gens.push_back({{"p", x.p.get_str()},
                        {"group_order", x.group_order.get_str()},
                        {"matrix", vec_json(x.g)},
                        {"S", vec_json(x.S)},
                        {"T", vec_json(x.T)},
                        {"reduced_norm", vec_json(reduced_norm_2x2(ms, x.g))}});
      }
      result["generators"] = gens;
    } else if (*ur) {
      SkewField d = skew_from(poly, algebra);
      Int mv(modulus);
      if (mv <= 0) throw InvalidInput("--modulus must be positive");
      const NumberField& f = *d.field;
      ZLattice gl = f.principal_ideal(f.embed(Rat(mv)));
      if (route == "k1") {
        if (k != 1) throw InvalidInput("--route k1 needs k = 1");
        auto im = unit_image_via_k1(d, gl);
        out << "image size " << im.size() << "\n";
        result["size"] = im.size();
        result["complete"] = true;
      } else {
        RepSet rs = unit_representatives(d, gl, k);
        out << "image size " << rs.size() << (rs.complete ? "" : " (incomplete: " + rs.note + ")") << "\n";
        result["size"] = rs.size();
        result["complete"] = rs.complete;
        result["generators"] = rs.gens.size();
        if (!rs.complete) code = 3;
      }
    } else if (*isf) {
      ProblemInstance inst = load_instance(target, g.registry);
      FreenessCertificate c = is_free(inst, fo);
      out << "verdict: " << to_string(c.verdict) << "\n";
      for (const auto& a : c.generators) out << "generator: " << vec_str(a) << "\n";
      for (const auto& r : c.reasons) out << "reason: " << r << "\n";
      if (!g.json_out.empty()) write_file(g.json_out, certificate_to_json(c));
      g.json_out.clear();
      code = c.verdict == Verdict::Free ? 0 : c.verdict == Verdict::Unknown ? 3 : 2;
    } else if (*ver) {
      ProblemInstance inst = load_instance(target, g.registry);
      FreenessCertificate c = parse_certificate(read_file(cert_path));
      bool ok = verify_certificate(inst, c);
      out << (ok ? "verified" : "rejected") << "\n";
      result["verified"] = ok;
      code = ok ? 0 : 2;
    } else if (*aso) {
      ProblemInstance inst = load_instance(target, g.registry);
      ZLattice a = associated_order(inst.reg, inst.action, inst.lattice);
      out << "[A : Z[G]] = " << to_string(lattice_index(a, group_ring_lattice(inst.reg))) << "\n";
      for (std::size_t j = 0; j < a.rank(); ++j) out << vec_str(a.basis_vector(j)) << "\n";
      result["pseudo_basis"] = lattice_json(a);
      result["index_over_group_ring"] = to_string(lattice_index(a, group_ring_lattice(inst.reg)));
    }
    if (!g.json_out.empty()) write_file(g.json_out, result.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace freeness
