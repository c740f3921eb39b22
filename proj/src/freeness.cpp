#include "freeness/freeness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace freeness {

std::size_t rank_check(const Registry& r, std::size_t dim_v) {
  const std::size_t n = r.order();
  if (dim_v == 0 || dim_v % n != 0)
    throw InvalidInput("rank_check: dim V = " + std::to_string(dim_v) + " is not a multiple of |G| = " +
                       std::to_string(n));
  return dim_v / n;
}

RatMat module_action(const std::vector<RatMat>& action, const RatVec& x) {
  const std::size_t m = action.at(0).rows();
  RatMat out(m, m);
  for (std::size_t g = 0; g < action.size(); ++g)
    if (x[g] != 0) out = out + scale(action[g], x[g]);
  return out;
}

void validate_instance(const ProblemInstance& inst) {
  const Registry& r = inst.reg;
  const std::size_t n = r.order();
  if (inst.action.size() != n) throw InvalidInput("instance: action must list every group element");
  const std::size_t m = inst.action[0].rows();
  for (const auto& a : inst.action)
    if (a.rows() != m || a.cols() != m) throw InvalidInput("instance: action matrices of mixed size");
  if (inst.action[0] != RatMat::identity(m)) throw InvalidInput("instance: identity does not act trivially");
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if (inst.action[g] * inst.action[h] != inst.action[r.group.mul[g][h]])
        throw InvalidInput("instance: action is not a homomorphism at (" + std::to_string(g) + ", " +
                           std::to_string(h) + ")");
  if (inst.lattice.dim() != m || !inst.lattice.is_full())
    throw InvalidInput("instance: X is not a full lattice in V");
  if (inst.order.dim() != n || !inst.order.is_full() || !is_order(r.qg, inst.order))
    throw InvalidInput("instance: A is not an order in Q[G]");
  for (std::size_t k = 0; k < inst.order.rank(); ++k) {
    RatMat a = module_action(inst.action, inst.order.basis_vector(k));
    for (std::size_t l = 0; l < inst.lattice.rank(); ++l)
      if (!inst.lattice.contains(a * inst.lattice.basis_vector(l)))
        throw InvalidInput("instance: X is not stable under A");
  }
  if (inst.rank != 0 && inst.rank * n != m) throw InvalidInput("instance: rank does not match dim V");
  // V = Q[G]^d exactly when each e_i V has dimension d dim A_i
  const std::size_t d = rank_check(r, m);
  for (std::size_t i = 0; i < r.components.size(); ++i)
    if (rank(module_action(inst.action, r.idempotents[i])) != d * r.components[i].dim())
      throw InvalidInput("instance: V is not a free Q[G]-module (component " + r.components[i].label + ")");
}

ZLattice associated_order(const Registry& r, const std::vector<RatMat>& action, const ZLattice& x) {
  const std::size_t n = r.order(), m = x.dim();
  if (!x.is_full()) throw InvalidInput("associated_order: X is not a full lattice");
  RatMat binv = inverse(x.basis());
  RatMat t(0, n);
  for (std::size_t l = 0; l < x.rank(); ++l) {
    RatVec v = x.basis_vector(l);
    RatMat block(m, n);
    for (std::size_t g = 0; g < n; ++g) block.set_col(g, binv * (action[g] * v));
    t = t.vcat(block);
  }
  if (rank(t) != n) throw InvalidInput("associated_order: the action is not faithful");
  ZLattice a = preimage(t);
  if (!is_order(r.qg, a)) throw Error("associated_order: result is not an order");
  return a;
}

std::string to_string(LocalFreeness::Status s) {
  switch (s) {
    case LocalFreeness::Status::Yes: return "yes";
    case LocalFreeness::Status::No: return "no";
    default: return "unknown";
  }
}

LocalFreeness locally_free_check(const ProblemInstance& inst, std::size_t d,
                                 const std::vector<Int>& primes, std::mt19937_64& rng) {
  std::vector<RatMat> act;
  for (std::size_t k = 0; k < inst.order.rank(); ++k)
    act.push_back(module_action(inst.action, inst.order.basis_vector(k)));
  LocalFreeness lf;
  for (const auto& p : primes) {
    LocalFreeness::AtPrime at;
    at.p = p;
    try {
      auto res = local_basis(inst.lattice, act, p, d, rng);
      at.status = res.status;
      at.witness = res.elems;
    } catch (const Unsupported&) {
      at.status = LocalBasisResult::Status::GaveUp;
    }
    if (at.status == LocalBasisResult::Status::NotExist) lf.status = LocalFreeness::Status::No;
    else if (at.status == LocalBasisResult::Status::GaveUp && lf.status == LocalFreeness::Status::Yes)
      lf.status = LocalFreeness::Status::Unknown;
    lf.primes.push_back(std::move(at));
    if (lf.status == LocalFreeness::Status::No) break;
  }
  return lf;
}

// ---------------------------------------------------------------- enumeration

namespace {

// M_n(D) block (j, l) of a k x k matrix over D, k = n d.
RatVec block_of(const MatrixSpace& big, const MatrixSpace& ms, const RatVec& x, std::size_t j,
                std::size_t l) {
  const std::size_t n = ms.n;
  RatVec y(ms.alg.dim());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) y = y + ms.unit(a, b, big.entry(x, j * n + a, l * n + b));
  return y;
}

struct Contributions {
  std::size_t count = 0;
  std::vector<std::uint32_t> data;  // count x len
};

}  // namespace

EnumerationResult enumerate_generators(const ZLattice& x, std::size_t d,
                                       const std::vector<EnumerationInput>& comps,
                                       std::uint64_t tuple_cap, unsigned jobs) {
  const std::size_t m = x.dim(), rk = x.rank(), len = d * rk;
  const std::size_t nc = comps.size();
  EnumerationResult res;

  // z[i][(a,b,c,l)] = X-coordinates of act(E_ab delta_c) beta_l
  std::vector<std::vector<RatVec>> z(nc);
  Int lden = 1;
  for (std::size_t i = 0; i < nc; ++i) {
    const ComponentFrame& f = *comps[i].frame;
    const MatrixSpace& ms = f.space;
    const SkewField& D = ms.D;
    const std::size_t n = ms.n, t = D.dim();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < t; ++c) {
          RatMat act = f.act_frame(ms.unit(a, b, D.delta.basis_vector(c)));
          for (std::size_t l = 0; l < d; ++l) {
            auto co = x.coordinates(act * (*comps[i].beta)[l]);
            if (!co) throw Error("enumerate_generators: vector outside V");
            Int den = denominator_lcm(*co);
            mpz_lcm(lden.get_mpz_t(), lden.get_mpz_t(), den.get_mpz_t());
            z[i].push_back(std::move(*co));
          }
        }
  }
  if (!lden.fits_ulong_p() || lden > Int(1) << 31)
    throw Unsupported("enumerate_generators: denominators too large");
  const std::uint64_t L = lden.get_ui();
  auto modl = [&](const Rat& q) -> std::uint64_t {
    Int v = q.get_num() * (lden / q.get_den());
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), lden.get_mpz_t());
    return v.get_ui();
  };

  std::vector<Contributions> contrib(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    const RepSet& rs = *comps[i].reps;
    const MatrixSpace& ms = comps[i].frame->space;
    const std::size_t n = ms.n, t = ms.D.dim(), k = rs.k;
    if (k != n * d) throw InvalidInput("enumerate_generators: RepSet has the wrong size");
    std::vector<std::vector<std::uint64_t>> zm;
    for (const auto& v : z[i]) {
      std::vector<std::uint64_t> w(rk);
      for (std::size_t q = 0; q < rk; ++q) w[q] = modl(v[q]);
      zm.push_back(std::move(w));
    }
    Contributions& ct = contrib[i];
    ct.count = rs.size();
    if (static_cast<double>(ct.count) * static_cast<double>(len) > double(std::uint64_t(1) << 28))
      throw Unsupported("enumerate_generators: representative sets too large to tabulate");
    ct.data.assign(ct.count * len, 0);
    std::vector<std::uint64_t> acc(len);
    for (std::size_t e = 0; e < ct.count; ++e) {
      std::fill(acc.begin(), acc.end(), 0);
      ResMat res_m = rs.residue(e);
      for (std::size_t J = 0; J < k; ++J)
        for (std::size_t Lc = 0; Lc < k; ++Lc) {
          const auto& ent = res_m[J * k + Lc];
          const std::size_t j = J / n, a = J % n, l = Lc / n, b = Lc % n;
          for (std::size_t c = 0; c < t; ++c) {
            if (ent[c] == 0) continue;
            const auto& w = zm[((a * n + b) * t + c) * d + l];
            const std::uint64_t dg = static_cast<std::uint64_t>(ent[c]) % L;
            for (std::size_t q = 0; q < rk; ++q) acc[j * rk + q] = (acc[j * rk + q] + dg * w[q]) % L;
          }
        }
      for (std::size_t q = 0; q < len; ++q) ct.data[e * len + q] = static_cast<std::uint32_t>(acc[q]);
    }
  }

  // search order: components by |U_i| ascending; the last one is matched by lookup
  std::vector<std::size_t> ord(nc);
  for (std::size_t i = 0; i < nc; ++i) ord[i] = i;
  std::stable_sort(ord.begin(), ord.end(),
                   [&](std::size_t a, std::size_t b) { return contrib[a].count < contrib[b].count; });
  for (std::size_t i = 0; i < nc; ++i) res.tuple_space *= Int(static_cast<unsigned long>(contrib[i].count));

  auto key_of = [&](const std::uint32_t* p) {
    return std::string(reinterpret_cast<const char*>(p), len * sizeof(std::uint32_t));
  };
  std::unordered_map<std::string, std::size_t> last_lookup;
  std::size_t last_count = 1;
  if (nc > 0) {
    const Contributions& lc = contrib[ord.back()];
    last_count = lc.count;
    for (std::size_t e = lc.count; e-- > 0;) last_lookup[key_of(&lc.data[e * len])] = e;
  }
  const std::size_t np = nc > 0 ? nc - 1 : 0;  // prefix components
  Int prefixes = 1;
  for (std::size_t s = 0; s < np; ++s) prefixes *= Int(static_cast<unsigned long>(contrib[ord[s]].count));
  Int allowed = Int(static_cast<unsigned long>(tuple_cap)) / Int(static_cast<unsigned long>(last_count));
  if (allowed < 1) allowed = 1;
  Int todo = prefixes;
  if (todo > allowed) {
    todo = allowed;
    res.complete = false;
  }
  const std::uint64_t ntodo = todo.get_ui();

  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::mutex mu;
  std::vector<std::size_t> best_choice;
  auto work = [&](std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi) return;
    std::vector<std::size_t> digit(np);
    std::uint64_t v = lo;
    for (std::size_t s = np; s-- > 0;) {
      std::uint64_t c = contrib[ord[s]].count;
      digit[s] = v % c;
      v /= c;
    }
    // partial[s] = sum of contributions of prefix components 0..s-1
    std::vector<std::vector<std::uint64_t>> partial(np + 1, std::vector<std::uint64_t>(len, 0));
    auto rebuild = [&](std::size_t from) {
      for (std::size_t s = from; s < np; ++s) {
        const std::uint32_t* p = &contrib[ord[s]].data[digit[s] * len];
        for (std::size_t q = 0; q < len; ++q) partial[s + 1][q] = (partial[s][q] + p[q]) % L;
      }
    };
    rebuild(0);
    std::vector<std::uint32_t> need(len);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      if (idx > best.load()) return;
      for (std::size_t q = 0; q < len; ++q)
        need[q] = static_cast<std::uint32_t>((L - partial[np][q]) % L);
      auto it = nc > 0 ? last_lookup.find(key_of(need.data())) : last_lookup.end();
      bool hit = nc == 0 ? std::all_of(need.begin(), need.end(), [](std::uint32_t q) { return q == 0; })
                         : it != last_lookup.end();
      if (hit) {
        std::lock_guard<std::mutex> g(mu);
        if (idx < best.load()) {
          best = idx;
          best_choice.assign(nc, 0);
          for (std::size_t s = 0; s < np; ++s) best_choice[ord[s]] = digit[s];
          if (nc > 0) best_choice[ord.back()] = it->second;
        }
        return;
      }
      // odometer
      std::size_t s = np;
      while (s-- > 0) {
        if (++digit[s] < contrib[ord[s]].count) break;
        digit[s] = 0;
      }
      rebuild(s == static_cast<std::size_t>(-1) ? 0 : s);
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1 || ntodo < 2 * jobs) {
    work(0, ntodo);
  } else {
    std::vector<std::thread> th;
    std::uint64_t chunk = (ntodo + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w)
      th.emplace_back(work, std::min<std::uint64_t>(ntodo, w * chunk),
                      std::min<std::uint64_t>(ntodo, (w + 1) * chunk));
    for (auto& t : th) t.join();
  }
  std::uint64_t b = best.load();
  std::uint64_t tried_prefix = b == std::numeric_limits<std::uint64_t>::max() ? ntodo : b + 1;
  res.tuples_tried = Int(static_cast<unsigned long>(tried_prefix)) * Int(static_cast<unsigned long>(last_count));
  if (b == std::numeric_limits<std::uint64_t>::max()) return res;

  res.found = true;
  res.complete = true;
  res.choice = best_choice;
  res.alpha.assign(d, RatVec(m));
  for (std::size_t i = 0; i < nc; ++i) {
    const ComponentFrame& f = *comps[i].frame;
    const RepSet& rs = *comps[i].reps;
    RatVec lam = rs.lift(best_choice[i]);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        res.alpha[j] = res.alpha[j] + f.act_frame(block_of(rs.space, f.space, lam, j, l)) * (*comps[i].beta)[l];
  }
  return res;
}

// ---------------------------------------------------------------- verdicts

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Free: return "FREE";
    case Verdict::NotFree: return "NOT_FREE";
    case Verdict::NotLocallyFree: return "NOT_LOCALLY_FREE";
    case Verdict::NotFreeOverMaxOrder: return "NOT_FREE_OVER_MAXORDER";
    default: return "UNKNOWN";
  }
}

Verdict parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::Free, Verdict::NotFree, Verdict::NotLocallyFree, Verdict::NotFreeOverMaxOrder,
                    Verdict::Unknown})
    if (to_string(v) == s) return v;
  throw InvalidInput("unknown verdict '" + s + "'");
}

namespace {

bool generates(const ProblemInstance& inst, const std::vector<RatVec>& alpha) {
  const ZLattice& x = inst.lattice;
  for (const auto& a : alpha)
    if (a.size() != x.dim() || !x.contains(a)) return false;
  std::vector<RatVec> gens;
  for (std::size_t k = 0; k < inst.order.rank(); ++k) {
    RatMat a = module_action(inst.action, inst.order.basis_vector(k));
    for (const auto& v : alpha) gens.push_back(a * v);
  }
  ZLattice span = ZLattice::from_vectors(gens, x.dim());
  return span.is_full() && gens.size() == x.rank() && lattice_index(x, span) == 1;
}

std::string fmt_ideal_norm(const NumberField& f, const ZLattice& g) {
  return to_string(f.ideal_norm(g));
}

}  // namespace

FreenessCertificate is_free(const ProblemInstance& inst, const FreenessOptions& opt) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  auto lap = [&](FreenessCertificate& c, const std::string& what) {
    if (!opt.timings) return;
    auto t1 = clock::now();
    c.timings.emplace_back(what, std::chrono::duration<double>(t1 - t0).count());
    t0 = t1;
  };

  const Registry& r = inst.reg;
  FreenessCertificate cert;
  cert.group = r.group.id;
  cert.seed = opt.seed;
  cert.tuple_cap = opt.tuple_cap;
  cert.registry_version = r.version;
  std::mt19937_64 rng(opt.seed);

  // step 1
  validate_instance(inst);
  const std::size_t d = inst.rank ? inst.rank : rank_check(r, inst.lattice.dim());
  cert.rank = d;
  H2Report h2 = h2prime_report(r, d);
  cert.h2prime = h2.overall;
  for (const auto& n : h2.notes) cert.reasons.push_back("h2prime: " + n);

  // step 2: a maximal order containing A
  ZLattice mo = r.maximal_order;
  if (!mo.contains(inst.order)) mo = maximal_order_containing(r.qg, inst.order);
  lap(cert, "maximal_order");

  // steps 3-4
  ConductorData cd = conductor(r, inst.order, mo);
  lap(cert, "conductor");

  const std::size_t m = inst.lattice.dim();
  std::vector<RatMat> mact;
  for (std::size_t k = 0; k < mo.rank(); ++k) mact.push_back(module_action(inst.action, mo.basis_vector(k)));
  std::vector<RatVec> mxv;
  for (const auto& a : mact)
    for (std::size_t l = 0; l < inst.lattice.rank(); ++l) mxv.push_back(a * inst.lattice.basis_vector(l));
  const ZLattice mx = ZLattice::from_vectors(mxv, m);

  // step 5
  const std::size_t nc = r.components.size();
  std::vector<ComponentFrame> frames(nc);
  std::vector<FreeTestResult> bases(nc);
  std::vector<bool> usable(nc, false);
  bool any_not_free = false, any_gap = false;
  for (std::size_t i = 0; i < nc; ++i) {
    const WedderburnComponent& c = r.components[i];
    ComponentLog log;
    log.label = c.label;
    log.conductor_norm = fmt_ideal_norm(*c.D.field, cd.g[i]);
    try {
      std::vector<RatMat> basis_act;
      for (std::size_t k = 0; k < c.dim(); ++k)
        basis_act.push_back(module_action(inst.action, r.lift(i, c.alg.basis_element(k))));
      auto act = [basis_act, m](const RatVec& y) {
        RatMat out(m, m);
        for (std::size_t k = 0; k < y.size(); ++k)
          if (y[k] != 0) out = out + scale(basis_act[k], y[k]);
        return out;
      };
      ZLattice mi = r.component_lattice(mo, i);
      ComponentFrame f;
      if (mi == c.max_order) {
        f = ComponentFrame::standard(c.D, c.n, act);
      } else if (c.n == 1) {
        SkewField dd = c.D;
        if (dd.kind == SkewField::Kind::Quaternion) dd = SkewField::from_quaternion(c.D.quat, mi);
        f = ComponentFrame::standard(dd, 1, act);
      } else {
        NiceConjugation nice = conjugate_to_nice(c.D, mi, c.n);
        if (!normalize_nice(c.D, c.n, nice))
          throw Unsupported("maximal order is conjugate to a nice order with a non-principal ideal");
        f.space = MatrixSpace(c.D, c.n);
        f.S = nice.S;
        f.S_inv = nice.S_inv;
        f.order = mi;
        f.act = act;
      }
      RatMat eps = act(c.alg.one());
      std::vector<RatVec> xi;
      for (std::size_t l = 0; l < mx.rank(); ++l) xi.push_back(eps * mx.basis_vector(l));
      ZLattice xlat = ZLattice::from_vectors(xi, m);
      FreeTestResult ft = max_order_free_test(f, xlat, d, h2.components[i].has_cancellation());
      log.step5 = to_string(ft.status);
      log.pip = to_string(ft.pip.status);
      log.steinitz_class = ft.pip.status == PipStatus::Principal      ? "trivial"
                           : ft.pip.status == PipStatus::NotPrincipal ? "nontrivial"
                                                                      : "unknown";
      for (std::size_t k = 0; k < ft.steinitz_ideal.rank(); ++k)
        log.steinitz_ideal.push_back(ft.steinitz_ideal.basis_vector(k));
      log.note = ft.note;
      if (ft.status == FreeTestResult::Status::NotFree) {
        any_not_free = true;
        cert.reasons.push_back(c.label + ": M_i X is not free (" + ft.note + ")");
      } else if (ft.status == FreeTestResult::Status::Unknown) {
        any_gap = true;
        cert.reasons.push_back(c.label + ": step 5 inconclusive (" + ft.note + ")");
      } else {
        usable[i] = true;
      }
      frames[i] = std::move(f);
      bases[i] = std::move(ft);
    } catch (const Unsupported& e) {
      log.step5 = "unsupported";
      log.note = e.what();
      any_gap = true;
      cert.reasons.push_back(c.label + ": unsupported (" + std::string(e.what()) + ")");
    }
    cert.components.push_back(std::move(log));
  }
  lap(cert, "step5");
  if (opt.stop_after_step5) {
    cert.verdict = any_not_free ? Verdict::NotFreeOverMaxOrder : Verdict::Unknown;
    return cert;
  }
  if (any_not_free) {
    cert.verdict = Verdict::NotFreeOverMaxOrder;
    return cert;
  }

  // step 6
  Rat idx = lattice_index(mo, inst.order);
  std::vector<Int> primes = prime_factors(idx.get_num());
  LocalFreeness lf = locally_free_check(inst, d, primes, rng);
  cert.local_freeness = to_string(lf.status);
  for (const auto& at : lf.primes) {
    std::string s = at.status == LocalBasisResult::Status::Found      ? "found"
                    : at.status == LocalBasisResult::Status::NotExist ? "not_exist"
                                                                      : "gave_up";
    cert.local_primes.emplace_back(at.p.get_str(), s);
  }
  lap(cert, "step6");
  if (lf.status == LocalFreeness::Status::No) {
    cert.verdict = Verdict::NotLocallyFree;
    cert.reasons.push_back("no local basis at p = " + lf.primes.back().p.get_str() + " (exhaustive search)");
    return cert;
  }
  if (lf.status == LocalFreeness::Status::Unknown)
    cert.reasons.push_back("local freeness not decided at every prime (search budget exhausted)");
  if (any_gap) {
    cert.verdict = Verdict::Unknown;
    return cert;
  }

  // step 7
  std::vector<RepSet> reps(nc);
  bool reps_complete = true;
  for (std::size_t i = 0; i < nc; ++i) {
    const WedderburnComponent& c = r.components[i];
    try {
      RepSetOptions ro;
      ro.cap = opt.repset_cap;
      reps[i] = unit_representatives(frames[i].space.D, cd.g[i], c.n * d, ro);
    } catch (const Unsupported& e) {
      cert.components[i].note = e.what();
      cert.reasons.push_back(c.label + ": representative set unavailable (" + std::string(e.what()) + ")");
      cert.verdict = Verdict::Unknown;
      return cert;
    }
    cert.components[i].repset_size = reps[i].size();
    cert.components[i].repset_complete = reps[i].complete;
    if (!reps[i].complete) {
      reps_complete = false;
      cert.reasons.push_back(c.label + ": representative set incomplete (" + reps[i].note + ")");
    }
  }
  lap(cert, "step7");

  // step 8
  std::vector<EnumerationInput> in;
  for (std::size_t i = 0; i < nc; ++i) in.push_back({&frames[i], &bases[i].basis, &reps[i]});
  EnumerationResult er;
  try {
    er = enumerate_generators(inst.lattice, d, in, opt.tuple_cap, opt.jobs);
  } catch (const Unsupported& e) {
    cert.reasons.push_back(std::string("enumeration unavailable (") + e.what() + ")");
    cert.verdict = Verdict::Unknown;
    return cert;
  }
  cert.tuples_tried = er.tuples_tried.get_str();
  lap(cert, "step8");
  if (er.found) {
    if (!generates(inst, er.alpha)) throw Error("is_free: generators failed verification");
    cert.verdict = Verdict::Free;
    cert.generators = er.alpha;
    cert.reasons.clear();
    return cert;
  }
  if (!er.complete)
    cert.reasons.push_back("tuple enumeration truncated at cap " + std::to_string(opt.tuple_cap) + " of " +
                           er.tuple_space.get_str() + " tuples");
  bool cancel_ok = true;
  for (std::size_t i = 0; i < nc; ++i)
    if (h2.components[i].cancellation_needed && !h2.components[i].has_cancellation()) cancel_ok = false;
  if (er.complete && reps_complete && lf.status == LocalFreeness::Status::Yes && cancel_ok) {
    cert.verdict = Verdict::NotFree;
    cert.reasons.push_back("no tuple of representatives yields generators (complete enumeration of " +
                           er.tuple_space.get_str() + " tuples)");
  } else {
    cert.verdict = Verdict::Unknown;
    cert.reasons.push_back("no generators found; NOT_FREE is not certified");
  }
  return cert;
}

bool verify_certificate(const ProblemInstance& inst, const FreenessCertificate& cert) {
  const std::size_t d = inst.rank ? inst.rank : rank_check(inst.reg, inst.lattice.dim());
  if (cert.verdict == Verdict::Free) {
    if (cert.generators.size() != d) return false;
    return generates(inst, cert.generators);
  }
  if (cert.verdict == Verdict::NotLocallyFree) {
    for (const auto& [p, s] : cert.local_primes) {
      if (s != "not_exist") continue;
      std::vector<RatMat> act;
      for (std::size_t k = 0; k < inst.order.rank(); ++k)
        act.push_back(module_action(inst.action, inst.order.basis_vector(k)));
      std::mt19937_64 rng(cert.seed);
      auto res = local_basis(inst.lattice, act, Int(p), d, rng);
      return res.status == LocalBasisResult::Status::NotExist;
    }
  }
  return false;
}

}  // namespace freeness
