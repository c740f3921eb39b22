#pragma once

#include "freeness/unit_reps.hpp"
#include "freeness/wedderburn.hpp"

namespace freeness {

// X inside V = Q^m with G acting through action[g]; A an order in Q[G].
struct ProblemInstance {
  Registry reg;
  std::vector<RatMat> action;  // per group element, in table order
  ZLattice lattice;            // X
  ZLattice order;              // A, in Q[G] coordinates
  std::string order_kind = "group_ring";  // group_ring | associated | explicit
  std::size_t rank = 0;                   // d; 0 means derive it
};

// d = dim V / |G|.
std::size_t rank_check(const Registry& r, std::size_t dim_v);
// sum x_g action[g]
RatMat module_action(const std::vector<RatMat>& action, const RatVec& x);
// Checks the homomorphism, that A is an order and that X is an A-lattice of full rank.
void validate_instance(const ProblemInstance& inst);
// { lambda in Q[G] : lambda X in X }
ZLattice associated_order(const Registry& r, const std::vector<RatMat>& action, const ZLattice& x);

struct LocalFreeness {
  enum class Status { Yes, No, Unknown };
  struct AtPrime {
    Int p;
    LocalBasisResult::Status status = LocalBasisResult::Status::GaveUp;
    std::vector<RatVec> witness;
  };
  Status status = Status::Yes;
  std::vector<AtPrime> primes;
};
std::string to_string(LocalFreeness::Status s);
LocalFreeness locally_free_check(const ProblemInstance& inst, std::size_t d,
                                 const std::vector<Int>& primes, std::mt19937_64& rng);

// Tuple search over the representative sets, done on residues: the contribution
// of lambda_i to alpha_j modulo X depends on lambda_i modulo f_i only.
struct EnumerationInput {
  const ComponentFrame* frame;
  const std::vector<RatVec>* beta;  // beta_{i,1..d}
  const RepSet* reps;
};
struct EnumerationResult {
  bool found = false;
  bool complete = true;  // false when the cap cut the search short
  std::vector<std::size_t> choice;  // RepSet index per component (input order)
  std::vector<RatVec> alpha;
  Int tuple_space = 1;
  Int tuples_tried = 0;
};
EnumerationResult enumerate_generators(const ZLattice& x, std::size_t d,
                                       const std::vector<EnumerationInput>& comps,
                                       std::uint64_t tuple_cap, unsigned jobs = 1);

enum class Verdict { Free, NotFree, NotLocallyFree, NotFreeOverMaxOrder, Unknown };
std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& s);

struct ComponentLog {
  std::string label;
  std::string step5;  // basis | not_free | unknown | unsupported
  std::string steinitz_class;  // trivial | nontrivial | unknown
  std::vector<RatVec> steinitz_ideal;
  std::string pip;
  std::string conductor_norm;
  std::size_t repset_size = 0;
  bool repset_complete = false;
  std::string note;
};

struct FreenessOptions {
  std::uint64_t seed = 1;
  std::uint64_t tuple_cap = std::uint64_t(1) << 28;
  std::size_t repset_cap = std::size_t(1) << 24;
  unsigned jobs = 1;
  bool timings = false;
  bool stop_after_step5 = false;
};

struct FreenessCertificate {
  Verdict verdict = Verdict::Unknown;
  std::string group;
  std::size_t rank = 0;
  std::vector<RatVec> generators;
  std::vector<ComponentLog> components;
  std::string local_freeness = "yes";
  std::vector<std::pair<std::string, std::string>> local_primes;  // prime, status
  std::string h2prime;
  std::vector<std::string> reasons;
  std::uint64_t seed = 1;
  std::uint64_t tuple_cap = 0;
  std::string tuples_tried = "0";
  std::string registry_version;
  std::vector<std::pair<std::string, double>> timings;
};

FreenessCertificate is_free(const ProblemInstance& inst, const FreenessOptions& opt = {});

// FREE: alpha_j in X and X = A alpha_1 + ... + A alpha_d with index 1.
// NOT_LOCALLY_FREE: the cited prime admits no local basis (exhaustive search).
// Other verdicts are not independently checkable and are rejected.
bool verify_certificate(const ProblemInstance& inst, const FreenessCertificate& cert);

}  // namespace freeness
