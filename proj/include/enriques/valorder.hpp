#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enriques/branchinv.hpp"
#include "enriques/proximity.hpp"

namespace enr {

struct ValCheck {
  int vertex;  // -1 encodes the transversal smooth probe
  Int lhs;     // value against E
  Int rhs;     // value against F
};

struct ValVerdict {
  bool holds = true;
  std::vector<ValCheck> witnesses;
  std::optional<int> first_failure;
};

enum class ValCriterion {
  AllVertices,       // nu_H(h_E) <= nu_H(h_F), H over the whole model
  AllVerticesDual,   // nu_E(h_H) <= nu_F(h_H), H over the whole model
  MinModelOfE,       // nu_H(h_E) <= nu_H(h_F), H in the minimal model of E
  MinModelOfEDual,   // nu_E(h_H) <= nu_F(h_H), H in the minimal model of E
};

// Decides E <=_nu F by finitely many inequalities; the default checks the
// curvetta pairings at every vertex of the minimal model of E.
ValVerdict val_leq(const PairConfig& cfg);
ValVerdict val_leq_criterion(const PairConfig& cfg, ValCriterion crit);

// Prime fast path: checks only at the dual-graph end components of the
// minimal model of E, at E itself and at a transversal smooth probe.
ValVerdict val_leq_prime(const PairConfig& cfg);

// Longest totally ordered chain of infinitely near points of the minimal
// divisor representing the type.
int complexity(const TopologicalType& top);

struct EnumLimits {
  long max_vertices = -1;  // safety cap; termination is intrinsic
};

struct DominatedEntry {
  PairConfig config;       // representative at the maximal feasible contact
  std::string canon_pair;
  std::string canon_e;     // canonical key of the dominated type alone
  int max_contact;
  int min_contact;         // least contact at which domination already holds
};

struct EnumResult {
  std::vector<DominatedEntry> entries;
  std::vector<std::string> all_pairs;  // canonical keys of every dominated
                                       // configuration encountered
  bool complete = true;
  std::string note;
};

// All combinatorial types of prime divisors E with E <=_nu F, grafted onto
// the minimal model of F at every feasible contact.
EnumResult enumerate_dominated(const ProximityTree& ftree, const Divisor& f,
                               const EnumLimits& limits = {});

struct FfpVerdict {
  bool adjacent = false;
  std::optional<PairConfig> witness;  // E' as left, F' as right
  int search_bound = 0;               // complexity bound M
  long configs_checked = 0;
};

// Adjacency fixing the free points: some pair E' in [E]_top, F' in [F]_top
// in a common model satisfies nu_{E'} <= nu_{F'}; both complexities are
// bounded by the maximum of the two type complexities.
FfpVerdict decide_ffp_adjacency(const TopologicalType& top_e,
                                const TopologicalType& top_f);

} // namespace enr
