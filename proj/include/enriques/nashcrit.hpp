#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enriques/branchinv.hpp"
#include "enriques/proximity.hpp"
#include "enriques/valorder.hpp"

namespace enr {

enum class NashReason {
  valuative_fail,
  elm_codim,
  improved_codim,
  beta1_obstruction,
  domination_sufficient,
  toric_sufficient,
};

std::string to_string(NashReason r);

struct NashFinding {
  NashReason kind;
  bool applicable = true;  // false e.g. for beta1 at contact != 1
  bool fired = false;      // obstruction fired / sufficient condition met
  // numeric evidence (populated where meaningful)
  Int lambda_e = 0, lambda_f = 0;
  int contact = 0, k = 0, h = 0;
  long beta1 = -1, m0_f = -1;
  std::string note;
};

enum class NashStatus { yes, no, unknown };

struct NashVerdict {
  NashStatus status = NashStatus::unknown;
  std::vector<NashFinding> reasons;
  ValVerdict valuative;
  // a yes verdict upgrades to every combinatorially equivalent pair of
  // contact order at least this one
  int yes_from_contact = 0;
};

// codim(N_E) < codim(N_F) is necessary: fires iff lambda(E) >= lambda(F).
NashFinding elm_codim_check(const PairConfig& cfg);

// Enhanced discrepancy bound lambda(E) < lambda(F) - k - h.
NashFinding improved_codim_check(const PairConfig& cfg);

// At contact order 1: fires iff m_O(h_F) = beta_1(E) + 1.
NashFinding beta1_obstruction(const PairConfig& cfg);

NashVerdict nash_verdict(const PairConfig& cfg);

} // namespace enr
