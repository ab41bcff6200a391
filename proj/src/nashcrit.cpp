#include "enriques/nashcrit.hpp"

#include <algorithm>
#include <stdexcept>

namespace enr {

std::string to_string(NashReason r) {
  switch (r) {
    case NashReason::valuative_fail: return "valuative_fail";
    case NashReason::elm_codim: return "elm_codim";
    case NashReason::improved_codim: return "improved_codim";
    case NashReason::beta1_obstruction: return "beta1_obstruction";
    case NashReason::domination_sufficient: return "domination_sufficient";
    case NashReason::toric_sufficient: return "toric_sufficient";
  }
  return "?";
}

namespace {

void require_prime_pair(const PairConfig& cfg) {
  if (!cfg.left.is_prime() || !cfg.right.is_prime())
    throw std::invalid_argument("Nash criteria require prime divisors");
}

std::vector<long> curvetta_longs(const ProximityTree& t, int v) {
  IntVec m = curvetta_multiplicities(t, v);
  std::vector<long> out;
  for (int c : t.chain(v)) out.push_back(to_long(m[c]));
  return out;
}

// free points at chain positions >= i (0-indexed; the first i points are
// the shared ones)
int free_points_from(const ProximityTree& t, int v, int i) {
  auto ch = t.chain(v);
  int n = 0;
  for (size_t p = i; p < ch.size(); ++p)
    if (t.is_free(ch[p])) ++n;
  return n;
}

} // namespace

NashFinding elm_codim_check(const PairConfig& cfg) {
  require_prime_pair(cfg);
  const int e = cfg.left.sole_vertex();
  const int f = cfg.right.sole_vertex();
  if (e == f) throw std::invalid_argument("elm_codim_check requires E != F");
  IntVec lambda = log_discrepancies(cfg.tree);
  NashFinding fnd;
  fnd.kind = NashReason::elm_codim;
  fnd.lambda_e = lambda[e];
  fnd.lambda_f = lambda[f];
  fnd.fired = lambda[e] >= lambda[f];
  return fnd;
}

NashFinding improved_codim_check(const PairConfig& cfg) {
  require_prime_pair(cfg);
  const int e = cfg.left.sole_vertex();
  const int f = cfg.right.sole_vertex();
  NashFinding fnd;
  fnd.kind = NashReason::improved_codim;
  if (e == f) {
    fnd.applicable = false;
    fnd.note = "E = F";
    return fnd;
  }
  IntVec lambda = log_discrepancies(cfg.tree);
  fnd.lambda_e = lambda[e];
  fnd.lambda_f = lambda[f];
  fnd.contact = contact_order(cfg);
  fnd.k = free_points_from(cfg.tree, f, fnd.contact);
  fnd.h = free_points_from(cfg.tree, e, fnd.contact) > 0 ? 1 : 0;
  // With movable free points the provable bound is lambda(E) <= lambda(F)-k-h
  // (the middle inclusion of the cylinder chain is not strict); only rigid
  // families (k = h = 0, properly nested irreducible sets) force strictness.
  if (fnd.k + fnd.h == 0)
    fnd.fired = lambda[e] >= lambda[f];
  else
    fnd.fired = lambda[e] > lambda[f] - fnd.k - fnd.h;
  return fnd;
}

NashFinding beta1_obstruction(const PairConfig& cfg) {
  require_prime_pair(cfg);
  NashFinding fnd;
  fnd.kind = NashReason::beta1_obstruction;
  fnd.contact = contact_order(cfg);
  if (fnd.contact != 1) {
    fnd.applicable = false;
    fnd.note = "contact order is not 1";
    return fnd;
  }
  const int e = cfg.left.sole_vertex();
  const int f = cfg.right.sole_vertex();
  CharSeq ce = multseq_to_char(curvetta_longs(cfg.tree, e));
  if (ce.g() == 0) {
    fnd.applicable = false;
    fnd.note = "E has a smooth curvetta";
    return fnd;
  }
  // The rigidity of the expansion pins the coefficient at exponent
  // beta_1 + 1 only below the top characteristic exponent; otherwise that
  // coefficient can absorb the pole and the wedge exists.
  if (ce.beta[1] + 1 >= ce.beta.back()) {
    fnd.applicable = false;
    fnd.note = "beta_1 + 1 is not below the last characteristic exponent";
    return fnd;
  }
  fnd.beta1 = ce.beta[1];
  fnd.m0_f = curvetta_longs(cfg.tree, f)[0];
  fnd.fired = fnd.m0_f == fnd.beta1 + 1;
  return fnd;
}

NashVerdict nash_verdict(const PairConfig& cfg) {
  require_prime_pair(cfg);
  const int e = cfg.left.sole_vertex();
  const int f = cfg.right.sole_vertex();
  NashVerdict out;
  out.valuative = val_leq(cfg);

  NashFinding val;
  val.kind = NashReason::valuative_fail;
  val.fired = !out.valuative.holds;
  out.reasons.push_back(val);

  bool obstructed = val.fired;

  if (e != f) {
    NashFinding elm = elm_codim_check(cfg);
    NashFinding imp = improved_codim_check(cfg);
    obstructed = obstructed || elm.fired || imp.fired;
    out.reasons.push_back(elm);
    out.reasons.push_back(imp);
  }
  NashFinding b1 = beta1_obstruction(cfg);
  obstructed = obstructed || (b1.applicable && b1.fired);
  out.reasons.push_back(b1);

  // sufficient side
  bool sufficient = false;
  {
    NashFinding dom;
    dom.kind = NashReason::domination_sufficient;
    auto chf = cfg.tree.chain(f);
    dom.fired = std::find(chf.begin(), chf.end(), e) != chf.end();
    sufficient = sufficient || dom.fired;
    out.reasons.push_back(dom);
  }
  {
    NashFinding toric;
    toric.kind = NashReason::toric_sufficient;
    if (!cfg.tree.is_satellite(e)) {
      toric.applicable = false;
      toric.note = "E is not a satellite divisor";
    } else {
      CharSeq ce = multseq_to_char(curvetta_longs(cfg.tree, e));
      if (ce.g() != 1) {
        toric.applicable = false;
        toric.note = "curvetta of E has more than one Puiseux pair";
      } else {
        toric.beta1 = ce.beta[1];
        toric.fired = out.valuative.holds;
      }
    }
    sufficient = sufficient || (toric.applicable && toric.fired);
    out.reasons.push_back(toric);
  }

  if (obstructed && sufficient)
    throw std::logic_error(
        "nash_verdict inconsistency: obstruction and sufficiency both fired");
  if (obstructed) {
    out.status = NashStatus::no;
  } else if (sufficient) {
    out.status = NashStatus::yes;
    out.yes_from_contact = (e == f) ? cfg.tree.depth(e) : contact_order(cfg);
  } else {
    out.status = NashStatus::unknown;
  }
  return out;
}

} // namespace enr
