#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "enriques/ints.hpp"

namespace enr {

// Element of a tower of simple extensions of Q.  Level 0 is a rational;
// level k is a polynomial in the k-th generator with level k-1 coefficients.
struct NfElem {
  int level = 0;
  Rat q;                  // level 0 payload
  std::vector<NfElem> c;  // level > 0 payload, degree < deg(minpoly)

  static NfElem rat(const Rat& v) {
    NfElem e;
    e.q = v;
    return e;
  }
};

using NfPoly = std::vector<NfElem>;  // dense, index = degree

// Raised by arithmetic when a zero test meets a proper factor of a defining
// polynomial: the computation path must fork on the two factors.
struct SplitNeeded {
  int level;       // 1-based tower level whose minimal polynomial factors
  NfPoly factor;   // monic proper divisor
};

class AlgebraicDegreeExceeded : public std::runtime_error {
 public:
  explicit AlgebraicDegreeExceeded(const std::string& m)
      : std::runtime_error(m) {}
};

// Square-free defining polynomials; elements are reduced lazily.  The
// classical dynamic-evaluation discipline: structural nonzero means nonzero
// for at least one conjugate, and inversion either succeeds for all of them
// or demands a split.
class Tower {
 public:
  std::vector<NfPoly> minpolys;  // minpolys[k] defines generator k+1 (monic,
                                 // coefficients of level k, degree >= 2)
  int max_degree = 16;

  int levels() const { return static_cast<int>(minpolys.size()); }
  long degree() const;

  NfElem zero(int level) const;
  NfElem one(int level) const;
  NfElem from_rat(const Rat& v, int level) const;
  NfElem promote(const NfElem& e, int level) const;

  NfElem add(const NfElem& a, const NfElem& b) const;
  NfElem sub(const NfElem& a, const NfElem& b) const;
  NfElem neg(const NfElem& a) const;
  NfElem mul(const NfElem& a, const NfElem& b) const;
  NfElem reduce(const NfElem& e) const;  // mod the defining polynomials

  bool is_zero(const NfElem& e) const;   // may throw SplitNeeded
  NfElem inverse(const NfElem& e) const; // may throw SplitNeeded

  // Adjoin a root of the monic square-free polynomial p (degree >= 2 grows
  // the tower; degree 1 returns the root itself).
  NfElem adjoin(const NfPoly& p);

  // The tower after replacing minpoly[level-1] by the given monic factor.
  Tower refined(int level, const NfPoly& factor) const;

  std::string render(const NfElem& e) const;

  // dense polynomial helpers over the top level
  int top() const { return levels(); }
  NfPoly p_trim(NfPoly p) const;
  int p_deg(const NfPoly& p) const;  // -1 for zero
  NfPoly p_add(const NfPoly& a, const NfPoly& b) const;
  NfPoly p_sub(const NfPoly& a, const NfPoly& b) const;
  NfPoly p_mul(const NfPoly& a, const NfPoly& b) const;
  NfPoly p_scale(const NfPoly& a, const NfElem& s) const;
  NfPoly p_derivative(const NfPoly& a) const;
  NfPoly p_monic(const NfPoly& a) const;
  // division by a monic divisor
  void p_divrem_monic(const NfPoly& a, const NfPoly& b, NfPoly& q, NfPoly& r) const;
  NfPoly p_gcd_monic(NfPoly a, NfPoly b) const;
  NfPoly p_div_exact(const NfPoly& a, const NfPoly& b) const;
  NfElem p_eval(const NfPoly& a, const NfElem& x) const;

  // Yun decomposition: list of (monic square-free factor, multiplicity)
  std::vector<std::pair<NfPoly, int>> squarefree_decomposition(const NfPoly& p) const;
};

} // namespace enr
