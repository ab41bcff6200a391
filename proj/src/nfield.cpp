#include "enriques/nfield.hpp"

#include <algorithm>
#include <sstream>

namespace enr {

long Tower::degree() const {
  long d = 1;
  for (const auto& mp : minpolys) d *= static_cast<long>(mp.size()) - 1;
  return d;
}

NfElem Tower::zero(int level) const { return from_rat(Rat(0), level); }
NfElem Tower::one(int level) const { return from_rat(Rat(1), level); }

NfElem Tower::from_rat(const Rat& v, int level) const {
  NfElem e = NfElem::rat(v);
  return promote(e, level);
}

NfElem Tower::promote(const NfElem& e, int level) const {
  if (e.level > level) throw std::logic_error("cannot demote tower element");
  NfElem cur = e;
  while (cur.level < level) {
    NfElem up;
    up.level = cur.level + 1;
    up.c.push_back(cur);
    cur = std::move(up);
  }
  return cur;
}

namespace {

bool structurally_zero(const NfElem& e) {
  if (e.level == 0) return e.q == 0;
  for (const auto& x : e.c)
    if (!structurally_zero(x)) return false;
  return true;
}

} // namespace

NfElem Tower::add(const NfElem& a0, const NfElem& b0) const {
  int lvl = std::max(a0.level, b0.level);
  NfElem a = promote(a0, lvl), b = promote(b0, lvl);
  if (lvl == 0) return NfElem::rat(a.q + b.q);
  NfElem out;
  out.level = lvl;
  size_t n = std::max(a.c.size(), b.c.size());
  for (size_t i = 0; i < n; ++i) {
    if (i < a.c.size() && i < b.c.size())
      out.c.push_back(add(a.c[i], b.c[i]));
    else if (i < a.c.size())
      out.c.push_back(a.c[i]);
    else
      out.c.push_back(b.c[i]);
  }
  return out;
}

NfElem Tower::neg(const NfElem& a) const {
  if (a.level == 0) return NfElem::rat(-a.q);
  NfElem out;
  out.level = a.level;
  for (const auto& x : a.c) out.c.push_back(neg(x));
  return out;
}

NfElem Tower::sub(const NfElem& a, const NfElem& b) const { return add(a, neg(b)); }

NfElem Tower::reduce(const NfElem& e) const {
  if (e.level == 0) return e;
  const NfPoly& mp = minpolys[e.level - 1];
  const int d = static_cast<int>(mp.size()) - 1;
  // reduce coefficients first
  std::vector<NfElem> cs;
  cs.reserve(e.c.size());
  for (const auto& x : e.c) cs.push_back(reduce(x));
  // then the degree, using that mp is monic: a^d = -(lower part)
  while (static_cast<int>(cs.size()) > d) {
    NfElem lead = cs.back();
    cs.pop_back();
    int shift = static_cast<int>(cs.size()) - d;
    if (!structurally_zero(lead))
      for (int i = 0; i < d; ++i) {
        NfElem t = mul(lead, promote(mp[i], lead.level));
        cs[shift + i] = sub(cs[shift + i], t);
      }
  }
  while (!cs.empty() && structurally_zero(cs.back())) cs.pop_back();
  NfElem out;
  out.level = e.level;
  out.c = std::move(cs);
  return out;
}

NfElem Tower::mul(const NfElem& a0, const NfElem& b0) const {
  int lvl = std::max(a0.level, b0.level);
  NfElem a = promote(a0, lvl), b = promote(b0, lvl);
  if (lvl == 0) return NfElem::rat(a.q * b.q);
  NfElem out;
  out.level = lvl;
  if (a.c.empty() || b.c.empty()) return out;
  out.c.assign(a.c.size() + b.c.size() - 1, zero(lvl - 1));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      out.c[i + j] = add(out.c[i + j], mul(a.c[i], b.c[j]));
  return reduce(out);
}

bool Tower::is_zero(const NfElem& e) const {
  NfElem r = reduce(e);
  if (structurally_zero(r)) return true;
  // nonzero representation: nonzero for all conjugates iff invertible
  (void)inverse(r);
  return false;
}

NfElem Tower::inverse(const NfElem& e0) const {
  NfElem e = reduce(e0);
  if (e.level == 0) {
    if (e.q == 0) throw std::domain_error("division by zero");
    return NfElem::rat(1 / e.q);
  }
  if (structurally_zero(e)) throw std::domain_error("division by zero");
  const int lvl = e.level;
  const NfPoly& mp = minpolys[lvl - 1];
  // extended Euclid in K[alpha] for gcd(e, mp); representations live one
  // level down
  NfPoly r0(mp.begin(), mp.end());
  NfPoly r1 = e.c;
  for (auto& x : r0) x = promote(x, lvl - 1);
  for (auto& x : r1) x = promote(x, lvl - 1);
  NfPoly s0{zero(lvl - 1)}, s1{one(lvl - 1)};  // coefficients of e

  auto deg = [&](const NfPoly& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d >= 0 && structurally_zero(reduce(p[d]))) --d;
    return d;
  };

  while (true) {
    int d1 = deg(r1);
    if (d1 < 0) {
      // gcd is r0: if nonconstant, e vanishes on the factor gcd
      int d0 = deg(r0);
      if (d0 == 0) throw std::logic_error("euclid lost the unit");
      NfPoly g;
      NfElem lead_inv = inverse(reduce(r0[d0]));
      for (int i = 0; i <= d0; ++i) g.push_back(mul(reduce(r0[i]), lead_inv));
      throw SplitNeeded{lvl, g};
    }
    if (d1 == 0) {
      // r1 constant: inverse = s1 / r1
      NfElem cinv = inverse(reduce(r1[0]));
      NfElem out;
      out.level = lvl;
      for (auto& x : s1) out.c.push_back(mul(x, cinv));
      return reduce(out);
    }
    // one division step of r0 by r1
    int d0 = deg(r0);
    if (d0 < d1) {
      std::swap(r0, r1);
      std::swap(s0, s1);
      continue;
    }
    NfElem linv = inverse(reduce(r1[d1]));
    NfElem factor = mul(reduce(r0[d0]), linv);
    int shift = d0 - d1;
    NfPoly nr0 = r0, ns0 = s0;
    nr0.resize(std::max(r0.size(), r1.size() + shift), zero(lvl - 1));
    ns0.resize(std::max(s0.size(), s1.size() + shift), zero(lvl - 1));
    for (size_t i = 0; i < r1.size(); ++i)
      nr0[i + shift] = sub(nr0[i + shift], mul(factor, r1[i]));
    for (size_t i = 0; i < s1.size(); ++i)
      ns0[i + shift] = sub(ns0[i + shift], mul(factor, s1[i]));
    nr0[d0] = zero(lvl - 1);  // exact cancellation
    r0 = std::move(nr0);
    s0 = std::move(ns0);
    if (deg(r0) < d1) {
      std::swap(r0, r1);
      std::swap(s0, s1);
    }
  }
}

NfElem Tower::adjoin(const NfPoly& p0) {
  NfPoly p = p_trim(p0);
  const int d = p_deg(p);
  if (d < 1) throw std::invalid_argument("adjoin needs a nonconstant polynomial");
  if (d == 1) {
    // monic z + c: the root is -c, already in the field
    return neg(promote(p[0], top()));
  }
  if (degree() * d > max_degree)
    throw AlgebraicDegreeExceeded("extension degree bound exceeded");
  NfPoly mp;
  for (const auto& x : p) mp.push_back(promote(x, top()));
  minpolys.push_back(std::move(mp));
  NfElem gen;
  gen.level = top();
  gen.c.assign(2, zero(top() - 1));
  gen.c[1] = one(top() - 1);
  return gen;
}

Tower Tower::refined(int level, const NfPoly& factor) const {
  Tower t = *this;
  NfPoly f = factor;
  for (auto& x : f) x = promote(x, level - 1);
  t.minpolys[level - 1] = std::move(f);
  return t;
}

std::string Tower::render(const NfElem& e0) const {
  NfElem e = reduce(e0);
  std::ostringstream os;
  std::function<void(const NfElem&)> emit = [&](const NfElem& x) {
    if (x.level == 0) {
      os << x.q.get_str();
      return;
    }
    if (x.c.empty()) {
      os << "0";
      return;
    }
    bool first = true;
    for (size_t i = 0; i < x.c.size(); ++i) {
      if (structurally_zero(x.c[i])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(";
      emit(x.c[i]);
      os << ")";
      if (i >= 1) {
        os << "*a" << x.level;
        if (i >= 2) os << "^" << i;
      }
    }
    if (first) os << "0";
  };
  emit(e);
  return os.str();
}

NfPoly Tower::p_trim(NfPoly p) const {
  for (auto& x : p) x = reduce(x);
  while (!p.empty() && structurally_zero(p.back())) p.pop_back();
  return p;
}

int Tower::p_deg(const NfPoly& p) const {
  return static_cast<int>(p.size()) - 1;
}

NfPoly Tower::p_add(const NfPoly& a, const NfPoly& b) const {
  NfPoly out(std::max(a.size(), b.size()), zero(top()));
  for (size_t i = 0; i < a.size(); ++i) out[i] = add(out[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) out[i] = add(out[i], b[i]);
  return p_trim(out);
}

NfPoly Tower::p_sub(const NfPoly& a, const NfPoly& b) const {
  NfPoly nb;
  nb.reserve(b.size());
  for (const auto& x : b) nb.push_back(neg(x));
  return p_add(a, nb);
}

NfPoly Tower::p_mul(const NfPoly& a, const NfPoly& b) const {
  if (a.empty() || b.empty()) return {};
  NfPoly out(a.size() + b.size() - 1, zero(top()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = add(out[i + j], mul(a[i], b[j]));
  return p_trim(out);
}

NfPoly Tower::p_scale(const NfPoly& a, const NfElem& s) const {
  NfPoly out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(mul(x, s));
  return p_trim(out);
}

NfPoly Tower::p_derivative(const NfPoly& a) const {
  NfPoly out;
  for (size_t i = 1; i < a.size(); ++i)
    out.push_back(mul(a[i], from_rat(Rat(static_cast<long>(i)), top())));
  return p_trim(out);
}

NfPoly Tower::p_monic(const NfPoly& a0) const {
  NfPoly a = p_trim(a0);
  if (a.empty()) return a;
  NfElem linv = inverse(a.back());
  return p_scale(a, linv);
}

void Tower::p_divrem_monic(const NfPoly& a0, const NfPoly& b,
                           NfPoly& q, NfPoly& r) const {
  NfPoly a = p_trim(a0);
  const int db = p_deg(b);
  if (db < 0) throw std::domain_error("division by zero polynomial");
  q.assign(std::max<size_t>(1, a.size()), zero(top()));
  while (p_deg(a) >= db) {
    int da = p_deg(a);
    NfElem c = a.back();
    q[da - db] = c;
    for (int i = 0; i <= db; ++i)
      a[da - db + i] = sub(a[da - db + i], mul(c, b[i]));
    a = p_trim(a);
    if (p_deg(a) == da) throw std::logic_error("monic division stalled");
  }
  r = a;
  q = p_trim(q);
}

NfPoly Tower::p_gcd_monic(NfPoly a, NfPoly b) const {
  a = p_trim(a);
  b = p_trim(b);
  while (!b.empty()) {
    NfPoly mb = p_monic(b);
    NfPoly q, r;
    p_divrem_monic(a, mb, q, r);
    a = std::move(mb);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return p_monic(a);
}

NfPoly Tower::p_div_exact(const NfPoly& a, const NfPoly& b0) const {
  NfPoly b = p_trim(b0);
  if (b.empty()) throw std::domain_error("exact division by zero");
  NfElem linv = inverse(b.back());
  NfPoly mb = p_scale(b, linv);
  NfPoly q, r;
  p_divrem_monic(a, mb, q, r);
  if (!p_trim(r).empty()) throw std::logic_error("division was not exact");
  return p_scale(q, linv);
}

NfElem Tower::p_eval(const NfPoly& a, const NfElem& x) const {
  NfElem acc = zero(top());
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = add(mul(acc, x), *it);
  return acc;
}

std::vector<std::pair<NfPoly, int>> Tower::squarefree_decomposition(
    const NfPoly& p0) const {
  // Yun's algorithm in characteristic zero
  std::vector<std::pair<NfPoly, int>> out;
  NfPoly p = p_monic(p0);
  if (p_deg(p) < 1) return out;
  NfPoly dp = p_derivative(p);
  NfPoly a = p_gcd_monic(p, dp);
  NfPoly b = p_div_exact(p, a);
  NfPoly c = p_div_exact(dp, a);
  NfPoly d = p_sub(c, p_derivative(b));
  int i = 1;
  while (p_deg(b) > 0) {
    NfPoly g = p_gcd_monic(b, d);
    if (p_deg(g) > 0) out.push_back({g, i});
    b = p_div_exact(b, g.empty() ? NfPoly{one(top())} : g);
    c = p_div_exact(d, g.empty() ? NfPoly{one(top())} : g);
    d = p_sub(c, p_derivative(b));
    ++i;
  }
  return out;
}

} // namespace enr
