#include "enriques/proximity.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace enr {

std::vector<int> ProximityTree::chain(int i) const {
  std::vector<int> c;
  for (int cur = i; cur >= 0; cur = v[cur].parent) c.push_back(cur);
  std::reverse(c.begin(), c.end());
  return c;
}

int ProximityTree::depth(int i) const {
  int d = 0;
  for (int cur = i; cur >= 0; cur = v[cur].parent) ++d;
  return d;
}

int ProximityTree::add_vertex(int parent, int extra, std::string label) {
  v.push_back(Vertex{parent, extra, std::move(label)});
  return static_cast<int>(v.size()) - 1;
}

ValidationReport validate(const ProximityTree& t) {
  auto fail = [](std::string msg, int vtx) {
    return ValidationReport{false, std::move(msg), vtx};
  };
  const int n = t.size();
  if (n == 0) return fail("empty tree", -1);
  int roots = 0;
  for (int i = 0; i < n; ++i)
    if (t.v[i].parent < 0) ++roots;
  if (roots != 1) return fail("tree must have exactly one root", -1);
  if (t.v[0].parent >= 0) return fail("vertex 0 must be the root", 0);
  if (t.v[0].extra >= 0) return fail("root cannot be satellite", 0);

  std::set<std::pair<int, int>> satellite_slots;  // (parent, extra)
  for (int i = 1; i < n; ++i) {
    const auto& w = t.v[i];
    if (w.parent >= i)
      return fail("parent must precede vertex in the linear extension", i);
    if (w.extra >= 0) {
      if (w.extra >= i) return fail("extra proximity must point backwards", i);
      const auto& p = t.v[w.parent];
      // the only components meeting the freshly created E_parent are the
      // ones the parent itself is proximate to
      if (w.extra != p.parent || p.parent < 0) {
        if (w.extra != p.extra || p.extra < 0)
          return fail("illegal satellite target", i);
      }
      if (!satellite_slots.insert({w.parent, w.extra}).second)
        return fail("satellite slot reused", i);
    }
  }
  return {};
}

void require_valid(const ProximityTree& t) {
  auto r = validate(t);
  if (!r.ok) throw std::invalid_argument("invalid proximity tree: " + r.message);
}

namespace {

// vertices proximate to j, in increasing order
std::vector<std::vector<int>> proximate_lists(const ProximityTree& t) {
  std::vector<std::vector<int>> prox(t.size());
  for (int i = 1; i < t.size(); ++i) {
    prox[t.v[i].parent].push_back(i);
    if (t.v[i].extra >= 0) prox[t.v[i].extra].push_back(i);
  }
  return prox;
}

} // namespace

IntVec curvetta_multiplicities(const ProximityTree& t, int v) {
  if (v < 0 || v >= t.size()) throw std::invalid_argument("vertex out of range");
  IntVec m(t.size(), 0);
  auto ch = t.chain(v);
  std::vector<char> on_chain(t.size(), 0);
  for (int c : ch) on_chain[c] = 1;
  m[v] = 1;
  for (auto it = ch.rbegin() + 1; it != ch.rend(); ++it) {
    Int s = 0;
    for (int k : ch) {
      if (m[k] == 0) continue;
      if (t.v[k].parent == *it || t.v[k].extra == *it) s += m[k];
    }
    m[*it] = s;
  }
  return m;
}

IntVec valuation_vector(const ProximityTree& t, const IntVec& m) {
  if (static_cast<int>(m.size()) != t.size())
    throw std::invalid_argument("multiplicity vector does not match tree");
  IntVec d(t.size());
  for (int i = 0; i < t.size(); ++i) {
    d[i] = m[i];
    if (t.v[i].parent >= 0) d[i] += d[t.v[i].parent];
    if (t.v[i].extra >= 0) d[i] += d[t.v[i].extra];
  }
  return d;
}

Int valuation(const ProximityTree& t, const Divisor& e, const IntVec& m) {
  IntVec d = valuation_vector(t, m);
  Int s = 0;
  for (auto& [vtx, a] : e.coeffs) {
    if (vtx < 0 || vtx >= t.size())
      throw std::invalid_argument("divisor vertex out of range");
    s += a * d[vtx];
  }
  return s;
}

IntMat noether_matrix(const ProximityTree& t) {
  const int n = t.size();
  IntMat theta(n, IntVec(n));
  for (int i = 0; i < n; ++i) {
    IntVec d = valuation_vector(t, curvetta_multiplicities(t, i));
    for (int j = 0; j < n; ++j) theta[j][i] = d[j];
  }
  return theta;
}

IntMat intersection_matrix(const ProximityTree& t) {
  const int n = t.size();
  auto prox = proximate_lists(t);
  IntMat m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i)
    m[i][i] = -1 - Int(static_cast<long>(prox[i].size()));
  for (int j = 1; j < n; ++j) {
    for (int i : {t.v[j].parent, t.v[j].extra}) {
      if (i < 0) continue;
      // E_i and E_j still meet unless the satellite point between them
      // was blown up
      bool separated = false;
      for (int k : prox[i])
        if (k != j && (t.v[k].parent == j || t.v[k].extra == j)) {
          separated = true;
          break;
        }
      if (!separated) m[i][j] = m[j][i] = 1;
    }
  }
  // guard the adjacency rule with the exact inverse identity
  IntMat theta = noether_matrix(t);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Int s = 0;
      for (int k = 0; k < n; ++k) s += m[i][k] * theta[k][j];
      if (s != (i == j ? -1 : 0))
        throw std::logic_error("intersection matrix check failed: M*Theta != -I");
    }
  return m;
}

IntVec log_discrepancies(const ProximityTree& t) {
  IntVec k(t.size());
  for (int i = 0; i < t.size(); ++i) {
    k[i] = 1;
    if (t.v[i].parent >= 0) k[i] += k[t.v[i].parent];
    if (t.v[i].extra >= 0) k[i] += k[t.v[i].extra];
  }
  for (auto& x : k) x += 1;
  return k;
}

int contact_order(const PairConfig& cfg) {
  if (!cfg.left.is_prime() || !cfg.right.is_prime())
    throw std::invalid_argument("contact order requires prime divisors");
  auto ca = cfg.tree.chain(cfg.left.sole_vertex());
  auto cb = cfg.tree.chain(cfg.right.sole_vertex());
  size_t k = 0;
  while (k < ca.size() && k < cb.size() && ca[k] == cb[k]) ++k;
  return static_cast<int>(k);
}

std::pair<ProximityTree, std::vector<int>> chain_closure(
    const ProximityTree& t, int v) {
  auto ch = t.chain(v);
  std::vector<int> pos(t.size(), -1);
  ProximityTree sub;
  for (size_t i = 0; i < ch.size(); ++i) {
    const auto& w = t.v[ch[i]];
    int par = w.parent < 0 ? -1 : pos[w.parent];
    int ext = w.extra < 0 ? -1 : pos[w.extra];
    pos[ch[i]] = sub.add_vertex(par, ext, w.label);
  }
  return {std::move(sub), std::move(ch)};
}

std::vector<int> end_components(const ProximityTree& t, int v) {
  auto [sub, map_back] = chain_closure(t, v);
  if (sub.size() != t.depth(v)) throw std::logic_error("chain closure broken");
  // v must be the deepest vertex of its own closure by construction
  IntMat m = intersection_matrix(sub);
  std::vector<int> ends;
  for (int i = 0; i < sub.size(); ++i) {
    int deg = 0;
    for (int j = 0; j < sub.size(); ++j)
      if (j != i && m[i][j] == 1) ++deg;
    if (deg == 1 && map_back[i] != v) ends.push_back(map_back[i]);
  }
  ends.push_back(v);
  return ends;
}

namespace {

std::string canonical_key(const ProximityTree& t,
                          std::span<const Divisor> marks, int vtx,
                          const std::vector<std::vector<int>>& children) {
  // children of vtx split into: satellite pinned to parent's parent,
  // satellite pinned to parent's extra, and interchangeable free ones
  std::string sat_to_grandparent = "-";
  std::string sat_to_extra = "-";
  std::vector<std::string> free_keys;
  for (int c : children[vtx]) {
    std::string k = canonical_key(t, marks, c, children);
    if (t.v[c].extra < 0)
      free_keys.push_back(std::move(k));
    else if (t.v[c].extra == t.v[vtx].parent)
      sat_to_grandparent = std::move(k);
    else
      sat_to_extra = std::move(k);
  }
  std::sort(free_keys.begin(), free_keys.end());
  std::ostringstream os;
  os << "(";
  for (const auto& d : marks) {
    auto it = d.coeffs.find(vtx);
    os << (it == d.coeffs.end() ? Int(0) : it->second).get_str() << ",";
  }
  os << "|" << sat_to_grandparent << "|" << sat_to_extra << "|";
  for (auto& k : free_keys) os << k;
  os << ")";
  return os.str();
}

} // namespace

std::string canonical_form(const ProximityTree& t,
                           std::span<const Divisor> marks) {
  require_valid(t);
  std::vector<std::vector<int>> children(t.size());
  for (int i = 1; i < t.size(); ++i) children[t.v[i].parent].push_back(i);
  return canonical_key(t, marks, 0, children);
}

std::string canonical_form(const ProximityTree& t) {
  return canonical_form(t, std::span<const Divisor>{});
}

std::string canonical_form(const ProximityTree& t, const Divisor& mark) {
  return canonical_form(t, std::span<const Divisor>(&mark, 1));
}

std::string canonical_form(const PairConfig& cfg) {
  Divisor marks[2] = {cfg.left, cfg.right};
  return canonical_form(cfg.tree, std::span<const Divisor>(marks, 2));
}

bool combinatorial_equal(const ProximityTree& a, std::span<const Divisor> ma,
                         const ProximityTree& b, std::span<const Divisor> mb) {
  return canonical_form(a, ma) == canonical_form(b, mb);
}

std::vector<int> minimal_model_vertices(const ProximityTree& t,
                                        const Divisor& d) {
  std::vector<char> in(t.size(), 0);
  for (auto& [vtx, a] : d.coeffs)
    for (int c : t.chain(vtx)) in[c] = 1;
  std::vector<int> out;
  for (int i = 0; i < t.size(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

std::string dual_graph_dot(const ProximityTree& t,
                           std::span<const Divisor> marks) {
  IntMat m = intersection_matrix(t);
  std::ostringstream os;
  os << "graph dual {\n  node [shape=circle];\n";
  for (int i = 0; i < t.size(); ++i) {
    os << "  v" << i << " [label=\"E" << i << " (" << m[i][i].get_str() << ")";
    std::string markline;
    for (const auto& d : marks) {
      auto it = d.coeffs.find(i);
      if (!markline.empty()) markline += ",";
      markline += (it == d.coeffs.end() ? Int(0) : it->second).get_str();
    }
    if (!marks.empty()) os << "\\n[" << markline << "]";
    os << "\"];\n";
  }
  for (int i = 0; i < t.size(); ++i)
    for (int j = i + 1; j < t.size(); ++j)
      if (m[i][j] == 1) os << "  v" << i << " -- v" << j << ";\n";
  os << "}\n";
  return os.str();
}

} // namespace enr
