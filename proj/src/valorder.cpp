#include "enriques/valorder.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace enr {

namespace {

// nu_H(h_D) for every vertex H at once: one valuation-vector pass per
// component of D.
IntVec values_on_all_vertices(const ProximityTree& t, const Divisor& d) {
  IntVec out(t.size(), 0);
  for (auto& [vtx, a] : d.coeffs) {
    IntVec dv = valuation_vector(t, curvetta_multiplicities(t, vtx));
    for (int h = 0; h < t.size(); ++h) out[h] += a * dv[h];
  }
  return out;
}

ValVerdict check_at(const ProximityTree& t, const Divisor& e, const Divisor& f,
                    const std::vector<int>& vertices, bool dual_route) {
  ValVerdict v;
  IntVec lhs_all, rhs_all;
  if (!dual_route) {
    lhs_all = values_on_all_vertices(t, e);
    rhs_all = values_on_all_vertices(t, f);
  }
  for (int h : vertices) {
    Int lhs, rhs;
    if (dual_route) {
      IntVec mh = curvetta_multiplicities(t, h);
      lhs = valuation(t, e, mh);
      rhs = valuation(t, f, mh);
    } else {
      lhs = lhs_all[h];
      rhs = rhs_all[h];
    }
    v.witnesses.push_back({h, lhs, rhs});
    if (lhs > rhs && v.holds) {
      v.holds = false;
      v.first_failure = h;
    }
  }
  return v;
}

std::vector<int> all_vertices(const ProximityTree& t) {
  std::vector<int> out(t.size());
  for (int i = 0; i < t.size(); ++i) out[i] = i;
  return out;
}

} // namespace

ValVerdict val_leq(const PairConfig& cfg) {
  return val_leq_criterion(cfg, ValCriterion::MinModelOfE);
}

ValVerdict val_leq_criterion(const PairConfig& cfg, ValCriterion crit) {
  require_valid(cfg.tree);
  if (cfg.left.coeffs.empty() || cfg.right.coeffs.empty())
    throw std::invalid_argument("empty divisor in pair");
  switch (crit) {
    case ValCriterion::AllVertices:
      return check_at(cfg.tree, cfg.left, cfg.right, all_vertices(cfg.tree), false);
    case ValCriterion::AllVerticesDual:
      return check_at(cfg.tree, cfg.left, cfg.right, all_vertices(cfg.tree), true);
    case ValCriterion::MinModelOfE:
      return check_at(cfg.tree, cfg.left, cfg.right,
                      minimal_model_vertices(cfg.tree, cfg.left), false);
    case ValCriterion::MinModelOfEDual:
      return check_at(cfg.tree, cfg.left, cfg.right,
                      minimal_model_vertices(cfg.tree, cfg.left), true);
  }
  throw std::logic_error("unreachable");
}

ValVerdict val_leq_prime(const PairConfig& cfg) {
  if (!cfg.left.is_prime() || !cfg.right.is_prime())
    throw std::invalid_argument("val_leq_prime requires prime divisors");
  const int e = cfg.left.sole_vertex();
  const int f = cfg.right.sole_vertex();
  IntVec me = curvetta_multiplicities(cfg.tree, e);
  IntVec mf = curvetta_multiplicities(cfg.tree, f);
  ValVerdict v;
  auto pair_at = [&](const IntVec& mh) {
    Int lhs = 0, rhs = 0;
    for (int k = 0; k < cfg.tree.size(); ++k) {
      if (mh[k] == 0) continue;
      lhs += mh[k] * me[k];
      rhs += mh[k] * mf[k];
    }
    return std::pair<Int, Int>(lhs, rhs);
  };
  for (int h : end_components(cfg.tree, e)) {
    auto [lhs, rhs] = pair_at(curvetta_multiplicities(cfg.tree, h));
    v.witnesses.push_back({h, lhs, rhs});
    if (lhs > rhs && v.holds) {
      v.holds = false;
      v.first_failure = h;
    }
  }
  // transversal smooth probe through a fresh free point of the first
  // neighborhood: pairs only at the origin
  v.witnesses.push_back({-1, me[0], mf[0]});
  if (me[0] > mf[0] && v.holds) {
    v.holds = false;
    v.first_failure = -1;
  }
  return v;
}

int complexity(const TopologicalType& top) {
  int m = 0;
  for (int i = 0; i < top.branch_count(); ++i) {
    int d = top.branches[i].length();
    for (int j = 0; j < top.branch_count(); ++j)
      if (j != i) d = std::max(d, top.contacts[i][j]);
    m = std::max(m, d);
  }
  return m;
}

// ---------------------------------------------------------------------------
// enumerate_dominated
// ---------------------------------------------------------------------------

namespace {

struct DominationSearch {
  const ProximityTree& base;
  const Divisor& f;
  long max_vertices;
  bool complete = true;

  ProximityTree work;
  std::vector<int> chain;                 // vertex path of the candidate E
  std::map<std::string, DominatedEntry> by_type;
  std::set<std::string> seen_pairs;

  explicit DominationSearch(const ProximityTree& t, const Divisor& f_,
                            long cap)
      : base(t), f(f_), max_vertices(cap), work(t) {
    chain.push_back(0);
  }

  BranchChain chain_flags() const {
    BranchChain b;
    b.extra.reserve(chain.size());
    for (size_t p = 0; p < chain.size(); ++p) {
      int ex = work.v[chain[p]].extra;
      int pos = -1;
      if (p > 0 && ex >= 0) {
        for (size_t q = 0; q + 1 < p; ++q)
          if (chain[q] == ex) pos = static_cast<int>(q);
      }
      b.extra.push_back(pos);
    }
    return b;
  }

  void record() {
    Divisor e = Divisor::prime(chain.back());
    PairConfig cfg{work, e, f};
    std::string key = canonical_form(cfg);
    int contact = 0;
    for (int v : chain)
      if (v < base.size()) ++contact;  // base vertices form the shared prefix
    if (!seen_pairs.insert(key).second) {
      auto it = by_type.find(canonical_e_key());
      if (it != by_type.end())
        it->second.min_contact = std::min(it->second.min_contact, contact);
      return;
    }
    std::string ekey = canonical_e_key();
    auto it = by_type.find(ekey);
    if (it == by_type.end()) {
      DominatedEntry ent{cfg, key, ekey, contact, contact};
      by_type.emplace(ekey, std::move(ent));
    } else {
      it->second.min_contact = std::min(it->second.min_contact, contact);
      if (contact > it->second.max_contact) {
        it->second.max_contact = contact;
        it->second.config = cfg;
        it->second.canon_pair = key;
      }
    }
  }

  std::string canonical_e_key() const {
    auto merged = tree_from_branch_chains({chain_flags()}, {{0}});
    return canonical_form(merged.tree, merged.marked);
  }

  void dfs() {
    Divisor e = Divisor::prime(chain.back());
    ValVerdict v = val_leq(PairConfig{work, e, f});
    if (!v.holds) return;  // extending never repairs a failed inequality
    record();
    if (max_vertices >= 0 &&
        static_cast<long>(chain.size()) >= max_vertices) {
      complete = false;
      return;
    }
    const int cur = chain.back();
    // ride an existing component of the base model
    for (int c = 0; c < base.size(); ++c) {
      if (base.v[c].parent != cur) continue;
      chain.push_back(c);
      dfs();
      chain.pop_back();
    }
    // diverge at a fresh free point
    {
      int w = work.add_vertex(cur, -1);
      chain.push_back(w);
      dfs();
      chain.pop_back();
      work.v.pop_back();
    }
    // diverge at a fresh satellite point on an unoccupied slot
    for (int target : {work.v[cur].parent, work.v[cur].extra}) {
      if (target < 0) continue;
      bool occupied = false;
      for (int w = 0; w < work.size(); ++w)
        if (work.v[w].parent == cur && work.v[w].extra == target) occupied = true;
      if (occupied) continue;
      int w = work.add_vertex(cur, target);
      chain.push_back(w);
      dfs();
      chain.pop_back();
      work.v.pop_back();
    }
  }
};

} // namespace

EnumResult enumerate_dominated(const ProximityTree& ftree, const Divisor& f,
                               const EnumLimits& limits) {
  require_valid(ftree);
  DominationSearch s(ftree, f, limits.max_vertices);
  s.dfs();
  EnumResult out;
  out.complete = s.complete;
  if (!s.complete) out.note = "vertex cap exceeded; result is partial";
  out.all_pairs.assign(s.seen_pairs.begin(), s.seen_pairs.end());
  for (auto& [k, ent] : s.by_type) out.entries.push_back(ent);
  std::sort(out.entries.begin(), out.entries.end(),
            [](const DominatedEntry& a, const DominatedEntry& b) {
              return a.canon_e < b.canon_e;
            });
  return out;
}

// ---------------------------------------------------------------------------
// decide_ffp_adjacency
// ---------------------------------------------------------------------------

namespace {

struct Component {
  BranchChain chain;
  int mult = 1;
};

struct SideConfig {
  std::vector<Component> comps;
  std::vector<std::vector<int>> contacts;  // between components
};

// All divisor shapes whose associated curves realize the topological type:
// branches grouped onto shared components (with multiplicity) and extended
// by free points up to the complexity bound.
std::vector<SideConfig> enumerate_side_configs(const TopologicalType& top,
                                               int bound, bool minimal_only) {
  const int r = top.branch_count();
  std::vector<SideConfig> out;

  std::vector<int> part(r, 0);
  auto emit_partition = [&](const std::vector<int>& p, int groups) {
    std::vector<std::vector<int>> members(groups);
    for (int i = 0; i < r; ++i) members[p[i]].push_back(i);
    // groups must collect equal branches with uniform mutual contacts
    std::vector<int> glen(groups);
    for (int g = 0; g < groups; ++g) {
      const auto& m = members[g];
      for (size_t a = 1; a < m.size(); ++a)
        if (!(top.branches[m[a]] == top.branches[m[0]])) return;
      int intra = -1;
      for (size_t a = 0; a < m.size(); ++a)
        for (size_t b = a + 1; b < m.size(); ++b) {
          int c = top.contacts[m[a]][m[b]];
          if (intra < 0) intra = c;
          if (c != intra) return;
        }
      int minlen = top.branches[m[0]].length();
      if (m.size() >= 2) {
        if (intra < minlen) return;  // copies of the type share its whole chain
        glen[g] = intra;
      } else {
        glen[g] = -1;  // free length, filled below
      }
    }
    // cross contacts must be constant group-to-group
    std::vector<std::vector<int>> cross(groups, std::vector<int>(groups, 0));
    for (int g = 0; g < groups; ++g)
      for (int h = g + 1; h < groups; ++h) {
        int c = -1;
        for (int i : members[g])
          for (int j : members[h]) {
            if (c < 0) c = top.contacts[i][j];
            if (top.contacts[i][j] != c) return;
          }
        cross[g][h] = cross[h][g] = c;
      }
    // fixed-length groups must fit their cross contacts
    for (int g = 0; g < groups; ++g)
      if (glen[g] >= 0)
        for (int h = 0; h < groups; ++h)
          if (h != g && cross[g][h] > glen[g]) return;

    // iterate extensions of the singleton groups
    std::vector<int> lo(groups), hi(groups);
    for (int g = 0; g < groups; ++g) {
      if (glen[g] >= 0) {
        lo[g] = hi[g] = glen[g];
      } else {
        int minlen = top.branches[members[g][0]].length();
        for (int h = 0; h < groups; ++h)
          if (h != g) minlen = std::max(minlen, cross[g][h]);
        lo[g] = std::max(minlen, top.branches[members[g][0]].length());
        hi[g] = std::max(lo[g], bound);
        if (minimal_only) hi[g] = lo[g];
      }
    }
    std::vector<int> len = lo;
    while (true) {
      SideConfig sc;
      sc.contacts.assign(groups, std::vector<int>(groups, 0));
      for (int g = 0; g < groups; ++g) {
        Component c;
        c.chain = top.branches[members[g][0]];
        while (c.chain.length() < len[g]) c.chain.extra.push_back(-1);
        c.mult = static_cast<int>(members[g].size());
        sc.comps.push_back(std::move(c));
        for (int h = 0; h < groups; ++h)
          if (h != g) sc.contacts[g][h] = cross[g][h];
      }
      out.push_back(std::move(sc));
      int g = 0;
      while (g < groups && len[g] == hi[g]) len[g++] = lo[g];
      if (g == groups) break;
      ++len[g];
    }
  };

  // restricted-growth enumeration of set partitions
  std::vector<int> rg(r, 0);
  auto rec = [&](auto&& self, int i, int maxg) -> void {
    if (i == r) {
      emit_partition(rg, maxg);
      return;
    }
    for (int g = 0; g <= maxg; ++g) {
      rg[i] = g;
      self(self, i + 1, std::max(maxg, g + 1));
    }
  };
  if (minimal_only && r == 1) {
    rg[0] = 0;
    emit_partition(rg, 1);
  } else {
    rec(rec, 0, 0);
  }
  return out;
}

struct FfpSearch {
  std::vector<Component> comps;        // E components then F components
  std::vector<std::vector<int>> need;  // required contacts (-1 = free)
  int e_count = 0;

  ProximityTree work;
  std::vector<std::vector<int>> placed;  // vertex path per component
  long budget = 0;

  std::map<std::string, bool> memo;
  std::optional<PairConfig> best_witness;
  std::string best_key;
  long checked = 0;

  bool flags_match(const Component& comp, int pos, int child_extra_vertex,
                   const std::vector<int>& verts) const {
    int want = comp.chain.extra[pos];
    int want_vtx = want < 0 ? -1 : verts[want];
    return want_vtx == child_extra_vertex;
  }

  void try_complete() {
    Divisor de, df;
    for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
      auto& d = (i < e_count) ? de : df;
      d.coeffs[placed[i].back()] += comps[i].mult;
    }
    PairConfig cfg{work, de, df};
    std::string key = canonical_form(cfg);
    auto it = memo.find(key);
    bool holds;
    if (it != memo.end()) {
      holds = it->second;
    } else {
      ++checked;
      holds = val_leq(cfg).holds;
      memo.emplace(key, holds);
    }
    if (holds && (best_key.empty() || key < best_key)) {
      best_key = key;
      best_witness = cfg;
    }
  }

  // realized shared prefix between the component being placed (prefix in
  // verts) and an already placed one
  static int realized_shared(const std::vector<int>& a,
                             const std::vector<int>& b) {
    size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return static_cast<int>(k);
  }

  bool prefix_consistent(int idx, const std::vector<int>& verts, bool final_len) {
    // required same-side contacts must still be achievable / correct
    for (int j = 0; j < idx; ++j) {
      int req = need[idx][j];
      if (req < 0) continue;
      int got = realized_shared(verts, placed[j]);
      if (final_len) {
        if (got != req) return false;
      } else {
        int pos = static_cast<int>(verts.size());
        // a shorter prefix may still grow towards the requirement only by
        // keeping the shared run alive
        if (got < std::min(pos, req)) return false;
        if (got > req) return false;
      }
    }
    return true;
  }

  void place(int idx) {
    if (idx == static_cast<int>(comps.size())) {
      try_complete();
      return;
    }
    std::vector<int> verts{0};
    descend(idx, 1, verts);
  }

  void descend(int idx, int pos, std::vector<int>& verts) {
    const Component& comp = comps[idx];
    if (!prefix_consistent(idx, verts, pos == comp.chain.length() + 1))
      return;
    if (pos == comp.chain.length()) {
      if (!prefix_consistent(idx, verts, true)) return;
      placed.push_back(verts);
      place(idx + 1);
      placed.pop_back();
      return;
    }
    const int cur = verts.back();
    int want_extra = comp.chain.extra[pos] < 0 ? -1 : verts[comp.chain.extra[pos]];
    // follow an existing child with matching proximity data
    for (int c = 0; c < work.size(); ++c) {
      if (work.v[c].parent != cur) continue;
      if (work.v[c].extra != want_extra) continue;
      verts.push_back(c);
      descend(idx, pos + 1, verts);
      verts.pop_back();
    }
    // or diverge on a fresh point
    bool can_fresh = true;
    if (want_extra >= 0) {
      for (int c = 0; c < work.size(); ++c)
        if (work.v[c].parent == cur && work.v[c].extra == want_extra)
          can_fresh = false;  // that satellite point already exists
    }
    if (can_fresh) {
      if (--budget < 0) return;
      int w = work.add_vertex(cur, want_extra);
      verts.push_back(w);
      descend(idx, pos + 1, verts);
      verts.pop_back();
      work.v.pop_back();
    }
  }
};

} // namespace

FfpVerdict decide_ffp_adjacency(const TopologicalType& top_e,
                                const TopologicalType& top_f) {
  const int m = std::max(complexity(top_e), complexity(top_f));
  const bool f_prime = top_f.branch_count() == 1;
  auto e_sides = enumerate_side_configs(top_e, m, false);
  auto f_sides = enumerate_side_configs(top_f, m, f_prime);

  FfpVerdict verdict;
  verdict.search_bound = m;

  FfpSearch search;
  for (const auto& es : e_sides) {
    for (const auto& fs : f_sides) {
      search.comps.clear();
      search.e_count = static_cast<int>(es.comps.size());
      for (auto& c : es.comps) search.comps.push_back(c);
      for (auto& c : fs.comps) search.comps.push_back(c);
      const int n = static_cast<int>(search.comps.size());
      search.need.assign(n, std::vector<int>(n, -1));
      for (int a = 0; a < search.e_count; ++a)
        for (int b = 0; b < search.e_count; ++b)
          if (a != b) search.need[a][b] = es.contacts[a][b];
      for (int a = 0; a < n - search.e_count; ++a)
        for (int b = 0; b < n - search.e_count; ++b)
          if (a != b)
            search.need[search.e_count + a][search.e_count + b] =
                fs.contacts[a][b];
      search.work = ProximityTree{};
      search.work.add_vertex(-1);
      search.budget = 200000;
      search.place(0);
    }
  }
  verdict.configs_checked = search.checked;
  if (!search.best_key.empty()) {
    verdict.adjacent = true;
    verdict.witness = search.best_witness;
  }
  return verdict;
}

} // namespace enr
