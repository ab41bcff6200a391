#include "enriques/branchinv.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace enr {

bool valid_char(const CharSeq& c, std::string* why) {
  auto no = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  const auto& b = c.beta;
  if (b.empty()) return no("empty characteristic sequence");
  if (b[0] < 1) return no("beta_0 must be positive");
  if (b.size() == 1) {
    if (b[0] != 1) return no("a smooth branch is encoded as (1)");
    return true;
  }
  long e = b[0];
  for (size_t i = 1; i < b.size(); ++i) {
    if (b[i] <= b[i - 1]) return no("beta must be strictly increasing");
    long e2 = std::gcd(e, b[i]);
    if (e2 == e) return no("e_i must strictly divide e_{i-1}");
    e = e2;
  }
  if (e != 1) return no("e_g must equal 1");
  return true;
}

void require_valid(const CharSeq& c) {
  std::string why;
  if (!valid_char(c, &why))
    throw std::invalid_argument("invalid characteristic sequence: " + why);
}

namespace {

// subtractive Euclid staircase; appends min(a,b) until one side is exhausted
void staircase(long a, long b, std::vector<long>& out) {
  while (a > 0 && b > 0) {
    if (a <= b) {
      out.push_back(a);
      b -= a;
    } else {
      out.push_back(b);
      a -= b;
    }
  }
}

} // namespace

BranchChain chain_from_multseq(const std::vector<long>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) throw std::invalid_argument("empty multiplicity sequence");
  for (int i = 0; i < n; ++i) {
    if (m[i] < 1)
      throw std::invalid_argument("multiplicities must be positive");
    if (i && m[i] > m[i - 1])
      throw std::invalid_argument("multiplicity sequence must be non-increasing");
  }
  if (m[n - 1] != 1)
    throw std::invalid_argument("multiplicity sequence must end at a simple point");
  BranchChain chain;
  chain.extra.assign(n, -1);
  // proximity equality: the points proximate to p_j are the consecutive run
  // p_{j+1}, ..., p_{j+r} with multiplicities summing to m_j
  for (int j = 0; j + 1 < n; ++j) {
    long s = 0;
    int k = j + 1;
    while (s < m[j]) {
      if (k >= n)
        throw std::invalid_argument("incomplete proximity run in multiplicity sequence");
      s += m[k];
      if (s > m[j])
        throw std::invalid_argument("multiplicity sequence violates proximity equality");
      ++k;
    }
    for (int t = j + 2; t < k; ++t) {
      if (chain.extra[t] != -1 && chain.extra[t] != j)
        throw std::invalid_argument("conflicting satellite targets");
      chain.extra[t] = j;
    }
  }
  // tree invariant: extra must point to the grandparent or to the parent's
  // own extra target
  for (int p = 2; p < n; ++p) {
    int e = chain.extra[p];
    if (e >= 0 && e != p - 2 && e != chain.extra[p - 1])
      throw std::invalid_argument("satellite target outside the legal pair");
  }
  if (multseq_of_chain(chain) != m)
    throw std::invalid_argument("multiplicity sequence is not proximity-realizable");
  return chain;
}

std::vector<long> multseq_of_chain(const BranchChain& chain) {
  const int n = chain.length();
  std::vector<long> m(n, 0);
  m[n - 1] = 1;
  for (int j = n - 2; j >= 0; --j) {
    long s = 0;
    for (int k = j + 1; k < n; ++k)
      if (k == j + 1 || chain.extra[k] == j) s += m[k];
    m[j] = s;
  }
  return m;
}

BranchWithMult char_to_multseq(const CharSeq& c) {
  require_valid(c);
  std::vector<long> m;
  if (c.beta.size() == 1) {
    m = {1};
  } else {
    long e = c.beta[0];
    for (size_t i = 1; i < c.beta.size(); ++i) {
      long a = (i == 1) ? c.beta[0] : e;
      long b = (i == 1) ? c.beta[1] : c.beta[i] - c.beta[i - 1];
      staircase(a, b, m);
      e = std::gcd(e, c.beta[i]);
    }
  }
  BranchWithMult out;
  out.mult = m;
  out.chain = chain_from_multseq(m);
  return out;
}

CharSeq multseq_to_char(const std::vector<long>& m_in) {
  BranchChain chain = chain_from_multseq(m_in);
  std::vector<long> m = m_in;
  // trailing free simple points lie beyond the minimal embedded resolution
  while (m.size() > 1 && chain.extra.back() == -1 && m.back() == 1) {
    m.pop_back();
    chain.extra.pop_back();
  }
  CharSeq c;
  if (m.size() == 1) {
    if (m[0] != 1)
      throw std::invalid_argument("sequence does not resolve to a branch");
    c.beta = {1};
    return c;
  }
  // blocks of the Euclidean staircase start at free points with satellite
  // predecessors
  std::vector<int> starts = {0};
  for (int p = 2; p < chain.length(); ++p)
    if (chain.extra[p] == -1 && chain.extra[p - 1] >= 0) starts.push_back(p);
  starts.push_back(chain.length());

  long beta0 = m[0];
  c.beta = {beta0};
  long e_prev = beta0;
  for (size_t b = 0; b + 1 < starts.size(); ++b) {
    long sum = 0;
    for (int p = starts[b]; p < starts[b + 1]; ++p) sum += m[p];
    long e_b = m[starts[b + 1] - 1];  // the staircase ends at the gcd
    long beta_next;
    if (b == 0)
      beta_next = sum - beta0 + e_b;
    else
      beta_next = c.beta.back() + sum - e_prev + e_b;
    c.beta.push_back(beta_next);
    e_prev = e_b;
  }
  std::string why;
  if (!valid_char(c, &why))
    throw std::invalid_argument("reconstructed characteristic sequence invalid: " + why);
  if (char_to_multseq(c).mult != m)
    throw std::invalid_argument("characteristic reconstruction failed round-trip");
  return c;
}

SemigroupData semigroup_data(const CharSeq& c) {
  require_valid(c);
  SemigroupData s;
  s.e = {c.beta[0]};
  for (size_t i = 1; i < c.beta.size(); ++i)
    s.e.push_back(std::gcd(s.e.back(), c.beta[i]));
  for (size_t i = 1; i < c.beta.size(); ++i)
    s.n.push_back(s.e[i - 1] / s.e[i]);
  s.beta_bar = {c.beta[0]};
  if (c.beta.size() > 1) {
    s.beta_bar.push_back(c.beta[1]);
    for (size_t i = 1; i + 1 < c.beta.size(); ++i)
      s.beta_bar.push_back(s.n[i - 1] * s.beta_bar[i] + c.beta[i + 1] - c.beta[i]);
  }
  for (size_t i = 1; i < s.beta_bar.size(); ++i)
    if (s.beta_bar[i] <= s.beta_bar[i - 1])
      throw std::logic_error("semigroup generators must increase");
  return s;
}

std::vector<ApproxRootProfileEntry> approx_root_profile(const CharSeq& c) {
  SemigroupData s = semigroup_data(c);
  const int g = c.g();
  std::vector<ApproxRootProfileEntry> out;
  for (int k = -1; k <= g; ++k) {
    ApproxRootProfileEntry e;
    e.k = k;
    e.degree = (k < 0) ? 0 : c.beta[0] / s.e[k];
    if (k == g) {
      e.contact_infinite = true;
      e.contact = 0;
    } else {
      e.contact_infinite = false;
      e.contact = s.beta_bar[k + 1];
    }
    out.push_back(e);
  }
  return out;
}

int contact_from_intersection(const std::vector<long>& ma,
                              const std::vector<long>& mb, const Int& inter) {
  Int acc = 0;
  size_t n = std::min(ma.size(), mb.size());
  for (size_t k = 0; k < n; ++k) {
    acc += Int(ma[k]) * Int(mb[k]);
    if (acc == inter) return static_cast<int>(k) + 1;
    if (acc > inter) break;
  }
  throw std::invalid_argument(
      "intersection number is not a prefix pairing of the multiplicity sequences");
}

DeltaMilnor delta_and_milnor(const std::vector<std::vector<long>>& branches,
                             const std::vector<std::vector<Int>>& pairwise) {
  const size_t r = branches.size();
  if (r == 0) throw std::invalid_argument("no branches");
  Int twodelta = 0;
  for (const auto& m : branches)
    for (long mi : m) twodelta += Int(mi) * (mi - 1);
  Int delta = twodelta / 2;
  for (size_t i = 0; i < r; ++i)
    for (size_t j = i + 1; j < r; ++j) {
      if (i >= pairwise.size() || j >= pairwise[i].size())
        throw std::invalid_argument("missing pairwise intersection data");
      // validates consistency as a side effect
      contact_from_intersection(branches[i], branches[j], pairwise[i][j]);
      delta += pairwise[i][j];
    }
  DeltaMilnor out;
  out.delta = delta;
  out.milnor = 2 * delta - Int(static_cast<long>(r)) + 1;
  return out;
}

MergedBranches merge_branch_chains(const std::vector<BranchChain>& chains,
                                   const std::vector<std::vector<int>>& shared) {
  const size_t r = chains.size();
  if (r == 0) throw std::invalid_argument("no branches to merge");
  for (size_t i = 0; i < r; ++i) {
    if (chains[i].length() < 1 || chains[i].extra[0] != -1)
      throw std::invalid_argument("branch chain must start at the root");
    for (size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      int s = shared[i][j];
      if (s != shared[j][i]) throw std::invalid_argument("shared matrix not symmetric");
      if (s < 1 || s > std::min(chains[i].length(), chains[j].length()))
        throw std::invalid_argument("shared point count out of range");
    }
  }

  MergedBranches out;
  out.branch_vertices.resize(r);
  out.tree.add_vertex(-1);
  for (size_t i = 0; i < r; ++i) {
    // deepest previously inserted branch prefix this one rides on
    int best = -1, s = 1;
    for (size_t j = 0; j < i; ++j)
      if (shared[i][j] > s || best < 0) {
        if (shared[i][j] >= s) {
          s = shared[i][j];
          best = static_cast<int>(j);
        }
      }
    auto& verts = out.branch_vertices[i];
    if (best < 0) {
      verts.push_back(0);
      s = 1;
    } else {
      const auto& host = out.branch_vertices[best];
      for (int p = 0; p < s; ++p) verts.push_back(host[p]);
      // prefix flags must agree with the host chain
      for (int p = 1; p < s; ++p) {
        int want = chains[i].extra[p] < 0 ? -1 : verts[chains[i].extra[p]];
        if (out.tree.v[verts[p]].extra != want)
          throw std::invalid_argument("incompatible prefixes: satellite data differs");
      }
    }
    for (int p = s; p < chains[i].length(); ++p) {
      int parent = verts[p - 1];
      int extra = chains[i].extra[p] < 0 ? -1 : verts[chains[i].extra[p]];
      if (extra >= 0) {
        // the satellite point at this slot may already exist
        for (int w = 0; w < out.tree.size(); ++w)
          if (out.tree.v[w].parent == parent && out.tree.v[w].extra == extra)
            throw std::invalid_argument(
                "incompatible prefixes: satellite continuation collides");
      }
      verts.push_back(out.tree.add_vertex(parent, extra));
    }
  }
  // the realized sharing must be exactly the requested one
  for (size_t i = 0; i < r; ++i)
    for (size_t j = i + 1; j < r; ++j) {
      int k = 0;
      int n = std::min(chains[i].length(), chains[j].length());
      while (k < n && out.branch_vertices[i][k] == out.branch_vertices[j][k]) ++k;
      if (k != shared[i][j])
        throw std::invalid_argument("shared point counts are not realizable");
    }
  require_valid(out.tree);
  for (size_t i = 0; i < r; ++i)
    out.marked.coeffs[out.branch_vertices[i].back()] += 1;
  return out;
}

MergedBranches tree_from_branch_chains(std::vector<BranchChain> chains,
                                       std::vector<std::vector<int>> shared) {
  const size_t r = chains.size();
  // extend on demand so required shared prefixes fit (free points only)
  for (size_t i = 0; i < r; ++i) {
    int need = chains[i].length();
    for (size_t j = 0; j < r; ++j)
      if (j != i) need = std::max(need, shared[i][j]);
    while (chains[i].length() < need) chains[i].extra.push_back(-1);
  }
  // separate branches whose whole chain lies on another one
  for (size_t i = 0; i < r; ++i) {
    bool swallowed = false;
    for (size_t j = 0; j < r; ++j)
      if (j != i && shared[i][j] == chains[i].length()) swallowed = true;
    if (swallowed) chains[i].extra.push_back(-1);
  }
  return merge_branch_chains(chains, shared);
}

MergedBranches tree_from_branches(const std::vector<CharSeq>& branches,
                                  const std::vector<std::vector<int>>& shared) {
  std::vector<BranchChain> chains;
  chains.reserve(branches.size());
  for (const auto& c : branches) chains.push_back(char_to_multseq(c).chain);
  return tree_from_branch_chains(std::move(chains), shared);
}

TopologicalType TopologicalType::make(std::vector<BranchChain> branches,
                                      std::vector<std::vector<int>> contacts) {
  TopologicalType t;
  t.branches = std::move(branches);
  t.contacts = std::move(contacts);
  auto merged = tree_from_branch_chains(t.branches, t.contacts);
  t.canon = canonical_form(merged.tree, merged.marked);
  return t;
}

TopologicalType TopologicalType::from_char(const CharSeq& c) {
  return make({char_to_multseq(c).chain}, {{0}});
}

} // namespace enr
