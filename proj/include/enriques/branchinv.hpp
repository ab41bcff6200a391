#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enriques/proximity.hpp"

namespace enr {

// Characteristic sequence (beta_0, ..., beta_g); a smooth branch is (1).
struct CharSeq {
  std::vector<long> beta;
  int g() const { return static_cast<int>(beta.size()) - 1; }
  bool operator==(const CharSeq&) const = default;
};

struct SemigroupData {
  std::vector<long> e;         // e_0, ..., e_g
  std::vector<long> n;         // n_1, ..., n_g
  std::vector<long> beta_bar;  // semigroup generators
};

// Proximity chain of a single branch: extra[p] is the chain position the
// p-th point is additionally proximate to, or -1 when the point is free.
struct BranchChain {
  std::vector<int> extra;
  int length() const { return static_cast<int>(extra.size()); }
  bool operator==(const BranchChain&) const = default;
};

struct BranchWithMult {
  BranchChain chain;
  std::vector<long> mult;
};

bool valid_char(const CharSeq& c, std::string* why = nullptr);
void require_valid(const CharSeq& c);

// Euclidean staircase on the successive (beta_i - beta_{i-1}, e_{i-1}) pairs.
BranchWithMult char_to_multseq(const CharSeq& c);

// Proximity chain of a multiplicity sequence; throws std::invalid_argument
// when the sequence is not realizable as a branch.
BranchChain chain_from_multseq(const std::vector<long>& m);

// Strict-transform multiplicities of a curvetta of the chain end.
std::vector<long> multseq_of_chain(const BranchChain& chain);

// Inverse of char_to_multseq; trailing free simple points are allowed and
// ignored.
CharSeq multseq_to_char(const std::vector<long>& m);

SemigroupData semigroup_data(const CharSeq& c);

struct ApproxRootProfileEntry {
  int k;          // -1 .. g
  long degree;    // beta_0 / e_k; 0 marker for k = -1
  bool contact_infinite;
  long contact;   // beta_bar_{k+1}; ignored when contact_infinite
};
std::vector<ApproxRootProfileEntry> approx_root_profile(const CharSeq& c);

struct DeltaMilnor {
  Int delta;
  Int milnor;
};

// delta = sum_branches sum_i m_i(m_i-1)/2 + sum_{pairs} I,
// mu = 2 delta - r + 1.  `pairwise[i][j]` (i < j) is the intersection
// number; it must be a partial pairing sum of the two multiplicity vectors.
DeltaMilnor delta_and_milnor(const std::vector<std::vector<long>>& branches,
                             const std::vector<std::vector<Int>>& pairwise);

// Shared-point count implied by an intersection number; throws when the
// value is not an exact prefix pairing.
int contact_from_intersection(const std::vector<long>& ma,
                              const std::vector<long>& mb, const Int& inter);

struct MergedBranches {
  ProximityTree tree;
  Divisor marked;
  std::vector<std::vector<int>> branch_vertices;  // chains in tree indices
};

// Raw trie merge: branches share exactly shared[i][j] leading points.
// Rejects inconsistent prefixes.  Coincident deepest points are kept.
MergedBranches merge_branch_chains(const std::vector<BranchChain>& chains,
                                   const std::vector<std::vector<int>>& shared);

// Spec-level assembly: extends chains by free points on demand (when a
// shared prefix swallows a chain) so that distinct branches get distinct
// marked end vertices, then merges and marks branch counts.
MergedBranches tree_from_branch_chains(std::vector<BranchChain> chains,
                                       std::vector<std::vector<int>> shared);

MergedBranches tree_from_branches(const std::vector<CharSeq>& branches,
                                  const std::vector<std::vector<int>>& shared);

// Embedded topological type: branch chains plus pairwise contact orders,
// identified up to combinatorial equivalence of the marked tree.
struct TopologicalType {
  std::vector<BranchChain> branches;
  std::vector<std::vector<int>> contacts;
  std::string canon;

  static TopologicalType make(std::vector<BranchChain> branches,
                              std::vector<std::vector<int>> contacts);
  static TopologicalType from_char(const CharSeq& c);
  int branch_count() const { return static_cast<int>(branches.size()); }
  bool operator==(const TopologicalType& o) const { return canon == o.canon; }
};

} // namespace enr
