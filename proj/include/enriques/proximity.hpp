#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "enriques/ints.hpp"

namespace enr {

// Rooted forest of infinitely near points above the origin.  Vertex 0 is the
// origin O; every other vertex lies in the first neighborhood of its parent
// and is additionally proximate to `extra` when it is a satellite point.
struct ProximityTree {
  struct Vertex {
    int parent = -1;       // -1 only for the root
    int extra = -1;        // -1 when the point is free
    std::string label;
  };
  std::vector<Vertex> v;

  int size() const { return static_cast<int>(v.size()); }
  bool is_root(int i) const { return v[i].parent < 0; }
  bool is_satellite(int i) const { return v[i].extra >= 0; }
  bool is_free(int i) const { return !is_root(i) && !is_satellite(i); }

  // chain of v: root .. v along parent links, in root-first order
  std::vector<int> chain(int i) const;
  // depth = |chain|
  int depth(int i) const;

  int add_vertex(int parent, int extra = -1, std::string label = {});
};

struct Divisor {
  std::map<int, Int> coeffs;  // vertex -> coefficient > 0

  static Divisor prime(int vertex) {
    Divisor d;
    d.coeffs[vertex] = 1;
    return d;
  }
  bool is_prime() const {
    return coeffs.size() == 1 && coeffs.begin()->second == 1;
  }
  int sole_vertex() const {
    if (!is_prime()) throw std::invalid_argument("divisor is not prime");
    return coeffs.begin()->first;
  }
  bool operator==(const Divisor&) const = default;
};

struct PairConfig {
  ProximityTree tree;
  Divisor left;   // E
  Divisor right;  // F
};

struct ValidationReport {
  bool ok = true;
  std::string message;  // first violated invariant
  int vertex = -1;
  explicit operator bool() const { return ok; }
};

ValidationReport validate(const ProximityTree& t);

// Throwing variant for internal use.
void require_valid(const ProximityTree& t);

// Strict-transform multiplicities of a generic curvetta of vertex v:
// m[v] = 1 and m[j] = sum of m over chain vertices proximate to j.
IntVec curvetta_multiplicities(const ProximityTree& t, int v);

// Total-transform multiplicities d[i] = m[i] + sum of d over the points
// p_i is proximate to.  m may be any strict-transform multiplicity vector.
IntVec valuation_vector(const ProximityTree& t, const IntVec& m);

// nu_E(h) for the curve with strict-transform multiplicities m.
Int valuation(const ProximityTree& t, const Divisor& e, const IntVec& m);

// Theta[i][j] = nu_{E_i}(h_{E_j}) = sum_k m^i_k * m^j_k.
IntMat noether_matrix(const ProximityTree& t);

// Intersection matrix M of the exceptional components in the final model.
// Verifies M * Theta == -Identity and throws std::logic_error otherwise.
IntMat intersection_matrix(const ProximityTree& t);

// lambda[i] = 1 + order of vanishing of the pulled back 2-form along E_i.
IntVec log_discrepancies(const ProximityTree& t);

// Number of infinitely near points shared by the two (prime) divisors.
int contact_order(const PairConfig& cfg);

// Dual-graph degree-1 vertices of the chain closure of v, with v appended:
// the components supporting the approximate-root curvettas, plus v.
std::vector<int> end_components(const ProximityTree& t, int v);

// Isomorphism-invariant key of a tree marked with any number of divisors;
// free siblings are interchangeable, satellite children are pinned to the
// exceptional component their extra proximity points at.
std::string canonical_form(const ProximityTree& t,
                           std::span<const Divisor> marks);
std::string canonical_form(const ProximityTree& t);
std::string canonical_form(const ProximityTree& t, const Divisor& mark);
std::string canonical_form(const PairConfig& cfg);

bool combinatorial_equal(const ProximityTree& a, std::span<const Divisor> ma,
                         const ProximityTree& b, std::span<const Divisor> mb);

// Vertex sets used by the valuative criteria.
std::vector<int> minimal_model_vertices(const ProximityTree& t,
                                        const Divisor& d);

// Sub-tree induced by the chain closure of v, plus the mapping from
// sub-tree indices to the original ones.
std::pair<ProximityTree, std::vector<int>> chain_closure(
    const ProximityTree& t, int v);

// DOT rendering of the dual graph; divisor coefficients become a second
// label line on marked vertices.
std::string dual_graph_dot(const ProximityTree& t,
                           std::span<const Divisor> marks);

} // namespace enr
