#pragma once

// Coxeter graphs of wall systems in hyperbolic lattices: edge weights,
// subdiagram classification by exact Gram signature, the finite-volume check
// for the fundamental chamber, and color/weight preserving graph symmetries.

#include "chiral/lattice.hpp"

#include <string>

namespace chiral {

// Edge classes by the value of 4 (v.w)^2 / (v^2 w^2):
//   0 orthogonal, 1 simple (angle pi/3), 2 (angle pi/4, needs a 4-wall),
//   3 labeled 6 (angle pi/6, 2-wall against 6-wall), 4 parallel walls,
//   5 diverging walls (dotted edge).
enum class EdgeClass : int { None = 0, Simple = 1, Four = 2, Six = 3, Parallel = 4, Dotted = 5 };

struct CoxeterGraph {
    std::vector<VecI> roots;
    std::vector<Int> squares;  // v_i . v_i
    MatI gram;                 // Gram matrix of the walls
    int size() const { return int(roots.size()); }
    EdgeClass edge(int i, int j) const;
};

CoxeterGraph build_graph(const Lattice& L, const std::vector<VecI>& roots);

enum class DiagramClass { Elliptic, Parabolic, Lanner, Indefinite };

// Exact classification of the Gram form of a vertex subset: elliptic =
// positive definite; parabolic = positive semidefinite with every connected
// component of corank exactly one; Lanner = connected of signature
// (k-1, 1) with all proper subdiagrams elliptic.
DiagramClass classify_subdiagram(const CoxeterGraph& g, const std::vector<int>& idx);

// Display name of a subdiagram: connected components named by type
// (A/B/D/E/F/G for elliptic ones, with a trailing ~ for the parabolic
// extensions), joined by '+'. Unrecognized components render as X<k>.
std::string diagram_name(const CoxeterGraph& g, const std::vector<int>& idx);

struct VolumeReport {
    bool finite = false;
    bool has_edge = false;  // some elliptic subset of rank n-1 exists
    // witnesses, filled when the check succeeds
    std::vector<std::vector<int>> vertex_sets;  // elliptic of rank n
    std::vector<std::vector<int>> cusp_sets;    // maximal parabolic of rank n-1
    // first failing edge when the check fails (empty otherwise)
    std::vector<int> failing_edge;
    int failing_count = -1;
};

// A chamber in H^n cut out by the given walls has finite volume if and only
// if some elliptic subset of rank n-1 exists and every such subset lies on
// exactly two vertex figures: an elliptic extension of rank n (an ordinary
// vertex) or a maximal parabolic subdiagram of rank n-1 (an ideal vertex).
VolumeReport finite_volume_check(const CoxeterGraph& g, int n);

// Connected subdiagrams of Lanner type (for reporting).
std::vector<std::vector<int>> lanner_subdiagrams(const CoxeterGraph& g, int max_size = 5);

// All permutations of the vertices preserving squares and the full Gram
// matrix: sigma with gram(sigma i, sigma j) == gram(i, j).
std::vector<std::vector<int>> graph_symmetries(const CoxeterGraph& g);

std::string emit_dot(const CoxeterGraph& g);
std::string graph_to_json(const CoxeterGraph& g);

}  // namespace chiral
