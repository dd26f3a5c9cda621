#pragma once

#include "rangeopt/geometry.hpp"

#include <vector>

namespace rangeopt {

struct RootedTree {
    int root = 0;
    std::vector<std::vector<int>> children; // per node, ascending index order
    std::vector<int> parent;                // -1 at the root
};

struct Tour {
    std::vector<int> order; // cyclic permutation of 0..n-1
    double cost = 0.0;      // sum of |p_i p_{i+1 mod n}|^alpha
};

struct HamPath {
    std::vector<int> order;
    double cost = 0.0;
};

// Minimum spanning tree over the complete graph with weights |pq|^alpha
// (the edge set is alpha-independent since x^alpha is monotone), rooted at
// `root`. Equal-weight ties prefer the lexicographically smaller edge (i, j).
RootedTree build_mst(const PointSet& ps, double alpha, int root);

// Total alpha-power weight of the tree's edges.
double tree_cost(const RootedTree& tree, const PointSet& ps, double alpha);

// The recursively constructed Hamiltonian path on the subtree rooted at
// `subtree_root`: the root followed by the reversed paths of its child
// subtrees in child order. It ends at the root's last child, and satisfies
// cost <= 2*3^(alpha-1)*MST(subtree) - 3^(alpha-1)*|root,last child|^alpha
// (the familiar 6*MST - 3*|r r_k|^2 for alpha = 2). With verify=true the
// bound is checked at every node of the recursion; a violation throws
// std::logic_error.
HamPath pi_a(const RootedTree& tree, int subtree_root, const PointSet& ps, double alpha,
             bool verify = false);

// Close pi_a of the full MST (rooted at 0) back to the root. The tour costs
// at most 2*3^(alpha-1) times the MST cost, hence the same factor of the
// optimal tour.
Tour approx_tour(const PointSet& ps, double alpha, bool verify = false);

// Cyclic alpha-power cost of a tour; throws InputError unless `order` is a
// permutation of 0..n-1.
double tour_cost(const std::vector<int>& order, const PointSet& ps, double alpha);

// n unit-spaced collinear points (i, 0). Visiting them in index order costs
// n(n-1) under alpha = 2 while skipping even-then-odd costs 4n-6: the gap
// between Euclidean-shortest and energy-optimal orders grows linearly.
PointSet gap_instance(int n);

} // namespace rangeopt
