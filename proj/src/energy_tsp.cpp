#include "rangeopt/energy_tsp.hpp"
#include "rangeopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rangeopt {

namespace {

// Lexicographic order on (weight, sorted endpoint pair).
bool edge_less(double w_a, int pa, int va, double w_b, int pb, int vb) {
    if (w_a != w_b) return w_a < w_b;
    auto ea = std::minmax(pa, va), eb = std::minmax(pb, vb);
    return ea < eb;
}

} // namespace

RootedTree build_mst(const PointSet& ps, double alpha, int root) {
    if (ps.empty()) throw InputError("build_mst: empty point set");
    if (alpha < 1.0) throw InputError("build_mst: alpha must be >= 1");
    size_t n = ps.size();
    if (root < 0 || static_cast<size_t>(root) >= n)
        throw InputError("build_mst: root index out of range");
    RootedTree t;
    t.root = root;
    t.parent.assign(n, -1);
    t.children.assign(n, {});
    // Prim over the complete graph; squared distances suffice for comparisons.
    std::vector<char> in_tree(n, 0);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<int> best_par(n, root);
    in_tree[static_cast<size_t>(root)] = 1;
    for (size_t v = 0; v < n; ++v)
        if (!in_tree[v]) best[v] = dist2(ps[v], ps[static_cast<size_t>(root)]);
    for (size_t step = 1; step < n; ++step) {
        int pick = -1;
        for (size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            if (pick < 0 || edge_less(best[v], best_par[v], static_cast<int>(v),
                                      best[static_cast<size_t>(pick)],
                                      best_par[static_cast<size_t>(pick)], pick))
                pick = static_cast<int>(v);
        }
        in_tree[static_cast<size_t>(pick)] = 1;
        t.parent[static_cast<size_t>(pick)] = best_par[static_cast<size_t>(pick)];
        for (size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            double w = dist2(ps[v], ps[static_cast<size_t>(pick)]);
            if (edge_less(w, pick, static_cast<int>(v), best[v], best_par[v], static_cast<int>(v))) {
                best[v] = w;
                best_par[v] = pick;
            }
        }
    }
    for (size_t v = 0; v < n; ++v)
        if (static_cast<int>(v) != root)
            t.children[static_cast<size_t>(t.parent[v])].push_back(static_cast<int>(v));
    return t;
}

double tree_cost(const RootedTree& tree, const PointSet& ps, double alpha) {
    double c = 0.0;
    for (size_t v = 0; v < tree.parent.size(); ++v)
        if (tree.parent[v] >= 0)
            c += power_cost(ps[v], ps[static_cast<size_t>(tree.parent[v])], alpha);
    return c;
}

HamPath pi_a(const RootedTree& tree, int subtree_root, const PointSet& ps, double alpha,
             bool verify) {
    size_t n = tree.parent.size();
    if (subtree_root < 0 || static_cast<size_t>(subtree_root) >= n)
        throw InputError("pi_a: subtree root out of range");
    // Subtree nodes in post order (children before parents), explicit stack:
    // path-shaped trees would overflow the call stack.
    std::vector<int> post;
    {
        std::vector<std::pair<int, size_t>> stack{{subtree_root, 0}};
        while (!stack.empty()) {
            auto& [v, ci] = stack.back();
            const auto& ch = tree.children[static_cast<size_t>(v)];
            if (ci < ch.size()) {
                int c = ch[ci++];
                stack.emplace_back(c, 0);
            } else {
                post.push_back(v);
                stack.pop_back();
            }
        }
    }
    std::vector<std::vector<int>> path(n);
    std::vector<double> path_cost(n, 0.0);
    std::vector<double> sub_mst(n, 0.0);
    double factor = 2.0 * std::pow(3.0, alpha - 1.0);
    double anchor_factor = std::pow(3.0, alpha - 1.0);
    for (int v : post) {
        const auto& ch = tree.children[static_cast<size_t>(v)];
        path[static_cast<size_t>(v)].push_back(v);
        auto& pv = path[static_cast<size_t>(v)];
        for (size_t i = 0; i < ch.size(); ++i) {
            int c = ch[i];
            auto& pc = path[static_cast<size_t>(c)];
            // The reversed child path starts at the child's endpoint (its own
            // last child, or itself for a leaf), and ends at the child.
            int block_start = pc.back();
            int prev_end = pv.back();
            path_cost[static_cast<size_t>(v)] +=
                path_cost[static_cast<size_t>(c)] +
                power_cost(ps[static_cast<size_t>(prev_end)], ps[static_cast<size_t>(block_start)], alpha);
            pv.insert(pv.end(), pc.rbegin(), pc.rend());
            sub_mst[static_cast<size_t>(v)] +=
                sub_mst[static_cast<size_t>(c)] +
                power_cost(ps[static_cast<size_t>(v)], ps[static_cast<size_t>(c)], alpha);
            pc.clear();
            pc.shrink_to_fit();
        }
        if (verify && !ch.empty()) {
            double w_last = power_cost(ps[static_cast<size_t>(v)],
                                       ps[static_cast<size_t>(ch.back())], alpha);
            double bound = factor * sub_mst[static_cast<size_t>(v)] - anchor_factor * w_last;
            if (path_cost[static_cast<size_t>(v)] > bound + 1e-9 * std::max(1.0, bound))
                throw std::logic_error("path bound violated at node " + std::to_string(v));
        }
    }
    HamPath out;
    out.order = std::move(path[static_cast<size_t>(subtree_root)]);
    out.cost = path_cost[static_cast<size_t>(subtree_root)];
    return out;
}

Tour approx_tour(const PointSet& ps, double alpha, bool verify) {
    if (ps.empty()) throw InputError("approx_tour: empty point set");
    RootedTree t = build_mst(ps, alpha, 0);
    HamPath p = pi_a(t, 0, ps, alpha, verify);
    Tour tour;
    tour.order = p.order;
    tour.cost = p.cost;
    if (tour.order.size() > 1)
        tour.cost += power_cost(ps[static_cast<size_t>(tour.order.back())],
                                ps[static_cast<size_t>(tour.order.front())], alpha);
    return tour;
}

double tour_cost(const std::vector<int>& order, const PointSet& ps, double alpha) {
    size_t n = ps.size();
    if (order.size() != n) throw InputError("tour_cost: order is not a permutation");
    std::vector<char> seen(n, 0);
    for (int i : order) {
        if (i < 0 || static_cast<size_t>(i) >= n || seen[static_cast<size_t>(i)])
            throw InputError("tour_cost: order is not a permutation");
        seen[static_cast<size_t>(i)] = 1;
    }
    if (n < 2) return 0.0;
    double c = 0.0;
    for (size_t i = 0; i < n; ++i)
        c += power_cost(ps[static_cast<size_t>(order[i])],
                        ps[static_cast<size_t>(order[(i + 1) % n])], alpha);
    return c;
}

PointSet gap_instance(int n) {
    if (n < 3) throw InputError("gap_instance: need at least 3 points");
    PointSet ps(2);
    for (int i = 0; i < n; ++i) ps.add(Point{static_cast<double>(i), 0.0});
    return ps;
}

} // namespace rangeopt
