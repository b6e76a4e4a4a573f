#pragma once

// Structural checks on a DM-decomposition, shared by the unit and
// acceptance suites.

#include <map>
#include <string>
#include <tuple>

#include "brute_force.hpp"
#include "ptsc/bipartite.hpp"

namespace ptsc::testing {

inline BipartiteGraph component_subgraph(const BipartiteGraph& g,
                                         const DMComponent& comp) {
    std::vector<int> lmap(g.n_left(), -1), rmap(g.n_right(), -1);
    BipartiteGraph sub;
    for (int u : comp.left) {
        lmap[u] = sub.n_left();
        sub.left_labels.push_back(g.left_labels[u]);
    }
    for (int v : comp.right) {
        rmap[v] = sub.n_right();
        sub.right_labels.push_back(g.right_labels[v]);
    }
    for (int ei : comp.edges) {
        const BEdge& e = g.edges[ei];
        sub.edges.push_back({lmap[e.left], rmap[e.right], e.kind});
    }
    return sub;
}

inline BipartiteGraph drop_vertices(const BipartiteGraph& g, int left,
                                    int right) {
    BipartiteGraph out;
    std::vector<int> lmap(g.n_left(), -1), rmap(g.n_right(), -1);
    for (int u = 0; u < g.n_left(); ++u)
        if (u != left) {
            lmap[u] = out.n_left();
            out.left_labels.push_back(g.left_labels[u]);
        }
    for (int v = 0; v < g.n_right(); ++v)
        if (v != right) {
            rmap[v] = out.n_right();
            out.right_labels.push_back(g.right_labels[v]);
        }
    for (const auto& e : g.edges)
        if (lmap[e.left] != -1 && rmap[e.right] != -1)
            out.edges.push_back({lmap[e.left], rmap[e.right], e.kind});
    return out;
}

/// All DMDecomposition invariants; returns false and a reason on violation.
inline bool check_dm(const BipartiteGraph& g, const DMDecomposition& dm,
                     std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };

    // Partition: component index per vertex, exactly one each.
    const int kHoriz = 0, kVert = 1 << 20;
    std::vector<int> lcomp(g.n_left(), -1), rcomp(g.n_right(), -1);
    auto assign = [&](const DMComponent& comp, int idx) {
        for (int u : comp.left) {
            if (lcomp[u] != -1) return false;
            lcomp[u] = idx;
        }
        for (int v : comp.right) {
            if (rcomp[v] != -1) return false;
            rcomp[v] = idx;
        }
        return true;
    };
    if (!assign(dm.horizontal, kHoriz)) return fail("overlap in tails");
    for (size_t k = 0; k < dm.consistent.size(); ++k)
        if (!assign(dm.consistent[k], static_cast<int>(k) + 1))
            return fail("overlapping consistent components");
    if (!assign(dm.vertical, kVert)) return fail("overlap in vertical tail");
    for (int u = 0; u < g.n_left(); ++u)
        if (lcomp[u] == -1) return fail("left vertex not covered");
    for (int v = 0; v < g.n_right(); ++v)
        if (rcomp[v] == -1) return fail("right vertex not covered");

    // Cross edges only forward: block-upper-triangular form.
    for (const auto& e : g.edges)
        if (lcomp[e.left] > rcomp[e.right])
            return fail("edge below the block diagonal");

    // Consistent components: square, perfectly matchable, DM-irreducible
    // via the vertex-deletion characterization.
    for (const auto& comp : dm.consistent) {
        if (comp.left.size() != comp.right.size())
            return fail("non-square consistent component");
        BipartiteGraph sub = component_subgraph(g, comp);
        int size = static_cast<int>(comp.left.size());
        if (max_matching(sub).size != size)
            return fail("consistent component lacks a perfect matching");
        for (int u = 0; u < size; ++u)
            for (int v = 0; v < size; ++v)
                if (max_matching(drop_vertices(sub, u, v)).size != size - 1)
                    return fail("consistent component is DM-reducible");
    }

    // Tail shapes: horizontal wide with all lefts matchable, vertical tall
    // with all rights matchable.
    {
        BipartiteGraph h = component_subgraph(g, dm.horizontal);
        if (!dm.horizontal.left.empty() &&
            dm.horizontal.left.size() >= dm.horizontal.right.size())
            return fail("horizontal tail not wide");
        if (max_matching(h).size != static_cast<int>(dm.horizontal.left.size()))
            return fail("horizontal tail rows not fully matchable");
        BipartiteGraph v = component_subgraph(g, dm.vertical);
        if (!dm.vertical.right.empty() &&
            dm.vertical.right.size() >= dm.vertical.left.size())
            return fail("vertical tail not tall");
        if (max_matching(v).size != static_cast<int>(dm.vertical.right.size()))
            return fail("vertical tail cols not fully matchable");
    }

    // Permutations are bijections, so applying (P, Q) reassembles the
    // original pattern exactly.
    auto is_permutation = [](const std::vector<int>& p, int n) {
        if (static_cast<int>(p.size()) != n) return false;
        std::vector<bool> seen(n, false);
        for (int x : p) {
            if (x < 0 || x >= n || seen[x]) return false;
            seen[x] = true;
        }
        return true;
    };
    if (!is_permutation(dm.row_perm, g.n_left()) ||
        !is_permutation(dm.col_perm, g.n_right()))
        return fail("row/col perm is not a permutation");
    return true;
}

/// Relabeling-invariant fingerprint of one component: sizes plus sorted
/// left/right degree sequences.
using ComponentSignature =
    std::tuple<int, int, std::vector<int>, std::vector<int>>;

inline ComponentSignature component_signature(const BipartiteGraph& g,
                                              const DMComponent& comp) {
    BipartiteGraph sub = component_subgraph(g, comp);
    std::vector<int> ldeg(sub.n_left(), 0), rdeg(sub.n_right(), 0);
    for (const auto& e : sub.edges) {
        ++ldeg[e.left];
        ++rdeg[e.right];
    }
    std::sort(ldeg.begin(), ldeg.end());
    std::sort(rdeg.begin(), rdeg.end());
    return {sub.n_left(), sub.n_right(), ldeg, rdeg};
}

inline std::multiset<ComponentSignature> dm_signature_multiset(
    const BipartiteGraph& g, const DMDecomposition& dm) {
    std::multiset<ComponentSignature> out;
    for (const auto& comp : dm.consistent)
        out.insert(component_signature(g, comp));
    out.insert(component_signature(g, dm.horizontal));
    out.insert(component_signature(g, dm.vertical));
    return out;
}

}  // namespace ptsc::testing
