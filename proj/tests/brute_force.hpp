#pragma once

// Brute-force oracles used by the test suites only. They enumerate matchings
// recursively and must stay independent of the library's matching code.

#include <algorithm>
#include <set>
#include <vector>

#include "ptsc/bipartite.hpp"
#include "ptsc/structured.hpp"

namespace ptsc::testing {

struct BruteResult {
    int max_size = 0;
    int min_weight = 0;  // over maximum matchings
    int max_weight = 0;
};

inline void brute_recurse(const BipartiteGraph& g,
                          const std::vector<int>& weights, size_t edge_idx,
                          std::vector<bool>& left_used,
                          std::vector<bool>& right_used, int size, int weight,
                          BruteResult& best) {
    if (size > best.max_size) {
        best.max_size = size;
        best.min_weight = weight;
        best.max_weight = weight;
    } else if (size == best.max_size) {
        best.min_weight = std::min(best.min_weight, weight);
        best.max_weight = std::max(best.max_weight, weight);
    }
    for (size_t i = edge_idx; i < g.edges.size(); ++i) {
        const BEdge& e = g.edges[i];
        if (left_used[e.left] || right_used[e.right]) continue;
        left_used[e.left] = right_used[e.right] = true;
        brute_recurse(g, weights, i + 1, left_used, right_used, size + 1,
                      weight + (weights.empty() ? 0 : weights[i]), best);
        left_used[e.left] = right_used[e.right] = false;
    }
}

inline BruteResult brute_matchings(const BipartiteGraph& g,
                                   const std::vector<int>& weights = {}) {
    std::vector<bool> lu(g.n_left(), false), ru(g.n_right(), false);
    BruteResult best;
    brute_recurse(g, weights, 0, lu, ru, 0, 0, best);
    return best;
}

inline int brute_generic_rank(const StructuredMatrix& m) {
    BipartiteGraph g;
    for (int r = 1; r <= m.rows(); ++r) g.left_labels.push_back(r);
    for (int c = 1; c <= m.cols(); ++c) g.right_labels.push_back(c);
    for (const auto& [r, c] : m.stars())
        g.edges.push_back({r - 1, c - 1, EdgeKind::Generic});
    return brute_matchings(g).max_size;
}

/// I*_j straight from its set definition: the union of complements of all
/// r_j-subsets of rows attaining grank r_j over the columns without j.
inline std::set<int> brute_I_star_j(const StructuredMatrix& h_bar, int j) {
    const int n = h_bar.rows();
    std::vector<int> cols;
    for (int c = 1; c <= h_bar.cols(); ++c)
        if (c != j) cols.push_back(c);
    std::vector<int> all_rows(n);
    for (int r = 0; r < n; ++r) all_rows[r] = r + 1;
    int r_j = brute_generic_rank(submatrix(h_bar, all_rows, cols));

    std::set<int> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != r_j) continue;
        std::vector<int> rows;
        for (int r = 0; r < n; ++r)
            if (mask & (1u << r)) rows.push_back(r + 1);
        if (brute_generic_rank(submatrix(h_bar, rows, cols)) == r_j)
            for (int r = 1; r <= n; ++r)
                if (!(mask & (1u << (r - 1)))) out.insert(r);
    }
    return out;
}

}  // namespace ptsc::testing
