#pragma once

#include <vector>

namespace ptsc {

enum class EdgeKind { Generic, Lambda, SelfLoop };

/// A self-loop counts as a lambda-edge (it carries the -lambda term on top of
/// a generic entry).
inline bool is_lambda_edge(EdgeKind k) {
    return k == EdgeKind::Lambda || k == EdgeKind::SelfLoop;
}

struct BEdge {
    int left;   // index into left_labels
    int right;  // index into right_labels
    EdgeKind kind = EdgeKind::Generic;
};

/// Bipartite graph with at most one edge per (left, right) pair.
struct BipartiteGraph {
    std::vector<int> left_labels;
    std::vector<int> right_labels;
    std::vector<BEdge> edges;

    int n_left() const { return static_cast<int>(left_labels.size()); }
    int n_right() const { return static_cast<int>(right_labels.size()); }
};

struct Matching {
    std::vector<int> left_match;   // right index per left vertex, -1 if free
    std::vector<int> right_match;  // left index per right vertex, -1 if free
    int size = 0;
};

struct WeightedMatching {
    Matching matching;
    int weight = 0;
};

/// Maximum-cardinality matching (Hopcroft-Karp).
Matching max_matching(const BipartiteGraph& g);

/// Among all maximum-cardinality matchings, one of minimum (resp. maximum)
/// total weight. `weights` is parallel to g.edges, values 0/1.
WeightedMatching min_weight_max_matching(const BipartiteGraph& g,
                                         const std::vector<int>& weights);
WeightedMatching max_weight_max_matching(const BipartiteGraph& g,
                                         const std::vector<int>& weights);

/// Strongly connected components of adj, returned in a topological order of
/// the condensation (every arc goes from an earlier to a later component).
std::vector<std::vector<int>> scc_condensation(
    const std::vector<std::vector<int>>& adj);

struct DMComponent {
    std::vector<int> left;   // indices into graph.left_labels
    std::vector<int> right;  // indices into graph.right_labels
    std::vector<int> edges;  // indices into graph.edges, both ends inside
};

/// Dulmage-Mendelsohn decomposition: horizontal tail, consistent square
/// components in block-upper-triangular order, vertical tail. row_perm /
/// col_perm list vertex indices in permuted order (tail-0 first).
struct DMDecomposition {
    DMComponent horizontal;
    std::vector<DMComponent> consistent;
    DMComponent vertical;
    std::vector<int> row_perm;
    std::vector<int> col_perm;

    bool tails_empty() const {
        return horizontal.left.empty() && horizontal.right.empty() &&
               vertical.left.empty() && vertical.right.empty();
    }
};

DMDecomposition dm_decompose(const BipartiteGraph& g);

}  // namespace ptsc
