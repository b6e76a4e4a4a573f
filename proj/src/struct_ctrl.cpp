#include "ptsc/struct_ctrl.hpp"

#include <queue>

namespace ptsc {

SystemGraph::SystemGraph(const StructuredMatrix& a_bar,
                         const StructuredMatrix& b_bar)
    : n(a_bar.rows()), out_arcs(a_bar.rows() + 2) {
    if (a_bar.cols() != n || b_bar.rows() != n || b_bar.cols() != 1)
        throw std::invalid_argument("SystemGraph: inconsistent dimensions");
    // A_ji != 0 gives arc x_i -> x_j.
    for (const auto& [j, i] : a_bar.stars()) out_arcs[i].push_back(j);
    for (const auto& [i, c] : b_bar.stars()) out_arcs[n + 1].push_back(i);
}

std::set<int> input_reachable_set(const SystemGraph& g) {
    std::vector<bool> seen(g.n + 2, false);
    std::queue<int> q;
    q.push(g.n + 1);
    seen[g.n + 1] = true;
    std::set<int> out;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.out_arcs[u])
            if (!seen[v]) {
                seen[v] = true;
                out.insert(v);
                q.push(v);
            }
    }
    return out;
}

StructCtrlResult is_structurally_controllable(const StructuredMatrix& a_bar,
                                              const StructuredMatrix& b_bar) {
    SystemGraph g(a_bar, b_bar);
    const int n = g.n;
    StructCtrlResult res{true, "", 0, 0};

    auto reachable = input_reachable_set(g);
    for (int i = 1; i <= n; ++i)
        if (!reachable.count(i)) {
            res.controllable = false;
            res.unreachable_witness = i;
            res.reason = "state x" + std::to_string(i) + " is not input-reachable";
            break;
        }

    res.grank = generic_rank(hcat(a_bar, b_bar));
    if (res.controllable && res.grank < n) {
        res.controllable = false;
        res.reason = "grank([A, b]) = " + std::to_string(res.grank) + " < n = " +
                     std::to_string(n);
    }
    return res;
}

}  // namespace ptsc
