#include "ptsc/bipartite.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace ptsc {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

std::vector<std::vector<int>> left_adjacency(const BipartiteGraph& g) {
    std::vector<std::vector<int>> adj(g.n_left());
    for (const auto& e : g.edges) {
        if (e.left < 0 || e.left >= g.n_left() || e.right < 0 ||
            e.right >= g.n_right())
            throw std::out_of_range("BipartiteGraph: edge endpoint out of range");
        adj[e.left].push_back(e.right);
    }
    return adj;
}

}  // namespace

Matching max_matching(const BipartiteGraph& g) {
    const int L = g.n_left(), R = g.n_right();
    auto adj = left_adjacency(g);

    Matching m;
    m.left_match.assign(L, -1);
    m.right_match.assign(R, -1);

    std::vector<int> dist(L);
    auto bfs = [&]() {
        std::queue<int> q;
        for (int u = 0; u < L; ++u) {
            if (m.left_match[u] == -1) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = kInf;
            }
        }
        bool found = false;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                int w = m.right_match[v];
                if (w == -1) {
                    found = true;
                } else if (dist[w] == kInf) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    };
    std::function<bool(int)> dfs = [&](int u) {
        for (int v : adj[u]) {
            int w = m.right_match[v];
            if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
                m.left_match[u] = v;
                m.right_match[v] = u;
                return true;
            }
        }
        dist[u] = kInf;
        return false;
    };

    while (bfs())
        for (int u = 0; u < L; ++u)
            if (m.left_match[u] == -1 && dfs(u)) ++m.size;
    return m;
}

namespace {

// Min-cost max-flow specialized to the bipartite assignment built from g:
// source -> left (cap 1), left -> right per edge (cap 1, cost w),
// right -> sink (cap 1). Costs are nonnegative, so plain Dijkstra with
// vertex potentials is exact in integer arithmetic.
struct AssignmentSolver {
    struct Arc {
        int to, rev, cap, cost;
    };
    std::vector<std::vector<Arc>> graph;
    int n;

    explicit AssignmentSolver(int nodes) : graph(nodes), n(nodes) {}

    void add_arc(int from, int to, int cap, int cost) {
        graph[from].push_back({to, static_cast<int>(graph[to].size()), cap, cost});
        graph[to].push_back({from, static_cast<int>(graph[from].size()) - 1, 0,
                             -cost});
    }

    // Returns (flow, cost).
    std::pair<int, int> run(int s, int t) {
        int flow = 0, cost = 0;
        std::vector<int> potential(n, 0), dist(n), prev_node(n), prev_arc(n);
        while (true) {
            dist.assign(n, kInf);
            dist[s] = 0;
            using Item = std::pair<int, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            pq.push({0, s});
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (d > dist[u]) continue;
                for (int i = 0; i < static_cast<int>(graph[u].size()); ++i) {
                    const Arc& a = graph[u][i];
                    if (a.cap <= 0) continue;
                    int nd = d + a.cost + potential[u] - potential[a.to];
                    if (nd < dist[a.to]) {
                        dist[a.to] = nd;
                        prev_node[a.to] = u;
                        prev_arc[a.to] = i;
                        pq.push({nd, a.to});
                    }
                }
            }
            if (dist[t] == kInf) break;
            for (int u = 0; u < n; ++u)
                if (dist[u] < kInf) potential[u] += dist[u];
            for (int u = t; u != s; u = prev_node[u]) {
                Arc& a = graph[prev_node[u]][prev_arc[u]];
                --a.cap;
                ++graph[u][a.rev].cap;
                cost += a.cost;
            }
            ++flow;
        }
        return {flow, cost};
    }
};

WeightedMatching weighted_matching_impl(const BipartiteGraph& g,
                                        const std::vector<int>& costs) {
    const int L = g.n_left(), R = g.n_right();
    const int s = L + R, t = L + R + 1;
    AssignmentSolver solver(L + R + 2);
    for (int u = 0; u < L; ++u) solver.add_arc(s, u, 1, 0);
    for (int v = 0; v < R; ++v) solver.add_arc(L + v, t, 1, 0);
    for (size_t i = 0; i < g.edges.size(); ++i)
        solver.add_arc(g.edges[i].left, L + g.edges[i].right, 1, costs[i]);
    auto [flow, cost] = solver.run(s, t);

    WeightedMatching out;
    out.matching.left_match.assign(L, -1);
    out.matching.right_match.assign(R, -1);
    out.matching.size = flow;
    out.weight = cost;
    for (int u = 0; u < L; ++u)
        for (const auto& a : solver.graph[u])
            if (a.to >= L && a.to < L + R && a.cap == 0) {
                out.matching.left_match[u] = a.to - L;
                out.matching.right_match[a.to - L] = u;
            }
    return out;
}

}  // namespace

WeightedMatching min_weight_max_matching(const BipartiteGraph& g,
                                         const std::vector<int>& weights) {
    if (weights.size() != g.edges.size())
        throw std::invalid_argument("weights must be parallel to edges");
    return weighted_matching_impl(g, weights);
}

WeightedMatching max_weight_max_matching(const BipartiteGraph& g,
                                         const std::vector<int>& weights) {
    if (weights.size() != g.edges.size())
        throw std::invalid_argument("weights must be parallel to edges");
    // Maximizing sum(w) over max matchings = |matching|*wmax - minimizing
    // sum(wmax - w); every maximum matching has the same cardinality.
    int wmax = 0;
    for (int w : weights) wmax = std::max(wmax, w);
    std::vector<int> flipped(weights.size());
    for (size_t i = 0; i < weights.size(); ++i) flipped[i] = wmax - weights[i];
    WeightedMatching out = weighted_matching_impl(g, flipped);
    out.weight = out.matching.size * wmax - out.weight;
    return out;
}

std::vector<std::vector<int>> scc_condensation(
    const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int counter = 0;

    // Iterative Tarjan; components come out in reverse topological order.
    struct Frame {
        int v;
        size_t edge;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        while (!call.empty()) {
            Frame& f = call.back();
            int v = f.v;
            if (f.edge == 0) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            bool descended = false;
            while (f.edge < adj[v].size()) {
                int w = adj[v][f.edge++];
                if (index[w] == -1) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                comps.emplace_back();
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = static_cast<int>(comps.size()) - 1;
                    comps.back().push_back(w);
                } while (w != v);
            }
            call.pop_back();
            if (!call.empty()) {
                int parent = call.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    std::reverse(comps.begin(), comps.end());
    return comps;
}

DMDecomposition dm_decompose(const BipartiteGraph& g) {
    const int L = g.n_left(), R = g.n_right();
    Matching m = max_matching(g);

    // Tails via alternating-path reachability. Horizontal tail grows from
    // unmatched right vertices (right -> left over non-matching edges,
    // left -> right over matching edges); vertical tail is symmetric.
    std::vector<std::vector<int>> radj(R);  // right -> incident lefts
    std::vector<std::vector<int>> ladj(L);
    for (const auto& e : g.edges) {
        radj[e.right].push_back(e.left);
        ladj[e.left].push_back(e.right);
    }

    std::vector<bool> h_left(L, false), h_right(R, false);
    {
        std::queue<int> q;  // right vertices
        for (int v = 0; v < R; ++v)
            if (m.right_match[v] == -1) {
                h_right[v] = true;
                q.push(v);
            }
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : radj[v]) {
                if (h_left[u] || m.left_match[u] == v) continue;
                h_left[u] = true;
                int v2 = m.left_match[u];  // tail lefts are matched
                if (v2 != -1 && !h_right[v2]) {
                    h_right[v2] = true;
                    q.push(v2);
                }
            }
        }
    }
    std::vector<bool> v_left(L, false), v_right(R, false);
    {
        std::queue<int> q;  // left vertices
        for (int u = 0; u < L; ++u)
            if (m.left_match[u] == -1) {
                v_left[u] = true;
                q.push(u);
            }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : ladj[u]) {
                if (v_right[v] || m.right_match[v] == u) continue;
                v_right[v] = true;
                int u2 = m.right_match[v];
                if (u2 != -1 && !v_left[u2]) {
                    v_left[u2] = true;
                    q.push(u2);
                }
            }
        }
    }

    // Core: perfectly matched pairs outside both tails, one node per pair.
    std::vector<int> pair_of_left(L, -1);
    std::vector<int> pair_left;  // left vertex of each pair
    for (int u = 0; u < L; ++u)
        if (!h_left[u] && !v_left[u] && m.left_match[u] != -1) {
            pair_of_left[u] = static_cast<int>(pair_left.size());
            pair_left.push_back(u);
        }
    const int P = static_cast<int>(pair_left.size());
    std::vector<int> pair_of_right(R, -1);
    for (int p = 0; p < P; ++p) pair_of_right[m.left_match[pair_left[p]]] = p;

    // Arc p -> q when an edge runs from the left vertex of p to the right
    // vertex of q; block-upper-triangularity then needs comp(p) <= comp(q).
    std::vector<std::vector<int>> pad(P);
    for (const auto& e : g.edges) {
        int p = pair_of_left[e.left], q = pair_of_right[e.right];
        if (p != -1 && q != -1 && p != q) pad[p].push_back(q);
    }

    // SCCs, then Kahn with a min-heap on the smallest original left vertex
    // for a deterministic topological order.
    std::vector<std::vector<int>> sccs = scc_condensation(pad);
    const int C = static_cast<int>(sccs.size());
    std::vector<int> comp_of_pair(P, -1);
    for (int c = 0; c < C; ++c)
        for (int p : sccs[c]) comp_of_pair[p] = c;
    std::vector<std::vector<int>> cadj(C);
    std::vector<int> indeg(C, 0);
    for (int p = 0; p < P; ++p)
        for (int q : pad[p]) {
            int a = comp_of_pair[p], b = comp_of_pair[q];
            if (a != b) cadj[a].push_back(b);
        }
    for (int c = 0; c < C; ++c) {
        std::sort(cadj[c].begin(), cadj[c].end());
        cadj[c].erase(std::unique(cadj[c].begin(), cadj[c].end()), cadj[c].end());
        for (int b : cadj[c]) ++indeg[b];
    }
    std::vector<int> key(C, kInf);
    for (int c = 0; c < C; ++c)
        for (int p : sccs[c]) key[c] = std::min(key[c], pair_left[p]);
    using Item = std::pair<int, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
    for (int c = 0; c < C; ++c)
        if (indeg[c] == 0) ready.push({key[c], c});
    std::vector<int> order;
    while (!ready.empty()) {
        auto [k, c] = ready.top();
        ready.pop();
        order.push_back(c);
        for (int b : cadj[c])
            if (--indeg[b] == 0) ready.push({key[b], b});
    }

    DMDecomposition dm;
    auto fill_edges = [&](DMComponent& comp) {
        std::vector<bool> inl(L, false), inr(R, false);
        for (int u : comp.left) inl[u] = true;
        for (int v : comp.right) inr[v] = true;
        for (size_t i = 0; i < g.edges.size(); ++i)
            if (inl[g.edges[i].left] && inr[g.edges[i].right])
                comp.edges.push_back(static_cast<int>(i));
    };

    for (int u = 0; u < L; ++u)
        if (h_left[u]) dm.horizontal.left.push_back(u);
    for (int v = 0; v < R; ++v)
        if (h_right[v]) dm.horizontal.right.push_back(v);
    fill_edges(dm.horizontal);

    for (int c : order) {
        DMComponent comp;
        for (int p : sccs[c]) comp.left.push_back(pair_left[p]);
        std::sort(comp.left.begin(), comp.left.end());
        for (int u : comp.left) comp.right.push_back(m.left_match[u]);
        fill_edges(comp);
        dm.consistent.push_back(std::move(comp));
    }

    for (int u = 0; u < L; ++u)
        if (v_left[u]) dm.vertical.left.push_back(u);
    for (int v = 0; v < R; ++v)
        if (v_right[v]) dm.vertical.right.push_back(v);
    fill_edges(dm.vertical);

    auto append = [](std::vector<int>& perm, const std::vector<int>& part) {
        perm.insert(perm.end(), part.begin(), part.end());
    };
    append(dm.row_perm, dm.horizontal.left);
    append(dm.col_perm, dm.horizontal.right);
    for (const auto& comp : dm.consistent) {
        append(dm.row_perm, comp.left);
        append(dm.col_perm, comp.right);
    }
    append(dm.row_perm, dm.vertical.left);
    append(dm.col_perm, dm.vertical.right);
    return dm;
}

}  // namespace ptsc
