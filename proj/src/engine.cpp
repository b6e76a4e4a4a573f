#include "ptsc/engine.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ptsc {

namespace {

StructuredMatrix drop_column(const StructuredMatrix& m, int col) {
    std::vector<int> rows, cols;
    for (int r = 1; r <= m.rows(); ++r) rows.push_back(r);
    for (int c = 1; c <= m.cols(); ++c)
        if (c != col) cols.push_back(c);
    return submatrix(m, rows, cols);
}

/// Subgraph of `g` induced by the given vertex index sets, preserving
/// edge kinds. Also returns the position of each kept edge in g.edges.
BipartiteGraph induced_subgraph(const BipartiteGraph& g,
                                const std::vector<int>& lefts,
                                const std::vector<int>& rights,
                                std::vector<int>* edge_origin = nullptr) {
    std::vector<int> lmap(g.n_left(), -1), rmap(g.n_right(), -1);
    BipartiteGraph sub;
    for (int u : lefts) {
        lmap[u] = sub.n_left();
        sub.left_labels.push_back(g.left_labels[u]);
    }
    for (int v : rights) {
        rmap[v] = sub.n_right();
        sub.right_labels.push_back(g.right_labels[v]);
    }
    for (size_t i = 0; i < g.edges.size(); ++i) {
        const BEdge& e = g.edges[i];
        if (lmap[e.left] != -1 && rmap[e.right] != -1) {
            sub.edges.push_back({lmap[e.left], rmap[e.right], e.kind});
            if (edge_origin) edge_origin->push_back(static_cast<int>(i));
        }
    }
    return sub;
}

}  // namespace

StructuredMatrix augmented_h(const PerturbedStructuredSystem& sys,
                             PerturbationEdge e) {
    if (!sys.f_bar().has_star(e.i, e.j))
        throw std::invalid_argument("augmented_h: edge is not a star of F");
    std::set<Pos> f_minus_e = sys.f_bar().stars();
    f_minus_e.erase({e.i, e.j});
    StructuredMatrix f_e(sys.n(), sys.n() + 1, std::move(f_minus_e));
    return vee(sys.h_bar(), f_e);
}

BipartiteGraph build_pencil_graph(const StructuredMatrix& h_bar, int j) {
    const int n = h_bar.rows();
    if (h_bar.cols() != n + 1)
        throw std::invalid_argument("build_pencil_graph: H must be n x (n+1)");
    if (j < 1 || j > n + 1)
        throw std::out_of_range("build_pencil_graph: column j out of range");

    BipartiteGraph g;
    for (int r = 1; r <= n; ++r) g.left_labels.push_back(r);
    std::vector<int> rpos(n + 2, -1);
    for (int c = 1; c <= n + 1; ++c)
        if (c != j) {
            rpos[c] = g.n_right();
            g.right_labels.push_back(c);
        }
    for (const auto& [r, c] : h_bar.stars())
        if (c != j) g.edges.push_back({r - 1, rpos[c], EdgeKind::Generic});
    for (int k = 1; k <= n; ++k) {
        if (k == j) continue;  // the lambda-edge of x_j leaves with column j
        bool coincides = false;
        for (auto& e : g.edges)
            if (e.left == k - 1 && e.right == rpos[k]) {
                e.kind = EdgeKind::SelfLoop;
                coincides = true;
                break;
            }
        if (!coincides)
            g.edges.push_back({k - 1, rpos[k], EdgeKind::Lambda});
    }
    return g;
}

ZeroModeWitness zero_mode_safe(const StructuredMatrix& h_bar,
                               PerturbationEdge e) {
    const int n = h_bar.rows();
    StructuredMatrix h_jc = drop_column(h_bar, e.j);
    ZeroModeWitness w{};
    w.r_j = generic_rank(h_jc);
    w.grank_minus_i =
        generic_rank(submatrix(h_jc, index_complement(n, {e.i}),
                               index_complement(n, {})));
    w.ok = (w.r_j == n) || (w.grank_minus_i == n - 2);
    return w;
}

std::vector<int> compute_I_star_j(const StructuredMatrix& h_bar, int j) {
    const int n = h_bar.rows();
    StructuredMatrix h_jc = drop_column(h_bar, j);
    const int r_j = generic_rank(h_jc);
    std::vector<int> out;
    for (int i = 1; i <= n; ++i) {
        StructuredMatrix sub = submatrix(h_jc, index_complement(n, {i}),
                                         index_complement(n, {}));
        if (generic_rank(sub) == r_j) out.push_back(i);
    }
    return out;
}

GammaInfo gamma_nz(const BipartiteGraph& pencil, const DMComponent& comp) {
    BipartiteGraph sub;
    std::vector<int> lmap(pencil.n_left(), -1), rmap(pencil.n_right(), -1);
    for (int u : comp.left) {
        lmap[u] = sub.n_left();
        sub.left_labels.push_back(pencil.left_labels[u]);
    }
    for (int v : comp.right) {
        rmap[v] = sub.n_right();
        sub.right_labels.push_back(pencil.right_labels[v]);
    }
    GammaInfo info;
    std::vector<int> weights;
    for (int ei : comp.edges) {
        const BEdge& e = pencil.edges[ei];
        sub.edges.push_back({lmap[e.left], rmap[e.right], e.kind});
        weights.push_back(is_lambda_edge(e.kind) ? 1 : 0);
        if (e.kind == EdgeKind::SelfLoop) info.self_loop = true;
    }
    info.gamma_min = min_weight_max_matching(sub, weights).weight;
    info.gamma_max = max_weight_max_matching(sub, weights).weight;
    info.nz = (info.gamma_max > info.gamma_min) || info.self_loop;
    return info;
}

EdgeCheckContext build_edge_context(const PerturbedStructuredSystem& sys,
                                    PerturbationEdge e) {
    const int n = sys.n();
    EdgeCheckContext ctx{e, augmented_h(sys, e), {}, {}, 0, {}, {}};
    assert(is_structurally_controllable(
               submatrix(ctx.h_bar, index_complement(n, {}),
                         index_complement(n + 1, {n + 1})),
               submatrix(ctx.h_bar, index_complement(n, {}), {n + 1}))
               .controllable);
    ctx.pencil = build_pencil_graph(ctx.h_bar, e.j);
    ctx.dm = dm_decompose(ctx.pencil);
    if (!ctx.dm.tails_empty())
        throw std::logic_error(
            "pencil graph has nonempty DM tails; augmented system is not "
            "structurally controllable");

    for (size_t k = 0; k < ctx.dm.consistent.size(); ++k) {
        const DMComponent& comp = ctx.dm.consistent[k];
        if (std::find(comp.left.begin(), comp.left.end(), e.i - 1) !=
            comp.left.end())
            ctx.i_star = static_cast<int>(k) + 1;
        ctx.gammas.push_back(gamma_nz(ctx.pencil, comp));
    }
    if (ctx.i_star == 0)
        throw std::logic_error("x_i not found in any consistent component");
    for (int k = 1; k <= ctx.i_star; ++k)
        if (ctx.gammas[k - 1].nz) ctx.omega.push_back(k);
    return ctx;
}

std::pair<BipartiteGraph, std::vector<int>> build_G_ki_star(
    const EdgeCheckContext& ctx, int k) {
    if (k < 1 || k > ctx.i_star)
        throw std::out_of_range("build_G_ki_star: k must be in 1..i_star");
    std::vector<int> lefts, rights;
    for (int c = k; c <= ctx.i_star; ++c) {
        const DMComponent& comp = ctx.dm.consistent[c - 1];
        for (int u : comp.left)
            if (u != ctx.edge.i - 1) lefts.push_back(u);
        rights.insert(rights.end(), comp.right.begin(), comp.right.end());
    }
    std::vector<int> origin;
    BipartiteGraph sub = induced_subgraph(ctx.pencil, lefts, rights, &origin);

    std::vector<bool> in_Ek(ctx.pencil.edges.size(), false);
    for (int ei : ctx.dm.consistent[k - 1].edges) in_Ek[ei] = true;
    std::vector<int> weights;
    for (int ei : origin) weights.push_back(in_Ek[ei] ? 1 : 0);
    return {std::move(sub), std::move(weights)};
}

NonzeroModeWitness nonzero_mode_safe(const EdgeCheckContext& ctx) {
    NonzeroModeWitness w{true, {}};
    for (int k : ctx.omega) {
        auto [sub, weights] = build_G_ki_star(ctx, k);
        int comp_size =
            static_cast<int>(ctx.dm.consistent[k - 1].left.size());
        int min_w = min_weight_max_matching(sub, weights).weight;
        bool ok = (min_w == comp_size);
        w.checks.push_back({k, min_w, comp_size, ok});
        if (!ok) {
            w.ok = false;
            break;
        }
    }
    return w;
}

PtscVerdict verify_ptsc(const PerturbedStructuredSystem& sys, bool fail_fast) {
    PtscVerdict verdict;
    StructCtrlResult sc = is_structurally_controllable(sys);
    verdict.structurally_controllable = sc.controllable;
    if (!sc.controllable) {
        verdict.reason = sc.reason;
        verdict.ptsc = false;
        return verdict;
    }

    bool all_passed = true;
    for (PerturbationEdge e : sys.perturbation_edges()) {
        EdgeReport report;
        report.edge = e;
        report.zero_mode = zero_mode_safe(augmented_h(sys, e), e);
        if (!report.zero_mode.ok) {
            report.passed = false;
            report.failure = "zero-mode condition violated";
        } else {
            EdgeCheckContext ctx = build_edge_context(sys, e);
            report.i_star = ctx.i_star;
            report.omega = ctx.omega;
            report.nonzero_evaluated = true;
            report.nonzero_mode = nonzero_mode_safe(ctx);
            report.passed = report.nonzero_mode.ok;
            if (!report.passed) report.failure = "nonzero-mode condition violated";
        }
        all_passed = all_passed && report.passed;
        bool failed = !report.passed;
        verdict.edge_reports.push_back(std::move(report));
        if (failed && fail_fast) break;
    }
    verdict.ptsc = all_passed;
    return verdict;
}

bool scrp_feasible(const PerturbedStructuredSystem& sys) {
    PtscVerdict v = verify_ptsc(sys, /*fail_fast=*/true);
    return v.structurally_controllable && !v.ptsc;
}

}  // namespace ptsc
