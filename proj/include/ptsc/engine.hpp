#pragma once

#include <string>

#include "ptsc/bipartite.hpp"
#include "ptsc/struct_ctrl.hpp"
#include "ptsc/structured.hpp"

namespace ptsc {

/// [A^e, b^e] = [A, b] v F^{e}: all F stars folded in except the one at e.
StructuredMatrix augmented_h(const PerturbedStructuredSystem& sys,
                             PerturbationEdge e);

/// Pencil graph B(H_lambda^{jc}): left x_1..x_n, right the columns of H
/// except j (labels keep the original column index). Lambda-edges (x_k, v_k)
/// for k in J_n \ {j}; positions coinciding with a star become self-loops.
BipartiteGraph build_pencil_graph(const StructuredMatrix& h_bar, int j);

struct ZeroModeWitness {
    bool ok;
    int r_j;            // grank(H[J_n, J_{n+1} \ {j}])
    int grank_minus_i;  // grank(H[J_n \ {i}, J_{n+1} \ {j}])
};

/// Zero uncontrollable modes are excluded iff r_j = n or
/// grank(H[J_n \ {i}, jc]) = n - 2; the two conditions are mutually
/// exclusive.
ZeroModeWitness zero_mode_safe(const StructuredMatrix& h_bar,
                               PerturbationEdge e);

/// Diagnostic: rows i whose removal still attains r_j, i.e. the possible
/// nonzero positions of a generic left null vector of H[., jc].
std::vector<int> compute_I_star_j(const StructuredMatrix& h_bar, int j);

struct GammaInfo {
    int gamma_min = 0;
    int gamma_max = 0;
    bool self_loop = false;
    bool nz = false;  // gamma_max > gamma_min or self-loop present
};

/// Lambda-sensitivity flag for one consistent DM component: lambda-edge weights,
/// min/max weight maximum matchings.
GammaInfo gamma_nz(const BipartiteGraph& pencil, const DMComponent& comp);

/// Everything derived for one perturbation edge.
struct EdgeCheckContext {
    PerturbationEdge edge;
    StructuredMatrix h_bar;  // [A^e, b^e]
    BipartiteGraph pencil;
    DMDecomposition dm;
    int i_star = 0;                 // 1-based consistent-component index of x_i
    std::vector<GammaInfo> gammas;  // per consistent component
    std::vector<int> omega;         // {k <= i_star : gamma_nz(k)}
};

/// Builds the context; throws std::logic_error if the pencil graph has
/// nonempty tails (the augmented system was not structurally controllable).
EdgeCheckContext build_edge_context(const PerturbedStructuredSystem& sys,
                                    PerturbationEdge e);

/// The weighted subgraph G_{k i*}: left vertices of components k..i* minus
/// x_i, right vertices of components k..i*, weight 1 on edges internal to
/// component k. Returns the graph plus its weight vector.
std::pair<BipartiteGraph, std::vector<int>> build_G_ki_star(
    const EdgeCheckContext& ctx, int k);

struct KWitness {
    int k;
    int min_weight;
    int comp_size;  // |V+_k|
    bool ok;        // min_weight == comp_size
};

struct NonzeroModeWitness {
    bool ok;
    std::vector<KWitness> checks;  // one per k in omega (until failure)
};

/// Nonzero uncontrollable modes are excluded iff omega is empty or each
/// k in omega attains min weight |V+_k| in G_{k i*}.
NonzeroModeWitness nonzero_mode_safe(const EdgeCheckContext& ctx);

struct EdgeReport {
    PerturbationEdge edge;
    ZeroModeWitness zero_mode{};
    bool nonzero_evaluated = false;
    NonzeroModeWitness nonzero_mode{};
    int i_star = 0;
    std::vector<int> omega;
    bool passed = false;
    std::string failure;  // empty when passed
};

struct PtscVerdict {
    bool structurally_controllable = false;
    std::string reason;  // set when not structurally controllable
    bool ptsc = false;
    std::vector<EdgeReport> edge_reports;
};

/// Full decision procedure. With fail_fast the per-edge loop stops at the
/// first violation; otherwise all edges are reported.
PtscVerdict verify_ptsc(const PerturbedStructuredSystem& sys,
                        bool fail_fast = false);

/// The structured controllability radius problem is generically feasible
/// iff the system is structurally controllable but not PTSC.
bool scrp_feasible(const PerturbedStructuredSystem& sys);

}  // namespace ptsc
