#pragma once

#include <set>
#include <string>

#include "ptsc/structured.hpp"

namespace ptsc {

/// System digraph of (A_bar, b_bar): state vertices 1..n, input vertex n+1,
/// arc x_i -> x_j when A_ji is a star, arc x_{n+1} -> x_i when b_i is a star.
struct SystemGraph {
    int n;
    std::vector<std::vector<int>> out_arcs;  // indexed 1..n+1

    SystemGraph(const StructuredMatrix& a_bar, const StructuredMatrix& b_bar);
};

/// States reachable from the input vertex by directed paths.
std::set<int> input_reachable_set(const SystemGraph& g);

struct StructCtrlResult {
    bool controllable;
    std::string reason;       // empty when controllable
    int unreachable_witness;  // 0 if not applicable
    int grank;                // grank([A, b])
};

/// Structural controllability: every state input-reachable and
/// grank([A, b]) = n. Reachability is reported first when both fail.
StructCtrlResult is_structurally_controllable(const StructuredMatrix& a_bar,
                                              const StructuredMatrix& b_bar);

inline StructCtrlResult is_structurally_controllable(
    const PerturbedStructuredSystem& sys) {
    return is_structurally_controllable(sys.a_bar(), sys.b_bar());
}

}  // namespace ptsc
