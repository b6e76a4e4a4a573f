#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ptsc {

/// Position of a free (star) entry, 1-based as in the public data model.
using Pos = std::pair<int, int>;

/// A {0,*} sparsity pattern: fixed zeros everywhere except the star set.
class StructuredMatrix {
public:
    StructuredMatrix(int rows, int cols, std::set<Pos> stars = {})
        : rows_(rows), cols_(cols), stars_(std::move(stars)) {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("StructuredMatrix: negative dimension");
        for (const auto& [r, c] : stars_)
            if (r < 1 || r > rows_ || c < 1 || c > cols_)
                throw std::out_of_range("StructuredMatrix: star out of range");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::set<Pos>& stars() const { return stars_; }
    bool has_star(int r, int c) const { return stars_.count({r, c}) != 0; }

    bool operator==(const StructuredMatrix& o) const = default;

private:
    int rows_;
    int cols_;
    std::set<Pos> stars_;
};

/// Entry-wise OR of two equally sized patterns.
StructuredMatrix vee(const StructuredMatrix& m1, const StructuredMatrix& m2);

/// Pattern restricted to the given 1-based index sets, reindexed
/// order-preservingly.
StructuredMatrix submatrix(const StructuredMatrix& m,
                           const std::vector<int>& row_keep,
                           const std::vector<int>& col_keep);

/// Horizontal concatenation [m1, m2].
StructuredMatrix hcat(const StructuredMatrix& m1, const StructuredMatrix& m2);

/// Maximum rank over all realizations; equals the maximum-matching size of
/// the pattern's bipartite graph.
int generic_rank(const StructuredMatrix& m);

/// Complement of an index set within 1..limit, ascending.
std::vector<int> index_complement(int limit, const std::vector<int>& drop);

/// One entry of the perturbation structure, read as edge (x_j -> x_i);
/// j == n+1 denotes the input column.
struct PerturbationEdge {
    int i;  // target row in 1..n
    int j;  // source column in 1..n+1

    auto operator<=>(const PerturbationEdge&) const = default;
};

/// The triple (A_bar, b_bar, F_bar) of an n-state single-input system with a
/// perturbation structure on [A, b].
class PerturbedStructuredSystem {
public:
    PerturbedStructuredSystem(StructuredMatrix a_bar, StructuredMatrix b_bar,
                              StructuredMatrix f_bar)
        : a_(std::move(a_bar)), b_(std::move(b_bar)), f_(std::move(f_bar)) {
        const int n = a_.rows();
        if (a_.cols() != n) throw std::invalid_argument("A pattern must be square");
        if (b_.rows() != n || b_.cols() != 1)
            throw std::invalid_argument("b pattern must be n x 1");
        if (f_.rows() != n || f_.cols() != n + 1)
            throw std::invalid_argument("F pattern must be n x (n+1)");
    }

    int n() const { return a_.rows(); }
    const StructuredMatrix& a_bar() const { return a_; }
    const StructuredMatrix& b_bar() const { return b_; }
    const StructuredMatrix& f_bar() const { return f_; }

    /// [A_bar, b_bar], n x (n+1).
    StructuredMatrix h_bar() const { return hcat(a_, b_); }

    /// Stars of F_bar in row-major order.
    std::vector<PerturbationEdge> perturbation_edges() const {
        std::vector<PerturbationEdge> out;
        for (const auto& [r, c] : f_.stars()) out.push_back({r, c});
        return out;
    }

private:
    StructuredMatrix a_;
    StructuredMatrix b_;
    StructuredMatrix f_;
};

}  // namespace ptsc
