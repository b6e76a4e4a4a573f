#include "ptsc/structured.hpp"

#include <algorithm>
#include <map>

#include "ptsc/bipartite.hpp"

namespace ptsc {

StructuredMatrix vee(const StructuredMatrix& m1, const StructuredMatrix& m2) {
    if (m1.rows() != m2.rows() || m1.cols() != m2.cols())
        throw std::invalid_argument("vee: dimension mismatch");
    std::set<Pos> stars = m1.stars();
    stars.insert(m2.stars().begin(), m2.stars().end());
    return {m1.rows(), m1.cols(), std::move(stars)};
}

StructuredMatrix submatrix(const StructuredMatrix& m,
                           const std::vector<int>& row_keep,
                           const std::vector<int>& col_keep) {
    std::map<int, int> rmap, cmap;
    for (int r : row_keep) {
        if (r < 1 || r > m.rows()) throw std::out_of_range("submatrix: row index");
        rmap.emplace(r, 0);
    }
    for (int c : col_keep) {
        if (c < 1 || c > m.cols()) throw std::out_of_range("submatrix: col index");
        cmap.emplace(c, 0);
    }
    int k = 1;
    for (auto& [r, idx] : rmap) idx = k++;
    k = 1;
    for (auto& [c, idx] : cmap) idx = k++;

    std::set<Pos> stars;
    for (const auto& [r, c] : m.stars()) {
        auto ri = rmap.find(r);
        auto ci = cmap.find(c);
        if (ri != rmap.end() && ci != cmap.end())
            stars.emplace(ri->second, ci->second);
    }
    return {static_cast<int>(rmap.size()), static_cast<int>(cmap.size()),
            std::move(stars)};
}

StructuredMatrix hcat(const StructuredMatrix& m1, const StructuredMatrix& m2) {
    if (m1.rows() != m2.rows())
        throw std::invalid_argument("hcat: row count mismatch");
    std::set<Pos> stars = m1.stars();
    for (const auto& [r, c] : m2.stars()) stars.emplace(r, c + m1.cols());
    return {m1.rows(), m1.cols() + m2.cols(), std::move(stars)};
}

int generic_rank(const StructuredMatrix& m) {
    BipartiteGraph g;
    for (int r = 1; r <= m.rows(); ++r) g.left_labels.push_back(r);
    for (int c = 1; c <= m.cols(); ++c) g.right_labels.push_back(c);
    for (const auto& [r, c] : m.stars())
        g.edges.push_back({r - 1, c - 1, EdgeKind::Generic});
    return max_matching(g).size;
}

std::vector<int> index_complement(int limit, const std::vector<int>& drop) {
    std::vector<bool> dropped(limit + 1, false);
    for (int d : drop)
        if (d >= 1 && d <= limit) dropped[d] = true;
    std::vector<int> out;
    for (int i = 1; i <= limit; ++i)
        if (!dropped[i]) out.push_back(i);
    return out;
}

}  // namespace ptsc
