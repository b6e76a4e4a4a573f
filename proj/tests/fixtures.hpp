#pragma once

// The running example used throughout the suites: a 4-state chain with one
// extra coupling row, and its two perturbation structures.

#include <random>

#include "ptsc/structured.hpp"

namespace ptsc::testing {

inline StructuredMatrix example1_a() {
    return {4, 4, {{2, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 4}}};
}

inline StructuredMatrix example1_b() { return {4, 1, {{1, 1}}}; }

inline StructuredMatrix example1_f1() { return {4, 5, {{1, 3}, {1, 4}}}; }

inline StructuredMatrix example1_f2() { return {4, 5, {{3, 3}, {4, 5}}}; }

inline PerturbedStructuredSystem example1_system_f1() {
    return {example1_a(), example1_b(), example1_f1()};
}

inline PerturbedStructuredSystem example1_system_f2() {
    return {example1_a(), example1_b(), example1_f2()};
}

inline StructuredMatrix random_pattern(std::mt19937_64& rng, int rows,
                                       int cols, double density) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::set<Pos> stars;
    for (int r = 1; r <= rows; ++r)
        for (int c = 1; c <= cols; ++c)
            if (coin(rng) < density) stars.emplace(r, c);
    return {rows, cols, stars};
}

}  // namespace ptsc::testing
