#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>

#include "ptsc/structured.hpp"

namespace ptsc {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

enum class Field { Real, Complex };

/// Single numeric knob: singular values sigma_k > tol * sigma_1 * n count
/// toward the rank. Overridable via the PTSC_RANK_TOL environment variable.
double rank_tolerance();
void set_rank_tolerance(double tol);

/// A numeric matrix respecting a star pattern, star magnitudes in [1, 2].
struct NumericRealization {
    MatrixXc values;
    std::uint64_t seed;
};

/// Star entries i.i.d., magnitude uniform in [1, 2], random sign (real)
/// or uniform phase (complex); deterministic in the seed.
NumericRealization sample_realization(const StructuredMatrix& pattern,
                                      std::uint64_t seed, Field field);

/// Dense univariate polynomial, coefficients[k] multiplies t^k.
struct UnivariatePoly {
    std::vector<Complex> coefficients;

    Complex eval(Complex t) const;
    /// Largest k with |c_k| above rel_tol * max|c|; -1 for the zero poly.
    int effective_degree(double rel_tol = 1e-10) const;
    bool nonconstant(double rel_tol = 1e-8) const;
    std::vector<Complex> roots() const;  // companion-matrix eigenvalues
};

/// [b, Ab, ..., A^{n-1} b].
MatrixXc controllability_matrix(const MatrixXc& A, const VectorXc& b);

int numeric_rank(const MatrixXc& m, double tol = rank_tolerance());
bool numeric_controllable(const MatrixXc& A, const VectorXc& b,
                          double tol = rank_tolerance());

struct PscWitness {
    Complex t_star;       // perturbation value for the single entry
    Complex lambda_star;  // uncontrollable mode at that perturbation
};

struct PscProbe {
    UnivariatePoly poly;  // det C as a polynomial in the perturbed entry
    std::optional<PscWitness> witness;
};

/// Interpolates q(t) = det C of the system with entry (i, j) of [A, b]
/// shifted by t, over roots of unity (degree bound n(n+1)/2, self-checked
/// at a fresh node). A verified root becomes a witness: the controllability
/// matrix must drop numeric rank there, and the uncontrollable mode is
/// pulled out via the PBH test.
PscProbe psc_witness_single_entry(const MatrixXc& A, const VectorXc& b,
                                  PerturbationEdge entry);

struct OracleReport {
    bool pssc = false;  // a verified witness was found
    PerturbationEdge edge{};
    PscWitness witness{};
    int trials_run = 0;
};

/// Randomized PTSC check: per F edge, fold the remaining F stars into the
/// generic pattern, sample realizations, and probe the single perturbed
/// entry. PSSC on any verified witness; PTSC-consistent otherwise.
OracleReport oracle_verdict(const PerturbedStructuredSystem& sys, int trials,
                            std::uint64_t seed);

/// Number of nonzero roots (with multiplicity) of det(M - lambda E), read
/// off the coefficient support of the interpolated determinant polynomial.
/// E must have at most one 1 per row and per column. Throws if the pencil
/// is singular (identically zero determinant).
int count_nonzero_roots_numeric(const MatrixXc& M,
                                const Eigen::MatrixXi& E);

}  // namespace ptsc
