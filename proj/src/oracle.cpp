#include "ptsc/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <tuple>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ptsc/engine.hpp"
#include "ptsc/struct_ctrl.hpp"

namespace ptsc {

namespace {

double initial_rank_tolerance() {
    if (const char* env = std::getenv("PTSC_RANK_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return 1e-10;
}

double& rank_tolerance_storage() {
    static double tol = initial_rank_tolerance();
    return tol;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

double rank_tolerance() { return rank_tolerance_storage(); }
void set_rank_tolerance(double tol) { rank_tolerance_storage() = tol; }

NumericRealization sample_realization(const StructuredMatrix& pattern,
                                      std::uint64_t seed, Field field) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(1.0, 2.0);
    std::uniform_real_distribution<double> phase(0.0,
                                                 2.0 * std::numbers::pi);
    NumericRealization out{MatrixXc::Zero(pattern.rows(), pattern.cols()),
                           seed};
    for (const auto& [r, c] : pattern.stars()) {
        double m = mag(rng);
        if (field == Field::Real) {
            bool negative = (rng() & 1) != 0;
            out.values(r - 1, c - 1) = negative ? -m : m;
        } else {
            double ph = phase(rng);
            out.values(r - 1, c - 1) = Complex(m * std::cos(ph),
                                               m * std::sin(ph));
        }
    }
    return out;
}

Complex UnivariatePoly::eval(Complex t) const {
    Complex acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
        acc = acc * t + *it;
    return acc;
}

int UnivariatePoly::effective_degree(double rel_tol) const {
    double cmax = 0.0;
    for (const auto& c : coefficients) cmax = std::max(cmax, std::abs(c));
    if (cmax == 0.0) return -1;
    for (int k = static_cast<int>(coefficients.size()) - 1; k >= 0; --k)
        if (std::abs(coefficients[k]) > rel_tol * cmax) return k;
    return -1;
}

bool UnivariatePoly::nonconstant(double rel_tol) const {
    double cmax = 0.0, tail = 0.0;
    for (size_t k = 0; k < coefficients.size(); ++k) {
        cmax = std::max(cmax, std::abs(coefficients[k]));
        if (k >= 1) tail = std::max(tail, std::abs(coefficients[k]));
    }
    return tail > rel_tol * cmax;
}

std::vector<Complex> UnivariatePoly::roots() const {
    int deg = effective_degree();
    if (deg < 1) return {};
    MatrixXc companion = MatrixXc::Zero(deg, deg);
    Complex lead = coefficients[deg];
    for (int k = 0; k < deg; ++k) companion(k, deg - 1) = -coefficients[k] / lead;
    for (int k = 1; k < deg; ++k) companion(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<MatrixXc> es(companion, false);
    std::vector<Complex> out;
    for (int k = 0; k < deg; ++k) out.push_back(es.eigenvalues()(k));
    return out;
}

MatrixXc controllability_matrix(const MatrixXc& A, const VectorXc& b) {
    const int n = static_cast<int>(A.rows());
    if (n == 0) throw std::invalid_argument("controllability_matrix: n = 0");
    if (A.cols() != n || b.size() != n)
        throw std::invalid_argument("controllability_matrix: dimensions");
    MatrixXc C(n, n);
    VectorXc col = b;
    for (int k = 0; k < n; ++k) {
        C.col(k) = col;
        col = A * col;
    }
    return C;
}

int numeric_rank(const MatrixXc& m, double tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<MatrixXc> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    double cutoff = tol * sv(0) * static_cast<double>(std::max(m.rows(), m.cols()));
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > cutoff) ++rank;
    return rank;
}

bool numeric_controllable(const MatrixXc& A, const VectorXc& b, double tol) {
    return numeric_rank(controllability_matrix(A, b), tol) == A.rows();
}

namespace {

MatrixXc perturbed_A(const MatrixXc& A, PerturbationEdge e, Complex t) {
    MatrixXc out = A;
    if (e.j <= A.rows()) out(e.i - 1, e.j - 1) += t;
    return out;
}

VectorXc perturbed_b(const VectorXc& b, int n, PerturbationEdge e, Complex t) {
    VectorXc out = b;
    if (e.j == n + 1) out(e.i - 1) += t;
    return out;
}

struct RefinedWitness {
    Complex t;
    Complex lambda;
};

/// Newton refinement of an approximate determinant root. Interpolated roots
/// of det C(t) can be badly conditioned (a rank drop of m makes the root
/// m-fold, limiting companion-matrix accuracy to eps^(1/m)), so instead of
/// polishing the polynomial we solve the underlying bilinear system
///     w A(t) = lambda w,   w b(t) = 0,   w d = 1
/// for the left row vector w, the uncontrollable mode lambda and the
/// perturbation t jointly; its solutions are simple generically and Newton
/// converges to machine precision.
std::optional<RefinedWitness> newton_refine(const MatrixXc& A,
                                            const VectorXc& b,
                                            PerturbationEdge entry, Complex t0,
                                            Complex lambda0,
                                            const VectorXc& u0) {
    const int n = static_cast<int>(A.rows());
    VectorXc u = u0;
    Complex lambda = lambda0;
    if (u.norm() == 0.0) return std::nullopt;
    VectorXc d = u.conjugate() / u.squaredNorm();  // d^T u = 1 initially

    Complex t = t0;
    const double scale = 1.0 + A.norm() + b.norm();
    MatrixXc At;
    VectorXc bt;
    for (int iter = 0; iter < 60; ++iter) {
        At = perturbed_A(A, entry, t);
        bt = perturbed_b(b, n, entry, t);
        VectorXc r1 = At.transpose() * u - lambda * u;
        Complex r2 = (bt.transpose() * u).value();
        Complex r3 = (d.transpose() * u).value() - 1.0;
        double res = std::sqrt(r1.squaredNorm() + std::norm(r2) + std::norm(r3));
        if (!std::isfinite(res)) return std::nullopt;
        if (res < 1e-13 * scale * (1.0 + std::abs(lambda) + std::abs(t)))
            return RefinedWitness{t, lambda};

        MatrixXc J = MatrixXc::Zero(n + 2, n + 2);
        J.topLeftCorner(n, n) =
            At.transpose() - lambda * MatrixXc::Identity(n, n);
        J.block(0, n, n, 1) = -u;
        if (entry.j <= n)  // d/dt of (A + t e_i e_j^T)^T u = u_i e_j
            J(entry.j - 1, n + 1) = u(entry.i - 1);
        J.block(n, 0, 1, n) = bt.transpose();
        if (entry.j == n + 1) J(n, n + 1) = u(entry.i - 1);
        J.block(n + 1, 0, 1, n) = d.transpose();

        VectorXc rhs(n + 2);
        rhs.head(n) = -r1;
        rhs(n) = -r2;
        rhs(n + 1) = -r3;
        VectorXc delta = J.fullPivLu().solve(rhs);
        if (!delta.allFinite()) return std::nullopt;
        u += delta.head(n);
        lambda += delta(n);
        t += delta(n + 1);
    }
    return std::nullopt;
}

/// Newton starts from every eigenvalue of A(t0), weakest PBH margin first;
/// a single start can land on a defective eigenvalue whose bordered
/// Jacobian is singular.
std::optional<RefinedWitness> refine_witness(const MatrixXc& A,
                                             const VectorXc& b,
                                             PerturbationEdge entry,
                                             Complex t0) {
    const int n = static_cast<int>(A.rows());
    MatrixXc At = perturbed_A(A, entry, t0);
    VectorXc bt = perturbed_b(b, n, entry, t0);

    Eigen::ComplexEigenSolver<MatrixXc> es(At, false);
    std::vector<std::tuple<double, Complex, VectorXc>> starts;
    for (int k = 0; k < n; ++k) {
        Complex lam = es.eigenvalues()(k);
        MatrixXc pbh(n, n + 1);
        pbh.leftCols(n) = At - lam * MatrixXc::Identity(n, n);
        pbh.col(n) = bt;
        Eigen::JacobiSVD<MatrixXc> svd(pbh, Eigen::ComputeFullU);
        starts.emplace_back(svd.singularValues()(n - 1), lam,
                            svd.matrixU().col(n - 1).conjugate());
    }
    std::sort(starts.begin(), starts.end(),
              [](const auto& a, const auto& b) {
                  return std::get<0>(a) < std::get<0>(b);
              });
    for (const auto& [sigma, lam, u] : starts)
        if (auto refined = newton_refine(A, b, entry, t0, lam, u))
            return refined;
    return std::nullopt;
}

/// Eigenvalues of M with near-duplicates merged.
std::vector<Complex> distinct_eigenvalues(const MatrixXc& M) {
    Eigen::ComplexEigenSolver<MatrixXc> es(M, false);
    double scale = 1.0 + M.norm();
    std::vector<Complex> out;
    for (int k = 0; k < M.rows(); ++k) {
        Complex lam = es.eigenvalues()(k);
        bool dup = false;
        for (Complex seen : out)
            if (std::abs(lam - seen) < 1e-8 * scale) dup = true;
        if (!dup) out.push_back(lam);
    }
    return out;
}

}  // namespace

PscProbe psc_witness_single_entry(const MatrixXc& A, const VectorXc& b,
                                  PerturbationEdge entry) {
    const int n = static_cast<int>(A.rows());
    if (entry.i < 1 || entry.i > n || entry.j < 1 || entry.j > n + 1)
        throw std::out_of_range("psc_witness_single_entry: entry out of range");
    if (!numeric_controllable(A, b))
        throw std::invalid_argument(
            "psc_witness_single_entry: unperturbed realization must be "
            "controllable");

    auto det_at = [&](Complex t) {
        return controllability_matrix(perturbed_A(A, entry, t),
                                      perturbed_b(b, n, entry, t))
            .determinant();
    };

    // Column k of C has entries of degree <= k+1 in t, so det C has degree
    // at most sum_{k=0}^{n-1} (k+1) = n(n+1)/2.
    const int D = n * (n + 1) / 2;
    const int N = D + 1;
    std::vector<Complex> samples(N);
    for (int k = 0; k < N; ++k) {
        double ang = 2.0 * std::numbers::pi * k / N;
        samples[k] = det_at(Complex(std::cos(ang), std::sin(ang)));
    }
    PscProbe probe;
    probe.poly.coefficients.resize(N);
    for (int m = 0; m < N; ++m) {
        Complex acc = 0.0;
        for (int k = 0; k < N; ++k) {
            double ang = -2.0 * std::numbers::pi * k * m / N;
            acc += samples[k] * Complex(std::cos(ang), std::sin(ang));
        }
        probe.poly.coefficients[m] = acc / static_cast<double>(N);
    }

    // Self-check at a fresh node off the unit circle.
    const Complex fresh(1.31, 0.47);
    Complex direct = det_at(fresh);
    Complex interp = probe.poly.eval(fresh);
    double scale = std::max(std::abs(direct), 1.0);
    if (std::abs(direct - interp) > 1e-6 * scale)
        throw std::runtime_error(
            "interpolation self-check failed; resample the realization");

    if (!probe.poly.nonconstant()) return probe;

    double best_ratio = 1.0;
    auto consider = [&](Complex t, Complex lambda) {
        if (!std::isfinite(std::abs(t))) return;
        MatrixXc C = controllability_matrix(perturbed_A(A, entry, t),
                                            perturbed_b(b, n, entry, t));
        Eigen::JacobiSVD<MatrixXc> svd(C);
        const auto& sv = svd.singularValues();
        double ratio = sv(0) > 0 ? sv(n - 1) / sv(0) : 0.0;
        if (numeric_rank(C) < n && ratio < best_ratio) {
            best_ratio = ratio;
            probe.witness = PscWitness{t, lambda};
        }
    };

    if (entry.j == n + 1) {
        // The input column leaves A untouched, so the mode must be an
        // eigenvalue of A itself and the witness solves w (b + t e_i) = 0
        // for the (unique, by controllability) left eigenvector w.
        for (Complex lam : distinct_eigenvalues(A)) {
            MatrixXc lhs = (A - lam * MatrixXc::Identity(n, n)).transpose();
            Eigen::JacobiSVD<MatrixXc> svd(lhs, Eigen::ComputeFullV);
            VectorXc u = svd.matrixV().col(n - 1);  // w = u^T up to scale
            Complex wi = u(entry.i - 1);
            if (std::abs(wi) < 1e-10) continue;
            consider(-(b.transpose() * u).value() / wi, lam);
        }
    }
    for (Complex root : probe.poly.roots()) {
        auto refined = refine_witness(A, b, entry, root);
        if (refined) consider(refined->t, refined->lambda);
    }
    return probe;
}

OracleReport oracle_verdict(const PerturbedStructuredSystem& sys, int trials,
                            std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("oracle_verdict: trials < 1");
    if (!is_structurally_controllable(sys).controllable)
        throw std::invalid_argument(
            "oracle_verdict: system must be structurally controllable");

    const int n = sys.n();
    OracleReport report;
    auto edges = sys.perturbation_edges();
    for (size_t ei = 0; ei < edges.size(); ++ei) {
        PerturbationEdge e = edges[ei];
        StructuredMatrix folded = augmented_h(sys, e);
        for (int trial = 0; trial < trials; ++trial) {
            std::uint64_t sub_seed =
                splitmix64(seed ^ splitmix64(ei * 1000003ULL + trial));
            // Resample until the folded realization is controllable; for a
            // structurally controllable pattern this succeeds immediately
            // almost surely.
            for (int attempt = 0; attempt < 32; ++attempt) {
                NumericRealization real = sample_realization(
                    folded, splitmix64(sub_seed + attempt), Field::Real);
                MatrixXc A = real.values.leftCols(n);
                VectorXc b = real.values.col(n);
                if (!numeric_controllable(A, b)) continue;
                ++report.trials_run;
                PscProbe probe = psc_witness_single_entry(A, b, e);
                if (probe.witness) {
                    report.pssc = true;
                    report.edge = e;
                    report.witness = *probe.witness;
                    return report;
                }
                break;
            }
        }
    }
    return report;
}

int count_nonzero_roots_numeric(const MatrixXc& M, const Eigen::MatrixXi& E) {
    const int n = static_cast<int>(M.rows());
    if (M.cols() != n || E.rows() != n || E.cols() != n)
        throw std::invalid_argument("count_nonzero_roots_numeric: dimensions");
    int ones = 0;
    for (int r = 0; r < n; ++r) {
        int row_ones = 0;
        for (int c = 0; c < n; ++c)
            if (E(r, c) != 0) {
                ++row_ones;
                ++ones;
            }
        if (row_ones > 1)
            throw std::invalid_argument("E must have at most one 1 per row");
    }
    for (int c = 0; c < n; ++c) {
        int col_ones = 0;
        for (int r = 0; r < n; ++r)
            if (E(r, c) != 0) ++col_ones;
        if (col_ones > 1)
            throw std::invalid_argument("E must have at most one 1 per column");
    }

    const int N = ones + 1;
    MatrixXc Ec = E.cast<Complex>();
    std::vector<Complex> samples(N);
    for (int k = 0; k < N; ++k) {
        double ang = 2.0 * std::numbers::pi * k / N;
        Complex lam(std::cos(ang), std::sin(ang));
        samples[k] = (M - lam * Ec).determinant();
    }
    std::vector<double> mags(N);
    double cmax = 0.0;
    std::vector<Complex> coeffs(N);
    for (int m = 0; m < N; ++m) {
        Complex acc = 0.0;
        for (int k = 0; k < N; ++k) {
            double ang = -2.0 * std::numbers::pi * k * m / N;
            acc += samples[k] * Complex(std::cos(ang), std::sin(ang));
        }
        coeffs[m] = acc / static_cast<double>(N);
        mags[m] = std::abs(coeffs[m]);
        cmax = std::max(cmax, mags[m]);
    }
    if (cmax < 1e-12)
        throw std::runtime_error(
            "singular pencil: determinant polynomial vanishes; resample M");
    int kmin = -1, kmax = -1;
    for (int m = 0; m < N; ++m)
        if (mags[m] > 1e-8 * cmax) {
            if (kmin == -1) kmin = m;
            kmax = m;
        }
    return kmax - kmin;
}

}  // namespace ptsc
