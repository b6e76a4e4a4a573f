#pragma once

#include <optional>
#include <string>

#include "ptsc/engine.hpp"
#include "ptsc/structured.hpp"

namespace ptsc {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kCertificateSchemaVersion = 1;

/// On-disk instance: sparsity patterns with 1-based indices.
struct InstanceFile {
    int n = 0;
    std::set<Pos> a_stars;
    std::set<int> b_stars;
    std::set<Pos> f_stars;
    std::string name;
    std::optional<std::uint64_t> seed;

    PerturbedStructuredSystem to_system() const;
};

/// Throws std::runtime_error on malformed input; duplicate positions are
/// deduped with a warning.
InstanceFile parse_instance(const std::string& json_text,
                            std::vector<std::string>* warnings = nullptr);
std::string serialize_instance(const InstanceFile& inst);

std::string fnv1a_hex(const std::string& bytes);

/// JSON certificate mirroring the verdict, schema-versioned.
std::string serialize_certificate(const PtscVerdict& verdict,
                                  const std::string& input_hash,
                                  double elapsed_ms);

/// Human-readable verdict summary.
std::string format_verdict_text(const PtscVerdict& verdict);

/// Fixed-layout block-triangular dump for one perturbation edge: component
/// sizes, per-block entry symbols, i*, Omega_j and gamma values per block.
std::string dm_dump(const PerturbedStructuredSystem& sys, PerturbationEdge e);

/// Random instance; with require_struct_ctrl, rejection-samples until
/// structural controllability holds (throws after 10000 attempts).
InstanceFile generate_instance(int n, double density_a, double density_f,
                               std::uint64_t seed, bool require_struct_ctrl);

}  // namespace ptsc
