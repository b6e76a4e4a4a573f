#include "ptsc/io.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "ptsc/struct_ctrl.hpp"

namespace ptsc {

using nlohmann::json;

PerturbedStructuredSystem InstanceFile::to_system() const {
    std::set<Pos> b2;
    for (int r : b_stars) b2.emplace(r, 1);
    return {StructuredMatrix(n, n, a_stars), StructuredMatrix(n, 1, b2),
            StructuredMatrix(n, n + 1, f_stars)};
}

InstanceFile parse_instance(const std::string& json_text,
                            std::vector<std::string>* warnings) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("instance parse error: ") +
                                 e.what());
    }
    InstanceFile inst;
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw std::runtime_error("instance parse error: field 'n' missing");
    inst.n = j["n"].get<int>();
    if (inst.n < 1)
        throw std::runtime_error("instance parse error: n must be positive");

    auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    };
    auto read_pairs = [&](const char* field, int max_col, std::set<Pos>& out) {
        if (!j.contains(field)) return;
        if (!j[field].is_array())
            throw std::runtime_error(std::string("instance parse error: '") +
                                     field + "' must be an array");
        for (const auto& item : j[field]) {
            if (!item.is_array() || item.size() != 2 ||
                !item[0].is_number_integer() || !item[1].is_number_integer())
                throw std::runtime_error(std::string("instance parse error: '") +
                                         field + "' entries must be [i, j]");
            int r = item[0].get<int>(), c = item[1].get<int>();
            if (r < 1 || r > inst.n || c < 1 || c > max_col)
                throw std::runtime_error(std::string("instance parse error: '") +
                                         field + "' index out of range");
            if (!out.emplace(r, c).second)
                warn(std::string("duplicate entry in ") + field);
        }
    };
    read_pairs("A_stars", inst.n, inst.a_stars);
    read_pairs("F_stars", inst.n + 1, inst.f_stars);
    if (j.contains("b_stars")) {
        if (!j["b_stars"].is_array())
            throw std::runtime_error(
                "instance parse error: 'b_stars' must be an array");
        for (const auto& item : j["b_stars"]) {
            if (!item.is_number_integer())
                throw std::runtime_error(
                    "instance parse error: 'b_stars' entries must be row indices");
            int r = item.get<int>();
            if (r < 1 || r > inst.n)
                throw std::runtime_error(
                    "instance parse error: 'b_stars' index out of range");
            if (!inst.b_stars.insert(r).second) warn("duplicate entry in b_stars");
        }
    }
    if (j.contains("name")) inst.name = j["name"].get<std::string>();
    if (j.contains("seed")) inst.seed = j["seed"].get<std::uint64_t>();
    return inst;
}

std::string serialize_instance(const InstanceFile& inst) {
    json j;
    j["n"] = inst.n;
    j["A_stars"] = json::array();
    for (const auto& [r, c] : inst.a_stars) j["A_stars"].push_back({r, c});
    j["b_stars"] = json::array();
    for (int r : inst.b_stars) j["b_stars"].push_back(r);
    j["F_stars"] = json::array();
    for (const auto& [r, c] : inst.f_stars) j["F_stars"].push_back({r, c});
    if (!inst.name.empty()) j["name"] = inst.name;
    if (inst.seed) j["seed"] = *inst.seed;
    return j.dump(2) + "\n";
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

namespace {

json edge_report_json(const EdgeReport& r) {
    json e;
    e["edge"] = {r.edge.i, r.edge.j};
    e["zero_mode"] = {{"ok", r.zero_mode.ok},
                      {"r_j", r.zero_mode.r_j},
                      {"grank_minus_i", r.zero_mode.grank_minus_i}};
    json nz;
    nz["evaluated"] = r.nonzero_evaluated;
    nz["ok"] = r.nonzero_mode.ok;
    nz["i_star"] = r.i_star;
    nz["omega"] = r.omega;
    nz["checks"] = json::array();
    for (const auto& c : r.nonzero_mode.checks)
        nz["checks"].push_back({{"k", c.k},
                                {"min_weight", c.min_weight},
                                {"comp_size", c.comp_size},
                                {"ok", c.ok}});
    e["nonzero_mode"] = nz;
    e["passed"] = r.passed;
    e["failure"] = r.failure;
    return e;
}

std::string verdict_word(const PtscVerdict& v) {
    if (!v.structurally_controllable) return "NOT_STRUCTURALLY_CONTROLLABLE";
    return v.ptsc ? "PTSC" : "PSSC";
}

}  // namespace

std::string serialize_certificate(const PtscVerdict& verdict,
                                  const std::string& input_hash,
                                  double elapsed_ms) {
    json j;
    j["schema_version"] = kCertificateSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["input_hash"] = input_hash;
    j["elapsed_ms"] = elapsed_ms;
    j["structurally_controllable"] = verdict.structurally_controllable;
    j["reason"] = verdict.reason;
    j["ptsc"] = verdict.ptsc;
    j["verdict"] = verdict_word(verdict);
    j["edge_reports"] = json::array();
    for (const auto& r : verdict.edge_reports)
        j["edge_reports"].push_back(edge_report_json(r));
    return j.dump(2) + "\n";
}

std::string format_verdict_text(const PtscVerdict& v) {
    std::ostringstream os;
    os << "verdict: " << verdict_word(v) << "\n";
    if (!v.structurally_controllable) {
        os << "reason: " << v.reason << "\n";
        return os.str();
    }
    for (const auto& r : v.edge_reports) {
        os << "edge (" << r.edge.i << "," << r.edge.j << "): "
           << (r.passed ? "ok" : "VIOLATED");
        if (!r.passed) os << " [" << r.failure << "]";
        os << "  zero-mode " << (r.zero_mode.ok ? "ok" : "fail") << " (r_j="
           << r.zero_mode.r_j << ", grank-i=" << r.zero_mode.grank_minus_i
           << ")";
        if (r.nonzero_evaluated) {
            os << "  nonzero-mode " << (r.nonzero_mode.ok ? "ok" : "fail")
               << " (i*=" << r.i_star << ", Omega={";
            for (size_t k = 0; k < r.omega.size(); ++k)
                os << (k ? "," : "") << r.omega[k];
            os << "})";
        }
        os << "\n";
    }
    return os.str();
}

std::string dm_dump(const PerturbedStructuredSystem& sys, PerturbationEdge e) {
    if (!sys.f_bar().has_star(e.i, e.j))
        throw std::invalid_argument("dm_dump: edge is not a star of F");
    EdgeCheckContext ctx = build_edge_context(sys, e);
    const BipartiteGraph& g = ctx.pencil;

    // Per-cell symbol lookup for the permuted matrix.
    auto symbol = [&](int l, int r) -> std::string {
        for (const auto& edge : g.edges)
            if (edge.left == l && edge.right == r) {
                switch (edge.kind) {
                    case EdgeKind::Generic: return "*";
                    case EdgeKind::Lambda: return "-L";
                    case EdgeKind::SelfLoop: return "*-L";
                }
            }
        return ".";
    };

    std::ostringstream os;
    os << "dm dump for edge (" << e.i << "," << e.j << "), column j=" << e.j
       << " deleted\n";
    os << "consistent components: " << ctx.dm.consistent.size() << " (sizes";
    for (size_t k = 0; k < ctx.dm.consistent.size(); ++k)
        os << (k ? "," : " ") << ctx.dm.consistent[k].left.size();
    os << ")\n";
    os << "i* = " << ctx.i_star << " (x" << e.i << " in component "
       << ctx.i_star << ")\n";
    os << "Omega_j = {";
    for (size_t k = 0; k < ctx.omega.size(); ++k)
        os << (k ? "," : "") << ctx.omega[k];
    os << "}\n";
    for (size_t k = 0; k < ctx.dm.consistent.size(); ++k) {
        const DMComponent& comp = ctx.dm.consistent[k];
        const GammaInfo& gi = ctx.gammas[k];
        os << "block " << (k + 1) << ": rows {";
        for (size_t u = 0; u < comp.left.size(); ++u)
            os << (u ? "," : "") << "x" << g.left_labels[comp.left[u]];
        os << "} cols {";
        for (size_t v = 0; v < comp.right.size(); ++v)
            os << (v ? "," : "") << "v" << g.right_labels[comp.right[v]];
        os << "} gamma_min=" << gi.gamma_min << " gamma_max=" << gi.gamma_max
           << " self_loop=" << (gi.self_loop ? "yes" : "no")
           << " gamma_nz=" << (gi.nz ? 1 : 0) << "\n";
        for (int u : comp.left) {
            os << "  [";
            for (size_t v = 0; v < comp.right.size(); ++v)
                os << (v ? " " : "") << symbol(u, comp.right[v]);
            os << "]\n";
        }
    }
    return os.str();
}

InstanceFile generate_instance(int n, double density_a, double density_f,
                               std::uint64_t seed, bool require_struct_ctrl) {
    if (n < 1) throw std::invalid_argument("generate_instance: n must be >= 1");
    if (density_a < 0 || density_a > 1 || density_f < 0 || density_f > 1)
        throw std::invalid_argument("generate_instance: densities in [0, 1]");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const int cap = 10000;
    for (int attempt = 0; attempt < cap; ++attempt) {
        InstanceFile inst;
        inst.n = n;
        inst.seed = seed;
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c <= n; ++c)
                if (coin(rng) < density_a) inst.a_stars.emplace(r, c);
        for (int r = 1; r <= n; ++r)
            if (coin(rng) < density_a) inst.b_stars.insert(r);
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c <= n + 1; ++c)
                if (coin(rng) < density_f) inst.f_stars.emplace(r, c);
        if (!require_struct_ctrl) return inst;
        auto sys = inst.to_system();
        if (is_structurally_controllable(sys).controllable) return inst;
    }
    throw std::runtime_error(
        "generate_instance: no structurally controllable instance within "
        "10000 attempts; try a higher density");
}

}  // namespace ptsc
