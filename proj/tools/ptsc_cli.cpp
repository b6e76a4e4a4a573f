#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ptsc/io.hpp"
#include "ptsc/oracle.hpp"

namespace {

constexpr int kExitPtsc = 0;
constexpr int kExitPssc = 1;
constexpr int kExitNotStructCtrl = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct LoadedInstance {
    ptsc::InstanceFile inst;
    std::string raw;
};

LoadedInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    LoadedInstance loaded{{}, buf.str()};
    std::vector<std::string> warnings;
    loaded.inst = ptsc::parse_instance(loaded.raw, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return loaded;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
}

int verdict_exit_code(const ptsc::PtscVerdict& v) {
    if (!v.structurally_controllable) return kExitNotStructCtrl;
    return v.ptsc ? kExitPtsc : kExitPssc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PTSC verifier: perturbation-tolerant structural "
                 "controllability of single-input structured systems"};
    app.require_subcommand(1);

    std::string path, out_path, edge_spec;
    bool fail_fast = false, json_out = false, text_out = false;
    int trials = 3;
    std::uint64_t seed = 0;
    int gen_n = 4;
    double density_a = 0.3, density_f = 0.1;
    bool require_sc = false;

    auto* verify = app.add_subcommand("verify", "decide PTSC vs PSSC");
    verify->add_option("path", path, "instance JSON file")->required();
    verify->add_flag("--fail-fast", fail_fast,
                     "stop at the first violating edge");
    verify->add_flag("--json", json_out, "JSON certificate (default)");
    verify->add_flag("--text", text_out, "plain-text summary");
    verify->add_option("--out", out_path, "write certificate to a file");

    auto* oracle = app.add_subcommand(
        "oracle", "randomized numeric validation of the verdict");
    oracle->add_option("path", path, "instance JSON file")->required();
    oracle->add_option("--trials", trials, "realizations per edge")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--seed", seed, "RNG seed");

    auto* dm = app.add_subcommand("dm", "block-triangular dump for one edge");
    dm->add_option("path", path, "instance JSON file")->required();
    dm->add_option("--edge", edge_spec, "perturbation edge as i,j")->required();

    auto* gen = app.add_subcommand("gen", "random instance generator");
    gen->add_option("--n", gen_n, "state dimension")->check(CLI::PositiveNumber);
    gen->add_option("--density-a", density_a, "star density of A and b");
    gen->add_option("--density-f", density_f, "star density of F");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_flag("--require-struct-ctrl", require_sc,
                  "rejection-sample until structurally controllable");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message
        return kExitUsage;
    }

    try {
        if (*verify) {
            auto loaded = load_instance(path);
            auto sys = loaded.inst.to_system();
            auto t0 = std::chrono::steady_clock::now();
            ptsc::PtscVerdict v = ptsc::verify_ptsc(sys, fail_fast);
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
            if (text_out)
                emit(ptsc::format_verdict_text(v), out_path);
            else
                emit(ptsc::serialize_certificate(
                         v, ptsc::fnv1a_hex(loaded.raw), ms),
                     out_path);
            return verdict_exit_code(v);
        }
        if (*oracle) {
            auto loaded = load_instance(path);
            auto sys = loaded.inst.to_system();
            if (!ptsc::is_structurally_controllable(sys).controllable) {
                std::cout << "not structurally controllable\n";
                return kExitNotStructCtrl;
            }
            ptsc::OracleReport r = ptsc::oracle_verdict(sys, trials, seed);
            if (r.pssc) {
                std::cout << "PSSC: witness on edge (" << r.edge.i << ","
                          << r.edge.j << "), t* = " << r.witness.t_star
                          << ", uncontrollable mode lambda* = "
                          << r.witness.lambda_star << "\n";
                return kExitPssc;
            }
            std::cout << "PTSC-consistent after " << r.trials_run
                      << " controllable trials (no destabilizing perturbation "
                         "found)\n";
            return kExitPtsc;
        }
        if (*dm) {
            int i = 0, j = 0;
            char comma = 0;
            std::istringstream es(edge_spec);
            if (!(es >> i >> comma >> j) || comma != ',') {
                std::cerr << "error: --edge must be i,j\n";
                return kExitUsage;
            }
            auto loaded = load_instance(path);
            if (!loaded.inst.f_stars.count({i, j})) {
                std::cerr << "error: edge (" << i << "," << j
                          << ") is not a star of F\n";
                return kExitUsage;
            }
            std::cout << ptsc::dm_dump(loaded.inst.to_system(), {i, j});
            return 0;
        }
        if (*gen) {
            auto inst = ptsc::generate_instance(gen_n, density_a, density_f,
                                                seed, require_sc);
            std::cout << ptsc::serialize_instance(inst);
            return 0;
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
