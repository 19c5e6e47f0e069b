/**
 * @file qsp_cli.cpp
 * Single binary exposing the library over subcommands:
 *   build        emit an ansatz circuit as JSON
 *   span-verify  span fidelity of a family over random sector targets (JSON)
 *   sweep        fidelity-vs-parameter-count curve (CSV)
 *   counts       CNOT-count comparison table for fixed n (CSV)
 *   dims         sector dimensions vs n (CSV)
 *   decompose    Gray-walk state-preparation circuit + cost report (JSON)
 *   vqe          noiseless VQE on a Hamiltonian file (JSON)
 *
 * All randomized subcommands take --seed (default 42) and never read
 * wall-clock entropy, so identical invocations are byte-identical.
 * Exit codes: 0 success, 1 usage/domain error, 2 internal invariant violation.
 */

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsp/ansatz_a.hpp"
#include "qsp/counts.hpp"
#include "qsp/gray.hpp"
#include "qsp/serialize.hpp"
#include "qsp/span.hpp"
#include "qsp/vqe.hpp"

namespace {

using nlohmann::ordered_json;

/// Shared flags naming a parameterized family and its symmetry sector.
struct FamilyArgs {
    std::string ansatz = "a";  ///< a | a-sz | e | e-spin
    int n = 0, m = 0;
    std::optional<double> sz;  ///< S_z (may be half-integer)
    std::optional<double> s;   ///< total spin S
    bool tr = false;           ///< time-reversal (real coefficients)
};

void add_family_flags(CLI::App* cmd, FamilyArgs& fa, bool with_ansatz = true) {
    if (with_ansatz)
        cmd->add_option("--ansatz", fa.ansatz, "Family: a, a-sz, e, e-spin")
            ->check(CLI::IsMember({"a", "a-sz", "e", "e-spin"}));
    cmd->add_option("--n", fa.n, "Qubit count")->required();
    cmd->add_option("--m", fa.m, "Particle number")->required();
    cmd->add_option("--sz", fa.sz, "Spin projection S_z (half-integers allowed)");
    cmd->add_option("--s", fa.s, "Total spin S (half-integers allowed)");
    cmd->add_flag("--tr", fa.tr, "Time-reversal variant (real coefficients)");
}

int doubled(double q) { return static_cast<int>(std::llround(2.0 * q)); }

bool spin_constrained(const FamilyArgs& fa) {
    return fa.ansatz == "e-spin" || fa.s.has_value();
}

/// The sector a family's states live in. Spin-constrained families use the
/// interleaved layout (orbital p = qubits 2p-1, 2p); everything else block.
qsp::SymmetrySector family_sector(const FamilyArgs& fa) {
    qsp::SymmetrySector sec;
    sec.n = fa.n;
    sec.m = fa.m;
    if (fa.sz) sec.sz2 = doubled(*fa.sz);
    if (fa.s) sec.s2 = doubled(*fa.s);
    sec.layout = spin_constrained(fa) ? qsp::SpinLayout::Interleaved
                                      : qsp::SpinLayout::Block;
    return sec;
}

qsp::Circuit family_circuit(const FamilyArgs& fa) {
    if (fa.ansatz == "a" || fa.ansatz == "a-sz") {
        qsp::AnsatzOptions opt;
        opt.time_reversal = fa.tr;
        if (fa.ansatz == "a-sz" || (fa.ansatz == "a" && fa.sz)) {
            opt.sz_variant = true;
            opt.sz2 = fa.sz ? doubled(*fa.sz) : 0;
        }
        return qsp::build_general(fa.n, fa.m, opt);
    }
    return qsp::decompose_gray(qsp::gray_order(fa.n, fa.m));
}

qsp::ParamStateFn family_fn(const FamilyArgs& fa) {
    if (fa.ansatz == "a" || fa.ansatz == "a-sz")
        return qsp::circuit_fn(family_circuit(fa));
    if (fa.ansatz == "e") return qsp::hyperspherical_fn(qsp::gray_order(fa.n, fa.m));
    // e-spin: tabulated constraints when available, projector family otherwise
    const qsp::SymmetrySector sec = family_sector(fa);
    try {
        return qsp::spin_constrained_fn(sec);
    } catch (const std::invalid_argument&) {
        return qsp::general_spin_fn(sec);
    }
}

/// Hyperspherical and spin-constrained families produce real states, as do
/// time-reversal A circuits; span targets are drawn accordingly.
bool family_is_real(const FamilyArgs& fa) {
    return fa.tr || fa.ansatz == "e" || fa.ansatz == "e-spin";
}

ordered_json sector_json(const FamilyArgs& fa) {
    ordered_json j;
    j["ansatz"] = fa.ansatz;
    j["n"] = fa.n;
    j["m"] = fa.m;
    if (fa.sz) j["sz"] = *fa.sz;
    if (fa.s) j["s"] = *fa.s;
    j["tr"] = fa.tr;
    return j;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

std::string csv_double(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Symmetry-preserving state-preparation circuits: construction, "
        "decomposition, counting, numerical verification, and noiseless VQE"};
    app.require_subcommand(1);
    app.fallthrough();  // --seed/--threads/-o may follow the subcommand

    unsigned seed = 42;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    std::string output;
    app.add_option("--seed", seed, "RNG seed (default 42)");
    app.add_option("--threads", threads, "Internal parallelism cap");
    app.add_option("-o,--output", output, "Output path (default stdout)");

    // build -------------------------------------------------------------
    FamilyArgs build_fa;
    std::string build_format = "json";
    auto* cmd_build = app.add_subcommand("build", "Emit an ansatz circuit");
    add_family_flags(cmd_build, build_fa);
    cmd_build->add_option("--format", build_format, "Output format")
        ->check(CLI::IsMember({"json"}));

    // span-verify -------------------------------------------------------
    FamilyArgs span_fa;
    int span_targets = 200;
    auto* cmd_span = app.add_subcommand("span-verify",
                                        "Span fidelity over random sector targets");
    add_family_flags(cmd_span, span_fa);
    cmd_span->add_option("--targets", span_targets, "Random targets (default 200)");

    // sweep -------------------------------------------------------------
    FamilyArgs sweep_fa;
    int sweep_targets = 200;
    auto* cmd_sweep = app.add_subcommand("sweep",
                                         "Fidelity vs free-parameter count (CSV)");
    add_family_flags(cmd_sweep, sweep_fa);
    cmd_sweep->add_option("--targets", sweep_targets, "Random targets (default 200)");

    // counts ------------------------------------------------------------
    int counts_n = 0, counts_m_min = 1, counts_m_max = 0;
    auto* cmd_counts = app.add_subcommand("counts", "CNOT-count comparison (CSV)");
    cmd_counts->add_option("--n", counts_n, "Qubit count")->required();
    cmd_counts->add_option("--m-max", counts_m_max, "Largest m")->required();
    cmd_counts->add_option("--m-min", counts_m_min, "Smallest m (default 1)");

    // dims --------------------------------------------------------------
    int dims_n_min = 2, dims_n_max = 0;
    auto* cmd_dims = app.add_subcommand("dims", "Sector dimensions vs n (CSV)");
    cmd_dims->add_option("--n-max", dims_n_max, "Largest n")->required();
    cmd_dims->add_option("--n-min", dims_n_min, "Smallest n (default 2)");

    // decompose ---------------------------------------------------------
    FamilyArgs dec_fa;
    auto* cmd_dec = app.add_subcommand(
        "decompose", "Gray-walk state-preparation circuit and cost report");
    add_family_flags(cmd_dec, dec_fa, /*with_ansatz=*/false);

    // vqe ---------------------------------------------------------------
    FamilyArgs vqe_fa;
    std::string ham_path;
    int vqe_restarts = 8;
    auto* cmd_vqe = app.add_subcommand("vqe", "Noiseless VQE on a Hamiltonian file");
    cmd_vqe->add_option("--ham", ham_path, "Hamiltonian file")->required();
    add_family_flags(cmd_vqe, vqe_fa);
    cmd_vqe->add_option("--restarts", vqe_restarts, "Optimizer restarts (default 8)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message and usage hint
        return 1;
    }

    try {
        if (*cmd_build) {
            write_output(qsp::circuit_to_string(family_circuit(build_fa)), output);
        } else if (*cmd_span || *cmd_sweep) {
            const bool sweep = static_cast<bool>(*cmd_sweep);
            const FamilyArgs& fa = sweep ? sweep_fa : span_fa;
            qsp::VerifyConfig cfg;
            cfg.targets = sweep ? sweep_targets : span_targets;
            cfg.seed = seed;
            cfg.threads = threads;
            const qsp::ParamStateFn fn = family_fn(fa);
            const qsp::SymmetrySector sec = family_sector(fa);
            const bool real = family_is_real(fa);
            if (sweep) {
                std::ostringstream os;
                os << "params,fidelity,min_fidelity,failures\n";
                const auto curve = qsp::fidelity_sweep(fn, sec, cfg, real);
                for (std::size_t k = 0; k < curve.size(); ++k)
                    os << k << ',' << csv_double(curve[k].mean_fidelity) << ','
                       << csv_double(curve[k].min_fidelity) << ','
                       << curve[k].failures << '\n';
                write_output(os.str(), output);
            } else {
                const qsp::SpanReport rep = qsp::span_fidelity(fn, sec, cfg, real);
                ordered_json j = sector_json(fa);
                j["n_params"] = fn.n_params;
                j["targets"] = rep.targets;
                j["mean_fidelity"] = rep.mean_fidelity;
                j["min_fidelity"] = rep.min_fidelity;
                j["failures"] = rep.failures;
                j["seed"] = seed;
                write_output(j.dump(2) + "\n", output);
            }
        } else if (*cmd_counts) {
            write_output(qsp::emit_fig6_csv(counts_n, counts_m_min, counts_m_max),
                         output);
        } else if (*cmd_dims) {
            write_output(qsp::emit_fig7_csv(dims_n_min, dims_n_max), output);
        } else if (*cmd_dec) {
            const qsp::GrayOrderedBasis basis = qsp::gray_order(dec_fa.n, dec_fa.m);
            const qsp::Circuit circ = qsp::decompose_gray(basis);
            const qsp::GrayGateCount gc = qsp::count_gray_gates(circ);
            const qsp::ToffoliCost cost = qsp::toffoli_cost(family_sector(dec_fa));
            ordered_json j;
            j["n"] = dec_fa.n;
            j["m"] = dec_fa.m;
            if (dec_fa.s) j["s"] = *dec_fa.s;
            if (dec_fa.sz) j["sz"] = *dec_fa.sz;
            j["basis"] = basis.strings;
            j["counts"] = {{"toffoli", gc.toffoli}, {"singles", gc.singles}};
            j["cost"] = {{"n_t", cost.n_t},
                         {"n_c_exact", cost.n_c_exact},
                         {"n_c_approx", cost.n_c_approx
                                            ? ordered_json(*cost.n_c_approx)
                                            : ordered_json(nullptr)},
                         {"n_c_numeric", cost.n_c_numeric}};
            j["circuit"] = qsp::circuit_to_json(circ);
            write_output(j.dump(2) + "\n", output);
        } else if (*cmd_vqe) {
            std::ifstream in(ham_path);
            if (!in) throw std::runtime_error("cannot open Hamiltonian file: " + ham_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            const qsp::Hamiltonian h = qsp::parse_hamiltonian(buf.str());
            if (h.n != vqe_fa.n)
                throw std::invalid_argument("Hamiltonian qubit count (" +
                                            std::to_string(h.n) +
                                            ") does not match --n");
            qsp::VqeConfig cfg;
            cfg.seed = seed;
            cfg.restarts = vqe_restarts;
            const qsp::SymmetrySector sec = family_sector(vqe_fa);
            cfg.layout = sec.layout;
            const qsp::VqeResult r =
                qsp::vqe_minimize_fn(h, family_fn(vqe_fa), cfg, sec);
            ordered_json j = sector_json(vqe_fa);
            j["seed"] = seed;
            j["energy"] = r.energy;
            j["delta_e"] = r.delta_e;
            j["s2"] = r.s2;
            j["sz"] = r.sz;
            j["iterations"] = r.iterations;
            j["params"] = r.params;
            auto hist = ordered_json::array();
            for (const auto& [evals, e] : r.history) hist.push_back({evals, e});
            j["history"] = std::move(hist);
            write_output(j.dump(2) + "\n", output);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
