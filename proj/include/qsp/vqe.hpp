#pragma once
/**
 * @file vqe.hpp
 * Noiseless VQE driver: Pauli-Hamiltonian ingestion, exact statevector
 * expectation values, sector-restricted exact diagonalization, multi-start
 * quasi-Newton minimization over ansatz parameters, and spin bookkeeping of
 * the optimized state.
 *
 * Hamiltonian file format: one term per line, `<coeff> <paulistring>` with
 * the string over {I,X,Y,Z}, character i acting on qubit i (qubit 1 =
 * leftmost). `#` starts a comment; blank lines are ignored; duplicate
 * strings merge by coefficient addition.
 */

#include <Eigen/Dense>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "qsp/circuit.hpp"
#include "qsp/optim.hpp"
#include "qsp/span.hpp"
#include "qsp/symmetry.hpp"

namespace qsp {

struct PauliTerm {
    double coeff = 0.0;
    std::string ops;  ///< length n over {I,X,Y,Z}
};

struct Hamiltonian {
    int n = 0;
    std::vector<PauliTerm> terms;
};

inline Hamiltonian parse_hamiltonian(const std::string& text) {
    Hamiltonian h;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::map<std::string, std::size_t> index;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double coeff;
        std::string ops;
        if (!(ls >> coeff)) {
            std::string any;
            std::istringstream probe(line);
            if (!(probe >> any)) continue;  // blank / comment-only line
            throw std::invalid_argument("parse_hamiltonian: line " +
                                        std::to_string(line_no) +
                                        ": non-numeric coefficient");
        }
        if (!(ls >> ops))
            throw std::invalid_argument("parse_hamiltonian: line " +
                                        std::to_string(line_no) +
                                        ": missing Pauli string");
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("parse_hamiltonian: line " +
                                        std::to_string(line_no) + ": trailing token");
        for (char c : ops)
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                throw std::invalid_argument("parse_hamiltonian: line " +
                                            std::to_string(line_no) +
                                            ": bad Pauli character");
        if (h.n == 0) h.n = static_cast<int>(ops.size());
        if (static_cast<int>(ops.size()) != h.n)
            throw std::invalid_argument("parse_hamiltonian: line " +
                                        std::to_string(line_no) +
                                        ": Pauli string length mismatch");
        if (!std::isfinite(coeff))
            throw std::invalid_argument("parse_hamiltonian: line " +
                                        std::to_string(line_no) +
                                        ": non-finite coefficient");
        auto it = index.find(ops);
        if (it != index.end()) {
            h.terms[it->second].coeff += coeff;
        } else {
            index.emplace(ops, h.terms.size());
            h.terms.push_back({coeff, ops});
        }
    }
    if (h.n == 0) throw std::invalid_argument("parse_hamiltonian: no terms");
    return h;
}

namespace detail {

/// psi <- P |psi> for a single Pauli string.
inline StateVector apply_pauli(const StateVector& psi, const std::string& ops) {
    const int n = psi.n;
    std::size_t flip = 0;   // X or Y positions
    std::size_t zmask = 0;  // Z or Y positions
    std::size_t ymask = 0;
    for (int q = 1; q <= n; ++q) {
        const char c = ops[static_cast<std::size_t>(q - 1)];
        const std::size_t b = std::size_t{1} << (n - q);
        if (c == 'X' || c == 'Y') flip |= b;
        if (c == 'Z' || c == 'Y') zmask |= b;
        if (c == 'Y') ymask |= b;
    }
    const int ny = std::popcount(ymask);
    // global factor: each Y contributes i ( Y = i X Z )
    cplx yfac{1.0, 0.0};
    switch (ny % 4) {
        case 1: yfac = {0.0, 1.0}; break;
        case 2: yfac = {-1.0, 0.0}; break;
        case 3: yfac = {0.0, -1.0}; break;
        default: break;
    }
    StateVector out(n);
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const cplx a = psi.amp[i];
        if (a == cplx{0.0, 0.0}) continue;
        const double sign = (std::popcount(i & zmask) % 2 == 0) ? 1.0 : -1.0;
        out.amp[i ^ flip] += yfac * sign * a;
    }
    return out;
}

}  // namespace detail

/// Exact <psi|H|psi>; the imaginary residual is checked below 1e-10.
inline double expectation(const Hamiltonian& h, const StateVector& psi) {
    if (psi.n != h.n) throw std::invalid_argument("expectation: qubit count mismatch");
    cplx total{0.0, 0.0};
    for (const PauliTerm& t : h.terms) {
        const StateVector hp = detail::apply_pauli(psi, t.ops);
        cplx o{0.0, 0.0};
        for (std::size_t i = 0; i < psi.dim(); ++i) o += std::conj(psi.amp[i]) * hp.amp[i];
        total += t.coeff * o;
    }
    if (std::abs(total.imag()) > 1e-10)
        throw std::runtime_error("expectation: non-Hermitian residual");
    return total.real();
}

/// Dense matrix of the Hamiltonian restricted to a basis-index subset.
inline Eigen::MatrixXcd dense_restriction(const Hamiltonian& h,
                                          const std::vector<std::size_t>& basis) {
    const int d = static_cast<int>(basis.size());
    std::map<std::size_t, int> pos;
    for (int i = 0; i < d; ++i) pos[basis[static_cast<std::size_t>(i)]] = i;
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(d, d);
    for (int col = 0; col < d; ++col) {
        StateVector e(h.n);
        e.amp[basis[static_cast<std::size_t>(col)]] = 1.0;
        for (const PauliTerm& t : h.terms) {
            const StateVector he = detail::apply_pauli(e, t.ops);
            for (std::size_t i = 0; i < he.dim(); ++i) {
                if (he.amp[i] == cplx{0.0, 0.0}) continue;
                auto it = pos.find(i);
                if (it != pos.end()) mat(it->second, col) += t.coeff * he.amp[i];
            }
        }
    }
    return mat;
}

struct GroundState {
    double energy = 0.0;
    StateVector state;
};

/// Lowest eigenpair of the dense Hamiltonian, optionally restricted to a
/// symmetry sector (the projection keeps only matrix elements inside the
/// sector's occupation basis; exact when H preserves the sector).
inline GroundState exact_ground(const Hamiltonian& h,
                                std::optional<SymmetrySector> sector = std::nullopt) {
    if (h.n > 12) throw std::invalid_argument("exact_ground: n limited to 12");
    std::vector<std::size_t> basis;
    if (sector) {
        if (sector->n != h.n)
            throw std::invalid_argument("exact_ground: sector qubit count mismatch");
        basis = sector_basis(*sector);
    } else {
        basis.resize(std::size_t{1} << h.n);
        std::iota(basis.begin(), basis.end(), std::size_t{0});
    }
    Eigen::MatrixXcd mat = dense_restriction(h, basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat);
    GroundState g;
    g.energy = es.eigenvalues()(0);
    g.state = StateVector(h.n);
    for (std::size_t i = 0; i < basis.size(); ++i)
        g.state.amp[basis[i]] = es.eigenvectors()(static_cast<int>(i), 0);
    return g;
}

/// Lowest eigenvalue within the S^2 eigenspace of an (n, m, s, sz) sector.
inline double exact_ground_spin(const Hamiltonian& h, const SymmetrySector& sec) {
    const ProjectorBasis pb = sector_projector_basis(sec);
    if (pb.columns.cols() == 0)
        throw std::invalid_argument("exact_ground_spin: empty sector");
    Eigen::MatrixXcd mat = dense_restriction(h, pb.occ_basis);
    Eigen::MatrixXcd proj =
        pb.columns.transpose().cast<cplx>() * mat * pb.columns.cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(proj);
    return es.eigenvalues()(0);
}

struct VqeConfig {
    int restarts = 8;
    int max_iters = 200;       ///< BFGS iterations per restart
    double fd_step = 1e-6;     ///< central finite-difference step
    double f_tol = 1e-10;
    unsigned seed = 42;
    SpinLayout layout = SpinLayout::Block;  ///< layout for S_z / S^2 reporting
};

struct VqeResult {
    double energy = 0.0;
    std::vector<double> params;
    long iterations = 0;  ///< total objective evaluations
    std::vector<std::pair<long, double>> history;  ///< best energy per restart
    double s2 = 0.0;      ///< <S^2> of the optimized state
    double sz = 0.0;      ///< <S_z>
    double delta_e = 0.0; ///< energy - exact sector ground energy
};

/// Multi-start BFGS (central-difference gradients) over a parameterized
/// state family; uniform [0, 2*pi) restarts; deterministic for a config.
inline VqeResult vqe_minimize_fn(const Hamiltonian& h, const ParamStateFn& family,
                                 const VqeConfig& cfg = {},
                                 std::optional<SymmetrySector> sector = std::nullopt) {
    VqeResult best;
    best.energy = std::numeric_limits<double>::infinity();
    const Objective f = [&](std::span<const double> p) {
        return expectation(h, family.eval(p));
    };
    if (family.n_params == 0) {
        best.energy = f({});
        best.iterations = 1;
        best.history = {{1, best.energy}};
    } else {
        std::mt19937 rng(cfg.seed);
        std::uniform_real_distribution<double> init(0.0, 2 * kPi);
        BfgsOptions bo;
        bo.max_iters = cfg.max_iters;
        bo.fd_step = cfg.fd_step;
        bo.grad_tol = cfg.f_tol;
        for (int r = 0; r < cfg.restarts; ++r) {
            std::vector<double> x0(static_cast<std::size_t>(family.n_params));
            for (double& v : x0) v = init(rng);
            OptimResult res = bfgs_minimize(f, std::move(x0), bo);
            best.iterations += res.evals;
            if (res.f < best.energy) {
                best.energy = res.f;
                best.params = res.x;
            }
            best.history.emplace_back(best.iterations, best.energy);
        }
    }
    const StateVector psi = family.eval(best.params);
    best.s2 = apply_s2(psi, cfg.layout).mean;
    best.sz = apply_sz(psi, cfg.layout).mean;
    if (sector) {
        best.delta_e = best.energy - (sector->s2 >= 0
                                          ? exact_ground_spin(h, *sector)
                                          : exact_ground(h, sector).energy);
    }
    return best;
}

/// Circuit overload of vqe_minimize_fn.
inline VqeResult vqe_minimize(const Hamiltonian& h, const Circuit& circuit,
                              const VqeConfig& cfg = {},
                              std::optional<SymmetrySector> sector = std::nullopt) {
    if (circuit.n_qubits != h.n)
        throw std::invalid_argument("vqe_minimize: qubit count mismatch");
    return vqe_minimize_fn(h, circuit_fn(circuit), cfg, sector);
}

/// One row of the singlet/triplet comparison table.
struct AnsatzRow {
    std::string name;
    double energy = 0.0;
    double s2 = 0.0;
    double sz = 0.0;
};

struct SingletTripletReport {
    std::vector<AnsatzRow> rows;
    double singlet_energy = 0.0;  ///< exact (n, m, s=0, sz=0) sector ground
    double triplet_energy = 0.0;  ///< exact (n, m, s=1, sz=0) sector ground
    double gap = 0.0;             ///< triplet - singlet
};

/// VQE runs for a list of named ansatz circuits plus exact singlet and
/// triplet sector ground energies (s-constrained projector bases), exposing
/// near-degeneracy between the two sectors.
inline SingletTripletReport singlet_triplet_report(
    const Hamiltonian& h, const std::vector<std::pair<std::string, Circuit>>& family,
    int m, const VqeConfig& cfg = {}) {
    SingletTripletReport rep;
    for (const auto& [name, circuit] : family) {
        const VqeResult r = vqe_minimize(h, circuit, cfg);
        rep.rows.push_back({name, r.energy, r.s2, r.sz});
    }
    SymmetrySector singlet{h.n, m, 0, 0, cfg.layout};
    SymmetrySector triplet{h.n, m, 0, 2, cfg.layout};
    rep.singlet_energy = exact_ground_spin(h, singlet);
    rep.triplet_energy = exact_ground_spin(h, triplet);
    rep.gap = rep.triplet_energy - rep.singlet_energy;
    return rep;
}

/// Random particle-conserving Hamiltonian on n qubits: a real combination of
/// Pauli strings that preserve every particle-number sector (Z products plus
/// XX+YY / XY-YX hopping pairs). Coefficients uniform in [-1, 1].
inline Hamiltonian random_number_conserving_hamiltonian(int n, std::mt19937& rng,
                                                        int z_terms = 6,
                                                        int hop_terms = 6) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_int_distribution<int> Q(1, n);
    Hamiltonian h;
    h.n = n;
    std::map<std::string, std::size_t> index;
    auto add = [&](double c, std::string ops) {
        auto it = index.find(ops);
        if (it != index.end()) h.terms[it->second].coeff += c;
        else {
            index.emplace(ops, h.terms.size());
            h.terms.push_back({c, std::move(ops)});
        }
    };
    for (int k = 0; k < z_terms; ++k) {
        std::string ops(static_cast<std::size_t>(n), 'I');
        ops[static_cast<std::size_t>(Q(rng) - 1)] = 'Z';
        if (U(rng) > 0) ops[static_cast<std::size_t>(Q(rng) - 1)] = 'Z';
        add(U(rng), std::move(ops));
    }
    for (int k = 0; k < hop_terms; ++k) {
        int a = Q(rng), b = Q(rng);
        if (a == b) b = a % n + 1;
        const double c = U(rng);
        std::string xx(static_cast<std::size_t>(n), 'I');
        std::string yy = xx;
        xx[static_cast<std::size_t>(a - 1)] = 'X';
        xx[static_cast<std::size_t>(b - 1)] = 'X';
        yy[static_cast<std::size_t>(a - 1)] = 'Y';
        yy[static_cast<std::size_t>(b - 1)] = 'Y';
        // XX + YY hops within a fixed particle number (for adjacent or
        // JW-string-free pairs the Z dressing is irrelevant to conservation)
        add(c, std::move(xx));
        add(c, std::move(yy));
    }
    return h;
}

}  // namespace qsp
