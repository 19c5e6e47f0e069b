#pragma once
/**
 * @file span.hpp
 * Numerical span verification: does a parameterized state family reach every
 * state of a symmetry sector? For random normalized sector targets |Psi> we
 * maximize |<Psi|psi(x)>|^2 with multi-start Nelder-Mead (plus a BFGS polish)
 * and report the mean/min best fidelity. Fidelity-vs-parameter-count sweeps
 * freeze trailing parameters to zero.
 */

#include <atomic>
#include <memory>
#include <thread>

#include "qsp/circuit.hpp"
#include "qsp/optim.hpp"
#include "qsp/symmetry.hpp"

namespace qsp {

/// A parameterized normalized-state family.
struct ParamStateFn {
    int n_params = 0;
    std::function<StateVector(std::span<const double>)> eval;
};

/// Wrap a circuit as a state family.
inline ParamStateFn circuit_fn(Circuit c) {
    auto shared = std::make_shared<Circuit>(std::move(c));
    return {shared->n_free,
            [shared](std::span<const double> x) { return run(*shared, x); }};
}

/// Restrict a family to its first k parameters, freezing the rest to zero.
inline ParamStateFn freeze_tail(const ParamStateFn& fn, int k) {
    if (k < 0 || k > fn.n_params) throw std::invalid_argument("freeze_tail: bad k");
    const int full = fn.n_params;
    auto eval = fn.eval;
    return {k, [eval, full](std::span<const double> x) {
                std::vector<double> padded(static_cast<std::size_t>(full), 0.0);
                std::copy(x.begin(), x.end(), padded.begin());
                return eval(padded);
            }};
}

struct VerifyConfig {
    int targets = 200;
    int restarts = 16;
    int max_iters = 2000;        ///< Nelder-Mead iterations per restart
    double f_tol = 1e-10;
    double success_threshold = 1.0 - 1e-4;
    unsigned seed = 42;
    int threads = 1;
    bool polish = true;          ///< BFGS polish after each Nelder-Mead restart
};

/// Random normalized state of a sector (complex, or real for time-reversal
/// families). When the sector constrains total spin, the state is drawn from
/// the S^2 eigenspace via its projector basis.
inline StateVector random_sector_state(const SymmetrySector& sec, std::mt19937& rng,
                                       bool real = false) {
    std::normal_distribution<double> N(0.0, 1.0);
    StateVector psi(sec.n);
    if (sec.s2 >= 0) {
        const ProjectorBasis pb = sector_projector_basis(sec);
        const auto k = pb.columns.cols();
        Eigen::VectorXcd coef(k);
        for (Eigen::Index i = 0; i < k; ++i)
            coef(i) = real ? cplx{N(rng), 0.0} : cplx{N(rng), N(rng)};
        Eigen::VectorXcd v = pb.columns * coef;
        for (std::size_t i = 0; i < pb.occ_basis.size(); ++i)
            psi.amp[pb.occ_basis[i]] = v(static_cast<Eigen::Index>(i));
    } else {
        for (std::size_t idx : sector_basis(sec))
            psi.amp[idx] = real ? cplx{N(rng), 0.0} : cplx{N(rng), N(rng)};
    }
    psi.normalize();
    return psi;
}

struct OverlapResult {
    double fidelity = 0.0;
    std::vector<double> params;
};

/// Best |<target|psi(x)>|^2 over multi-start Nelder-Mead (+ BFGS polish).
inline OverlapResult max_overlap(const ParamStateFn& fn, const StateVector& target,
                                 const VerifyConfig& cfg, std::mt19937& rng) {
    Objective obj = [&](std::span<const double> x) {
        return -fidelity(target, fn.eval(x));
    };
    OverlapResult best;
    best.params.assign(static_cast<std::size_t>(fn.n_params), 0.0);
    std::uniform_real_distribution<double> U(0.0, 2.0 * kPi);
    NelderMeadOptions nm;
    nm.max_iters = cfg.max_iters;
    nm.f_tol = cfg.f_tol;
    // Few-parameter landscapes are cheap but can have many shallow optima;
    // double the starts there.
    const int restarts = fn.n_params <= 10 ? 2 * cfg.restarts : cfg.restarts;
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> x0(static_cast<std::size_t>(fn.n_params));
        for (double& v : x0) v = U(rng);
        OptimResult res = nelder_mead(obj, std::move(x0), nm);
        if (cfg.polish && fn.n_params > 0) {
            BfgsOptions bo;
            bo.max_iters = 120;
            OptimResult pol = bfgs_minimize(obj, res.x, bo);
            if (pol.f < res.f) res = std::move(pol);
        }
        if (-res.f > best.fidelity) {
            best.fidelity = -res.f;
            best.params = std::move(res.x);
        }
        if (1.0 - best.fidelity < 1e-9) break;  // already converged to the target
    }
    return best;
}

struct SpanReport {
    int targets = 0;
    double mean_fidelity = 0.0;
    double min_fidelity = 1.0;
    int failures = 0;  ///< targets with best fidelity < success_threshold
};

/// Span fidelity of a family over random sector targets. Deterministic for a
/// fixed config (independent of thread count: per-target RNG streams).
inline SpanReport span_fidelity(const ParamStateFn& fn, const SymmetrySector& sec,
                                const VerifyConfig& cfg, bool real_targets = false) {
    sec.validate();
    std::vector<double> fids(static_cast<std::size_t>(cfg.targets), 0.0);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int t = next.fetch_add(1);
            if (t >= cfg.targets) return;
            std::seed_seq seq{cfg.seed, static_cast<unsigned>(t), 0x9e3779b9u};
            std::mt19937 rng(seq);
            const StateVector target = random_sector_state(sec, rng, real_targets);
            fids[static_cast<std::size_t>(t)] = max_overlap(fn, target, cfg, rng).fidelity;
        }
    };
    const int nthreads = std::max(1, cfg.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    SpanReport rep;
    rep.targets = cfg.targets;
    double sum = 0.0;
    for (double fv : fids) {
        sum += fv;
        rep.min_fidelity = std::min(rep.min_fidelity, fv);
        if (fv < cfg.success_threshold) ++rep.failures;
    }
    rep.mean_fidelity = cfg.targets ? sum / cfg.targets : 0.0;
    return rep;
}

/// Fidelity sweep: span reports for k = 0..fn.n_params free parameters, the
/// remaining ones frozen to zero from the end of the circuit.
inline std::vector<SpanReport> fidelity_sweep(const ParamStateFn& fn,
                                              const SymmetrySector& sec,
                                              const VerifyConfig& cfg,
                                              bool real_targets = false) {
    std::vector<SpanReport> out;
    for (int k = 0; k <= fn.n_params; ++k)
        out.push_back(span_fidelity(freeze_tail(fn, k), sec, cfg, real_targets));
    return out;
}

}  // namespace qsp
