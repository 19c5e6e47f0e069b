#pragma once
/**
 * @file optim.hpp
 * Small deterministic local optimizers used for overlap maximization and VQE:
 * adaptive Nelder-Mead (derivative-free) and BFGS with central-difference
 * gradients. Both are seeded/state-free and reproducible.
 */

#include <functional>
#include <limits>
#include <numeric>

#include "qsp/state.hpp"

namespace qsp {

using Objective = std::function<double(std::span<const double>)>;

struct OptimResult {
    std::vector<double> x;
    double f = std::numeric_limits<double>::infinity();
    long evals = 0;
};

struct NelderMeadOptions {
    int max_iters = 2000;
    double f_tol = 1e-10;    ///< simplex f-spread termination
    double init_step = 0.6;  ///< initial simplex edge length (radians)
};

/// Adaptive Nelder-Mead (dimension-scaled expansion/contraction coefficients).
inline OptimResult nelder_mead(const Objective& f, std::vector<double> x0,
                               const NelderMeadOptions& opt = {}) {
    const std::size_t d = x0.size();
    OptimResult res;
    if (d == 0) {
        res.x = std::move(x0);
        res.f = f(res.x);
        res.evals = 1;
        return res;
    }
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / static_cast<double>(d);
    const double gamma = 0.75 - 1.0 / (2.0 * static_cast<double>(d));
    const double delta = 1.0 - 1.0 / static_cast<double>(d);

    std::vector<std::vector<double>> pts(d + 1, x0);
    std::vector<double> fv(d + 1);
    for (std::size_t i = 1; i <= d; ++i) pts[i][i - 1] += opt.init_step;
    for (std::size_t i = 0; i <= d; ++i) fv[i] = f(pts[i]);
    res.evals = static_cast<long>(d + 1);

    std::vector<std::size_t> order(d + 1);
    std::vector<double> centroid(d), xr(d), xe(d), xc(d);
    for (int iter = 0; iter < opt.max_iters; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0], worst = order[d];
        if (fv[worst] - fv[best] < opt.f_tol) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < d; ++j) centroid[j] += pts[i][j];
        }
        for (double& v : centroid) v /= static_cast<double>(d);

        auto blend = [&](std::vector<double>& out, double t) {
            for (std::size_t j = 0; j < d; ++j)
                out[j] = centroid[j] + t * (centroid[j] - pts[worst][j]);
        };
        blend(xr, alpha);
        const double fr = f(xr);
        ++res.evals;
        if (fr < fv[order[0]]) {
            blend(xe, beta);
            const double fe = f(xe);
            ++res.evals;
            if (fe < fr) {
                pts[worst] = xe;
                fv[worst] = fe;
            } else {
                pts[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[order[d - 1]]) {
            pts[worst] = xr;
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            blend(xc, outside ? gamma : -gamma);
            const double fc = f(xc);
            ++res.evals;
            if (fc < (outside ? fr : fv[worst])) {
                pts[worst] = xc;
                fv[worst] = fc;
            } else {
                // shrink toward best
                for (std::size_t i = 0; i <= d; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < d; ++j)
                        pts[i][j] = pts[best][j] + delta * (pts[i][j] - pts[best][j]);
                    fv[i] = f(pts[i]);
                    ++res.evals;
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= d; ++i)
        if (fv[i] < fv[best]) best = i;
    res.x = pts[best];
    res.f = fv[best];
    return res;
}

struct BfgsOptions {
    int max_iters = 200;
    double grad_tol = 1e-10;
    double fd_step = 1e-6;   ///< central finite-difference step
};

/// BFGS with central-difference gradients and Armijo backtracking.
inline OptimResult bfgs_minimize(const Objective& f, std::vector<double> x0,
                                 const BfgsOptions& opt = {}) {
    const std::size_t d = x0.size();
    OptimResult res;
    res.x = std::move(x0);
    res.f = f(res.x);
    res.evals = 1;
    if (d == 0) return res;

    auto gradient = [&](const std::vector<double>& x, std::vector<double>& g) {
        std::vector<double> xp = x;
        for (std::size_t i = 0; i < d; ++i) {
            xp[i] = x[i] + opt.fd_step;
            const double fp = f(xp);
            xp[i] = x[i] - opt.fd_step;
            const double fm = f(xp);
            xp[i] = x[i];
            g[i] = (fp - fm) / (2.0 * opt.fd_step);
        }
        res.evals += static_cast<long>(2 * d);
    };

    std::vector<double> g(d), gn(d), p(d), s(d), y(d), xn(d);
    std::vector<std::vector<double>> H(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) H[i][i] = 1.0;
    gradient(res.x, g);

    for (int iter = 0; iter < opt.max_iters; ++iter) {
        double gnorm = 0.0;
        for (double v : g) gnorm += v * v;
        if (std::sqrt(gnorm) < opt.grad_tol) break;

        for (std::size_t i = 0; i < d; ++i) {
            p[i] = 0.0;
            for (std::size_t j = 0; j < d; ++j) p[i] -= H[i][j] * g[j];
        }
        double dphi = 0.0;
        for (std::size_t i = 0; i < d; ++i) dphi += p[i] * g[i];
        if (dphi >= 0.0) {  // not a descent direction: reset to steepest descent
            for (std::size_t i = 0; i < d; ++i) {
                std::fill(H[i].begin(), H[i].end(), 0.0);
                H[i][i] = 1.0;
                p[i] = -g[i];
            }
            dphi = -gnorm;
        }

        double step = 1.0;
        double fn = res.f;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t i = 0; i < d; ++i) xn[i] = res.x[i] + step * p[i];
            fn = f(xn);
            ++res.evals;
            if (fn <= res.f + 1e-4 * step * dphi) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        gradient(xn, gn);
        double sy = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            s[i] = xn[i] - res.x[i];
            y[i] = gn[i] - g[i];
            sy += s[i] * y[i];
        }
        res.x = xn;
        res.f = fn;
        std::swap(g, gn);
        if (sy > 1e-14) {
            // H <- (I - s y^T / sy) H (I - y s^T / sy) + s s^T / sy
            std::vector<double> Hy(d, 0.0);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) Hy[i] += H[i][j] * y[j];
            double yHy = 0.0;
            for (std::size_t i = 0; i < d; ++i) yHy += y[i] * Hy[i];
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    H[i][j] += (sy + yHy) * s[i] * s[j] / (sy * sy) -
                               (Hy[i] * s[j] + s[i] * Hy[j]) / sy;
        }
    }
    return res;
}

}  // namespace qsp
