#pragma once
/**
 * @file symmetry.hpp
 * Symmetry sectors of an n-qubit (n spin-orbital) Fock space under
 * Jordan-Wigner encoding: particle number N, spin projection S_z, total spin
 * S^2. Occupation bitstrings use the circuit convention (qubit 1 = leftmost
 * ket symbol = most significant bit); the fermionic mode order equals the
 * qubit order, so annihilating mode q picks up (-1)^(occupied modes before q).
 *
 * Half-integer quantum numbers are stored as integer numerators over 2
 * (sz2 = 2*S_z, s2 = 2*S).
 */

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include <Eigen/Dense>

#include "qsp/state.hpp"

namespace qsp {

/// Assignment of spatial orbitals to qubits. Block: spin-up modes occupy
/// qubits 1..n/2 and spin-down modes n/2+1..n. Interleaved: orbital p has its
/// up mode on qubit 2p-1 and its down mode on qubit 2p.
enum class SpinLayout { Block, Interleaved };

inline const char* spin_layout_name(SpinLayout l) {
    return l == SpinLayout::Block ? "block" : "interleaved";
}

/// Qubit carrying the spin-up (resp. spin-down) mode of spatial orbital p.
inline int up_qubit(int p, int n, SpinLayout layout) {
    return layout == SpinLayout::Block ? p : 2 * p - 1;
}
inline int down_qubit(int p, int n, SpinLayout layout) {
    return layout == SpinLayout::Block ? n / 2 + p : 2 * p;
}

/// Symmetry sector (n, m, sz, s). sz2/s2 are numerators over 2; s2 < 0 means
/// "total spin unconstrained".
struct SymmetrySector {
    int n = 0;            ///< spin orbitals (qubits); must be even
    int m = 0;            ///< particle number
    std::optional<int> sz2;  ///< 2 * S_z, or unset
    int s2 = -1;          ///< 2 * S, or -1 for unconstrained
    SpinLayout layout = SpinLayout::Block;

    void validate() const {
        if (n < 2) throw std::invalid_argument("sector: n must be >= 2");
        if ((sz2 || s2 >= 0) && n % 2 != 0)
            throw std::invalid_argument("sector: spin quantum numbers need even n");
        if (m < 0 || m > n) throw std::invalid_argument("sector: m out of range");
        if (sz2) {
            // m_up = (m + sz2/ ... ) occupied-up count must be integral and in range
            const int mu2 = m + *sz2;  // 2 * m_up
            if (mu2 % 2 != 0 || mu2 < 0 || mu2 / 2 > n / 2 || (m - *sz2) / 2 > n / 2 ||
                m - *sz2 < 0)
                throw std::invalid_argument("sector: sz incompatible with (n, m)");
        }
        if (s2 >= 0) {
            if ((s2 + m) % 2 != 0) throw std::invalid_argument("sector: s parity mismatch");
            if (sz2 && std::abs(*sz2) > s2)
                throw std::invalid_argument("sector: |sz| > s");
        }
    }
};

namespace detail {

inline std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

}  // namespace detail

/// C(n, m): dimension of the particle-number sector.
inline std::uint64_t dim_number(int n, int m) { return detail::binomial_u64(n, m); }

/// Real parameters of a normalized complex state in a d-dimensional sector,
/// up to global phase: 2d - 2.
inline std::uint64_t dim_complex_params(int n, int m) {
    return 2 * dim_number(n, m) - 2;
}

/// dim H_{n, m, s, sz} for any valid sz (the S_z value does not enter):
///   sum_{k=0}^{m/2 - s} C(n/2, k) C(n/2-k, m-2k)
///                       (2s+1) (m-2k)! / ((m/2-k-s)! (m/2-k+s+1)!)
/// with s = s2/2; every term is integral.
inline std::uint64_t dim_spin(int n, int m, int s2) {
    if ((m + s2) % 2 != 0 || s2 < 0 || s2 > m) return 0;
    const int half = n / 2;
    std::uint64_t total = 0;
    for (int k = 0; 2 * k <= m - s2; ++k) {
        const int w = m - 2 * k;          // singly-occupied orbitals
        const int a = (m - s2) / 2 - k;   // (m/2 - k - s)
        const int b = (m + s2) / 2 - k + 1;
        if (w > half - k || a < 0) continue;
        // multiplicity of spin s among w spin-1/2s: (2s+1) w! / (a! b!)
        // computed as C(w, a) - C(w, a-1) to stay in integers
        const std::uint64_t mult =
            detail::binomial_u64(w, a) - detail::binomial_u64(w, a - 1);
        total += detail::binomial_u64(half, k) * detail::binomial_u64(half - k, w) * mult;
        (void)b;
    }
    return total;
}

/// Ascending basis indices with popcount m (and fixed sz when given).
inline std::vector<std::size_t> sector_basis(const SymmetrySector& sec) {
    sec.validate();
    if (sec.n > kMaxQubits) throw std::invalid_argument("sector_basis: n too large");
    std::vector<std::size_t> out;
    const std::size_t dim = std::size_t{1} << sec.n;
    for (std::size_t idx = 0; idx < dim; ++idx) {
        if (std::popcount(idx) != sec.m) continue;
        if (sec.sz2) {
            int up = 0;
            for (int p = 1; p <= sec.n / 2; ++p)
                up += StateVector::bit(idx, up_qubit(p, sec.n, sec.layout), sec.n);
            if (2 * up - sec.m != *sec.sz2) continue;
        }
        out.push_back(idx);
    }
    return out;
}

/// Expectation / variance pair of a Hermitian operator.
struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

namespace detail {

/// Parity sign (-1)^(occupied modes strictly between qubits a and b), a < b.
inline double jw_between_sign(std::size_t idx, int a, int b, int n) {
    int count = 0;
    for (int q = a + 1; q < b; ++q) count += StateVector::bit(idx, q, n);
    return (count % 2) ? -1.0 : 1.0;
}

/// Apply S+ = sum_p c^dag_{p,up} c_{p,down} to a state.
inline StateVector apply_s_plus(const StateVector& psi, SpinLayout layout) {
    const int n = psi.n;
    StateVector out(n);
    for (std::size_t idx = 0; idx < psi.dim(); ++idx) {
        const cplx a = psi.amp[idx];
        if (a == cplx{0.0, 0.0}) continue;
        for (int p = 1; p <= n / 2; ++p) {
            const int qu = up_qubit(p, n, layout), qd = down_qubit(p, n, layout);
            if (!StateVector::bit(idx, qd, n) || StateVector::bit(idx, qu, n)) continue;
            const int lo = std::min(qu, qd), hi = std::max(qu, qd);
            const double sign = jw_between_sign(idx, lo, hi, n);
            const std::size_t flipped =
                idx ^ (std::size_t{1} << (n - qu)) ^ (std::size_t{1} << (n - qd));
            out.amp[flipped] += sign * a;
        }
    }
    return out;
}

/// Apply S- = (S+)^dag.
inline StateVector apply_s_minus(const StateVector& psi, SpinLayout layout) {
    const int n = psi.n;
    StateVector out(n);
    for (std::size_t idx = 0; idx < psi.dim(); ++idx) {
        const cplx a = psi.amp[idx];
        if (a == cplx{0.0, 0.0}) continue;
        for (int p = 1; p <= n / 2; ++p) {
            const int qu = up_qubit(p, n, layout), qd = down_qubit(p, n, layout);
            if (!StateVector::bit(idx, qu, n) || StateVector::bit(idx, qd, n)) continue;
            const int lo = std::min(qu, qd), hi = std::max(qu, qd);
            const double sign = jw_between_sign(idx, lo, hi, n);
            const std::size_t flipped =
                idx ^ (std::size_t{1} << (n - qu)) ^ (std::size_t{1} << (n - qd));
            out.amp[flipped] += sign * a;
        }
    }
    return out;
}

/// S_z eigenvalue of a basis index.
inline double sz_value(std::size_t idx, int n, SpinLayout layout) {
    int up = 0, down = 0;
    for (int p = 1; p <= n / 2; ++p) {
        up += StateVector::bit(idx, up_qubit(p, n, layout), n);
        down += StateVector::bit(idx, down_qubit(p, n, layout), n);
    }
    return 0.5 * (up - down);
}

}  // namespace detail

/// S^2 psi = S- S+ psi + (S_z^2 + S_z) psi.
inline StateVector apply_s2_operator(const StateVector& psi, SpinLayout layout) {
    StateVector out = detail::apply_s_minus(detail::apply_s_plus(psi, layout), layout);
    for (std::size_t idx = 0; idx < psi.dim(); ++idx) {
        const double sz = detail::sz_value(idx, psi.n, layout);
        out.amp[idx] += (sz * sz + sz) * psi.amp[idx];
    }
    return out;
}

namespace detail {

inline Moments diagonal_moments(const StateVector& psi,
                                const std::function<double(std::size_t)>& eig) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t idx = 0; idx < psi.dim(); ++idx) {
        const double p = std::norm(psi.amp[idx]);
        if (p == 0.0) continue;
        const double v = eig(idx);
        m1 += p * v;
        m2 += p * v * v;
    }
    return {m1, std::max(0.0, m2 - m1 * m1)};
}

}  // namespace detail

/// <N>, Var N.
inline Moments apply_number(const StateVector& psi) {
    return detail::diagonal_moments(
        psi, [&](std::size_t idx) { return static_cast<double>(std::popcount(idx)); });
}

/// <S_z>, Var S_z.
inline Moments apply_sz(const StateVector& psi, SpinLayout layout) {
    return detail::diagonal_moments(
        psi, [&](std::size_t idx) { return detail::sz_value(idx, psi.n, layout); });
}

/// <S^2>, Var S^2.
inline Moments apply_s2(const StateVector& psi, SpinLayout layout) {
    const StateVector w = apply_s2_operator(psi, layout);
    const cplx m1c = overlap(psi, w);
    double m2 = 0.0;
    for (const cplx& a : w.amp) m2 += std::norm(a);  // <psi|S^4|psi> = |S^2 psi|^2
    const double m1 = m1c.real();
    return {m1, std::max(0.0, m2 - m1 * m1)};
}

/// True when psi is normalized and an eigenstate of every quantum number the
/// sector constrains (N, and optionally S_z and S^2), all within tol.
inline bool check_membership(const StateVector& psi, const SymmetrySector& sec,
                             double tol = 1e-9) {
    sec.validate();
    if (psi.n != sec.n) return false;
    if (std::abs(psi.norm_sq() - 1.0) > tol) return false;
    const Moments num = apply_number(psi);
    if (std::abs(num.mean - sec.m) > tol || num.variance > tol) return false;
    if (sec.sz2) {
        const Moments sz = apply_sz(psi, sec.layout);
        if (std::abs(sz.mean - 0.5 * *sec.sz2) > tol || sz.variance > tol) return false;
    }
    if (sec.s2 >= 0) {
        const double s = 0.5 * sec.s2;
        const Moments ss = apply_s2(psi, sec.layout);
        if (std::abs(ss.mean - s * (s + 1)) > tol || ss.variance > tol) return false;
    }
    return true;
}

/// Orthonormal real basis of the (n, m, sz, s) eigenspace, expressed over the
/// ascending (n, m, sz) occupation basis. Returns the occupation basis indices
/// and a (|basis| x dim_spin) column matrix. Deterministic; n <= 12.
struct ProjectorBasis {
    std::vector<std::size_t> occ_basis;  ///< ascending (m, sz) occupation indices
    Eigen::MatrixXd columns;             ///< orthonormal eigenvectors of S^2
};

inline ProjectorBasis sector_projector_basis(const SymmetrySector& sec) {
    sec.validate();
    if (!sec.sz2 || sec.s2 < 0)
        throw std::invalid_argument("sector_projector_basis: needs both sz and s");
    if (sec.n > 12) throw std::invalid_argument("sector_projector_basis: n limited to 12");
    ProjectorBasis out;
    out.occ_basis = sector_basis(sec);
    const std::size_t d = out.occ_basis.size();
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < d; ++i) pos[out.occ_basis[i]] = i;

    // S^2 is real symmetric in the occupation basis.
    Eigen::MatrixXd s2mat = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                                  static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
        StateVector e = basis_state(sec.n, out.occ_basis[j]);
        const StateVector w = apply_s2_operator(e, sec.layout);
        for (std::size_t idx = 0; idx < w.dim(); ++idx) {
            if (w.amp[idx] == cplx{0.0, 0.0}) continue;
            const auto it = pos.find(idx);
            if (it == pos.end())
                throw std::logic_error("sector_projector_basis: S^2 left the sz block");
            s2mat(static_cast<Eigen::Index>(it->second), static_cast<Eigen::Index>(j)) +=
                w.amp[idx].real();
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s2mat);
    const double s = 0.5 * sec.s2;
    const double target = s * (s + 1);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        if (std::abs(solver.eigenvalues()(i) - target) < 1e-8) keep.push_back(i);
    out.columns.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c)
        out.columns.col(static_cast<Eigen::Index>(c)) = solver.eigenvectors().col(keep[c]);
    return out;
}

}  // namespace qsp
