#pragma once
/**
 * @file state.hpp
 * Dense state-vector container and elementary state utilities.
 *
 * Qubits are numbered 1..n with qubit 1 the leftmost ket symbol, i.e. the
 * most significant bit of the array index:  |s1 s2 ... sn>  <->  index
 * sum_i s_i * 2^(n-i).  Global phase is never tracked or compared.
 */

#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsp {

using cplx = std::complex<double>;

/// Maximum qubit count for dense simulation.
inline constexpr int kMaxQubits = 24;

/// Dense complex amplitude vector over n qubits.
struct StateVector {
    int n = 0;                  ///< qubit count
    std::vector<cplx> amp;      ///< 2^n amplitudes, qubit 1 = MSB

    StateVector() = default;
    explicit StateVector(int n_qubits)
        : n(n_qubits), amp(std::size_t{1} << n_qubits, cplx{0.0, 0.0}) {
        if (n_qubits < 1 || n_qubits > kMaxQubits)
            throw std::invalid_argument("StateVector: qubit count out of range");
    }

    std::size_t dim() const { return amp.size(); }

    /// Value of qubit q (1-based, MSB first) within basis index idx.
    static int bit(std::size_t idx, int q, int n) {
        return static_cast<int>((idx >> (n - q)) & 1u);
    }
    int bit(std::size_t idx, int q) const { return bit(idx, q, n); }

    double norm_sq() const {
        double s = 0.0;
        for (const cplx& a : amp) s += std::norm(a);
        return s;
    }

    void normalize() {
        const double nn = std::sqrt(norm_sq());
        if (nn == 0.0) throw std::runtime_error("StateVector: cannot normalize zero vector");
        for (cplx& a : amp) a /= nn;
    }
};

/// |0...0> on n qubits.
inline StateVector zero_state(int n) {
    StateVector s(n);
    s.amp[0] = 1.0;
    return s;
}

/// Computational basis state |idx> on n qubits.
inline StateVector basis_state(int n, std::size_t idx) {
    StateVector s(n);
    if (idx >= s.dim()) throw std::invalid_argument("basis_state: index out of range");
    s.amp[idx] = 1.0;
    return s;
}

/// <a|b>.
inline cplx overlap(const StateVector& a, const StateVector& b) {
    if (a.n != b.n) throw std::invalid_argument("overlap: qubit count mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return s;
}

/// |<a|b>|^2.
inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(overlap(a, b));
}

/// Max |a_i - e^(ig) b_i| over the optimal global phase g.
inline double phase_invariant_distance(const StateVector& a, const StateVector& b) {
    const cplx ov = overlap(b, a);
    const cplx phase = (std::abs(ov) < 1e-300) ? cplx{1.0, 0.0} : ov / std::abs(ov);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        worst = std::max(worst, std::abs(a.amp[i] - phase * b.amp[i]));
    return worst;
}

/// Bitstring label of basis index (qubit 1 first).
inline std::string basis_label(std::size_t idx, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int q = 1; q <= n; ++q)
        if (StateVector::bit(idx, q, n)) s[static_cast<std::size_t>(q - 1)] = '1';
    return s;
}

/// Basis index of a bitstring label (qubit 1 first).
inline std::size_t basis_index(const std::string& label) {
    std::size_t idx = 0;
    for (char c : label) {
        if (c != '0' && c != '1') throw std::invalid_argument("basis_index: bad label");
        idx = (idx << 1) | static_cast<std::size_t>(c == '1');
    }
    return idx;
}

}  // namespace qsp
