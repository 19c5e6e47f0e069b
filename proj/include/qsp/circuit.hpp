#pragma once
/**
 * @file circuit.hpp
 * Parameterized circuit representation and dense simulation kernels.
 *
 * Supported gate kinds: X, Ry, Rz, R, CNOT, CZ, A, MCRy, MCRz, MCX.
 * Gate angles are affine expressions of a circuit-level parameter vector so
 * that shared, negated, offset and frozen parameters can all be expressed
 * (e.g. Rdag legs of the A-gate decomposition, or a phi shared across gates).
 *
 * Conventions:
 *   Ry(b) = exp(-i b Y / 2),  Rz(a) = exp(-i a Z / 2)
 *   R(theta, phi) = Rz(phi + pi) * Ry(theta + pi/2)
 *   A(theta, phi) acts on ordered targets (t1, t2) as identity on |00>,|11>
 *   and [[cos t, e^{i p} sin t], [e^{-i p} sin t, -cos t]] on {|01>,|10>}.
 */

#include <algorithm>
#include <array>
#include <optional>

#include "qsp/state.hpp"

namespace qsp {

inline constexpr double kPi = 3.14159265358979323846;

/// Affine parameter expression: slot < 0 is a fixed value (offset),
/// otherwise value = scale * params[slot] + offset.
struct ParamExpr {
    int slot = -1;
    double scale = 1.0;
    double offset = 0.0;

    static ParamExpr fixed(double v) { return ParamExpr{-1, 0.0, v}; }
    static ParamExpr free(int slot, double scale = 1.0, double offset = 0.0) {
        return ParamExpr{slot, scale, offset};
    }
    bool is_fixed() const { return slot < 0; }
    double value(std::span<const double> params) const {
        if (slot < 0) return offset;
        if (slot >= static_cast<int>(params.size()))
            throw std::out_of_range("ParamExpr: parameter slot out of range");
        return scale * params[static_cast<std::size_t>(slot)] + offset;
    }
};

enum class GateKind { X, Ry, Rz, R, CNOT, CZ, A, MCRy, MCRz, MCX };

inline const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::Ry: return "Ry";
        case GateKind::Rz: return "Rz";
        case GateKind::R: return "R";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::A: return "A";
        case GateKind::MCRy: return "MCRy";
        case GateKind::MCRz: return "MCRz";
        case GateKind::MCX: return "MCX";
    }
    return "?";
}

inline std::optional<GateKind> gate_kind_from_name(const std::string& s) {
    static const std::pair<const char*, GateKind> table[] = {
        {"X", GateKind::X},       {"Ry", GateKind::Ry},   {"Rz", GateKind::Rz},
        {"R", GateKind::R},       {"CNOT", GateKind::CNOT}, {"CZ", GateKind::CZ},
        {"A", GateKind::A},       {"MCRy", GateKind::MCRy}, {"MCRz", GateKind::MCRz},
        {"MCX", GateKind::MCX}};
    for (const auto& [name, kind] : table)
        if (s == name) return kind;
    return std::nullopt;
}

/// Control terminal: qubit plus polarity (closed = triggers on |1>, open = |0>).
struct Control {
    int qubit = 0;
    bool closed = true;
    friend bool operator==(const Control&, const Control&) = default;
};

/// One gate in a circuit. Targets and controls are 1-based qubit numbers.
struct GateInstance {
    GateKind kind = GateKind::X;
    std::vector<int> targets;      ///< ordered; size 1 except CNOT/CZ/A (2)
    std::vector<Control> controls; ///< MC* gates only (CNOT/CZ controls are targets[0])
    std::vector<ParamExpr> params; ///< angle expressions (0, 1 or 2)

    int param_arity() const {
        switch (kind) {
            case GateKind::X:
            case GateKind::CNOT:
            case GateKind::CZ:
            case GateKind::MCX: return 0;
            case GateKind::Ry:
            case GateKind::Rz:
            case GateKind::MCRy:
            case GateKind::MCRz: return 1;
            case GateKind::R:
            case GateKind::A: return 2;
        }
        return 0;
    }
    int target_arity() const {
        switch (kind) {
            case GateKind::CNOT:
            case GateKind::CZ:
            case GateKind::A: return 2;
            default: return 1;
        }
    }
};

/// Convenience constructors -------------------------------------------------

inline GateInstance g_x(int q) { return {GateKind::X, {q}, {}, {}}; }
inline GateInstance g_ry(int q, ParamExpr a) { return {GateKind::Ry, {q}, {}, {a}}; }
inline GateInstance g_rz(int q, ParamExpr a) { return {GateKind::Rz, {q}, {}, {a}}; }
inline GateInstance g_r(int q, ParamExpr th, ParamExpr ph) {
    return {GateKind::R, {q}, {}, {th, ph}};
}
/// CNOT with control `c`, target `t` (targets = {control, target}).
inline GateInstance g_cnot(int c, int t) { return {GateKind::CNOT, {c, t}, {}, {}}; }
inline GateInstance g_cz(int a, int b) { return {GateKind::CZ, {a, b}, {}, {}}; }
inline GateInstance g_a(int t1, int t2, ParamExpr th, ParamExpr ph) {
    return {GateKind::A, {t1, t2}, {}, {th, ph}};
}
inline GateInstance g_mcx(int t, std::vector<Control> cs) {
    return {GateKind::MCX, {t}, std::move(cs), {}};
}
inline GateInstance g_mcry(int t, std::vector<Control> cs, ParamExpr a) {
    return {GateKind::MCRy, {t}, std::move(cs), {a}};
}
inline GateInstance g_mcrz(int t, std::vector<Control> cs, ParamExpr a) {
    return {GateKind::MCRz, {t}, std::move(cs), {a}};
}

/// Parameterized circuit over a fixed qubit count.
struct Circuit {
    int n_qubits = 0;
    int n_free = 0;                ///< length of the free-parameter vector
    std::vector<GateInstance> gates;

    Circuit() = default;
    Circuit(int n, int k) : n_qubits(n), n_free(k) {}

    void add(GateInstance g) { gates.push_back(std::move(g)); }

    /// Structural validation; throws std::invalid_argument on malformed gates.
    void validate() const {
        if (n_qubits < 1 || n_qubits > kMaxQubits)
            throw std::invalid_argument("Circuit: qubit count out of range");
        for (const GateInstance& g : gates) {
            if (static_cast<int>(g.targets.size()) != g.target_arity())
                throw std::invalid_argument("Circuit: bad target arity");
            if (static_cast<int>(g.params.size()) != g.param_arity())
                throw std::invalid_argument("Circuit: bad parameter arity");
            std::vector<int> used;
            for (int t : g.targets) used.push_back(t);
            for (const Control& c : g.controls) used.push_back(c.qubit);
            for (int q : used)
                if (q < 1 || q > n_qubits)
                    throw std::invalid_argument("Circuit: qubit out of range");
            std::sort(used.begin(), used.end());
            if (std::adjacent_find(used.begin(), used.end()) != used.end())
                throw std::invalid_argument("Circuit: repeated qubit in gate");
            if (!g.controls.empty() && g.kind != GateKind::MCX &&
                g.kind != GateKind::MCRy && g.kind != GateKind::MCRz)
                throw std::invalid_argument("Circuit: controls only valid on MC gates");
            for (const ParamExpr& p : g.params)
                if (p.slot >= n_free)
                    throw std::invalid_argument("Circuit: parameter slot out of range");
        }
    }
};

/// Gate matrices ------------------------------------------------------------

using Mat2 = std::array<cplx, 4>;   // row-major 2x2
using Mat4 = std::array<cplx, 16>;  // row-major 4x4

inline Mat2 ry_matrix(double b) {
    const double c = std::cos(b / 2), s = std::sin(b / 2);
    return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
}
inline Mat2 rz_matrix(double a) {
    return {std::polar(1.0, -a / 2), cplx{0, 0}, cplx{0, 0}, std::polar(1.0, a / 2)};
}
/// R(theta, phi) = Rz(phi + pi) * Ry(theta + pi/2).
inline Mat2 r_matrix(double theta, double phi) {
    const Mat2 z = rz_matrix(phi + kPi), y = ry_matrix(theta + kPi / 2);
    Mat2 m{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m[static_cast<std::size_t>(2 * i + j)] =
                z[static_cast<std::size_t>(2 * i)] * y[static_cast<std::size_t>(j)] +
                z[static_cast<std::size_t>(2 * i + 1)] * y[static_cast<std::size_t>(2 + j)];
    return m;
}

/// Particle-number-conserving exchange gate on ordered targets (t1, t2),
/// basis order |00>, |01>, |10>, |11> of (t1, t2).
inline Mat4 a_gate_matrix(double theta, double phi) {
    Mat4 m{};
    const double c = std::cos(theta), s = std::sin(theta);
    m[0] = 1.0;
    m[5] = c;
    m[6] = std::polar(s, phi);    // <01|A|10> = e^{i phi} sin
    m[9] = std::polar(s, -phi);   // <10|A|01> = e^{-i phi} sin
    m[10] = -c;
    m[15] = 1.0;
    return m;
}

/// Three-CNOT decomposition of A(theta, phi) on (t1, t2):
///   CNOT(t2->t1); Rdag(t2); CNOT(t1->t2); R(t2); CNOT(t2->t1)
/// with Rdag expanded as Rz(-phi - pi) then Ry(-theta - pi/2).
/// Parameter expressions are taken from the A gate, so frozen/shared slots
/// propagate. Equal to a_gate_matrix up to global phase.
inline std::vector<GateInstance> a_gate_decomposition(int t1, int t2, ParamExpr theta,
                                                      ParamExpr phi) {
    ParamExpr th_neg{theta.slot, -theta.scale, -theta.offset - kPi / 2};
    ParamExpr ph_neg{phi.slot, -phi.scale, -phi.offset - kPi};
    return {
        g_cnot(t2, t1),
        g_rz(t2, ph_neg),
        g_ry(t2, th_neg),
        g_cnot(t1, t2),
        g_r(t2, theta, phi),
        g_cnot(t2, t1),
    };
}

/// Simulation kernels -------------------------------------------------------

namespace detail {

/// Apply a 2x2 matrix on qubit q, restricted to indices whose control bits match.
inline void apply_1q(StateVector& psi, int q, const Mat2& m,
                     std::span<const Control> controls = {}) {
    const int n = psi.n;
    const std::size_t stride = std::size_t{1} << (n - q);
    const std::size_t dim = psi.dim();
    std::size_t cmask = 0, cval = 0;
    for (const Control& c : controls) {
        const std::size_t b = std::size_t{1} << (n - c.qubit);
        cmask |= b;
        if (c.closed) cval |= b;
    }
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            if ((i0 & cmask) != cval) continue;
            const std::size_t i1 = i0 + stride;
            const cplx a0 = psi.amp[i0], a1 = psi.amp[i1];
            psi.amp[i0] = m[0] * a0 + m[1] * a1;
            psi.amp[i1] = m[2] * a0 + m[3] * a1;
        }
    }
}

/// Apply a 4x4 matrix on ordered qubits (q1, q2); q1 is the high bit of the
/// local 2-qubit basis.
inline void apply_2q(StateVector& psi, int q1, int q2, const Mat4& m) {
    const int n = psi.n;
    const std::size_t b1 = std::size_t{1} << (n - q1);
    const std::size_t b2 = std::size_t{1} << (n - q2);
    const std::size_t dim = psi.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & b1) || (i & b2)) continue;  // enumerate i with both bits clear
        const std::size_t i00 = i, i01 = i | b2, i10 = i | b1, i11 = i | b1 | b2;
        const cplx a00 = psi.amp[i00], a01 = psi.amp[i01];
        const cplx a10 = psi.amp[i10], a11 = psi.amp[i11];
        psi.amp[i00] = m[0] * a00 + m[1] * a01 + m[2] * a10 + m[3] * a11;
        psi.amp[i01] = m[4] * a00 + m[5] * a01 + m[6] * a10 + m[7] * a11;
        psi.amp[i10] = m[8] * a00 + m[9] * a01 + m[10] * a10 + m[11] * a11;
        psi.amp[i11] = m[12] * a00 + m[13] * a01 + m[14] * a10 + m[15] * a11;
    }
}

}  // namespace detail

/// Apply a single gate in place.
inline void apply_gate(StateVector& psi, const GateInstance& g,
                       std::span<const double> params = {}) {
    switch (g.kind) {
        case GateKind::X: {
            static const Mat2 x{cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
            detail::apply_1q(psi, g.targets[0], x);
            break;
        }
        case GateKind::Ry:
            detail::apply_1q(psi, g.targets[0], ry_matrix(g.params[0].value(params)));
            break;
        case GateKind::Rz:
            detail::apply_1q(psi, g.targets[0], rz_matrix(g.params[0].value(params)));
            break;
        case GateKind::R:
            detail::apply_1q(psi, g.targets[0],
                             r_matrix(g.params[0].value(params), g.params[1].value(params)));
            break;
        case GateKind::CNOT: {
            static const Mat2 x{cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
            const Control c{g.targets[0], true};
            detail::apply_1q(psi, g.targets[1], x, {&c, 1});
            break;
        }
        case GateKind::CZ: {
            static const Mat2 z{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};
            const Control c{g.targets[0], true};
            detail::apply_1q(psi, g.targets[1], z, {&c, 1});
            break;
        }
        case GateKind::A:
            detail::apply_2q(psi, g.targets[0], g.targets[1],
                             a_gate_matrix(g.params[0].value(params), g.params[1].value(params)));
            break;
        case GateKind::MCRy:
            detail::apply_1q(psi, g.targets[0], ry_matrix(g.params[0].value(params)),
                             g.controls);
            break;
        case GateKind::MCRz:
            detail::apply_1q(psi, g.targets[0], rz_matrix(g.params[0].value(params)),
                             g.controls);
            break;
        case GateKind::MCX: {
            static const Mat2 x{cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
            detail::apply_1q(psi, g.targets[0], x, g.controls);
            break;
        }
    }
}

/// Run a circuit from |0...0> (or a caller-supplied initial state).
inline StateVector run(const Circuit& c, std::span<const double> params = {},
                       std::optional<StateVector> initial = std::nullopt) {
    if (static_cast<int>(params.size()) < c.n_free)
        throw std::invalid_argument("run: parameter vector too short");
    StateVector psi = initial ? std::move(*initial) : zero_state(c.n_qubits);
    if (psi.n != c.n_qubits) throw std::invalid_argument("run: initial state size mismatch");
    for (const GateInstance& g : c.gates) apply_gate(psi, g, params);
    return psi;
}

/// Full unitary of a circuit (column j = action on |j>); n_qubits <= 10.
inline std::vector<std::vector<cplx>> unitary_of(const Circuit& c,
                                                 std::span<const double> params = {}) {
    if (c.n_qubits > 10) throw std::invalid_argument("unitary_of: limited to 10 qubits");
    const std::size_t dim = std::size_t{1} << c.n_qubits;
    std::vector<std::vector<cplx>> u(dim, std::vector<cplx>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        StateVector col = run(c, params, basis_state(c.n_qubits, j));
        for (std::size_t i = 0; i < dim; ++i) u[i][j] = col.amp[i];
    }
    return u;
}

}  // namespace qsp
