#pragma once
/**
 * @file gray.hpp
 * Hyperspherical E-gate machinery: Gray-ordered fixed-weight bases, the
 * hyperspherical coefficient map and its inverse, spin-constraint sets (the
 * tabulated (4,2) and (6,3) rows plus a general projector-based route),
 * deterministic unitary completion, the reference 16x16 E4 matrix, the
 * Gray-walk decomposition into multi-controlled rotations, and Toffoli/CNOT
 * cost accounting.
 *
 * Conventions: strings are over qubits 1..n (qubit 1 = leftmost = MSB).
 * The tabulated spin-constraint rows assume the interleaved spin-orbital
 * layout (qubits alternate up/down: 1 = orbital 1 up, 2 = orbital 1 down, ...)
 * — measure their output with SpinLayout::Interleaved.
 * A Gray-ordered basis lists D = C(n,m) weight-m strings, consecutive strings
 * differing in exactly two bit positions. The coefficient map is
 *   c_j = cos(u_j) * prod_{i<j} sin(u_i),   u_D = 0,
 * so the state is real and exactly normalized for any angles.
 */

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "qsp/circuit.hpp"
#include "qsp/span.hpp"
#include "qsp/symmetry.hpp"

namespace qsp {

/// An ordering of the weight-m bitstrings with two bit changes per step.
struct GrayOrderedBasis {
    int n = 0, m = 0;
    std::vector<std::string> strings;  ///< D = C(n,m) strings over {0,1}

    std::size_t size() const { return strings.size(); }
};

namespace detail {

/// Revolving-door combination Gray code: all k-subsets of {1..n}, consecutive
/// subsets differing by a single element exchange. Returned as sorted index
/// lists (1-based, ascending).
inline std::vector<std::vector<int>> revolving_door(int n, int k) {
    if (k == 0) return {{}};
    if (k == n) {
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
        return {all};
    }
    // R(n,k) = R(n-1,k) ++ reverse(R(n-1,k-1)) * {n}
    std::vector<std::vector<int>> a = revolving_door(n - 1, k);
    std::vector<std::vector<int>> b = revolving_door(n - 1, k - 1);
    for (auto it = b.rbegin(); it != b.rend(); ++it) {
        it->push_back(n);
        a.push_back(std::move(*it));
    }
    return a;
}

inline std::string subset_to_string(const std::vector<int>& subset, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int q : subset) s[static_cast<std::size_t>(q - 1)] = '1';
    return s;
}

}  // namespace detail

/// Gray-ordered weight-m basis. The (4,2) and (6,3) orders are the fixture
/// orders used by the hyperspherical equations (coefficient-index order:
/// string j carries coefficient cos(u_j) prod_{i<j} sin(u_i)); the general
/// case uses the revolving-door combination code.
inline GrayOrderedBasis gray_order(int n, int m) {
    if (n < 2 || m < 1 || m >= n)
        throw std::invalid_argument("gray_order: need 0 < m < n");
    GrayOrderedBasis b;
    b.n = n;
    b.m = m;
    if (n == 4 && m == 2) {
        b.strings = {"1100", "1010", "0110", "0011", "1001", "0101"};
        return b;
    }
    if (n == 6 && m == 3) {
        b.strings = {"111000", "110100", "110010", "110001", "101001", "101100",
                     "101010", "100110", "100101", "100011", "010011", "010101",
                     "010110", "011100", "011010", "011001", "001101", "001110",
                     "001011", "000111"};
        return b;
    }
    for (const auto& subset : detail::revolving_door(n, m))
        b.strings.push_back(detail::subset_to_string(subset, n));
    return b;
}

/// Check the two-bit-change + completeness invariants of an ordering.
inline bool gray_order_valid(const GrayOrderedBasis& b) {
    const std::uint64_t d = dim_number(b.n, b.m);
    if (b.strings.size() != d) return false;
    std::vector<std::string> sorted = b.strings;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (const std::string& s : b.strings) {
        if (static_cast<int>(s.size()) != b.n) return false;
        if (std::count(s.begin(), s.end(), '1') != b.m) return false;
    }
    for (std::size_t j = 0; j + 1 < b.strings.size(); ++j) {
        int diff = 0;
        for (int i = 0; i < b.n; ++i)
            if (b.strings[j][static_cast<std::size_t>(i)] !=
                b.strings[j + 1][static_cast<std::size_t>(i)])
                ++diff;
        if (diff != 2) return false;
    }
    return true;
}

/// Hyperspherical coefficients c_j = cos(u_j) prod_{i<j} sin(u_i) of a
/// D-angle vector with u_D = 0 (so c_D = prod_{i<D} sin(u_i)).
inline std::vector<double> hyperspherical_coeffs(std::span<const double> u) {
    std::vector<double> c(u.size());
    double prefix = 1.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        c[j] = std::cos(u[j]) * prefix;
        prefix *= std::sin(u[j]);
    }
    return c;
}

/// Real state sum_j c_j(u) |basis_j> with optional extra phases on terms
/// 2..D (a length D-1 vector; default none = real / time-reversal state).
inline StateVector hyperspherical_state(const GrayOrderedBasis& basis,
                                        std::span<const double> u,
                                        std::span<const double> phases = {}) {
    if (u.size() != basis.size())
        throw std::invalid_argument("hyperspherical_state: angle count != basis size");
    if (u.size() > 0 && std::abs(u[u.size() - 1]) > 1e-12)
        throw std::invalid_argument("hyperspherical_state: final angle must be 0");
    if (!phases.empty() && phases.size() != basis.size() - 1)
        throw std::invalid_argument("hyperspherical_state: need D-1 phases");
    std::vector<double> c = hyperspherical_coeffs(u);
    StateVector psi(basis.n);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        cplx amp{c[j], 0.0};
        if (!phases.empty() && j > 0) amp *= std::polar(1.0, phases[j - 1]);
        psi.amp[basis_index(basis.strings[j])] = amp;
    }
    return psi;
}

/// Inverse of hyperspherical_coeffs: angles (with u_D = 0) whose coefficient
/// vector reproduces the given real unit vector to 1e-10. When a prefix
/// product of sines vanishes (all remaining coefficients zero), subsequent
/// angles are set to 0.
inline std::vector<double> coeffs_to_angles(std::span<const double> c) {
    double norm2 = 0.0;
    for (double v : c) norm2 += v * v;
    if (std::abs(norm2 - 1.0) > 1e-8)
        throw std::invalid_argument("coeffs_to_angles: input is not a unit vector");
    const std::size_t d = c.size();
    std::vector<double> u(d, 0.0);
    double prefix = 1.0;  // running prod sin(u_i), signed
    for (std::size_t j = 0; j + 1 < d; ++j) {
        double tail = 0.0;
        for (std::size_t i = j + 1; i < d; ++i) tail += c[i] * c[i];
        tail = std::sqrt(tail);
        if (std::abs(prefix) < 1e-14) break;  // dead branch: leave zeros
        if (j + 2 == d) {
            // final pair: both components determined, signs included
            u[j] = std::atan2(c[j + 1] / prefix, c[j] / prefix);
        } else {
            u[j] = std::atan2(tail / prefix, c[j] / prefix);
        }
        prefix *= std::sin(u[j]);
    }
    return u;
}

/// One tabulated or generated spin-constraint set: maps free angles to the
/// full hyperspherical angle vector of the (n,m) Gray basis.
struct SpinConstraintSet {
    int n = 0, m = 0;
    int s2 = 0, sz2 = 0;  ///< 2s and 2sz
    int n_free = 0;
    /// free values (size n_free) -> full angle vector (size D, last = 0)
    std::function<std::vector<double>(std::span<const double>)> angles;
};

/// Tabulated constraint rows for (4,2,s,sz=0) and (6,3,s,sz=+-1/2).
/// cot^{-1} uses the principal value pi/2 - atan, per the unrestricted-domain
/// inverse-function guidance.
inline SpinConstraintSet spin_constraints_table(const SymmetrySector& sec) {
    const double H = kPi / 2;
    SpinConstraintSet set;
    set.n = sec.n;
    set.m = sec.m;
    set.s2 = sec.s2;
    set.sz2 = sec.sz2.value_or(0);
    auto acot = [](double x) { return kPi / 2 - std::atan(x); };
    if (sec.n == 4 && sec.m == 2 && sec.sz2 == 0 && sec.s2 == 2) {
        set.n_free = 0;
        set.angles = [H](std::span<const double>) {
            return std::vector<double>{H, H, kPi / 4, H, 0.0, 0.0};
        };
        return set;
    }
    if (sec.n == 4 && sec.m == 2 && sec.sz2 == 0 && sec.s2 == 0) {
        set.n_free = 2;  // u1, u4
        set.angles = [H](std::span<const double> f) {
            const double u1 = f[0], u4 = f[1];
            const double u3 = -std::atan(1.0 / std::sin(u4));  // -atan(csc u4)
            return std::vector<double>{u1, H, u3, u4, 0.0, 0.0};
        };
        return set;
    }
    if (sec.n == 6 && sec.m == 3 && sec.s2 == 3 && sec.sz2 == 1) {
        set.n_free = 0;
        set.angles = [H, acot](std::span<const double>) {
            std::vector<double> u(20, H);
            u[4] = acot(1.0 / std::sqrt(2.0));  // u5
            u[7] = kPi / 4;                     // u8
            u[14] = 0.0;                        // u15
            u[19] = 0.0;
            return u;
        };
        return set;
    }
    if (sec.n == 6 && sec.m == 3 && sec.s2 == 3 && sec.sz2 == -1) {
        set.n_free = 0;
        set.angles = [H, acot](std::span<const double>) {
            std::vector<double> u(20, H);
            u[8] = acot(1.0 / std::sqrt(2.0));  // u9
            u[12] = kPi / 4;                    // u13
            u[15] = 0.0;                        // u16
            u[19] = 0.0;
            return u;
        };
        return set;
    }
    if (sec.n == 6 && sec.m == 3 && sec.s2 == 1 && sec.sz2 == 1) {
        set.n_free = 7;  // u1, u3, u6, u8, u10, u15, u18
        set.angles = [H, acot](std::span<const double> f) {
            std::vector<double> u(20, H);
            u[0] = f[0];   // u1
            u[2] = f[1];   // u3
            u[5] = f[2];   // u6
            u[7] = f[3];   // u8
            u[9] = f[4];   // u10
            u[14] = f[5];  // u15
            u[17] = f[6];  // u18
            const double delta = std::sin(u[9]) * std::cos(u[14]) * std::sin(u[5]) *
                                     std::sin(u[7]) +
                                 std::sin(u[5]) * std::cos(u[7]);
            u[4] = -acot(delta);  // u5
            u[18] = 0.0;          // u19
            u[19] = 0.0;
            return u;
        };
        return set;
    }
    if (sec.n == 6 && sec.m == 3 && sec.s2 == 1 && sec.sz2 == -1) {
        set.n_free = 7;  // u2, u4, u11, u13, u14, u16, u17
        set.angles = [H, acot](std::span<const double> f) {
            std::vector<double> u(20, H);
            u[1] = f[0];   // u2
            u[3] = f[1];   // u4
            u[10] = f[2];  // u11
            u[12] = f[3];  // u13
            u[13] = f[4];  // u14
            u[15] = f[5];  // u16
            u[16] = f[6];  // u17
            const double kappa = std::sin(u[10]) * std::sin(u[12]) * std::sin(u[13]) *
                                     std::cos(u[15]) +
                                 std::sin(u[10]) * std::cos(u[12]);
            u[8] = -acot(kappa);  // u9
            u[19] = 0.0;
            return u;
        };
        return set;
    }
    throw std::invalid_argument(
        "spin_constraints_table: sector not tabulated (use spin_constraints_general)");
}

/// General spin-constrained state generator: a (k-1)-angle hypersphere over
/// the orthonormal projector-basis columns of the (n,m,s,sz) eigenspace,
/// where k = dim_spin(n,m,s). Every emitted state is an exact eigenstate.
struct SpinStateGenerator {
    int n = 0;
    int n_free = 0;  ///< k - 1 hyperspherical angles
    ProjectorBasis basis;

    StateVector state(std::span<const double> f) const {
        const int k = static_cast<int>(basis.columns.cols());
        if (static_cast<int>(f.size()) != n_free)
            throw std::invalid_argument("SpinStateGenerator: wrong angle count");
        std::vector<double> u(static_cast<std::size_t>(k), 0.0);
        std::copy(f.begin(), f.end(), u.begin());
        std::vector<double> c = hyperspherical_coeffs(u);
        StateVector psi(n);
        for (int j = 0; j < k; ++j)
            for (std::size_t r = 0; r < basis.occ_basis.size(); ++r)
                psi.amp[basis.occ_basis[r]] +=
                    c[static_cast<std::size_t>(j)] * basis.columns(static_cast<int>(r), j);
        return psi;
    }
};

inline SpinStateGenerator spin_constraints_general(const SymmetrySector& sec) {
    SpinStateGenerator gen;
    gen.n = sec.n;
    gen.basis = sector_projector_basis(sec);
    const int k = static_cast<int>(gen.basis.columns.cols());
    if (k < 1) throw std::invalid_argument("spin_constraints_general: empty sector");
    gen.n_free = k - 1;
    return gen;
}

/// Deterministic unitary completion: U[:,0] = first_column; remaining columns
/// by Gram-Schmidt over standard basis vectors, choosing at each step the
/// standard vector with the largest remaining (projected-out) norm.
inline Eigen::MatrixXd complete_unitary(const Eigen::VectorXd& first_column) {
    const int d = static_cast<int>(first_column.size());
    if (std::abs(first_column.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("complete_unitary: first column is not unit");
    Eigen::MatrixXd u(d, d);
    u.col(0) = first_column;
    std::vector<bool> used(static_cast<std::size_t>(d), false);
    for (int col = 1; col < d; ++col) {
        int best = -1;
        double best_norm = -1.0;
        Eigen::VectorXd best_res;
        for (int cand = 0; cand < d; ++cand) {
            if (used[static_cast<std::size_t>(cand)]) continue;
            Eigen::VectorXd res = Eigen::VectorXd::Unit(d, cand);
            for (int j = 0; j < col; ++j) res -= u.col(j).dot(res) * u.col(j);
            const double nrm = res.norm();
            if (nrm > best_norm + 1e-12) {
                best_norm = nrm;
                best = cand;
                best_res = std::move(res);
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        u.col(col) = best_res / best_norm;
    }
    return u;
}

/// The literal reference 16x16 E4 matrix (real): column 0 carries the
/// hyperspherical coefficients of the (4,2) Gray basis, the rest complete it
/// to a unitary. u has 5 angles (the sixth is identically 0).
inline Eigen::MatrixXd e4_reference(std::span<const double> u) {
    if (u.size() != 5) throw std::invalid_argument("e4_reference: need 5 angles");
    auto C = [&](int i) { return std::cos(u[static_cast<std::size_t>(i - 1)]); };
    auto S = [&](int i) { return std::sin(u[static_cast<std::size_t>(i - 1)]); };
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(16, 16);
    e(0, 12) = 1;
    e(1, 13) = 1;
    e(2, 14) = 1;
    e(3, 0) = C(4) * S(1) * S(2) * S(3);
    e(3, 5) = S(4);
    e(3, 6) = -C(1) * C(4) * S(2) * S(3);
    e(3, 10) = -C(2) * C(4) * S(3);
    e(3, 15) = -C(3) * C(4);
    e(4, 8) = 1;
    e(5, 0) = S(1) * S(2) * S(3) * S(4) * S(5);
    e(5, 5) = -C(4) * S(5);
    e(5, 6) = -C(1) * S(2) * S(3) * S(4) * S(5);
    e(5, 9) = -C(5);
    e(5, 10) = -C(2) * S(3) * S(4) * S(5);
    e(5, 15) = -C(3) * S(4) * S(5);
    e(6, 0) = C(3) * S(1) * S(2);
    e(6, 6) = -C(1) * C(3) * S(2);
    e(6, 10) = -C(2) * C(3);
    e(6, 15) = S(3);
    e(7, 11) = 1;
    e(8, 4) = 1;
    e(9, 0) = C(5) * S(1) * S(2) * S(3) * S(4);
    e(9, 5) = -C(4) * C(5);
    e(9, 6) = -C(1) * C(5) * S(2) * S(3) * S(4);
    e(9, 9) = S(5);
    e(9, 10) = -C(2) * C(5) * S(3) * S(4);
    e(9, 15) = -C(3) * C(5) * S(4);
    e(10, 0) = C(2) * S(1);
    e(10, 6) = -C(1) * C(2);
    e(10, 10) = S(2);
    e(11, 7) = 1;
    e(12, 0) = C(1);
    e(12, 6) = S(1);
    e(13, 1) = 1;
    e(14, 2) = 1;
    e(15, 3) = 1;
    return e;
}

/// Gray-walk decomposition of the E-gate state preparation: X gates prepare
/// the first basis string; step j (j = 1..D-1) moves amplitude from the
/// accumulated pattern into basis string j with a compute/rotate/uncompute
/// block of two multi-controlled X gates around a controlled Ry(u_j - pi/2)
/// conjugated pair on the raising qubit. Parameter slot j-1 carries u_j.
/// The output on |0..0> equals hyperspherical_state(basis, u) for any u with
/// u_D = 0 (global phase aside).
inline Circuit decompose_gray(const GrayOrderedBasis& basis) {
    const int n = basis.n;
    if (n > 8) throw std::invalid_argument("decompose_gray: limited to n <= 8");
    const std::size_t d = basis.size();
    Circuit c(n, static_cast<int>(d) - 1);
    for (int q = 1; q <= n; ++q)
        if (basis.strings[0][static_cast<std::size_t>(q - 1)] == '1') c.add(g_x(q));
    for (std::size_t j = 0; j + 1 < d; ++j) {
        const std::string& cur = basis.strings[j];
        const std::string& nxt = basis.strings[j + 1];
        int p = 0, q = 0;  // p: 1 -> 0, q: 0 -> 1
        for (int i = 1; i <= n; ++i) {
            const char a = cur[static_cast<std::size_t>(i - 1)];
            const char b = nxt[static_cast<std::size_t>(i - 1)];
            if (a == '1' && b == '0') p = i;
            if (a == '0' && b == '1') q = i;
        }
        std::vector<Control> on_p;  // controls for target p: others at cur values
        std::vector<Control> on_q;  // controls for target q: cur with p lowered
        for (int i = 1; i <= n; ++i) {
            const bool bit = cur[static_cast<std::size_t>(i - 1)] == '1';
            if (i != p) on_p.push_back({i, bit});
            if (i != q) on_q.push_back({i, i == p ? false : bit});
        }
        const ParamExpr y_fwd{static_cast<int>(j), 1.0, -kPi / 2};  // u_j - pi/2
        const ParamExpr y_bwd{static_cast<int>(j), -1.0, kPi / 2};  // -(u_j - pi/2)
        c.add(g_mcx(p, on_p));
        c.add(g_ry(q, y_bwd));
        c.add(g_mcx(q, on_q));
        c.add(g_ry(q, y_fwd));
        c.add(g_mcx(p, on_p));
    }
    return c;
}

/// Gate-count summary of a Gray decomposition circuit.
struct GrayGateCount {
    int toffoli = 0;   ///< multi-controlled X count (N_T)
    int singles = 0;   ///< single-qubit gates (X and uncontrolled-notation Y's)
};

inline GrayGateCount count_gray_gates(const Circuit& c) {
    GrayGateCount g;
    for (const GateInstance& gi : c.gates) {
        if (gi.kind == GateKind::MCX) ++g.toffoli;
        else if (gi.kind == GateKind::X || gi.kind == GateKind::Ry) ++g.singles;
    }
    return g;
}

/// Toffoli/CNOT cost report for the E-gate construction.
struct ToffoliCost {
    int n_t = 0;                       ///< Toffoli (multi-controlled X) count
    long long n_c_exact = 0;           ///< exact decomposition CNOTs
    std::optional<long long> n_c_approx;  ///< approximate decomposition (n=4 rows)
    int n_c_numeric = 0;               ///< multiplexer-method CNOT bound
};

/// Recorded per-sector cost rows (reference constants) plus the general
/// formulas: exact CNOTs = N_T (2n^2 - 6n + 5) for n >= 6; the numeric
/// multiplexer bound is 2^{n+2} - 4n - 4 in general and 2^{n+1} - 4 at half
/// filling. s2/sz2 use the doubled-integer convention; s2 < 0 = unconstrained.
inline ToffoliCost toffoli_cost(const SymmetrySector& sec) {
    struct Key {
        int n, m, s2, sz2;
        bool operator<(const Key& o) const {
            return std::tie(n, m, s2, sz2) < std::tie(o.n, o.m, o.s2, o.sz2);
        }
    };
    struct Row {
        int n_t;
        long long n_c;
        std::optional<long long> n_c_a;
        int n_c_n;
    };
    static const std::map<Key, Row> table = {
        {{4, 2, -1, 0}, {15, 155, 135, 28}},
        {{4, 2, 2, 0}, {7, 67, 63, 14}},
        {{4, 2, 0, 0}, {9, 93, 81, 24}},
        {{6, 3, -1, 0}, {57, 2337, std::nullopt, 124}},
        {{6, 3, 3, 1}, {14, 574, std::nullopt, 62}},
        {{6, 3, 3, -1}, {14, 574, std::nullopt, 62}},
        {{6, 3, 1, 1}, {24, 984, std::nullopt, 114}},
        {{6, 3, 1, -1}, {24, 984, std::nullopt, 106}},
        {{8, 4, -1, 0}, {207, 17595, std::nullopt, 508}},
        {{8, 4, 4, 2}, {21, 1785, std::nullopt, 254}},
        {{8, 4, 4, 0}, {35, 2975, std::nullopt, 254}},
        {{8, 4, 4, -2}, {21, 1785, std::nullopt, 254}},
        {{8, 4, 2, 2}, {45, 3825, std::nullopt, 454}},
        {{8, 4, 2, 0}, {71, 6885, std::nullopt, 508}},
        {{8, 4, 2, -2}, {45, 3825, std::nullopt, 454}},
        {{8, 4, 0, 0}, {77, 6545, std::nullopt, 432}},
    };
    const Key key{sec.n, sec.m, sec.s2, sec.s2 < 0 ? 0 : sec.sz2.value_or(0)};
    auto it = table.find(key);
    ToffoliCost cost;
    if (it != table.end()) {
        cost.n_t = it->second.n_t;
        cost.n_c_exact = it->second.n_c;
        cost.n_c_approx = it->second.n_c_a;
        cost.n_c_numeric = it->second.n_c_n;
        return cost;
    }
    // Not a recorded sector: derive from the generated decomposition.
    if (sec.s2 >= 0)
        throw std::invalid_argument("toffoli_cost: s-constrained sector not recorded");
    GrayOrderedBasis basis = gray_order(sec.n, sec.m);
    cost.n_t = 3 * (static_cast<int>(basis.size()) - 1);
    const int n = sec.n;
    if (n >= 6) {
        cost.n_c_exact = static_cast<long long>(cost.n_t) * (2LL * n * n - 6 * n + 5);
    } else {
        // n = 4: identical outer pairs at 18 CNOTs, lone Toffolis at 13
        const int pairs = static_cast<int>(basis.size()) - 1;
        const int singles = cost.n_t - 2 * pairs;
        cost.n_c_exact = 18LL * pairs + 13LL * singles;
    }
    cost.n_c_numeric = (2 * sec.m == n) ? ((1 << (n + 1)) - 4)
                                        : ((1 << (n + 2)) - 4 * n - 4);
    return cost;
}

/// --------------------------------------------------------------------------
/// Parameterized-family adapters (for span verification and VQE).

/// Free hyperspherical family over a Gray basis: D-1 angles, real states.
inline ParamStateFn hyperspherical_fn(GrayOrderedBasis basis) {
    const int d = static_cast<int>(basis.size());
    auto shared = std::make_shared<GrayOrderedBasis>(std::move(basis));
    return {d - 1, [shared, d](std::span<const double> x) {
                std::vector<double> u(static_cast<std::size_t>(d), 0.0);
                std::copy(x.begin(), x.end(), u.begin());
                return hyperspherical_state(*shared, u);
            }};
}

/// Tabulated spin-constrained family of a sector: free angles -> eigenstate.
inline ParamStateFn spin_constrained_fn(const SymmetrySector& sec) {
    auto set = std::make_shared<SpinConstraintSet>(spin_constraints_table(sec));
    auto basis = std::make_shared<GrayOrderedBasis>(gray_order(sec.n, sec.m));
    return {set->n_free, [set, basis](std::span<const double> x) {
                return hyperspherical_state(*basis, set->angles(x));
            }};
}

/// Projector-based spin-constrained family (any sector, n <= 12).
inline ParamStateFn general_spin_fn(const SymmetrySector& sec) {
    auto gen = std::make_shared<SpinStateGenerator>(spin_constraints_general(sec));
    return {gen->n_free,
            [gen](std::span<const double> x) { return gen->state(x); }};
}

}  // namespace qsp
