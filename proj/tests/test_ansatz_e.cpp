// Gray-ordered bases, hyperspherical parameterization, spin-constraint
// tables, and the Gray-walk decomposition.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qsp/gray.hpp"

using namespace qsp;

namespace {

std::size_t ket(const std::string& s) {
    std::size_t i = 0;
    for (char c : s) i = i * 2 + (c == '1');
    return i;
}

std::vector<double> random_angles(int k, std::mt19937& rng) {
    std::uniform_real_distribution<double> U(0, 2 * kPi);
    std::vector<double> u(static_cast<std::size_t>(k));
    for (double& v : u) v = U(rng);
    return u;
}

}  // namespace

TEST_CASE("gray_order produces valid two-bit-step orderings") {
    for (auto [n, m] : {std::pair{3, 1}, {4, 2}, {5, 2}, {6, 3}, {7, 3}, {8, 4}}) {
        INFO("n=" << n << " m=" << m);
        const GrayOrderedBasis b = gray_order(n, m);
        CHECK(b.size() == dim_number(n, m));
        CHECK(gray_order_valid(b));
    }
    CHECK_THROWS_AS(gray_order(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(gray_order(4, 4), std::invalid_argument);
}

TEST_CASE("gray_order fixed orderings for the worked sectors") {
    const GrayOrderedBasis b4 = gray_order(4, 2);
    CHECK(b4.strings == std::vector<std::string>{"1100", "1010", "0110", "0011",
                                                 "1001", "0101"});
    const GrayOrderedBasis b6 = gray_order(6, 3);
    REQUIRE(b6.size() == 20);
    CHECK(b6.strings.front() == "111000");
    CHECK(b6.strings.back() == "000111");
    CHECK(gray_order_valid(b6));
}

TEST_CASE("hyperspherical map: normalized, invertible via coeffs_to_angles") {
    std::mt19937 rng(31);
    for (int d : {3, 6, 20}) {
        for (int t = 0; t < 20; ++t) {
            std::vector<double> u = random_angles(d - 1, rng);
            u.push_back(0.0);
            const std::vector<double> c = hyperspherical_coeffs(u);
            double n2 = 0;
            for (double v : c) n2 += v * v;
            CHECK(n2 == Catch::Approx(1.0).epsilon(1e-12));
            const std::vector<double> u2 = coeffs_to_angles(c);
            const std::vector<double> c2 = hyperspherical_coeffs(u2);
            for (std::size_t i = 0; i < c.size(); ++i)
                CHECK(c2[i] == Catch::Approx(c[i]).margin(1e-12));
        }
    }
}

TEST_CASE("e4_reference: unitary, first column = hyperspherical coefficients") {
    std::mt19937 rng(32);
    const std::vector<double> u = random_angles(5, rng);
    const Eigen::MatrixXd e4 = e4_reference(u);
    const Eigen::MatrixXd gram = e4.transpose() * e4;
    CHECK((gram - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
    // first column carries the Gray-ordered coefficients
    const GrayOrderedBasis b = gray_order(4, 2);
    std::vector<double> full = u;
    full.push_back(0.0);
    const std::vector<double> c = hyperspherical_coeffs(full);
    for (std::size_t j = 0; j < b.size(); ++j)
        CHECK(std::abs(e4(static_cast<int>(ket(b.strings[j])), 0) - c[j]) < 1e-12);
}

TEST_CASE("spin constraint tables produce exact eigenstates") {
    struct Sector {
        int n, m, sz2, s2;
        double want_s2;
    };
    const Sector table[] = {{4, 2, 0, 2, 2.0},          {4, 2, 0, 0, 0.0},
                            {6, 3, 1, 3, 3.75},         {6, 3, -1, 3, 3.75},
                            {6, 3, 1, 1, 0.75},         {6, 3, -1, 1, 0.75}};
    std::mt19937 rng(33);
    for (const Sector& s : table) {
        INFO("n=" << s.n << " m=" << s.m << " sz2=" << s.sz2 << " s2=" << s.s2);
        SymmetrySector sec;
        sec.n = s.n;
        sec.m = s.m;
        sec.sz2 = s.sz2;
        sec.s2 = s.s2;
        sec.layout = SpinLayout::Interleaved;
        const SpinConstraintSet set = spin_constraints_table(sec);
        CHECK(set.n_free == static_cast<int>(dim_spin(s.n, s.m, s.s2)) - 1);
        const GrayOrderedBasis basis = gray_order(s.n, s.m);
        for (int t = 0; t < 10; ++t) {
            const std::vector<double> x = random_angles(set.n_free, rng);
            const StateVector psi = hyperspherical_state(basis, set.angles(x));
            const Moments s2m = apply_s2(psi, SpinLayout::Interleaved);
            const Moments szm = apply_sz(psi, SpinLayout::Interleaved);
            CHECK(s2m.mean == Catch::Approx(s.want_s2).margin(1e-9));
            CHECK(s2m.variance == Catch::Approx(0.0).margin(1e-9));
            CHECK(szm.mean == Catch::Approx(0.5 * s.sz2).margin(1e-9));
            CHECK(szm.variance == Catch::Approx(0.0).margin(1e-9));
        }
    }
}

TEST_CASE("fully-fixed constraint rows reproduce the worked kets") {
    // (4,2) triplet: (|0110> + |1001>)/sqrt2
    {
        SymmetrySector sec;
        sec.n = 4;
        sec.m = 2;
        sec.sz2 = 0;
        sec.s2 = 2;
        sec.layout = SpinLayout::Interleaved;
        const SpinConstraintSet set = spin_constraints_table(sec);
        REQUIRE(set.n_free == 0);
        const StateVector psi = hyperspherical_state(gray_order(4, 2), set.angles({}));
        const double r = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(psi.amp[ket("0110")] - r) < 1e-10);
        CHECK(std::abs(psi.amp[ket("1001")] - r) < 1e-10);
    }
    // (6,3) s=3/2: (|011010> + |100110> + |101001>)/sqrt3 and its partner
    struct Row {
        int sz2;
        std::array<const char*, 3> kets;
    };
    const Row rows[] = {{1, {"011010", "100110", "101001"}},
                        {-1, {"010110", "011001", "100101"}}};
    for (const Row& row : rows) {
        SymmetrySector sec;
        sec.n = 6;
        sec.m = 3;
        sec.sz2 = row.sz2;
        sec.s2 = 3;
        sec.layout = SpinLayout::Interleaved;
        const SpinConstraintSet set = spin_constraints_table(sec);
        REQUIRE(set.n_free == 0);
        const StateVector psi = hyperspherical_state(gray_order(6, 3), set.angles({}));
        const double r = 1.0 / std::sqrt(3.0);
        for (const char* k : row.kets) {
            INFO("sz2=" << row.sz2 << " ket=" << k);
            CHECK(std::abs(std::abs(psi.amp[ket(k)]) - r) < 1e-10);
        }
    }
}

TEST_CASE("general projector-based constraints cover untabulated sectors") {
    SymmetrySector sec;
    sec.n = 6;
    sec.m = 2;
    sec.sz2 = 0;
    sec.s2 = 0;
    sec.layout = SpinLayout::Interleaved;
    const SpinStateGenerator gen = spin_constraints_general(sec);
    CHECK(gen.n_free == static_cast<int>(dim_spin(6, 2, 0)) - 1);
    std::mt19937 rng(34);
    for (int t = 0; t < 5; ++t) {
        const StateVector psi = gen.state(random_angles(gen.n_free, rng));
        CHECK(check_membership(psi, sec, 1e-9));
    }
}

TEST_CASE("decompose_gray prepares the hyperspherical state exactly") {
    std::mt19937 rng(35);
    for (auto [n, m] : {std::pair{3, 1}, {4, 2}, {5, 2}, {6, 3}}) {
        INFO("n=" << n << " m=" << m);
        const GrayOrderedBasis basis = gray_order(n, m);
        const Circuit c = decompose_gray(basis);
        c.validate();
        for (int t = 0; t < 10; ++t) {
            const std::vector<double> x =
                random_angles(static_cast<int>(basis.size()) - 1, rng);
            std::vector<double> u = x;
            u.push_back(0.0);
            const StateVector got = run(c, x);
            const StateVector want = hyperspherical_state(basis, u);
            cplx dot = 0;
            for (std::size_t i = 0; i < got.dim(); ++i)
                dot += std::conj(want.amp[i]) * got.amp[i];
            CHECK(1.0 - std::norm(dot) < 1e-12);
        }
    }
}

TEST_CASE("gate counts of the worked decompositions") {
    const GrayGateCount e4 = count_gray_gates(decompose_gray(gray_order(4, 2)));
    CHECK(e4.toffoli == 15);
    CHECK(e4.singles == 12);
    const GrayGateCount e6 = count_gray_gates(decompose_gray(gray_order(6, 3)));
    CHECK(e6.toffoli == 57);
    CHECK(e6.singles == 41);
}

TEST_CASE("toffoli_cost: recorded rows and the n >= 6 CNOT formula") {
    auto cost = [](int n, int m, int s2, int sz2) {
        SymmetrySector sec;
        sec.n = n;
        sec.m = m;
        if (s2 >= 0) {
            sec.s2 = s2;
            sec.sz2 = sz2;
            sec.layout = SpinLayout::Interleaved;
        }
        return toffoli_cost(sec);
    };
    const ToffoliCost e4 = cost(4, 2, -1, 0);
    CHECK(e4.n_t == 15);
    CHECK(e4.n_c_exact == 155);
    REQUIRE(e4.n_c_approx.has_value());
    CHECK(*e4.n_c_approx == 135);
    CHECK(e4.n_c_numeric == 28);

    const ToffoliCost e4t = cost(4, 2, 2, 0);  // triplet row
    CHECK(e4t.n_t == 7);
    CHECK(e4t.n_c_exact == 67);
    REQUIRE(e4t.n_c_approx.has_value());
    CHECK(*e4t.n_c_approx == 63);
    CHECK(e4t.n_c_numeric == 14);

    const ToffoliCost e4s = cost(4, 2, 0, 0);  // singlet row
    CHECK(e4s.n_t == 9);
    CHECK(e4s.n_c_exact == 93);
    CHECK(e4s.n_c_numeric == 24);

    const ToffoliCost e6 = cost(6, 3, -1, 0);
    CHECK(e6.n_t == 57);
    CHECK(e6.n_c_exact == 2337);
    CHECK_FALSE(e6.n_c_approx.has_value());
    CHECK(e6.n_c_numeric == 124);
    // exact CNOTs follow N_T (2n^2 - 6n + 5) for n >= 6
    CHECK(e6.n_c_exact == e6.n_t * (2 * 36 - 36 + 5));
}
