// Circuit JSON schema: round trips, determinism, fixtures, and error paths.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qsp/ansatz_a.hpp"
#include "qsp/gray.hpp"
#include "qsp/serialize.hpp"

using namespace qsp;

TEST_CASE("gate kind names round-trip") {
    for (GateKind k : {GateKind::X, GateKind::Ry, GateKind::Rz, GateKind::R,
                       GateKind::CNOT, GateKind::CZ, GateKind::A, GateKind::MCRy,
                       GateKind::MCRz, GateKind::MCX}) {
        const auto back = gate_kind_from_name(gate_kind_name(k));
        REQUIRE(back.has_value());
        CHECK(*back == k);
    }
    CHECK_FALSE(gate_kind_from_name("T").has_value());
}

TEST_CASE("circuit JSON round trip preserves semantics exactly") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> U(0, 2 * kPi);
    for (auto [n, m] : {std::pair{4, 2}, {6, 3}}) {
        for (const Circuit& c :
             {build_general(n, m), decompose_gray(gray_order(n, m))}) {
            const std::string text = circuit_to_string(c);
            const Circuit back = circuit_from_string(text);
            CHECK(back.n_qubits == c.n_qubits);
            CHECK(back.n_free == c.n_free);
            REQUIRE(back.gates.size() == c.gates.size());
            // re-serialization is byte identical
            CHECK(circuit_to_string(back) == text);
            // simulation agrees bit for bit
            std::vector<double> p(static_cast<std::size_t>(c.n_free));
            for (double& v : p) v = U(rng);
            const StateVector a = run(c, p), b = run(back, p);
            for (std::size_t i = 0; i < a.dim(); ++i) CHECK(a.amp[i] == b.amp[i]);
        }
    }
}

TEST_CASE("parameter expressions serialize by kind") {
    const ParamExpr fixed = ParamExpr::fixed(1.25);
    const auto jf = param_to_json(fixed);
    CHECK(jf.contains("value"));
    CHECK_FALSE(jf.contains("slot"));
    const ParamExpr f2 = param_from_json(jf);
    CHECK(f2.is_fixed());
    CHECK(f2.offset == 1.25);

    const ParamExpr free = ParamExpr::free(3, -1.0, 0.5);
    const ParamExpr f3 = param_from_json(param_to_json(free));
    CHECK(f3.slot == 3);
    CHECK(f3.scale == -1.0);
    CHECK(f3.offset == 0.5);

    // defaults on input
    const ParamExpr f4 = param_from_json(nlohmann::json::parse(R"({"slot": 1})"));
    CHECK(f4.scale == 1.0);
    CHECK(f4.offset == 0.0);
}

TEST_CASE("schema rejects malformed documents") {
    CHECK_THROWS_AS(circuit_from_string(R"({"format":"other","version":1})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(circuit_from_string(
                        R"({"format":"qsp-circuit","version":99,"n_qubits":1,"n_free":0,"gates":[]})"),
                    std::invalid_argument);
    // unknown gate kind
    CHECK_THROWS_AS(
        circuit_from_string(
            R"({"format":"qsp-circuit","version":1,"n_qubits":1,"n_free":0,
                "gates":[{"kind":"H","targets":[1]}]})"),
        std::invalid_argument);
    // structural validation still applies after parsing
    CHECK_THROWS_AS(
        circuit_from_string(
            R"({"format":"qsp-circuit","version":1,"n_qubits":1,"n_free":0,
                "gates":[{"kind":"CNOT","targets":[1,2]}]})"),
        std::invalid_argument);
    // negative slot is rejected
    CHECK_THROWS_AS(param_from_json(nlohmann::json::parse(R"({"slot":-2})")),
                    std::invalid_argument);
}

TEST_CASE("shipped fixture circuits load and match in-process construction") {
    const Circuit e4 = load_circuit(std::string(QSP_DATA_DIR) + "/e4_circuit.json");
    CHECK(circuit_to_string(e4) ==
          circuit_to_string(decompose_gray(gray_order(4, 2))));
    const Circuit e6 = load_circuit(std::string(QSP_DATA_DIR) + "/e6_circuit.json");
    CHECK(circuit_to_string(e6) ==
          circuit_to_string(decompose_gray(gray_order(6, 3))));
}

TEST_CASE("save/load round trip through the filesystem") {
    const Circuit c = build_general(3, 1);
    const std::string path = "/tmp/qsp_test_circuit.json";
    save_circuit(c, path);
    const Circuit back = load_circuit(path);
    CHECK(circuit_to_string(back) == circuit_to_string(c));
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_circuit("/nonexistent/path.json"), std::runtime_error);
}
