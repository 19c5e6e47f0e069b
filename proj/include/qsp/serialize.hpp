#pragma once
/**
 * @file serialize.hpp
 * JSON serialization for parameterized circuits.
 *
 * Schema (see docs/circuit_schema.md):
 * {
 *   "format": "qsp-circuit",
 *   "version": 1,
 *   "n_qubits": <int>,
 *   "n_free": <int>,
 *   "gates": [
 *     { "kind": "<X|Ry|Rz|R|CNOT|CZ|A|MCRy|MCRz|MCX>",
 *       "targets": [<1-based qubit>, ...],
 *       "controls": [ {"qubit": <int>, "closed": <bool>}, ... ],   // MC* only
 *       "params":  [ {"value": <double>}                           // fixed
 *                  | {"slot": <int>, "scale": <double>, "offset": <double>}
 *                  , ... ] }
 *   ]
 * }
 *
 * "controls" and "params" are omitted when empty.  Serialization is
 * deterministic: keys are emitted in a fixed order and doubles round-trip
 * exactly (nlohmann::json uses shortest-exact formatting).
 */

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qsp/circuit.hpp"

namespace qsp {

inline constexpr int kCircuitSchemaVersion = 1;

inline nlohmann::ordered_json param_to_json(const ParamExpr& p) {
    nlohmann::ordered_json j;
    if (p.is_fixed()) {
        j["value"] = p.offset;
    } else {
        j["slot"] = p.slot;
        j["scale"] = p.scale;
        j["offset"] = p.offset;
    }
    return j;
}

inline ParamExpr param_from_json(const nlohmann::json& j) {
    if (j.contains("value")) return ParamExpr::fixed(j.at("value").get<double>());
    ParamExpr p;
    p.slot = j.at("slot").get<int>();
    if (p.slot < 0) throw std::invalid_argument("param_from_json: negative slot");
    p.scale = j.value("scale", 1.0);
    p.offset = j.value("offset", 0.0);
    return p;
}

inline nlohmann::ordered_json gate_to_json(const GateInstance& g) {
    nlohmann::ordered_json j;
    j["kind"] = gate_kind_name(g.kind);
    j["targets"] = g.targets;
    if (!g.controls.empty()) {
        auto cs = nlohmann::ordered_json::array();
        for (const Control& c : g.controls)
            cs.push_back({{"qubit", c.qubit}, {"closed", c.closed}});
        j["controls"] = std::move(cs);
    }
    if (!g.params.empty()) {
        auto ps = nlohmann::ordered_json::array();
        for (const ParamExpr& p : g.params) ps.push_back(param_to_json(p));
        j["params"] = std::move(ps);
    }
    return j;
}

inline GateInstance gate_from_json(const nlohmann::json& j) {
    GateInstance g;
    const std::string kind = j.at("kind").get<std::string>();
    auto k = gate_kind_from_name(kind);
    if (!k) throw std::invalid_argument("gate_from_json: unknown gate kind '" + kind + "'");
    g.kind = *k;
    g.targets = j.at("targets").get<std::vector<int>>();
    if (j.contains("controls"))
        for (const auto& c : j.at("controls"))
            g.controls.push_back({c.at("qubit").get<int>(), c.at("closed").get<bool>()});
    if (j.contains("params"))
        for (const auto& p : j.at("params")) g.params.push_back(param_from_json(p));
    return g;
}

inline nlohmann::ordered_json circuit_to_json(const Circuit& c) {
    nlohmann::ordered_json j;
    j["format"] = "qsp-circuit";
    j["version"] = kCircuitSchemaVersion;
    j["n_qubits"] = c.n_qubits;
    j["n_free"] = c.n_free;
    auto gs = nlohmann::ordered_json::array();
    for (const GateInstance& g : c.gates) gs.push_back(gate_to_json(g));
    j["gates"] = std::move(gs);
    return j;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
    if (j.value("format", std::string{}) != "qsp-circuit")
        throw std::invalid_argument("circuit_from_json: not a qsp-circuit document");
    if (j.at("version").get<int>() != kCircuitSchemaVersion)
        throw std::invalid_argument("circuit_from_json: unsupported schema version");
    Circuit c(j.at("n_qubits").get<int>(), j.at("n_free").get<int>());
    for (const auto& g : j.at("gates")) c.add(gate_from_json(g));
    c.validate();
    return c;
}

/// Serialize to a string with 2-space indentation and trailing newline.
inline std::string circuit_to_string(const Circuit& c) {
    return circuit_to_json(c).dump(2) + "\n";
}

inline Circuit circuit_from_string(const std::string& s) {
    return circuit_from_json(nlohmann::json::parse(s));
}

inline void save_circuit(const Circuit& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_circuit: cannot open " + path);
    out << circuit_to_string(c);
}

inline Circuit load_circuit(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_circuit: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return circuit_from_string(buf.str());
}

}  // namespace qsp
