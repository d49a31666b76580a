// json_io.hpp
// JSON encodings for every exchanged type. Ordered maps keep key order
// stable so identical inputs serialize byte-identically; doubles use the
// shortest representation that round-trips, so no precision is lost.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qip/bell.hpp"
#include "qip/entanglement.hpp"
#include "qip/linalg.hpp"
#include "qip/states.hpp"
#include "qip/teleport.hpp"

namespace qip {

using Json = nlohmann::ordered_json;

inline Json complex_list_to_json(const std::vector<Complex>& vals) {
    Json arr = Json::array();
    for (const Complex& c : vals) arr.push_back(Json::array({c.real(), c.imag()}));
    return arr;
}

inline std::size_t size_from_json(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<double>() < 0.0)
        throw ValidationError(std::string(what) + " must be a nonnegative integer");
    return j.get<std::size_t>();
}

inline std::vector<Complex> complex_list_from_json(const Json& arr, const char* what) {
    if (!arr.is_array())
        throw ValidationError(std::string(what) + " must be an array of [re, im] pairs");
    std::vector<Complex> out;
    out.reserve(arr.size());
    for (const Json& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ValidationError(std::string(what) + " entries must be [re, im] number pairs");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

// ---- ComplexMatrix: {"rows": r, "cols": c, "data": [[re, im], ...]} ----

inline Json to_json(const ComplexMatrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["data"] = complex_list_to_json(m.entries());
    return j;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw ValidationError("matrix JSON needs \"rows\", \"cols\" and \"data\"");
    return ComplexMatrix(size_from_json(j["rows"], "matrix \"rows\""),
                         size_from_json(j["cols"], "matrix \"cols\""),
                         complex_list_from_json(j["data"], "matrix \"data\""));
}

// ---- PureState: {"dim": d, "amplitudes": [[re, im], ...]} ----

inline Json to_json(const PureState& psi) {
    Json j;
    j["dim"] = psi.dim();
    j["amplitudes"] = complex_list_to_json(psi.amplitudes());
    return j;
}

inline PureState pure_state_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("amplitudes"))
        throw ValidationError("pure-state JSON needs \"dim\" and \"amplitudes\"");
    return PureState(size_from_json(j["dim"], "pure-state \"dim\""),
                     complex_list_from_json(j["amplitudes"], "\"amplitudes\""));
}

// ---- DensityOperator: matrix encoding + optional "dims": [dA, dB] ----

inline Json to_json(const DensityOperator& rho) {
    Json j = to_json(rho.matrix());
    if (rho.dims()) j["dims"] = Json::array({rho.dims()->a, rho.dims()->b});
    return j;
}

inline DensityOperator density_from_json(const Json& j) {
    ComplexMatrix m = matrix_from_json(j);
    std::optional<BipartiteDims> dims;
    if (j.contains("dims")) {
        const Json& d = j["dims"];
        if (!d.is_array() || d.size() != 2)
            throw ValidationError("\"dims\" must be a pair of positive integers");
        dims = BipartiteDims{size_from_json(d[0], "\"dims\""),
                             size_from_json(d[1], "\"dims\"")};
    }
    return DensityOperator(std::move(m), dims);
}

// ---- BlochVector: {"n": [x, y, z]} ----

inline Json to_json(const BlochVector& v) {
    Json j;
    j["n"] = Json::array({v.n[0], v.n[1], v.n[2]});
    return j;
}

inline std::array<double, 3> triple_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
        !j[2].is_number())
        throw ValidationError(std::string(what) + " must be a real 3-vector");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline BlochVector bloch_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n"))
        throw ValidationError("Bloch-vector JSON needs \"n\"");
    return BlochVector{triple_from_json(j["n"], "\"n\"")};
}

// ---- SchmidtDecomposition ----

inline Json to_json(const SchmidtDecomposition& sd) {
    Json j;
    j["coefficients"] = sd.coefficients;
    j["schmidt_number"] = sd.schmidt_number;
    j["basis_a"] = to_json(sd.basis_a);
    j["basis_b"] = to_json(sd.basis_b);
    return j;
}

// ---- SeparabilityVerdict ----

inline Json to_json(const SeparabilityVerdict& v) {
    Json j;
    j["verdict"] = to_string(v.verdict);
    j["min_pt_eigenvalue"] = v.min_pt_eigenvalue;
    j["dims"] = Json::array({v.dims.a, v.dims.b});
    return j;
}

// ---- ChshSetting: {"a1": [x,y,z], "a2": ..., "b1": ..., "b2": ...} ----

inline Json to_json(const ChshSetting& s) {
    Json j;
    j["a1"] = Json::array({s.a1.a[0], s.a1.a[1], s.a1.a[2]});
    j["a2"] = Json::array({s.a2.a[0], s.a2.a[1], s.a2.a[2]});
    j["b1"] = Json::array({s.b1.a[0], s.b1.a[1], s.b1.a[2]});
    j["b2"] = Json::array({s.b2.a[0], s.b2.a[1], s.b2.a[2]});
    return j;
}

inline ChshSetting chsh_setting_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("a1") || !j.contains("a2") || !j.contains("b1") ||
        !j.contains("b2"))
        throw ValidationError("CHSH setting JSON needs \"a1\", \"a2\", \"b1\", \"b2\"");
    return ChshSetting{MeasurementAxis{triple_from_json(j["a1"], "\"a1\"")},
                       MeasurementAxis{triple_from_json(j["a2"], "\"a2\"")},
                       MeasurementAxis{triple_from_json(j["b1"], "\"b1\"")},
                       MeasurementAxis{triple_from_json(j["b2"], "\"b2\"")}};
}

// ---- ChshReport ----

inline Json to_json(const ChshReport& r) {
    Json j;
    j["c11"] = r.c11;
    j["c12"] = r.c12;
    j["c21"] = r.c21;
    j["c22"] = r.c22;
    j["s_value"] = r.s_value;
    j["violates_classical"] = r.violates_classical;
    return j;
}

// ---- TeleportTranscript ----

inline Json to_json(const TeleportTranscript& t) {
    Json j;
    j["input"] = to_json(t.input_state);
    j["outcome"] = to_string(t.measured_bell);
    j["bits"] = t.classical_bits;
    j["correction"] = t.correction;
    j["fidelity"] = t.fidelity;
    j["bob_pre_message"] = to_json(t.bob_pre_message.matrix());
    return j;
}

} // namespace qip
