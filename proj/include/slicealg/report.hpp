#pragma once

#include "json.hpp"
#include "slicealg/format.hpp"
#include "slicealg/zeroset.hpp"

namespace slicealg {

using Json = nlohmann::json;  // std::map objects: keys come out sorted

std::string scalar_string(const Rational& q);
std::string scalar_string(double x);
// beta from beta^2: "3/2", "sqrt(2)", or a float.
std::string beta_string(const Rational& beta_sq);
std::string beta_string(double beta_sq);

template <class S>
Json class_json(const SphereZeroClass<S>& c) {
    Json j;
    j["kind"] = kind_name(c.kind);
    j["witnesses"] = Json::array();
    for (const auto& w : c.witnesses) j["witnesses"].push_back(format_element(w));
    if (!c.approx_witnesses.empty()) {
        j["approx_witnesses"] = Json::array();
        for (const auto& w : c.approx_witnesses) j["approx_witnesses"].push_back(format_element(w));
    }
    j["affine_dim"] = c.kind == ZeroKind::AffineSet ? Json(c.dimension) : Json(nullptr);
    if (c.kind == ZeroKind::QuadricSet || c.kind == ZeroKind::AffineSet) j["dimension"] = c.dimension;
    if (c.affine) {
        Json dirs = Json::array();
        for (const auto& d : c.affine->directions) dirs.push_back(format_element(d));
        j["affine"] = {{"base", format_element(c.affine->base)}, {"directions", dirs}};
    }
    if (c.quadric && c.quadric->center) j["quadric_center"] = format_element(*c.quadric->center);
    j["theorem_case"] = c.theorem_case;
    if (c.linear_rank >= 0) j["linear_rank"] = c.linear_rank;
    if (!c.notes.empty()) j["notes"] = c.notes;
    if (!c.conjugate_witnesses.empty()) {
        j["conjugate_witnesses"] = Json::array();
        for (const auto& w : c.conjugate_witnesses) j["conjugate_witnesses"].push_back(format_element(w));
    }
    if (c.witnesses_commute) j["witnesses_commute"] = *c.witnesses_commute;
    if (c.numeric) j["numeric"] = true;
    return j;
}

Json report_json(const ZeroReport& r);

template <class S>
Json prediction_json(const ProductPrediction<S>& p) {
    Json j;
    j["predicted"] = p.predicted ? class_json(*p.predicted) : Json(nullptr);
    j["formula_witness"] = p.formula_witness ? Json(format_element(*p.formula_witness)) : Json(nullptr);
    j["inclusion_only"] = p.inclusion_only;
    j["theorem"] = p.theorem.empty() ? Json(nullptr) : Json(p.theorem);
    j["reason"] = p.reason.empty() ? Json(nullptr) : Json(p.reason);
    j["f_zeros"] = class_json(p.f_zeros);
    j["g_zeros"] = class_json(p.g_zeros);
    j["actual"] = class_json(p.actual);
    j["agrees"] = p.agrees;
    return j;
}

}  // namespace slicealg
