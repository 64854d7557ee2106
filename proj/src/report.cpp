#include "slicealg/report.hpp"

#include <cmath>

namespace slicealg {

std::string scalar_string(const Rational& q) { return q.get_str(); }
std::string scalar_string(double x) { return ScalarTraits<double>::str(x); }

std::string beta_string(const Rational& beta_sq) {
    if (auto b = ScalarTraits<Rational>::sqrt(beta_sq)) return b->get_str();
    return "sqrt(" + beta_sq.get_str() + ")";
}

std::string beta_string(double beta_sq) { return scalar_string(std::sqrt(std::max(0.0, beta_sq))); }

Json report_json(const ZeroReport& r) {
    Json j;
    j["function"] = r.function;
    j["normal_poly"] = Json::array();
    for (const auto& c : r.normal) j["normal_poly"].push_back(c.get_str());
    if (!r.determinant.empty()) {
        j["determinant_poly"] = Json::array();
        for (const auto& c : r.determinant) j["determinant_poly"].push_back(c.get_str());
    }
    j["spheres"] = Json::array();
    for (const auto& e : r.spheres) {
        Json s = e.exact_class ? class_json(*e.exact_class) : class_json(*e.float_class);
        if (e.sphere.exact) {
            s["alpha"] = scalar_string(e.sphere.q.alpha);
            s["beta"] = beta_string(e.sphere.q.beta_sq);
        } else {
            s["alpha"] = scalar_string(e.sphere.fl.alpha);
            s["beta"] = beta_string(e.sphere.fl.beta_sq);
        }
        s["exact"] = e.exact_class.has_value();
        s["multiplicity"] = e.sphere.multiplicity;
        j["spheres"].push_back(std::move(s));
    }
    j["caveats"] = r.caveats;
    return j;
}

}  // namespace slicealg
