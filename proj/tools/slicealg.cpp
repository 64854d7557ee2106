// slicealg: command-line front end for the slice function library.
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "slicealg/builtin.hpp"
#include "slicealg/division.hpp"
#include "slicealg/format.hpp"
#include "slicealg/report.hpp"
#include "slicealg/zeroset.hpp"

using namespace slicealg;

namespace {

struct Options {
    std::string verb;
    std::string algebra_id;
    std::vector<std::string> args;
    std::string at;
    std::string sphere;
    bool json = false;
    bool use_float = false;
    std::optional<double> tol;
    std::optional<unsigned long long> seed;
};

// Everything a verb needs, parsed up front so that a bad argument aborts
// before any computation.
struct Parsed {
    AlgebraPtr alg;
    std::vector<PolyStem> polys;
    std::optional<QElement> at;
    std::optional<SphereRef<Rational>> sphere;
};

void print(const Options& o, const Json& j, const std::string& text) {
    if (o.json) std::cout << j.dump(2) << "\n";
    else std::cout << text << "\n";
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

SphereRef<Rational> parse_sphere(const std::string& s, bool allow_decimal) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError("--sphere expects alpha,beta", 0);
    const Rational alpha = parse_rational(s.substr(0, comma), allow_decimal);
    const Rational beta = parse_rational(s.substr(comma + 1), allow_decimal);
    if (sgn(beta) < 0) throw DomainError("--sphere: beta must be nonnegative");
    return SphereRef<Rational>::from_alpha_beta(alpha, beta);
}

Parsed parse_inputs(const Options& o, int poly_count, bool need_at) {
    Parsed p;
    if (o.algebra_id.empty()) throw ParseError("--algebra is required for '" + o.verb + "'", 0);
    p.alg = algebra_from_id(o.algebra_id);
    if (int(o.args.size()) != poly_count)
        throw ParseError("'" + o.verb + "' expects " + std::to_string(poly_count) + " polynomial argument(s), got " +
                             std::to_string(o.args.size()),
                         0);
    for (const auto& a : o.args) p.polys.push_back(parse_poly(a, p.alg, o.use_float));
    if (!o.at.empty()) p.at = parse_element(o.at, p.alg, o.use_float);
    if (need_at && !p.at) throw ParseError("'" + o.verb + "' needs --at <element>", 0);
    if (!o.sphere.empty()) p.sphere = parse_sphere(o.sphere, o.use_float);
    return p;
}

template <class S>
SphereRef<S> to_scalar(const SphereRef<Rational>& s) {
    return {ScalarTraits<S>::from(s.alpha), ScalarTraits<S>::from(s.beta_sq)};
}

// Runs fn with the exact or float instantiation.
template <class Fn>
void with_scalar(const Options& o, Fn&& fn) {
    if (o.use_float) fn(double{});
    else fn(Rational{});
}

int cmd_algebra(const Options& o) {
    if (o.algebra_id.empty()) {
        Json j = builtin_ids(64);
        std::string text;
        for (const auto& id : builtin_ids(64)) text += id + "\n";
        if (!text.empty()) text.pop_back();
        print(o, j, text);
        return 0;
    }
    auto a = algebra_from_id(o.algebra_id);
    std::vector<std::string> units;
    for (int i : a->unit_basis()) units.push_back(a->basis_names()[i]);
    Json j{{"name", a->name()},
           {"dim", a->dim()},
           {"basis", a->basis_names()},
           {"associative", a->is_associative()},
           {"alternative", a->is_alternative()},
           {"compatible", a->is_compatible()},
           {"nucleus_dim", a->nucleus_basis().size()},
           {"center_dim", a->center_basis().size()},
           {"unit_basis", units}};
    std::string text = a->name() + " (dim " + std::to_string(a->dim()) + ")\nbasis:";
    for (const auto& n : a->basis_names()) text += " " + n;
    text += "\nassociative=" + bool_str(a->is_associative()) + " alternative=" + bool_str(a->is_alternative()) +
            " compatible=" + bool_str(a->is_compatible());
    text += "\nnucleus dim " + std::to_string(a->nucleus_basis().size()) + ", center dim " +
            std::to_string(a->center_basis().size());
    print(o, j, text);
    return 0;
}

int cmd_verify(const Options& o) {
    if (o.algebra_id.empty()) throw ParseError("--algebra is required for 'verify'", 0);
    auto a = algebra_from_id(o.algebra_id);
    const auto& r = verify_axioms(*a);
    Json w = Json::array();
    std::string table;
    for (const auto& x : r.witnesses) {
        w.push_back({{"axiom", x.axiom}, {"detail", x.detail}});
        table += "\n  " + x.axiom + ": " + x.detail;
    }
    Json j{{"algebra", a->name()},      {"alternative", r.alternative}, {"involution", r.star},
           {"compatible", r.compatible}, {"associative", r.associative}, {"witnesses", w}};
    std::string text = a->name() + "\nalternative=" + bool_str(r.alternative) + "\ninvolution=" + bool_str(r.star) +
                       "\nassociative=" + bool_str(r.associative) + "\ncompatible=" + bool_str(r.compatible);
    if (!table.empty()) text += "\nwitnesses:" + table;
    print(o, j, text);
    return 0;
}

// eval, mul, conj, normal: a polynomial, optionally evaluated at --at.
int cmd_poly(const Options& o) {
    const bool binary = o.verb == "mul";
    const bool need_at = o.verb == "eval";
    const Parsed p = parse_inputs(o, binary ? 2 : 1, need_at);
    SliceFunction<Rational> f(p.polys[0]);
    if (o.verb == "mul") f = slice_product(f, SliceFunction<Rational>(p.polys[1]));
    else if (o.verb == "conj") f = slice_conjugate(f);
    else if (o.verb == "normal") f = normal(f);
    Json j;
    std::string text;
    if (o.verb != "eval") {
        j["poly"] = format_poly(f.poly());
        text = format_poly(f.poly());
    }
    if (p.at) {
        std::string value;
        if (o.use_float) value = format_element(evaluate(SliceFunction<double>(f.poly()), to_float(*p.at)));
        else value = format_element(evaluate(f, *p.at));
        j["value"] = value;
        text = text.empty() ? value : text + "\nat " + format_element(*p.at) + ": " + value;
    }
    print(o, j, text);
    return 0;
}

int cmd_division(const Options& o) {
    const bool quot = o.verb == "quot";
    const Parsed p = parse_inputs(o, quot ? 2 : 1, true);
    std::string value;
    with_scalar(o, [&](auto tag) {
        using S = decltype(tag);
        SliceFunction<S> f(p.polys[0]);
        const Element<S> x = convert<S>(*p.at);
        if (!quot) {
            value = format_element(reciprocal_eval(f, x));
            return;
        }
        SliceFunction<S> g(p.polys[1]);
        // The T_f route needs associativity; otherwise N(f)^{-1} (f^c . g).
        if (p.alg->is_associative()) value = format_element(quotient_eval(f, g, x));
        else value = format_element(evaluate(make_quotient(f, std::optional<SliceFunction<S>>(g)), x));
    });
    print(o, Json{{"value", value}}, value);
    return 0;
}

std::string class_text(const Json& c) {
    std::string t = c["kind"].get<std::string>();
    if (!c["witnesses"].empty()) {
        t += " {";
        bool first = true;
        for (const auto& w : c["witnesses"]) {
            t += (first ? "" : ", ") + w.get<std::string>();
            first = false;
        }
        t += "}";
    }
    if (c.contains("dimension")) t += " dim " + std::to_string(c["dimension"].get<int>());
    if (c.contains("theorem_case") && !c["theorem_case"].get<std::string>().empty())
        t += " [case " + c["theorem_case"].get<std::string>() + "]";
    return t;
}

int cmd_zeros(const Options& o) {
    const Parsed p = parse_inputs(o, 1, false);
    const SliceFunction<Rational> f(p.polys[0]);
    if (p.sphere) {
        Json c;
        with_scalar(o, [&](auto tag) {
            using S = decltype(tag);
            c = class_json(classify_sphere(SliceFunction<S>(f.poly()), to_scalar<S>(*p.sphere)));
        });
        c["alpha"] = scalar_string(p.sphere->alpha);
        c["beta"] = beta_string(p.sphere->beta_sq);
        Json j{{"function", format_poly(f.poly())}, {"spheres", Json::array({c})}, {"caveats", Json::array()}};
        print(o, j, "sphere (" + c["alpha"].get<std::string>() + ", " + c["beta"].get<std::string>() + "): " + class_text(c));
        return 0;
    }
    // Non-tame f: the N(f) route does not apply, use the determinant.
    const bool tame = is_tame(f);
    const ZeroReport rep = tame ? full_zero_set(f, o.use_float) : zero_set_via_determinant(f, o.use_float);
    const Json j = report_json(rep);
    std::string text = "f = " + rep.function;
    if (tame) text += "\nN(f) = " + format_qpoly(rep.normal);
    else text += "\nnot tame; det = " + format_qpoly(rep.determinant);
    for (const auto& s : j["spheres"])
        text += "\nsphere (" + s["alpha"].get<std::string>() + ", " + s["beta"].get<std::string>() + "): " + class_text(s);
    for (const auto& c : rep.caveats) text += "\ncaveat: " + c;
    print(o, j, text);
    return 0;
}

int cmd_predict(const Options& o) {
    const Parsed p = parse_inputs(o, 2, false);
    const SliceFunction<Rational> f(p.polys[0]), g(p.polys[1]);
    std::vector<SphereRef<Rational>> spheres;
    if (p.sphere) {
        spheres.push_back(*p.sphere);
    } else {
        // Spheres of V(N(f)) and V(N(g)) with exact data.
        for (const auto& h : {f, g}) {
            for (const auto& c : candidate_spheres(h)) {
                if (!c.exact) continue;
                bool seen = false;
                for (const auto& s : spheres) seen = seen || (s.alpha == c.q.alpha && s.beta_sq == c.q.beta_sq);
                if (!seen) spheres.push_back(c.q);
            }
        }
    }
    Json out = Json::array();
    std::string text = "f.g = " + format_poly(slice_product(f, g).poly());
    for (const auto& s : spheres) {
        Json e;
        with_scalar(o, [&](auto tag) {
            using S = decltype(tag);
            e = prediction_json(product_zero_predict(SliceFunction<S>(f.poly()), SliceFunction<S>(g.poly()), to_scalar<S>(s)));
        });
        e["alpha"] = scalar_string(s.alpha);
        e["beta"] = beta_string(s.beta_sq);
        text += "\nsphere (" + e["alpha"].get<std::string>() + ", " + e["beta"].get<std::string>() + ")";
        text += "\n  f: " + class_text(e["f_zeros"]) + "\n  g: " + class_text(e["g_zeros"]);
        if (e["predicted"].is_null()) text += "\n  predicted: unclassified (" + e["reason"].get<std::string>() + ")";
        else
            text += "\n  predicted: " + class_text(e["predicted"]) + " by " + e["theorem"].get<std::string>() +
                    (e["inclusion_only"].get<bool>() ? " (inclusion only)" : "");
        if (!e["formula_witness"].is_null()) text += "\n  candidate: " + e["formula_witness"].get<std::string>();
        text += "\n  actual: " + class_text(e["actual"]) + "\n  agrees: " + bool_str(e["agrees"].get<bool>());
        out.push_back(std::move(e));
    }
    print(o, Json{{"product", format_poly(slice_product(f, g).poly())}, {"spheres", out}}, text);
    return 0;
}

int run(const Options& o) {
    if (o.tol) set_float_tolerance(*o.tol);
    if (o.seed) {
        set_sampling_seed(*o.seed);
    } else if (const char* env = std::getenv("SLICEALG_SEED")) {
        try {
            set_sampling_seed(std::stoull(env));
        } catch (const std::exception&) {
            throw ParseError("SLICEALG_SEED is not an unsigned integer", 0);
        }
    }
    if (o.verb == "algebra") return cmd_algebra(o);
    if (o.verb == "verify") return cmd_verify(o);
    if (o.verb == "eval" || o.verb == "mul" || o.verb == "conj" || o.verb == "normal") return cmd_poly(o);
    if (o.verb == "inv" || o.verb == "quot") return cmd_division(o);
    if (o.verb == "zeros") return cmd_zeros(o);
    if (o.verb == "predict-product-zeros") return cmd_predict(o);
    throw ParseError("unknown command '" + o.verb + "'", 0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Slice functions over real alternative *-algebras"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::pair<std::string, std::string>> verbs = {
        {"algebra", "describe an algebra, or list the builtins"},
        {"eval", "evaluate a polynomial at --at"},
        {"mul", "slice product of two polynomials"},
        {"conj", "slice conjugate f^c"},
        {"normal", "normal function N(f) = f.f^c"},
        {"inv", "reciprocal f^{-1} at --at"},
        {"quot", "quotient f^{-1}.g at --at"},
        {"zeros", "zero set of a polynomial, or of one --sphere"},
        {"predict-product-zeros", "predicted vs actual zeros of f.g per sphere"},
        {"verify", "run the axiom suite and print the witness table"},
    };
    for (const auto& [name, help] : verbs) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--algebra", o.algebra_id, "algebra id, e.g. H, SO_ALT, R3, cl-1-2");
        sub->add_option("--at", o.at, "evaluation point (element literal)");
        sub->add_option("--sphere", o.sphere, "sphere alpha,beta");
        sub->add_flag("--json", o.json, "JSON output");
        sub->add_flag("--float", o.use_float, "double precision instead of exact rationals");
        sub->add_option("--tol", o.tol, "float tolerance (default 1e-9)");
        sub->add_option("--seed", o.seed, "sampling seed (default 0, or SLICEALG_SEED)");
        sub->add_option("args", o.args, "polynomial expressions");
        sub->callback([&o, n = name] { o.verb = n; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        return run(o);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
