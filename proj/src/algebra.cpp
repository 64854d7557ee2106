#include "slicealg/algebra.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace slicealg {

std::string format_double(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Rational parse_rational(const std::string& text, bool allow_decimal) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty number", 0);
    auto dot = s.find('.');
    auto exp = s.find_first_of("eE");
    if (dot != std::string::npos || exp != std::string::npos) {
        if (!allow_decimal) throw ParseError("decimal literal not allowed in exact mode", 0);
        // Exact value of the decimal literal: mantissa * 10^exponent.
        std::string mant = s.substr(0, exp);
        long e10 = 0;
        if (exp != std::string::npos) {
            try {
                e10 = std::stol(s.substr(exp + 1));
            } catch (...) {
                throw ParseError("bad exponent in '" + s + "'", exp);
            }
        }
        auto d = mant.find('.');
        if (d != std::string::npos) {
            e10 -= long(mant.size() - d - 1);
            mant.erase(d, 1);
        }
        mpz_class num;
        if (mant.empty() || mant == "+" || mant == "-" || num.set_str(mant[0] == '+' ? mant.substr(1) : mant, 10) != 0)
            throw ParseError("bad number '" + s + "'", 0);
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, std::abs(e10));
        Rational q = e10 >= 0 ? Rational(num * p) : Rational(num, p);
        q.canonicalize();
        return q;
    }
    Rational q;
    std::string t = s[0] == '+' ? s.substr(1) : s;
    if (t.empty() || q.set_str(t, 10) != 0) throw ParseError("bad rational '" + s + "'", 0);
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 0);
    q.canonicalize();
    return q;
}

AlgebraSpec::AlgebraSpec(std::string name, std::vector<std::string> basis_names, std::vector<SparseRow> products,
                         std::vector<SparseRow> involution)
    : name_(std::move(name)),
      dim_(int(basis_names.size())),
      basis_names_(std::move(basis_names)),
      products_(std::move(products)),
      involution_(std::move(involution)) {
    const int d = dim_;
    if (d == 0) throw DomainError("algebra must have positive dimension");
    if (basis_names_[0] != "1") throw DomainError("first basis element must be named \"1\"");
    if (int(products_.size()) != d * d || int(involution_.size()) != d) throw DomainError("structure tensor has the wrong shape");
    for (auto& row : products_) {
        row.erase(std::remove_if(row.begin(), row.end(), [](const Term& t) { return sgn(t.coeff) == 0; }), row.end());
        for (const Term& t : row)
            if (t.index < 0 || t.index >= d) throw DomainError("structure constant index out of range");
    }
    // Assumption B: e_0 is a two-sided identity.
    for (int j = 0; j < d; ++j) {
        for (const SparseRow* row : {&product(0, j), &product(j, 0)}) {
            if (row->size() != 1 || (*row)[0].index != j || (*row)[0].coeff != 1)
                throw DomainError(name_ + ": e_0 is not a two-sided identity (basis " + basis_names_[j] + ")");
        }
    }
}

int AlgebraSpec::basis_index(const std::string& name) const {
    for (int i = 0; i < dim_; ++i)
        if (basis_names_[i] == name) return i;
    return -1;
}

Rational AlgebraSpec::structure(int i, int j, int k) const {
    for (const Term& t : product(i, j))
        if (t.index == k) return t.coeff;
    return 0;
}

Rational AlgebraSpec::involution(int i, int k) const {
    for (const Term& t : involution_[i])
        if (t.index == k) return t.coeff;
    return 0;
}

namespace {

using Sparse = std::vector<std::pair<int, Rational>>;

void add_scaled(std::map<int, Rational>& acc, const SparseRow& row, const Rational& s) {
    for (const Term& t : row) acc[t.index] += s * t.coeff;
}

Sparse finish(std::map<int, Rational>& acc) {
    Sparse out;
    for (auto& [k, v] : acc)
        if (sgn(v) != 0) out.emplace_back(k, v);
    return out;
}

bool is_zero(const Sparse& s) { return s.empty(); }

Sparse sum(const Sparse& a, const Sparse& b) {
    std::map<int, Rational> acc;
    for (auto& [k, v] : a) acc[k] += v;
    for (auto& [k, v] : b) acc[k] += v;
    return finish(acc);
}

}  // namespace

std::vector<std::pair<int, Rational>> AlgebraSpec::basis_associator(int i, int j, int k) const {
    std::map<int, Rational> acc;
    for (const Term& t : product(i, j)) add_scaled(acc, product(t.index, k), t.coeff);
    for (const Term& t : product(j, k)) add_scaled(acc, product(i, t.index), -t.coeff);
    return finish(acc);
}

void AlgebraSpec::compute_axioms() const {
    const int d = dim_;
    AxiomReport& rep = axioms_;
    auto name = [&](int i) { return basis_names_[i]; };

    // Associators of all basis triples, indexed (i*d + j)*d + k.
    std::vector<Sparse> assoc(std::size_t(d) * d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                auto a = basis_associator(i, j, k);
                if (!a.empty()) rep.associative = false;
                assoc[(std::size_t(i) * d + j) * d + k] = std::move(a);
            }
    auto A = [&](int i, int j, int k) -> const Sparse& { return assoc[(std::size_t(i) * d + j) * d + k]; };

    // Alternativity, linearized: (x,y,z)+(y,x,z) = 0 and (x,y,z)+(x,z,y) = 0.
    if (!rep.associative) {
        for (int i = 0; i < d && rep.alternative; ++i)
            for (int j = 0; j < d && rep.alternative; ++j)
                for (int k = 0; k < d && rep.alternative; ++k) {
                    if (!is_zero(sum(A(i, j, k), A(j, i, k)))) {
                        rep.alternative = false;
                        rep.witnesses.push_back({"alternative",
                                                 "(" + name(i) + "," + name(j) + "," + name(k) + ")+(" + name(j) + "," +
                                                     name(i) + "," + name(k) + ") != 0",
                                                 {i, j, k}});
                    } else if (!is_zero(sum(A(i, j, k), A(i, k, j)))) {
                        rep.alternative = false;
                        rep.witnesses.push_back({"alternative",
                                                 "(" + name(i) + "," + name(j) + "," + name(k) + ")+(" + name(i) + "," +
                                                     name(k) + "," + name(j) + ") != 0",
                                                 {i, j, k}});
                    }
                }
    }

    // Involution: sigma^2 = id, sigma fixes e_0, (e_i e_j)^c = e_j^c e_i^c.
    auto apply_sigma = [&](const Sparse& v) {
        std::map<int, Rational> acc;
        for (auto& [k, c] : v) add_scaled(acc, involution_[k], c);
        return finish(acc);
    };
    auto basis_vec = [](int i) { return Sparse{{i, Rational(1)}}; };
    {
        auto s0 = apply_sigma(basis_vec(0));
        if (s0 != basis_vec(0)) {
            rep.star = false;
            rep.witnesses.push_back({"involution", "1^c != 1", {0}});
        }
    }
    for (int i = 0; i < d && rep.star; ++i) {
        if (apply_sigma(apply_sigma(basis_vec(i))) != basis_vec(i)) {
            rep.star = false;
            rep.witnesses.push_back({"involution", "(" + name(i) + "^c)^c != " + name(i), {i}});
        }
    }
    auto mul_sparse = [&](const Sparse& a, const Sparse& b) {
        std::map<int, Rational> acc;
        for (auto& [i, x] : a)
            for (auto& [j, y] : b) add_scaled(acc, product(i, j), x * y);
        return finish(acc);
    };
    for (int i = 0; i < d && rep.star; ++i)
        for (int j = 0; j < d && rep.star; ++j) {
            Sparse pij;
            for (const Term& t : product(i, j)) pij.emplace_back(t.index, t.coeff);
            auto lhs = apply_sigma(pij);
            auto rhs = mul_sparse(apply_sigma(basis_vec(j)), apply_sigma(basis_vec(i)));
            if (lhs != rhs) {
                rep.star = false;
                rep.witnesses.push_back(
                    {"involution", "(" + name(i) + name(j) + ")^c != " + name(j) + "^c " + name(i) + "^c", {i, j}});
            }
        }

    // Compatibility: t(e_i) lies in the nucleus for every i.
    if (!rep.associative) {
        for (int i = 0; i < d && rep.compatible; ++i) {
            Sparse t = sum(basis_vec(i), apply_sigma(basis_vec(i)));
            for (int p = 0; p < d && rep.compatible; ++p)
                for (int q = 0; q < d && rep.compatible; ++q) {
                    std::map<int, Rational> acc;
                    for (auto& [a, c] : t)
                        for (auto& [k, v] : A(a, p, q)) acc[k] += c * v;
                    if (!finish(acc).empty()) {
                        rep.compatible = false;
                        std::string tstr;
                        for (auto& [a, c] : t) {
                            std::string cs = c.get_str();
                            tstr += (tstr.empty() ? "" : "+") + (a == 0 ? cs : cs + "*" + name(a));
                        }
                        rep.witnesses.push_back({"compatible",
                                                 "t(" + name(i) + ") = " + tstr + " not in nucleus: (t(" + name(i) + ")," +
                                                     name(p) + "," + name(q) + ") != 0",
                                                 {i, p, q}});
                    }
                }
        }
    }
}

const AxiomReport& AlgebraSpec::axioms() const {
    std::call_once(axioms_once_, [this] { compute_axioms(); });
    return axioms_;
}

void AlgebraSpec::compute_bases() const {
    const int d = dim_;
    // Nucleus: r with (r, e_i, e_j) = 0 for all i, j. Row k of the (i,j)
    // block is the map r -> component k of (r, e_i, e_j).
    EchelonBasis<Rational> nuc(d), cen(d);
    if (!is_associative()) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                std::vector<std::vector<Rational>> rows(d, std::vector<Rational>(d, Rational(0)));
                bool any = false;
                for (int a = 0; a < d; ++a)
                    for (auto& [k, v] : basis_associator(a, i, j)) {
                        rows[k][a] = v;
                        any = true;
                    }
                if (!any) continue;
                for (auto& r : rows) {
                    bool nz = std::any_of(r.begin(), r.end(), [](const Rational& q) { return sgn(q) != 0; });
                    if (nz) {
                        nuc.add(r);
                        cen.add(r);
                    }
                }
            }
    }
    // Center additionally needs [r, e_i] = 0.
    for (int i = 0; i < d; ++i) {
        std::vector<std::vector<Rational>> rows(d, std::vector<Rational>(d, Rational(0)));
        for (int a = 0; a < d; ++a) {
            for (const Term& t : product(a, i)) rows[t.index][a] += t.coeff;
            for (const Term& t : product(i, a)) rows[t.index][a] -= t.coeff;
        }
        for (auto& r : rows)
            if (std::any_of(r.begin(), r.end(), [](const Rational& q) { return sgn(q) != 0; })) cen.add(r);
    }
    nucleus_ = nuc.null_space();
    center_ = cen.null_space();
}

const std::vector<std::vector<Rational>>& AlgebraSpec::nucleus_basis() const {
    std::call_once(bases_once_, [this] { compute_bases(); });
    return nucleus_;
}

const std::vector<std::vector<Rational>>& AlgebraSpec::center_basis() const {
    std::call_once(bases_once_, [this] { compute_bases(); });
    return center_;
}

const std::vector<int>& AlgebraSpec::unit_basis() const {
    std::call_once(units_once_, [this] {
        for (int i = 1; i < dim_; ++i) {
            // t(e_i) = 0 and n(e_i) = e_i e_i^c = 1.
            Sparse ei{{i, Rational(1)}};
            std::map<int, Rational> acc;
            for (const Term& t : involution_[i]) acc[t.index] += t.coeff;
            acc[i] += 1;
            if (!finish(acc).empty()) continue;
            std::map<int, Rational> nacc;
            for (const Term& t : involution_[i]) add_scaled(nacc, product(i, t.index), t.coeff);
            auto n = finish(nacc);
            if (n.size() == 1 && n[0].first == 0 && n[0].second == 1) units_.push_back(i);
        }
    });
    return units_;
}

}  // namespace slicealg
