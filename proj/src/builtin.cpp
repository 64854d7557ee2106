#include "slicealg/builtin.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <mutex>
#include <regex>

namespace slicealg {

namespace {

struct Table {
    std::vector<std::string> names;
    std::vector<SparseRow> products;
    std::vector<SparseRow> involution;

    explicit Table(std::vector<std::string> n) : names(std::move(n)) {
        const std::size_t d = names.size();
        products.resize(d * d);
        involution.resize(d);
    }
    int dim() const { return int(names.size()); }
    void set(int i, int j, int k, int c) { products[std::size_t(i) * dim() + j].emplace_back(k, Rational(c)); }
    void conj(int i, int k, int c) { involution[i].emplace_back(k, Rational(c)); }
    AlgebraPtr build(const std::string& name) && {
        return std::make_shared<const AlgebraSpec>(name, std::move(names), std::move(products), std::move(involution));
    }
};

// Quaternion basis products: index 0..3 = 1,i,j,k; returns (sign, index).
std::pair<int, int> quat_mul(int a, int b) {
    static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    return {sgn[a][b], idx[a][b]};
}
int quat_conj_sign(int a) { return a == 0 ? 1 : -1; }

AlgebraPtr complex_numbers() {
    Table t({"1", "i"});
    t.set(0, 0, 0, 1);
    t.set(0, 1, 1, 1);
    t.set(1, 0, 1, 1);
    t.set(1, 1, 0, -1);
    t.conj(0, 0, 1);
    t.conj(1, 1, -1);
    return std::move(t).build("C");
}

AlgebraPtr quaternions() {
    Table t({"1", "i", "j", "k"});
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            auto [s, k] = quat_mul(a, b);
            t.set(a, b, k, s);
        }
        t.conj(a, a, quat_conj_sign(a));
    }
    return std::move(t).build("H");
}

// Doubling H + lH with
//   (a + lb)(c + ld) = ac + gamma d b^c + l(a^c d + c b),
// i.e. p(lq) = l(p^c q), (lp)q = l(qp), (lp)(lq) = gamma q p^c.
// gamma = -1 gives the octonions, gamma = +1 the split octonions.
// The involution is (p + lq)^c = p^c + lsign * lq.
AlgebraPtr quaternion_double(const std::string& name, int gamma, int lsign) {
    Table t({"1", "i", "j", "k", "l", "li", "lj", "lk"});
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            auto [s, k] = quat_mul(a, b);
            t.set(a, b, k, s);  // p q
            // p (l q) = l (p^c q)
            {
                auto [s2, k2] = quat_mul(a, b);
                t.set(a, 4 + b, 4 + k2, s2 * quat_conj_sign(a));
            }
            // (l p) q = l (q p)
            {
                auto [s2, k2] = quat_mul(b, a);
                t.set(4 + a, b, 4 + k2, s2);
            }
            // (l p)(l q) = gamma q p^c
            {
                auto [s2, k2] = quat_mul(b, a);
                t.set(4 + a, 4 + b, k2, gamma * s2 * quat_conj_sign(a));
            }
        }
    for (int a = 0; a < 4; ++a) {
        t.conj(a, a, quat_conj_sign(a));
        t.conj(4 + a, 4 + a, lsign);
    }
    return std::move(t).build(name);
}

// Dual numbers over R, C or H: A + eps A with eps central, eps^2 = 0 and
// (p + eps q)^c = p^c + eps q^c.
AlgebraPtr dual_of(const std::string& name, int base_dim) {
    static const char* qn[4] = {"", "i", "j", "k"};
    std::vector<std::string> names;
    for (int a = 0; a < base_dim; ++a) names.push_back(a == 0 ? "1" : qn[a]);
    for (int a = 0; a < base_dim; ++a) names.push_back(std::string("eps") + qn[a]);
    Table t(names);
    const int n = base_dim;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            auto [s, k] = quat_mul(a, b);
            t.set(a, b, k, s);
            t.set(a, n + b, n + k, s);
            t.set(n + a, b, n + k, s);
        }
        t.conj(a, a, quat_conj_sign(a));
        t.conj(n + a, n + a, quat_conj_sign(a));
    }
    return std::move(t).build(name);
}

std::string blade_name(unsigned mask) {
    if (mask == 0) return "1";
    std::string s = "e";
    for (int b = 0; b < 8; ++b)
        if (mask & (1u << b)) s += char('1' + b);
    return s;
}

// CL(p,q): e_1..e_p square to +1, e_{p+1}..e_{p+q} to -1.
AlgebraPtr clifford(int p, int q) {
    const int n = p + q;
    std::vector<unsigned> masks;
    for (unsigned m = 0; m < (1u << n); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        // Lexicographic order on the sorted index lists.
        for (int i = 0; i < 8; ++i) {
            bool ia = a & (1u << i), ib = b & (1u << i);
            if (ia != ib) return ia;
        }
        return false;
    });
    std::vector<int> pos(masks.size());
    std::vector<std::string> names;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        pos[masks[i]] = int(i);
        names.push_back(blade_name(masks[i]));
    }
    Table t(names);
    for (std::size_t i = 0; i < masks.size(); ++i) {
        for (std::size_t j = 0; j < masks.size(); ++j) {
            unsigned a = masks[i], b = masks[j];
            int swaps = 0;
            for (unsigned x = a >> 1; x; x >>= 1) swaps += std::popcount(x & b);
            int sign = (swaps & 1) ? -1 : 1;
            unsigned common = a & b;
            for (int bit = 0; bit < n; ++bit)
                if ((common & (1u << bit)) && bit >= p) sign = -sign;
            t.set(int(i), int(j), pos[a ^ b], sign);
        }
        const int s = std::popcount(masks[i]) % 4;
        t.conj(int(i), int(i), (s == 0 || s == 3) ? 1 : -1);
    }
    return std::move(t).build("CL(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

std::string upper(std::string s) {
    for (auto& c : s) c = char(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

AlgebraPtr make_builtin(const std::string& raw, const std::vector<int>& params) {
    static std::mutex mu;
    static std::map<std::string, AlgebraPtr> cache;

    std::string name = upper(raw);
    std::string key = name;
    if (name == "CL") {
        if (params.size() != 2) throw DomainError("CL needs two parameters p,q");
        if (params[0] < 0 || params[1] < 0) throw DomainError("CL parameters must be nonnegative");
        if (params[0] + params[1] > 6) throw DomainError("CL(p,q) is capped at p+q <= 6 (dimension 64)");
        key = "CL(" + std::to_string(params[0]) + "," + std::to_string(params[1]) + ")";
    } else if (!params.empty()) {
        throw DomainError(raw + " takes no parameters");
    }

    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    AlgebraPtr a;
    if (name == "C") a = complex_numbers();
    else if (name == "H") a = quaternions();
    else if (name == "O") a = quaternion_double("O", -1, -1);
    else if (name == "SO") a = quaternion_double("SO", 1, -1);
    else if (name == "SO_ALT") a = quaternion_double("SO_ALT", 1, 1);
    else if (name == "SC") a = clifford(1, 0);
    else if (name == "SH") a = clifford(1, 1);
    else if (name == "DR") a = dual_of("DR", 1);
    else if (name == "DC") a = dual_of("DC", 2);
    else if (name == "DH") a = dual_of("DH", 4);
    else if (name == "CL") a = clifford(params[0], params[1]);
    else throw DomainError("unknown algebra '" + raw + "'");
    cache.emplace(key, a);
    return a;
}

AlgebraPtr algebra_from_id(const std::string& id) {
    static const std::regex cl_dash(R"(^cl-(\d+)-(\d+)$)", std::regex::icase);
    static const std::regex cl_paren(R"(^cl\((\d+),(\d+)\)$)", std::regex::icase);
    static const std::regex rn(R"(^r(\d+)$)", std::regex::icase);
    std::smatch m;
    std::string s;
    for (char c : id)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (std::regex_match(s, m, cl_dash) || std::regex_match(s, m, cl_paren))
        return make_builtin("CL", {std::stoi(m[1]), std::stoi(m[2])});
    if (std::regex_match(s, m, rn)) return make_builtin("CL", {0, std::stoi(m[1])});
    return make_builtin(s);
}

std::vector<std::string> builtin_ids(int max_dim) {
    std::vector<std::string> ids;
    const std::pair<const char*, int> fixed[] = {{"C", 2},  {"H", 4},  {"O", 8},  {"SC", 2},  {"SH", 4},
                                                 {"DR", 2}, {"DC", 4}, {"DH", 8}, {"SO", 8}, {"SO_ALT", 8}};
    for (auto& [n, d] : fixed)
        if (d <= max_dim) ids.push_back(n);
    for (int n = 0; n <= 6; ++n)
        for (int p = 0; p <= n; ++p)
            if ((1 << n) <= max_dim) ids.push_back("cl-" + std::to_string(p) + "-" + std::to_string(n - p));
    return ids;
}

}  // namespace slicealg
