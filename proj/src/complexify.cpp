#include "slicealg/complexify.hpp"

#include <map>
#include <mutex>

namespace slicealg {

namespace {

AlgebraPtr build_derived(const AlgebraSpec& a) {
    const int d = a.dim();
    std::vector<std::string> names = a.basis_names();
    for (int i = 0; i < d; ++i) names.push_back("I" + a.basis_names()[i]);
    std::vector<SparseRow> products(std::size_t(4) * d * d), involution(2 * d);
    auto at = [&](int i, int j) -> SparseRow& { return products[std::size_t(i) * 2 * d + j]; };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (const Term& t : a.product(i, j)) {
                at(i, j).emplace_back(t.index, t.coeff);
                at(d + i, j).emplace_back(d + t.index, t.coeff);
                at(i, d + j).emplace_back(d + t.index, t.coeff);
                at(d + i, d + j).emplace_back(t.index, -t.coeff);
            }
    for (int i = 0; i < d; ++i)
        for (const Term& t : a.involution_row(i)) {
            involution[i].emplace_back(t.index, t.coeff);
            involution[d + i].emplace_back(d + t.index, t.coeff);
        }
    return std::make_shared<const AlgebraSpec>(a.name() + "_C", std::move(names), std::move(products),
                                               std::move(involution));
}

}  // namespace

ComplexifiedPtr complexify(const AlgebraPtr& base) {
    static std::mutex mu;
    static std::map<const AlgebraSpec*, ComplexifiedPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(base.get()); it != cache.end()) return it->second;
    if (!base->is_alternative()) throw DomainError("complexify: " + base->name() + " is not alternative");
    auto derived = build_derived(*base);
    if (derived->is_alternative() != base->is_alternative())
        throw DomainError("complexify: alternativity not preserved for " + base->name());
    auto c = std::make_shared<const ComplexifiedSpec>(base, derived);
    cache.emplace(base.get(), c);
    return c;
}

}  // namespace slicealg
