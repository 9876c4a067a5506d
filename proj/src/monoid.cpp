#include "catdyn/monoid.hpp"

#include <unordered_set>

namespace catdyn {

std::vector<LawReport> FiniteMonoid::validate(const std::vector<std::string>& elements,
                                              const std::vector<std::uint32_t>& table,
                                              std::uint32_t unit) {
    const std::uint64_t n = elements.size();
    std::unordered_set<std::string> seen;
    for (const auto& l : elements) {
        if (l.empty()) throw TypeError("empty monoid element label");
        if (!seen.insert(l).second) throw TypeError("duplicate monoid element label: " + l);
    }
    if (table.size() != n * n) throw TypeError("monoid table is not total");
    for (auto v : table)
        if (v >= n) throw TypeError("monoid table value out of range");
    if (unit >= n) throw TypeError("monoid unit out of range");

    auto at = [&](std::uint64_t s, std::uint64_t t) { return table[s * n + t]; };

    LawReport assoc = LawReport::pass("monoid.associativity");
    for (std::uint64_t a = 0; a < n && assoc.holds; ++a)
        for (std::uint64_t b = 0; b < n && assoc.holds; ++b)
            for (std::uint64_t c = 0; c < n; ++c)
                if (at(at(a, b), c) != at(a, at(b, c))) {
                    assoc = LawReport::fail(
                        "monoid.associativity",
                        "(" + elements[a] + "," + elements[b] + "," + elements[c] + ")",
                        (a * n + b) * n + c);
                    break;
                }

    LawReport unit_law = LawReport::pass("monoid.unit");
    for (std::uint64_t x = 0; x < n; ++x)
        if (at(unit, x) != x || at(x, unit) != x) {
            unit_law = LawReport::fail("monoid.unit", elements[x], x);
            break;
        }

    return {assoc, unit_law};
}

FiniteMonoid FiniteMonoid::make(std::vector<std::string> elements,
                                std::vector<std::uint32_t> table, std::uint32_t unit) {
    auto reports = validate(elements, table, unit);
    for (const auto& r : reports)
        if (!r.holds)
            throw Error(r.law + " fails at " + r.counterexample.value_or("?"));
    return FiniteMonoid{std::move(elements), std::move(table), unit};
}

bool FiniteMonoid::is_commutative() const {
    const std::uint32_t n = size();
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            if (add(a, b) != add(b, a)) return false;
    return true;
}

} // namespace catdyn
