#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catdyn/report.hpp"

namespace catdyn {

/// A finite monoid given by a total multiplication table over labeled
/// elements and a designated two-sided unit. Construction via `make`
/// validates; `validate` reports associativity and unit-law violations with
/// the first offending tuple.
struct FiniteMonoid {
    std::vector<std::string> elements;
    std::vector<std::uint32_t> table; // row-major: table[s*n + t] = s∘t
    std::uint32_t unit = 0;

    std::uint32_t size() const { return static_cast<std::uint32_t>(elements.size()); }
    std::uint32_t add(std::uint32_t s, std::uint32_t t) const { return table[s * size() + t]; }

    static std::vector<LawReport> validate(const std::vector<std::string>& elements,
                                           const std::vector<std::uint32_t>& table,
                                           std::uint32_t unit);
    /// Throws Error (message includes the violating tuple) if invalid.
    static FiniteMonoid make(std::vector<std::string> elements,
                             std::vector<std::uint32_t> table, std::uint32_t unit);

    bool is_commutative() const;

    bool same_as(const FiniteMonoid& o) const {
        return elements == o.elements && table == o.table && unit == o.unit;
    }
};

} // namespace catdyn
