#pragma once

#include "catdyn/category.hpp"
#include "catdyn/finset.hpp"
#include "catdyn/gf2.hpp"
#include "catdyn/monoid.hpp"

namespace catdyn {

/// A monoid internal to a backend: the object T together with
/// add: T⊗T -> T and start: 1 -> T satisfying associativity and the two
/// unit triangles. Two time objects are interchangeable exactly when their
/// underlying finite monoids are literally identical.
template <Backend B>
struct TimeObject {
    FiniteMonoid monoid;
    typename B::Obj object;
    typename B::Mor add;   // T⊗T -> T
    typename B::Mor start; // 1 -> T

    bool same_as(const TimeObject& o) const { return monoid.same_as(o.monoid); }
};

/// Check the internal-monoid diagrams for a time object (associativity
/// square and both unit triangles) as extensional identities.
template <Backend B>
std::vector<LawReport> validate_time_object(const TimeObject<B>& t) {
    const auto& T = t.object;
    const auto id_T = B::identity(T);
    std::vector<LawReport> out;
    out.push_back(check_diagram<B>(
        "time.associativity",
        {B::tensor_mor(t.add, id_T), t.add},
        {B::associator(T, T, T), B::tensor_mor(id_T, t.add), t.add}));
    out.push_back(check_diagram<B>(
        "time.left_unit", {B::tensor_mor(t.start, id_T), t.add}, {B::lunitor(T)}));
    out.push_back(check_diagram<B>(
        "time.right_unit", {B::tensor_mor(id_T, t.start), t.add}, {B::runitor(T)}));
    return out;
}

/// Finite-set realization: T's carrier is the monoid's own carrier.
inline TimeObject<FinSet> make_time_object_finset(const FiniteMonoid& m) {
    const auto T = FinSet::base(m.elements);
    const std::uint32_t n = m.size();
    std::vector<std::uint64_t> add_table(static_cast<std::size_t>(n) * n);
    for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint32_t t = 0; t < n; ++t)
            add_table[static_cast<std::size_t>(s) * n + t] = m.add(s, t);
    auto add = FinSet::make_mor(FinSet::tensor(T, T), T, std::move(add_table));
    auto start = FinSet::point(T, m.unit);
    return TimeObject<FinSet>{m, T, std::move(add), std::move(start)};
}

/// GF(2) realization: the monoid algebra. T has one basis vector per monoid
/// element; add maps e_s⊗e_t to e_{s∘t} and start picks the unit's basis
/// vector.
inline TimeObject<Gf2> make_time_object_gf2(const FiniteMonoid& m) {
    const std::uint32_t n = m.size();
    if (n == 0) throw TypeError("monoid must be nonempty");
    const auto T = Gf2::base(n);
    std::vector<std::uint8_t> entries(static_cast<std::size_t>(n) * n * n, 0);
    for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint32_t t = 0; t < n; ++t) {
            const std::size_t col = static_cast<std::size_t>(s) * n + t;
            entries[static_cast<std::size_t>(m.add(s, t)) * n * n + col] = 1;
        }
    auto add = Gf2::make_mor(Gf2::tensor(T, T), T, std::move(entries));
    auto start = Gf2::point(T, m.unit);
    return TimeObject<Gf2>{m, T, std::move(add), std::move(start)};
}

template <Backend B>
TimeObject<B> make_time_object(const FiniteMonoid& m) {
    if constexpr (std::is_same_v<B, FinSet>)
        return make_time_object_finset(m);
    else
        return make_time_object_gf2(m);
}

} // namespace catdyn
