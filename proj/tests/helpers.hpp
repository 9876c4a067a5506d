#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catdyn/dynamics.hpp"
#include "catdyn/finset.hpp"
#include "catdyn/monoid.hpp"
#include "catdyn/time.hpp"

namespace testutil {

using catdyn::FinSet;
using catdyn::FiniteMonoid;

/// Enumerate every table dom->cod of the given sizes, in the same
/// lexicographic (first slot most significant) order the library uses for
/// function-space carriers. Calls fn(table) for each.
template <class Fn>
void for_each_table(std::uint64_t dom_size, std::uint64_t cod_size, Fn&& fn) {
    std::vector<std::uint64_t> t(dom_size, 0);
    if (cod_size == 0) {
        if (dom_size == 0) fn(t);
        return;
    }
    while (true) {
        fn(t);
        std::size_t i = t.size();
        while (i > 0 && t[i - 1] + 1 == cod_size) t[--i] = 0;
        if (i == 0) return;
        ++t[i - 1];
    }
}

inline FiniteMonoid z3() {
    return FiniteMonoid::make({"0", "1", "2"}, {0, 1, 2, 1, 2, 0, 2, 0, 1}, 0);
}

inline FiniteMonoid max_monoid() {
    return FiniteMonoid::make({"0", "1"}, {0, 1, 1, 1}, 0);
}

inline FiniteMonoid trivial_monoid() { return FiniteMonoid::make({"e"}, {0}, 0); }

/// Identity plus a two-element left-zero band: noncommutative.
inline FiniteMonoid left_zero_monoid() {
    return FiniteMonoid::make({"e", "a", "b"}, {0, 1, 2, 1, 1, 1, 2, 2, 2}, 0);
}

inline FinSet::Obj abc() { return FinSet::base({"a", "b", "c"}); }

/// The rotation a->b->c->a as a table on abc().
inline FinSet::Mor rot1() {
    auto o = abc();
    return FinSet::make_mor(o, o, {1, 2, 0});
}

/// Flow of the rotation: phi(t, x) = rot^t(x) over the Z3 time object.
inline catdyn::Flow<FinSet> z3_rotation_flow() {
    auto time = catdyn::make_time_object_finset(z3());
    auto o = abc();
    std::vector<std::uint64_t> t(9);
    for (std::uint64_t s = 0; s < 3; ++s)
        for (std::uint64_t x = 0; x < 3; ++x) t[s * 3 + x] = (x + s) % 3;
    auto phi = FinSet::make_mor(FinSet::tensor(time.object, o), o, std::move(t));
    return catdyn::as_flow(catdyn::make_preflow<FinSet>(time, o, phi));
}

/// Max monoid acting on {0,1,2} by the idempotent 0,1 -> 0, 2 -> 2.
inline catdyn::Flow<FinSet> max_idempotent_flow() {
    auto time = catdyn::make_time_object_finset(max_monoid());
    auto o = FinSet::base({"0", "1", "2"});
    auto phi = FinSet::make_mor(FinSet::tensor(time.object, o), o, {0, 1, 2, 0, 0, 2});
    return catdyn::as_flow(catdyn::make_preflow<FinSet>(time, o, phi));
}

/// Every valid flow of the monoid on a carrier of the given size, in
/// lexicographic order of the action table.
inline std::vector<catdyn::Flow<FinSet>> valid_flows(const FiniteMonoid& m, std::uint64_t n) {
    auto time = catdyn::make_time_object_finset(m);
    std::vector<std::string> labels;
    for (std::uint64_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
    auto omega = FinSet::base(labels);
    auto dom = FinSet::tensor(time.object, omega);
    std::vector<catdyn::Flow<FinSet>> out;
    for_each_table(m.size() * n, n, [&](const std::vector<std::uint64_t>& t) {
        auto pre = catdyn::make_preflow<FinSet>(time, omega, FinSet::make_mor(dom, omega, t));
        if (catdyn::validate_flow(pre).holds()) out.push_back(catdyn::as_flow(pre));
    });
    return out;
}

/// Deterministic linear congruential generator for frozen sampling.
struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 11;
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

} // namespace testutil
