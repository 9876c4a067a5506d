#pragma once

#include <string>
#include <vector>

#include "catdyn/category.hpp"
#include "catdyn/dynamics.hpp"
#include "catdyn/report.hpp"

namespace catdyn {

/// States of a carrier are points 1 -> Ω. The notions in this header lean on
/// the unit being terminal (so that "forget the time" is a morphism), which
/// holds in the concrete backend but not in the linear one; the entry points
/// refuse to run where that assumption fails.

template <Backend B>
void require_terminal_unit(const std::string& what) {
    if (!B::kUnitTerminal) {
        throw TerminalUnitError(what + " requires the tensor unit to be terminal, "
                                       "which fails in this backend");
    }
}

/// Every state of the carrier, in carrier order.
template <Backend B>
std::vector<typename B::Mor> all_states(const typename B::Obj& omega) {
    require_terminal_unit<B>("state enumeration");
    std::vector<typename B::Mor> out;
    const std::uint64_t n = B::witness_count(omega);
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(B::point(omega, i));
    return out;
}

/// The unique flow on the unit object: time acts by forgetting itself.
template <Backend B>
Flow<B> trivial_unit_flow(const TimeObject<B>& time) {
    require_terminal_unit<B>("the trivial flow on the unit");
    auto phi = B::terminal(B::tensor(time.object, B::unit()));
    return as_flow(make_preflow<B>(time, B::unit(), std::move(phi)));
}

/// A state is stationary when the flow fixes it at every time; equivalently,
/// when it is a morphism of flows out of the trivial flow on the unit.
template <Backend B>
LawReport is_stationary(const Flow<B>& f, const typename B::Mor& state) {
    require_terminal_unit<B>("stationarity");
    if (!B::obj_equal(state.dom, B::unit()) || !B::obj_equal(state.cod, f.omega)) {
        throw TypeError("a state must be a morphism from the unit into the flow's carrier");
    }
    auto r = is_semiconjugacy(trivial_unit_flow<B>(f.time), f, state);
    r.law = "state.stationary";
    return r;
}

template <Backend B>
std::vector<typename B::Mor> stationary_states(const Flow<B>& f) {
    std::vector<typename B::Mor> out;
    for (auto& s : all_states<B>(f.omega)) {
        if (is_stationary(f, s).holds) out.push_back(std::move(s));
    }
    return out;
}

/// Stationarity phrased inside the function-space picture, in two equivalent
/// renderings: `direct` composes the transposed flow against the named state
/// and asks for the constant family at the state's name; `hexagon` is the
/// function-space square of the state viewed as a morphism out of the trivial
/// flow. Both must agree with each other and with the pointwise notion.
template <Backend B>
struct EnrichedStationarity {
    LawReport direct;
    LawReport hexagon;
    bool agree() const { return direct.holds == hexagon.holds; }
};

template <Backend B>
EnrichedStationarity<B> enriched_stationary(const Flow<B>& f, const typename B::Mor& state) {
    require_terminal_unit<B>("enriched stationarity");
    if (!B::obj_equal(state.dom, B::unit()) || !B::obj_equal(state.cod, f.omega)) {
        throw TypeError("a state must be a morphism from the unit into the flow's carrier");
    }
    const auto& T = f.time.object;
    const auto& O = f.omega;
    const auto one = B::unit();
    const auto named = name_morphism<B>(state);           // 1 -> [1,Ω]
    const auto sharp = flow_to_parametric(f).sharp;       // T -> [Ω,Ω]

    // T -> T⊗1 -> [Ω,Ω]⊗[1,Ω] -> [1,Ω]  versus  T -> 1 -> [1,Ω]
    auto direct = check_diagram<B>(
        "state.enriched_direct",
        {B::runitor_inv(T), B::tensor_mor(sharp, named), internal_compose<B>(one, O, O)},
        {B::terminal(T), named});

    const auto triv = trivial_unit_flow<B>(f.time);
    auto hexagon = enriched_morphism_square(triv, f, state);
    hexagon.law = "state.enriched_hexagon";
    return EnrichedStationarity<B>{std::move(direct), std::move(hexagon)};
}

/// Recover a state from an element of [1,Ω] by evaluating at the unit's
/// single generalized point.
template <Backend B>
typename B::Mor induced_state(const typename B::Obj& omega, const typename B::Mor& omega_star) {
    const auto one = B::unit();
    if (!B::obj_equal(omega_star.dom, one) ||
        !B::obj_equal(omega_star.cod, B::hom(one, omega))) {
        throw TypeError("expected a point of the function space from the unit into the carrier");
    }
    return compose_path<B>({B::lunitor_inv(one),
                            B::tensor_mor(B::identity(one), omega_star),
                            B::eval(one, omega)});
}

} // namespace catdyn
