#pragma once

#include <type_traits>

#include "catdyn/category.hpp"
#include "catdyn/time.hpp"

namespace catdyn {

/// Typing-only data of a dynamical system: phi: T⊗Ω -> Ω with no laws
/// assumed. Use validate_flow to test the action laws and as_flow to obtain
/// a Flow; nothing validates implicitly.
template <Backend B>
struct PreFlow {
    TimeObject<B> time;
    typename B::Obj omega;
    typename B::Mor phi; // T⊗Ω -> Ω
};

/// A PreFlow whose action laws have been established. Values of this type
/// are only produced by explicit validation (as_flow) or by constructions
/// whose validity is enforced by the library's own test suite.
template <Backend B>
struct Flow {
    TimeObject<B> time;
    typename B::Obj omega;
    typename B::Mor phi;
};

/// The transposed presentation: sharp: T -> [Ω,Ω] landing in the
/// endomorphism object.
template <Backend B>
struct ParametricDynamics {
    TimeObject<B> time;
    typename B::Obj omega;
    typename B::Mor sharp; // T -> [Ω,Ω]
};

template <Backend B>
PreFlow<B> make_preflow(TimeObject<B> time, typename B::Obj omega, typename B::Mor phi) {
    if (!B::obj_equal(phi.dom, B::tensor(time.object, omega)) || !B::obj_equal(phi.cod, omega))
        throw TypeError("preflow: phi must have shape T⊗Ω -> Ω");
    return PreFlow<B>{std::move(time), std::move(omega), std::move(phi)};
}

struct FlowReport {
    LawReport unit_law;
    LawReport composition;
    bool holds() const { return unit_law.holds && composition.holds; }
    std::vector<LawReport> laws() const { return {unit_law, composition}; }
};

/// Check the two action diagrams:
///   unit:        phi ∘ (start⊗Ω) = lunitor
///   composition: phi ∘ (add⊗Ω)   = phi ∘ (T⊗phi) ∘ associator
/// Failures carry the first offending carrier element, e.g. ((s,t),x).
template <Backend B>
FlowReport validate_flow(const PreFlow<B>& f) {
    const auto& T = f.time.object;
    const auto id_T = B::identity(T);
    const auto id_O = B::identity(f.omega);
    FlowReport r{
        check_diagram<B>("flow.unit",
                         {B::tensor_mor(f.time.start, id_O), f.phi},
                         {B::lunitor(f.omega)}),
        check_diagram<B>("flow.composition",
                         {B::tensor_mor(f.time.add, id_O), f.phi},
                         {B::associator(T, T, f.omega), B::tensor_mor(id_T, f.phi), f.phi}),
    };
    return r;
}

/// Promote a PreFlow to a Flow, throwing with the first counterexample if
/// either action law fails.
template <Backend B>
Flow<B> as_flow(const PreFlow<B>& f) {
    const FlowReport r = validate_flow(f);
    if (!r.unit_law.holds)
        throw Error("flow.unit fails at " + r.unit_law.counterexample.value_or("?"));
    if (!r.composition.holds)
        throw Error("flow.composition fails at " + r.composition.counterexample.value_or("?"));
    return Flow<B>{f.time, f.omega, f.phi};
}

template <Backend B>
PreFlow<B> as_preflow(const Flow<B>& f) {
    return PreFlow<B>{f.time, f.omega, f.phi};
}

template <Backend B>
bool flows_equal(const Flow<B>& a, const Flow<B>& b) {
    return a.time.same_as(b.time) && B::obj_equal(a.omega, b.omega) && B::equal(a.phi, b.phi);
}

/// Transpose a flow over its state factor: sharp = curry(phi ∘ swap).
template <Backend B>
ParametricDynamics<B> flow_to_parametric(const Flow<B>& f) {
    auto sharp = B::curry_left(B::compose(f.phi, B::swap(f.omega, f.time.object)));
    return ParametricDynamics<B>{f.time, f.omega, std::move(sharp)};
}

/// Inverse transpose. The result of a valid parametric presentation is a
/// valid flow; this function still re-validates explicitly.
template <Backend B>
Flow<B> parametric_to_flow(const ParametricDynamics<B>& p) {
    auto phi = B::compose(B::uncurry_left(p.sharp), B::swap(p.time.object, p.omega));
    return as_flow(make_preflow<B>(p.time, p.omega, std::move(phi)));
}

/// Laws of the transposed presentation: sharp carries start to the name of
/// the identity and multiplication to internal composition.
template <Backend B>
std::vector<LawReport> validate_parametric(const ParametricDynamics<B>& p) {
    const auto& O = p.omega;
    std::vector<LawReport> out;
    out.push_back(check_diagram<B>("parametric.unit",
                                   {p.time.start, p.sharp},
                                   {name_identity<B>(O)}));
    out.push_back(check_diagram<B>("parametric.composition",
                                   {p.time.add, p.sharp},
                                   {B::tensor_mor(p.sharp, p.sharp), internal_compose<B>(O, O, O)}));
    return out;
}

/// h: Ω -> Ω′ intertwining two flows over the same time object.
template <Backend B>
struct Semiconjugacy {
    Flow<B> source;
    Flow<B> target;
    typename B::Mor h;
};

/// The intertwining square: h ∘ phi = phi' ∘ (T⊗h), checked extensionally.
template <Backend B>
LawReport is_semiconjugacy(const Flow<B>& source, const Flow<B>& target,
                           const typename B::Mor& h) {
    if (!source.time.same_as(target.time))
        throw TypeError("semiconjugacy: flows live over different time objects");
    if (!B::obj_equal(h.dom, source.omega) || !B::obj_equal(h.cod, target.omega))
        throw TypeError("semiconjugacy: h must map the source states to the target states");
    return check_diagram<B>("semiconjugacy.square",
                            {source.phi, h},
                            {B::tensor_mor(B::identity(source.time.object), h), target.phi});
}

template <Backend B>
Semiconjugacy<B> as_semiconjugacy(const Flow<B>& source, const Flow<B>& target,
                                  const typename B::Mor& h) {
    const LawReport r = is_semiconjugacy(source, target, h);
    if (!r.holds)
        throw Error("semiconjugacy.square fails at " + r.counterexample.value_or("?"));
    return Semiconjugacy<B>{source, target, h};
}

/// The transposed intertwining law: a hexagon through the hom objects,
///   ∘ ∘ (sharp'⊗name(h)) ∘ runitor⁻¹ = ∘ ∘ (name(h)⊗sharp) ∘ lunitor⁻¹
/// as morphisms T -> [Ω,Ω′]. Equivalent to the square above.
template <Backend B>
LawReport enriched_morphism_square(const Flow<B>& source, const Flow<B>& target,
                                   const typename B::Mor& h) {
    if (!source.time.same_as(target.time))
        throw TypeError("semiconjugacy: flows live over different time objects");
    const auto& T = source.time.object;
    const auto& O = source.omega;
    const auto& Op = target.omega;
    const auto h_name = name_morphism<B>(h);
    const auto sharp_src = flow_to_parametric(source).sharp;
    const auto sharp_tgt = flow_to_parametric(target).sharp;
    return check_diagram<B>(
        "semiconjugacy.enriched",
        {B::runitor_inv(T), B::tensor_mor(sharp_tgt, h_name), internal_compose<B>(O, Op, Op)},
        {B::lunitor_inv(T), B::tensor_mor(h_name, sharp_src), internal_compose<B>(O, O, Op)});
}

/// Compose intertwiners along a shared middle flow.
template <Backend B>
Semiconjugacy<B> compose_semiconjugacy(const Semiconjugacy<B>& outer,
                                       const Semiconjugacy<B>& inner) {
    if (!flows_equal(inner.target, outer.source))
        throw TypeError("compose_semiconjugacy: middle flows do not match");
    return Semiconjugacy<B>{inner.source, outer.target, B::compose(outer.h, inner.h)};
}

/// Naming is functorial: name(h2∘h1) = ∘ ∘ (name(h2)⊗name(h1)) ∘ λ⁻¹ on the
/// unit. Returns the comparison as a report.
template <Backend B>
LawReport name_composition_square(const typename B::Mor& h2, const typename B::Mor& h1) {
    if (!B::obj_equal(h2.dom, h1.cod))
        throw TypeError("name_composition_square: morphisms are not composable");
    return check_diagram<B>(
        "name.composition",
        {name_morphism<B>(B::compose(h2, h1))},
        {B::lunitor_inv(B::unit()), B::tensor_mor(name_morphism<B>(h2), name_morphism<B>(h1)),
         internal_compose<B>(h1.dom, h1.cod, h2.cod)});
}

} // namespace catdyn
