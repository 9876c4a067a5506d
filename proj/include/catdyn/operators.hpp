#pragma once

#include "catdyn/dynamics.hpp"

namespace catdyn {

/// The object of paths T -> Ω.
template <Backend B>
typename B::Obj path_space(const TimeObject<B>& time, const typename B::Obj& omega) {
    return B::hom(time.object, omega);
}

/// Shift action on the path space: the transpose of evaluating after adding,
///   sigma(t, p)(s) = p(add(s, t)).
/// This is a left action for every monoid; the suite validates it
/// exhaustively over the sweep range.
template <Backend B>
Flow<B> shift_flow(const TimeObject<B>& time, const typename B::Obj& omega) {
    const auto& T = time.object;
    const auto P = path_space(time, omega);
    const auto body = compose_path<B>({
        B::associator_inv(T, T, P),
        B::tensor_mor(time.add, B::identity(P)),
        B::eval(T, omega),
    }); // T⊗(T⊗P) -> Ω, reading (s,(t,p)) |-> p(add(s,t))
    return Flow<B>{time, P, B::curry_left(body)};
}

/// Push a dynamic forward onto pattern spaces: on [X,Ω] the action is
/// post-composition with the flow at each time,
///   transfer(t, g) = phi(t, ·) ∘ g.
template <Backend B>
Flow<B> transfer_on_patterns(const Flow<B>& f, const typename B::Obj& x) {
    const auto& T = f.time.object;
    const auto G = B::hom(x, f.omega);
    const auto body = compose_path<B>({
        B::associator_inv(x, T, G),
        B::tensor_mor(B::swap(x, T), B::identity(G)),
        B::associator(T, x, G),
        B::tensor_mor(B::identity(T), B::eval(x, f.omega)),
        f.phi,
    }); // X⊗(T⊗G) -> Ω, reading (x,(t,g)) |-> phi(t, g(x))
    return Flow<B>{f.time, G, B::curry_left(body)};
}

/// The transfer action on the path space [T,Ω] itself.
template <Backend B>
Flow<B> transfer_flow(const Flow<B>& f) {
    return transfer_on_patterns(f, f.time.object);
}

/// Pullback of observables: on [Ω,X] each time acts by pre-composition,
///   koopman(t, g) = g ∘ phi(t, ·).
/// Only the typing and unit law are guaranteed; for noncommutative time the
/// composition law can fail, so the result stays a PreFlow.
template <Backend B>
PreFlow<B> koopman_preflow(const Flow<B>& f, const typename B::Obj& x) {
    const auto& T = f.time.object;
    const auto& O = f.omega;
    const auto G = B::hom(O, x);
    const auto body = compose_path<B>({
        B::associator_inv(O, T, G),
        B::tensor_mor(B::swap(O, T), B::identity(G)),
        B::tensor_mor(f.phi, B::identity(G)),
        B::eval(O, x),
    }); // Ω⊗(T⊗G) -> X, reading (w,(t,g)) |-> g(phi(t, w))
    return PreFlow<B>{f.time, G, B::curry_left(body)};
}

/// The transpose over time: flat(phi): Ω -> [T,Ω] sends a state to its
/// full trajectory.
template <Backend B>
typename B::Mor flat_adjoint(const Flow<B>& f) {
    return B::curry_left(f.phi);
}

/// Trajectory through a chosen state: as a morphism T -> Ω and as the
/// corresponding path-space element.
template <Backend B>
struct Orbit {
    typename B::Mor as_morphism;  // T -> Ω
    typename B::Mor as_point;     // 1 -> [T,Ω]
};

template <Backend B>
Orbit<B> orbit(const Flow<B>& f, const typename B::Mor& state) {
    if (!B::obj_equal(state.dom, B::unit()) || !B::obj_equal(state.cod, f.omega))
        throw TypeError("orbit: state must be a point 1 -> Ω");
    const auto& T = f.time.object;
    auto as_morphism = compose_path<B>({
        B::runitor_inv(T),
        B::tensor_mor(B::identity(T), state),
        f.phi,
    });
    auto as_point = name_morphism<B>(as_morphism);
    return Orbit<B>{std::move(as_morphism), std::move(as_point)};
}

/// Evaluate paths at the monoid unit: [T,Ω] -> Ω.
template <Backend B>
typename B::Mor eval_at_zero(const TimeObject<B>& time, const typename B::Obj& omega) {
    const auto P = path_space(time, omega);
    return compose_path<B>({
        B::lunitor_inv(P),
        B::tensor_mor(time.start, B::identity(P)),
        B::eval(time.object, omega),
    });
}

/// Evaluate paths at an arbitrary time: shift by t, then read off at the
/// unit. Built from the shift composite rather than by table lookup.
template <Backend B>
typename B::Mor eval_at(const TimeObject<B>& time, const typename B::Obj& omega,
                        std::uint64_t t_index) {
    const auto P = path_space(time, omega);
    return compose_path<B>({
        B::lunitor_inv(P),
        B::tensor_mor(B::point(time.object, t_index), B::identity(P)),
        shift_flow(time, omega).phi,
        eval_at_zero(time, omega),
    });
}

/// Post-composition on path spaces: [T,f]: [T,Ω] -> [T,Ω'], p |-> f∘p.
template <Backend B>
typename B::Mor path_map(const TimeObject<B>& time, const typename B::Mor& f) {
    return B::curry_left(B::compose(f, B::eval(time.object, f.dom)));
}

/// [T,f] intertwines the two shift actions; returned with its endpoints as
/// an intertwiner between shift flows.
template <Backend B>
Semiconjugacy<B> shift_on_morphism(const TimeObject<B>& time, const typename B::Mor& f) {
    return Semiconjugacy<B>{shift_flow(time, f.dom), shift_flow(time, f.cod),
                            path_map(time, f)};
}

} // namespace catdyn
