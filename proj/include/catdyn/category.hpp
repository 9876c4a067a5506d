#pragma once

#include <concepts>
#include <string>
#include <vector>

#include "catdyn/report.hpp"

namespace catdyn {

/// Minimal shape every backend provides: objects, morphisms, and the closed
/// symmetric monoidal operations. The concrete signatures are duck-typed;
/// FinSet and Gf2 are the two instances.
template <class B>
concept Backend = requires {
    typename B::Obj;
    typename B::Mor;
    { B::kUnitTerminal } -> std::convertible_to<bool>;
};

/// A composable chain of morphisms, listed in application order:
/// path = {f1, f2, ..., fn} denotes fn ∘ ... ∘ f2 ∘ f1.
template <Backend B>
using DiagramPath = std::vector<typename B::Mor>;

template <Backend B>
typename B::Mor compose_path(const DiagramPath<B>& path) {
    if (path.empty()) throw TypeError("empty diagram path");
    typename B::Mor acc = path.front();
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (!B::obj_equal(path[i].dom, acc.cod))
            throw TypeError("diagram path is not composable at step " + std::to_string(i));
        acc = B::compose(path[i], acc);
    }
    return acc;
}

template <Backend B>
bool morphisms_equal(const typename B::Mor& f, const typename B::Mor& g) {
    return B::equal(f, g);
}

/// Compare two composable paths with shared endpoints extensionally and
/// report the first witness on which they disagree.
template <Backend B>
LawReport check_diagram(std::string law, const DiagramPath<B>& lhs, const DiagramPath<B>& rhs) {
    const typename B::Mor l = compose_path<B>(lhs), r = compose_path<B>(rhs);
    if (!B::obj_equal(l.dom, r.dom) || !B::obj_equal(l.cod, r.cod))
        throw TypeError("check_diagram: the two paths do not share endpoints");
    if (auto w = B::first_difference(l, r))
        return LawReport::fail(std::move(law), B::witness_label(l.dom, *w), *w);
    return LawReport::pass(std::move(law));
}

/// Internal composition [B,C]⊗[A,B] -> [A,C]: the transpose of evaluating
/// twice, first the inner argument, then the outer one.
template <Backend B>
typename B::Mor internal_compose(const typename B::Obj& a, const typename B::Obj& b,
                                 const typename B::Obj& c) {
    const auto bc = B::hom(b, c), ab = B::hom(a, b);
    // A⊗([B,C]⊗[A,B]) -> A⊗([A,B]⊗[B,C]) -> (A⊗[A,B])⊗[B,C] -> B⊗[B,C] -> C
    const auto step1 = B::tensor_mor(B::identity(a), B::swap(bc, ab));
    const auto step2 = B::associator_inv(a, ab, bc);
    const auto step3 = B::tensor_mor(B::eval(a, b), B::identity(bc));
    const auto step4 = B::eval(b, c);
    const auto body = compose_path<B>({step1, step2, step3, step4});
    return B::curry_left(body); // over the leading A; domain is [B,C]⊗[A,B]
}

/// The global element of [A,B] naming a morphism h: A -> B.
template <Backend B>
typename B::Mor name_morphism(const typename B::Mor& h) {
    return B::curry_left(B::compose(h, B::runitor(h.dom)));
}

/// The point of [A,A] naming the identity.
template <Backend B>
typename B::Mor name_identity(const typename B::Obj& a) {
    return name_morphism<B>(B::identity(a));
}

template <Backend B>
bool is_terminal_unit() {
    return B::kUnitTerminal;
}

} // namespace catdyn
