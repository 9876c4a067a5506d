#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catdyn/report.hpp"

namespace catdyn {

/// Category of finite sets and total functions, with the closed symmetric
/// monoidal structure given by cartesian product and function spaces.
///
/// Objects are immutable descriptor trees; structurally equal descriptors
/// denote the same object. Carriers are totally ordered:
///   - base objects by their declared label order,
///   - the unit by its single element "*",
///   - tensors lexicographically (left factor major),
///   - function spaces [Y,Z] by the tabulation (f(y0),f(y1),...) read as a
///     base-|Z| numeral, first argument most significant.
///
/// Morphisms are total lookup tables over those orderings; equality is
/// extensional (table equality).
struct FinSet {
    struct Node;
    using Obj = std::shared_ptr<const Node>;

    struct Node {
        enum class Tag { base, unit, tensor, hom };
        Tag tag;
        std::vector<std::string> labels; // base only
        Obj a, b;                        // tensor: a⊗b; hom: [a,b]
    };

    struct Mor {
        Obj dom, cod;
        std::vector<std::uint64_t> table; // table[i] = index in cod carrier
    };

    static constexpr bool kUnitTerminal = true;
    static const char* name() { return "finset"; }

    // -- objects -----------------------------------------------------------
    static Obj base(std::vector<std::string> labels);
    static Obj unit();
    static Obj tensor(const Obj& a, const Obj& b);
    static Obj hom(const Obj& y, const Obj& z);
    static bool obj_equal(const Obj& x, const Obj& y);

    /// Number of carrier elements. Throws CarrierError if it does not fit
    /// in 64 bits.
    static std::uint64_t size(const Obj& o);
    static std::string label(const Obj& o, std::uint64_t idx);

    /// Value (index into Z's carrier) a function-space element assigns to
    /// the `pos`-th element of Y, for h = hom(Y,Z).
    static std::uint64_t hom_digit(const Obj& h, std::uint64_t elem, std::uint64_t pos);
    /// Inverse of digit extraction: encode a full tabulation.
    static std::uint64_t hom_encode(const Obj& h, const std::vector<std::uint64_t>& digits);

    // extensional witnesses (used by generic diagram checking)
    static std::uint64_t witness_count(const Obj& o) { return size(o); }
    static std::string witness_label(const Obj& o, std::uint64_t i) { return label(o, i); }

    // -- morphisms ----------------------------------------------------------
    static Mor make_mor(Obj dom, Obj cod, std::vector<std::uint64_t> table);
    static Mor identity(const Obj& a);
    static Mor compose(const Mor& g, const Mor& f); // g ∘ f
    static Mor tensor_mor(const Mor& f, const Mor& g);
    static Mor swap(const Obj& a, const Obj& b);         // A⊗B -> B⊗A
    static Mor lunitor(const Obj& a);                    // 1⊗A -> A
    static Mor lunitor_inv(const Obj& a);
    static Mor runitor(const Obj& a);                    // A⊗1 -> A
    static Mor runitor_inv(const Obj& a);
    static Mor associator(const Obj& a, const Obj& b, const Obj& c);     // (A⊗B)⊗C -> A⊗(B⊗C)
    static Mor associator_inv(const Obj& a, const Obj& b, const Obj& c);

    /// Transpose across Hom(Y⊗X, Z) ≅ Hom(X, [Y,Z]): internalizes the left
    /// tensor factor.
    static Mor curry_left(const Mor& f);
    static Mor uncurry_left(const Mor& g);
    /// Evaluation Y⊗[Y,Z] -> Z, argument on the left.
    static Mor eval(const Obj& y, const Obj& z);

    static Mor point(const Obj& o, std::uint64_t idx);   // 1 -> O selecting element idx
    static Mor terminal(const Obj& o);                   // unique O -> 1

    /// Extensional equality; endpoints must already agree (TypeError otherwise).
    static bool equal(const Mor& f, const Mor& g);
    static std::optional<std::uint64_t> first_difference(const Mor& f, const Mor& g);
};

} // namespace catdyn
