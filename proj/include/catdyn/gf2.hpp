#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catdyn/report.hpp"

namespace catdyn {

/// Finite-dimensional vector spaces over GF(2) with linear maps.
///
/// Objects are dimension descriptors; the monoidal structure is the tensor
/// product (Kronecker on matrices, basis e_i⊗e_j at index i*dim(B)+j), the
/// unit is the 1-dimensional space, and [Y,Z] is the space of linear maps
/// with basis the matrix units flattened row-major (index z*dim(Y)+y).
/// Currying and uncurrying are pure index reshapes under these conventions;
/// evaluation is contraction. The unit is not terminal.
///
/// Morphisms are dense matrices over {0,1}, rows indexed by the codomain
/// basis, columns by the domain basis. Equality is matrix equality;
/// extensional witnesses are domain basis vectors.
struct Gf2 {
    struct Node;
    using Obj = std::shared_ptr<const Node>;

    struct Node {
        enum class Tag { base, unit, tensor, hom };
        Tag tag;
        std::uint64_t dim = 0; // base only
        Obj a, b;              // tensor: a⊗b; hom: [a,b]
    };

    struct Mor {
        Obj dom, cod;
        std::uint64_t rows = 0, cols = 0;
        std::vector<std::uint8_t> m; // row-major, values in {0,1}
        std::uint8_t at(std::uint64_t r, std::uint64_t c) const { return m[r * cols + c]; }
        std::uint8_t& at(std::uint64_t r, std::uint64_t c) { return m[r * cols + c]; }
    };

    static constexpr bool kUnitTerminal = false;
    static const char* name() { return "gf2"; }

    // -- objects -----------------------------------------------------------
    static Obj base(std::uint64_t dim);
    static Obj unit();
    static Obj tensor(const Obj& a, const Obj& b);
    static Obj hom(const Obj& y, const Obj& z);
    static bool obj_equal(const Obj& x, const Obj& y);
    static std::uint64_t dim(const Obj& o);

    static std::uint64_t witness_count(const Obj& o) { return dim(o); }
    static std::string witness_label(const Obj&, std::uint64_t i) { return "e" + std::to_string(i); }

    // -- morphisms ----------------------------------------------------------
    static Mor make_mor(Obj dom, Obj cod, std::vector<std::uint8_t> entries);
    static Mor identity(const Obj& a);
    static Mor compose(const Mor& g, const Mor& f);
    static Mor tensor_mor(const Mor& f, const Mor& g); // Kronecker product
    static Mor swap(const Obj& a, const Obj& b);
    static Mor lunitor(const Obj& a);
    static Mor lunitor_inv(const Obj& a);
    static Mor runitor(const Obj& a);
    static Mor runitor_inv(const Obj& a);
    static Mor associator(const Obj& a, const Obj& b, const Obj& c);
    static Mor associator_inv(const Obj& a, const Obj& b, const Obj& c);
    static Mor curry_left(const Mor& f);
    static Mor uncurry_left(const Mor& g);
    static Mor eval(const Obj& y, const Obj& z);

    static Mor point(const Obj& o, std::uint64_t idx); // 1 -> O, basis vector
    static Mor terminal(const Obj&);                   // always throws: unit is not terminal

    static bool equal(const Mor& f, const Mor& g);
    static std::optional<std::uint64_t> first_difference(const Mor& f, const Mor& g);
};

} // namespace catdyn
