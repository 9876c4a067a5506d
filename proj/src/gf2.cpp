#include "catdyn/gf2.hpp"

namespace catdyn {

namespace {

using Obj = Gf2::Obj;
using Node = Gf2::Node;
using Tag = Gf2::Node::Tag;
using Mor = Gf2::Mor;

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw CarrierError("dimension overflows 64 bits");
    return r;
}

Obj make_node(Tag tag, std::uint64_t dim, Obj a, Obj b) {
    auto n = std::make_shared<Node>();
    n->tag = tag;
    n->dim = dim;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

void expect(bool cond, const char* msg) {
    if (!cond) throw TypeError(msg);
}

Mor zero_mor(Obj dom, Obj cod) {
    const std::uint64_t r = Gf2::dim(cod), c = Gf2::dim(dom);
    return Mor{std::move(dom), std::move(cod), r, c,
               std::vector<std::uint8_t>(mul_checked(r, c), 0)};
}

} // namespace

Obj Gf2::base(std::uint64_t dim) { return make_node(Tag::base, dim, nullptr, nullptr); }

Obj Gf2::unit() {
    static const Obj u = make_node(Tag::unit, 1, nullptr, nullptr);
    return u;
}

Obj Gf2::tensor(const Obj& a, const Obj& b) { return make_node(Tag::tensor, 0, a, b); }

Obj Gf2::hom(const Obj& y, const Obj& z) { return make_node(Tag::hom, 0, y, z); }

bool Gf2::obj_equal(const Obj& x, const Obj& y) {
    if (x == y) return true;
    if (!x || !y || x->tag != y->tag) return false;
    switch (x->tag) {
        case Tag::base: return x->dim == y->dim;
        case Tag::unit: return true;
        default: return obj_equal(x->a, y->a) && obj_equal(x->b, y->b);
    }
}

std::uint64_t Gf2::dim(const Obj& o) {
    switch (o->tag) {
        case Tag::base: return o->dim;
        case Tag::unit: return 1;
        case Tag::tensor:
        case Tag::hom: return mul_checked(dim(o->a), dim(o->b));
    }
    throw Error("corrupt object descriptor");
}

Mor Gf2::make_mor(Obj dom, Obj cod, std::vector<std::uint8_t> entries) {
    const std::uint64_t r = dim(cod), c = dim(dom);
    expect(entries.size() == mul_checked(r, c), "matrix shape does not match endpoints");
    for (auto v : entries) expect(v <= 1, "matrix entry not in GF(2)");
    return Mor{std::move(dom), std::move(cod), r, c, std::move(entries)};
}

Mor Gf2::identity(const Obj& a) {
    Mor m = zero_mor(a, a);
    for (std::uint64_t i = 0; i < m.rows; ++i) m.at(i, i) = 1;
    return m;
}

Mor Gf2::compose(const Mor& g, const Mor& f) {
    expect(obj_equal(g.dom, f.cod), "compose: codomain/domain mismatch");
    Mor r = zero_mor(f.dom, g.cod);
    for (std::uint64_t i = 0; i < g.rows; ++i)
        for (std::uint64_t k = 0; k < g.cols; ++k) {
            if (!g.at(i, k)) continue;
            for (std::uint64_t j = 0; j < f.cols; ++j)
                r.at(i, j) ^= f.at(k, j);
        }
    return r;
}

Mor Gf2::tensor_mor(const Mor& f, const Mor& g) {
    Mor r = zero_mor(tensor(f.dom, g.dom), tensor(f.cod, g.cod));
    for (std::uint64_t i = 0; i < f.rows; ++i)
        for (std::uint64_t j = 0; j < g.rows; ++j)
            for (std::uint64_t k = 0; k < f.cols; ++k)
                for (std::uint64_t l = 0; l < g.cols; ++l)
                    r.at(i * g.rows + j, k * g.cols + l) = f.at(i, k) & g.at(j, l);
    return r;
}

Mor Gf2::swap(const Obj& a, const Obj& b) {
    const std::uint64_t na = dim(a), nb = dim(b);
    Mor r = zero_mor(tensor(a, b), tensor(b, a));
    for (std::uint64_t i = 0; i < na; ++i)
        for (std::uint64_t j = 0; j < nb; ++j)
            r.at(j * na + i, i * nb + j) = 1;
    return r;
}

Mor Gf2::lunitor(const Obj& a) {
    Mor m = identity(a);
    m.dom = tensor(unit(), a);
    return m;
}

Mor Gf2::lunitor_inv(const Obj& a) {
    Mor m = identity(a);
    m.cod = tensor(unit(), a);
    return m;
}

Mor Gf2::runitor(const Obj& a) {
    Mor m = identity(a);
    m.dom = tensor(a, unit());
    return m;
}

Mor Gf2::runitor_inv(const Obj& a) {
    Mor m = identity(a);
    m.cod = tensor(a, unit());
    return m;
}

Mor Gf2::associator(const Obj& a, const Obj& b, const Obj& c) {
    Mor m = identity(tensor(tensor(a, b), c));
    m.cod = tensor(a, tensor(b, c));
    return m;
}

Mor Gf2::associator_inv(const Obj& a, const Obj& b, const Obj& c) {
    Mor m = identity(tensor(a, tensor(b, c)));
    m.cod = tensor(tensor(a, b), c);
    return m;
}

Mor Gf2::curry_left(const Mor& f) {
    expect(f.dom->tag == Tag::tensor, "curry_left: domain is not a tensor");
    const Obj y = f.dom->a, x = f.dom->b, z = f.cod;
    const std::uint64_t ny = dim(y), nx = dim(x), nz = dim(z);
    Mor r = zero_mor(x, hom(y, z));
    for (std::uint64_t zz = 0; zz < nz; ++zz)
        for (std::uint64_t yy = 0; yy < ny; ++yy)
            for (std::uint64_t xx = 0; xx < nx; ++xx)
                r.at(zz * ny + yy, xx) = f.at(zz, yy * nx + xx);
    return r;
}

Mor Gf2::uncurry_left(const Mor& g) {
    expect(g.cod->tag == Tag::hom, "uncurry_left: codomain is not a hom object");
    const Obj y = g.cod->a, z = g.cod->b, x = g.dom;
    const std::uint64_t ny = dim(y), nx = dim(x), nz = dim(z);
    Mor r = zero_mor(tensor(y, x), z);
    for (std::uint64_t zz = 0; zz < nz; ++zz)
        for (std::uint64_t yy = 0; yy < ny; ++yy)
            for (std::uint64_t xx = 0; xx < nx; ++xx)
                r.at(zz, yy * nx + xx) = g.at(zz * ny + yy, xx);
    return r;
}

Mor Gf2::eval(const Obj& y, const Obj& z) {
    // e_y ⊗ E_{z',y'}  |->  δ_{y,y'} e_{z'}
    const std::uint64_t ny = dim(y), nz = dim(z), nh = mul_checked(ny, nz);
    Mor r = zero_mor(tensor(y, hom(y, z)), z);
    for (std::uint64_t yy = 0; yy < ny; ++yy)
        for (std::uint64_t zz = 0; zz < nz; ++zz)
            r.at(zz, yy * nh + (zz * ny + yy)) = 1;
    return r;
}

Mor Gf2::point(const Obj& o, std::uint64_t idx) {
    expect(idx < dim(o), "basis index out of range");
    Mor r = zero_mor(unit(), o);
    r.at(idx, 0) = 1;
    return r;
}

Mor Gf2::terminal(const Obj&) {
    throw TerminalUnitError("the GF(2) tensor unit is not terminal");
}

bool Gf2::equal(const Mor& f, const Mor& g) {
    expect(obj_equal(f.dom, g.dom) && obj_equal(f.cod, g.cod), "equal: endpoint mismatch");
    return f.m == g.m;
}

std::optional<std::uint64_t> Gf2::first_difference(const Mor& f, const Mor& g) {
    expect(obj_equal(f.dom, g.dom) && obj_equal(f.cod, g.cod),
           "first_difference: endpoint mismatch");
    for (std::uint64_t c = 0; c < f.cols; ++c)
        for (std::uint64_t r = 0; r < f.rows; ++r)
            if (f.at(r, c) != g.at(r, c)) return c;
    return std::nullopt;
}

} // namespace catdyn
