#include "catdyn/finset.hpp"

#include <algorithm>
#include <unordered_set>

namespace catdyn {

namespace {

using Obj = FinSet::Obj;
using Node = FinSet::Node;
using Tag = FinSet::Node::Tag;

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw CarrierError("carrier size overflows 64 bits");
    return r;
}

// b^e with overflow checking; 0^0 = 1.
std::uint64_t pow_checked(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul_checked(r, b);
    return r;
}

Obj make_node(Tag tag, std::vector<std::string> labels, Obj a, Obj b) {
    auto n = std::make_shared<Node>();
    n->tag = tag;
    n->labels = std::move(labels);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

void expect(bool cond, const char* msg) {
    if (!cond) throw TypeError(msg);
}

} // namespace

Obj FinSet::base(std::vector<std::string> labels) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) throw TypeError("empty element label");
        if (!seen.insert(l).second) throw TypeError("duplicate element label: " + l);
    }
    return make_node(Tag::base, std::move(labels), nullptr, nullptr);
}

Obj FinSet::unit() {
    static const Obj u = make_node(Tag::unit, {}, nullptr, nullptr);
    return u;
}

Obj FinSet::tensor(const Obj& a, const Obj& b) {
    return make_node(Tag::tensor, {}, a, b);
}

Obj FinSet::hom(const Obj& y, const Obj& z) {
    return make_node(Tag::hom, {}, y, z);
}

bool FinSet::obj_equal(const Obj& x, const Obj& y) {
    if (x == y) return true;
    if (!x || !y || x->tag != y->tag) return false;
    switch (x->tag) {
        case Tag::base: return x->labels == y->labels;
        case Tag::unit: return true;
        default: return obj_equal(x->a, y->a) && obj_equal(x->b, y->b);
    }
}

std::uint64_t FinSet::size(const Obj& o) {
    switch (o->tag) {
        case Tag::base: return o->labels.size();
        case Tag::unit: return 1;
        case Tag::tensor: return mul_checked(size(o->a), size(o->b));
        case Tag::hom: return pow_checked(size(o->b), size(o->a));
    }
    throw Error("corrupt object descriptor");
}

std::string FinSet::label(const Obj& o, std::uint64_t idx) {
    switch (o->tag) {
        case Tag::base:
            expect(idx < o->labels.size(), "element index out of range");
            return o->labels[idx];
        case Tag::unit:
            expect(idx == 0, "element index out of range");
            return "*";
        case Tag::tensor: {
            const std::uint64_t nb = size(o->b);
            return "(" + label(o->a, idx / nb) + "," + label(o->b, idx % nb) + ")";
        }
        case Tag::hom: {
            const std::uint64_t ny = size(o->a);
            std::string s = "p[";
            for (std::uint64_t j = 0; j < ny; ++j) {
                if (j) s += ",";
                s += label(o->a, j) + "→" + label(o->b, hom_digit(o, idx, j));
            }
            return s + "]";
        }
    }
    throw Error("corrupt object descriptor");
}

std::uint64_t FinSet::hom_digit(const Obj& h, std::uint64_t elem, std::uint64_t pos) {
    expect(h->tag == Tag::hom, "hom_digit on non-function-space object");
    const std::uint64_t ny = size(h->a), nz = size(h->b);
    expect(pos < ny, "argument position out of range");
    // first argument is the most significant digit
    std::uint64_t p = pow_checked(nz, ny - 1 - pos);
    return (elem / p) % nz;
}

std::uint64_t FinSet::hom_encode(const Obj& h, const std::vector<std::uint64_t>& digits) {
    expect(h->tag == Tag::hom, "hom_encode on non-function-space object");
    const std::uint64_t ny = size(h->a), nz = size(h->b);
    expect(digits.size() == ny, "tabulation has wrong arity");
    std::uint64_t e = 0;
    for (std::uint64_t j = 0; j < ny; ++j) {
        expect(digits[j] < nz, "tabulation value out of range");
        e = mul_checked(e, nz) + digits[j];
    }
    return e;
}

FinSet::Mor FinSet::make_mor(Obj dom, Obj cod, std::vector<std::uint64_t> table) {
    const std::uint64_t nd = size(dom), nc = size(cod);
    expect(table.size() == nd, "table size does not match domain carrier");
    for (std::uint64_t v : table)
        expect(v < nc, "table value outside codomain carrier");
    return Mor{std::move(dom), std::move(cod), std::move(table)};
}

FinSet::Mor FinSet::identity(const Obj& a) {
    const std::uint64_t n = size(a);
    std::vector<std::uint64_t> t(n);
    for (std::uint64_t i = 0; i < n; ++i) t[i] = i;
    return Mor{a, a, std::move(t)};
}

FinSet::Mor FinSet::compose(const Mor& g, const Mor& f) {
    expect(obj_equal(g.dom, f.cod), "compose: codomain/domain mismatch");
    std::vector<std::uint64_t> t(f.table.size());
    for (std::size_t i = 0; i < f.table.size(); ++i) t[i] = g.table[f.table[i]];
    return Mor{f.dom, g.cod, std::move(t)};
}

FinSet::Mor FinSet::tensor_mor(const Mor& f, const Mor& g) {
    const std::uint64_t nfd = size(f.dom), ngd = size(g.dom), ngc = size(g.cod);
    std::vector<std::uint64_t> t(mul_checked(nfd, ngd));
    for (std::uint64_t i = 0; i < nfd; ++i)
        for (std::uint64_t j = 0; j < ngd; ++j)
            t[i * ngd + j] = f.table[i] * ngc + g.table[j];
    return Mor{tensor(f.dom, g.dom), tensor(f.cod, g.cod), std::move(t)};
}

FinSet::Mor FinSet::swap(const Obj& a, const Obj& b) {
    const std::uint64_t na = size(a), nb = size(b);
    std::vector<std::uint64_t> t(mul_checked(na, nb));
    for (std::uint64_t i = 0; i < na; ++i)
        for (std::uint64_t j = 0; j < nb; ++j)
            t[i * nb + j] = j * na + i;
    return Mor{tensor(a, b), tensor(b, a), std::move(t)};
}

FinSet::Mor FinSet::lunitor(const Obj& a) {
    Mor m = identity(a);
    m.dom = tensor(unit(), a);
    return m;
}

FinSet::Mor FinSet::lunitor_inv(const Obj& a) {
    Mor m = identity(a);
    m.cod = tensor(unit(), a);
    return m;
}

FinSet::Mor FinSet::runitor(const Obj& a) {
    Mor m = identity(a);
    m.dom = tensor(a, unit());
    return m;
}

FinSet::Mor FinSet::runitor_inv(const Obj& a) {
    Mor m = identity(a);
    m.cod = tensor(a, unit());
    return m;
}

FinSet::Mor FinSet::associator(const Obj& a, const Obj& b, const Obj& c) {
    // ((x,y),z) and (x,(y,z)) enumerate identically, so the table is the
    // identity permutation; only the endpoints differ.
    Mor m = identity(tensor(tensor(a, b), c));
    m.cod = tensor(a, tensor(b, c));
    return m;
}

FinSet::Mor FinSet::associator_inv(const Obj& a, const Obj& b, const Obj& c) {
    Mor m = identity(tensor(a, tensor(b, c)));
    m.cod = tensor(tensor(a, b), c);
    return m;
}

FinSet::Mor FinSet::curry_left(const Mor& f) {
    expect(f.dom->tag == Tag::tensor, "curry_left: domain is not a tensor");
    const Obj y = f.dom->a, x = f.dom->b, z = f.cod;
    const std::uint64_t ny = size(y), nx = size(x), nz = size(z);
    const Obj h = hom(y, z);
    std::vector<std::uint64_t> t(nx);
    for (std::uint64_t i = 0; i < nx; ++i) {
        std::uint64_t e = 0;
        for (std::uint64_t j = 0; j < ny; ++j) e = e * nz + f.table[j * nx + i];
        t[i] = e;
    }
    return Mor{x, h, std::move(t)};
}

FinSet::Mor FinSet::uncurry_left(const Mor& g) {
    expect(g.cod->tag == Tag::hom, "uncurry_left: codomain is not a function space");
    const Obj y = g.cod->a, z = g.cod->b, x = g.dom;
    const std::uint64_t ny = size(y), nx = size(x);
    std::vector<std::uint64_t> t(mul_checked(ny, nx));
    for (std::uint64_t j = 0; j < ny; ++j)
        for (std::uint64_t i = 0; i < nx; ++i)
            t[j * nx + i] = hom_digit(g.cod, g.table[i], j);
    return Mor{tensor(y, x), z, std::move(t)};
}

FinSet::Mor FinSet::eval(const Obj& y, const Obj& z) {
    const Obj h = hom(y, z);
    const std::uint64_t ny = size(y), nh = size(h);
    std::vector<std::uint64_t> t(mul_checked(ny, nh));
    for (std::uint64_t j = 0; j < ny; ++j)
        for (std::uint64_t e = 0; e < nh; ++e)
            t[j * nh + e] = hom_digit(h, e, j);
    return Mor{tensor(y, h), z, std::move(t)};
}

FinSet::Mor FinSet::point(const Obj& o, std::uint64_t idx) {
    expect(idx < size(o), "point index out of range");
    return Mor{unit(), o, {idx}};
}

FinSet::Mor FinSet::terminal(const Obj& o) {
    return Mor{o, unit(), std::vector<std::uint64_t>(size(o), 0)};
}

bool FinSet::equal(const Mor& f, const Mor& g) {
    expect(obj_equal(f.dom, g.dom) && obj_equal(f.cod, g.cod),
           "equal: endpoint mismatch");
    return f.table == g.table;
}

std::optional<std::uint64_t> FinSet::first_difference(const Mor& f, const Mor& g) {
    expect(obj_equal(f.dom, g.dom) && obj_equal(f.cod, g.cod),
           "first_difference: endpoint mismatch");
    for (std::size_t i = 0; i < f.table.size(); ++i)
        if (f.table[i] != g.table[i]) return i;
    return std::nullopt;
}

} // namespace catdyn
