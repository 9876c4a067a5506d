#include "catdyn/subshift.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "catdyn/category.hpp"

namespace catdyn {

Equalizer equalizer(const FinSet::Mor& f, const FinSet::Mor& g) {
    if (!FinSet::obj_equal(f.dom, g.dom) || !FinSet::obj_equal(f.cod, g.cod)) {
        throw TypeError("equalizer requires a parallel pair of morphisms");
    }
    std::vector<std::uint64_t> members;
    std::vector<std::string> labels;
    for (std::uint64_t x = 0; x < f.table.size(); ++x) {
        if (f.table[x] == g.table[x]) {
            members.push_back(x);
            labels.push_back(FinSet::label(f.dom, x));
        }
    }
    auto obj = FinSet::base(labels);
    auto inclusion = FinSet::make_mor(obj, f.dom, members);
    return Equalizer{std::move(obj), std::move(inclusion), std::move(members)};
}

FinSet::Mor factor_through(const Equalizer& eq, const FinSet::Mor& alpha) {
    if (!FinSet::obj_equal(alpha.cod, eq.inclusion.cod)) {
        throw TypeError("factorization target does not match the equalizer's ambient object");
    }
    std::vector<std::uint64_t> table(alpha.table.size());
    for (std::uint64_t a = 0; a < alpha.table.size(); ++a) {
        const auto it = std::lower_bound(eq.members.begin(), eq.members.end(), alpha.table[a]);
        if (it == eq.members.end() || *it != alpha.table[a]) {
            throw TypeError("morphism does not factor through the equalizer: image of '" +
                            FinSet::label(alpha.dom, a) + "' lies outside it");
        }
        table[a] = static_cast<std::uint64_t>(it - eq.members.begin());
    }
    return FinSet::make_mor(alpha.dom, eq.object, table);
}

FlowEqualizer flow_equalizer(const Flow<FinSet>& first, const Flow<FinSet>& second) {
    if (!first.time.same_as(second.time)) {
        throw TypeError("flow equalizer requires both flows to share one time object");
    }
    if (!FinSet::obj_equal(first.omega, second.omega)) {
        throw TypeError("flow equalizer requires both flows to share one carrier");
    }
    const auto& T = first.time.object;
    auto eq = equalizer(FinSet::curry_left(first.phi), FinSet::curry_left(second.phi));

    // The subset is invariant: restrict the first flow along the inclusion and
    // factor the result back through it.
    const auto extend = FinSet::tensor_mor(FinSet::identity(T), eq.inclusion);
    const auto restricted = FinSet::compose(first.phi, extend);
    auto sigma = factor_through(eq, restricted);
    auto flow = as_flow(make_preflow<FinSet>(first.time, eq.object, sigma));

    auto square_first = check_diagram<FinSet>(
        "equalizer.square_first", {sigma, eq.inclusion}, {extend, first.phi});
    auto square_second = check_diagram<FinSet>(
        "equalizer.square_second", {sigma, eq.inclusion}, {extend, second.phi});
    return FlowEqualizer{std::move(eq), std::move(flow),
                         std::move(square_first), std::move(square_second)};
}

Subshift subshift(const Flow<FinSet>& f) {
    const auto sigma = shift_flow<FinSet>(f.time, f.omega);
    const auto transfer = transfer_flow<FinSet>(f);
    auto feq = flow_equalizer(sigma, transfer);
    auto square_shift = feq.square_first;
    auto square_transfer = feq.square_second;
    square_shift.law = "subshift.square_shift";
    square_transfer.law = "subshift.square_transfer";
    return Subshift{std::move(feq.carrier), std::move(feq.flow),
                    std::move(square_shift), std::move(square_transfer)};
}

std::vector<std::uint64_t> subshift_membership_scan(const Flow<FinSet>& f) {
    const auto P = path_space<FinSet>(f.time, f.omega);
    const std::uint64_t np = FinSet::size(P);
    const std::uint64_t nt = FinSet::size(f.time.object);
    const std::uint64_t no = FinSet::size(f.omega);
    std::vector<std::uint64_t> members;
    for (std::uint64_t p = 0; p < np; ++p) {
        bool ok = true;
        for (std::uint64_t s = 0; s < nt && ok; ++s) {
            const std::uint64_t ps = FinSet::hom_digit(P, p, s);
            for (std::uint64_t t = 0; t < nt; ++t) {
                const std::uint64_t lhs = FinSet::hom_digit(P, p, f.time.monoid.add(s, t));
                if (lhs != f.phi.table[t * no + ps]) { ok = false; break; }
            }
        }
        if (ok) members.push_back(p);
    }
    return members;
}

SubshiftMap subshift_map(const Semiconjugacy<FinSet>& h) {
    auto src = subshift(h.source);
    auto tgt = subshift(h.target);
    const auto on_paths = path_map<FinSet>(h.source.time, h.h);
    const auto pushed = FinSet::compose(on_paths, src.carrier.inclusion);
    auto map = factor_through(tgt.carrier, pushed);
    auto naturality = check_diagram<FinSet>(
        "subshift.map_naturality",
        {map, tgt.carrier.inclusion},
        {src.carrier.inclusion, on_paths});
    auto intertwines = is_semiconjugacy(src.flow, tgt.flow, map);
    intertwines.law = "subshift.map_intertwines";
    return SubshiftMap{std::move(src), std::move(tgt), std::move(map),
                       std::move(naturality), std::move(intertwines)};
}

DomainIso subshift_domain_iso(const Flow<FinSet>& f) {
    if (!f.time.monoid.is_commutative()) {
        throw TypeError("the trajectory map is an isomorphism onto the subshift "
                        "only over commutative time");
    }
    auto sub = subshift(f);
    const auto flat = flat_adjoint(f);

    const auto sigma_t = FinSet::curry_left(shift_flow<FinSet>(f.time, f.omega).phi);
    const auto trans_t = FinSet::curry_left(transfer_flow<FinSet>(f).phi);
    auto equalizes = check_diagram<FinSet>(
        "domain_iso.trajectories_equalize", {flat, sigma_t}, {flat, trans_t});

    auto iso = factor_through(sub.carrier, flat);
    const auto at_zero = eval_at_zero<FinSet>(f.time, f.omega);
    auto section = check_diagram<FinSet>(
        "domain_iso.section",
        {iso, sub.carrier.inclusion, at_zero},
        {FinSet::identity(f.omega)});
    auto retraction = check_diagram<FinSet>(
        "domain_iso.retraction",
        {sub.carrier.inclusion, at_zero, iso},
        {FinSet::identity(sub.carrier.object)});
    auto flow_map = is_semiconjugacy(f, sub.flow, iso);
    flow_map.law = "domain_iso.flow_morphism";

    std::vector<LawReport> checks{std::move(equalizes), std::move(section),
                                  std::move(retraction), std::move(flow_map)};
    return DomainIso{std::move(sub), std::move(iso), std::move(checks)};
}

} // namespace catdyn
