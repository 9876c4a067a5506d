#pragma once

#include <cstdint>
#include <vector>

#include "catdyn/dynamics.hpp"
#include "catdyn/finset.hpp"
#include "catdyn/operators.hpp"
#include "catdyn/report.hpp"

namespace catdyn {

/// Equalizer of a parallel pair in the concrete backend: the carrier is a new
/// base object whose elements are the ambient elements (in ambient order) on
/// which the two maps agree, labelled by their ambient labels.
struct Equalizer {
    FinSet::Obj object;
    FinSet::Mor inclusion;                      // E -> ambient
    std::vector<std::uint64_t> members;         // ambient indices, ascending
};

/// Carve out the subset where f and g agree. Throws TypeError unless f and g
/// form a parallel pair.
Equalizer equalizer(const FinSet::Mor& f, const FinSet::Mor& g);

/// Factor alpha: A -> ambient through the inclusion. Throws TypeError if some
/// element of A is sent outside the equalizer (i.e. alpha does not equalize
/// the pair the equalizer was built from).
FinSet::Mor factor_through(const Equalizer& eq, const FinSet::Mor& alpha);

/// A pair of flows on the same carrier restricted to the subset where they
/// agree at all times, together with the induced dynamic on that subset.
struct FlowEqualizer {
    Equalizer carrier;
    Flow<FinSet> flow;          // induced action on the equalizer
    LawReport square_first;     // inclusion ∘ induced = first ∘ (T ⊗ inclusion)
    LawReport square_second;    // inclusion ∘ induced = second ∘ (T ⊗ inclusion)
};

/// Equalize two flows over the same time object and carrier: the subset is
/// invariant under both, and the restriction is again a flow.
FlowEqualizer flow_equalizer(const Flow<FinSet>& first, const Flow<FinSet>& second);

/// The subshift of a flow: inside the path space [T,Ω], the subset where the
/// shift action and the transfer action agree, carrying the restricted shift.
/// Its members are exactly the trajectories of the flow, closed under shifting.
struct Subshift {
    Equalizer carrier;          // inclusion q : E -> [T,Ω]
    Flow<FinSet> flow;          // restricted shift on E
    LawReport square_shift;     // q ∘ σ_E = shift ∘ (T ⊗ q)
    LawReport square_transfer;  // q ∘ σ_E = transfer ∘ (T ⊗ q)
};

Subshift subshift(const Flow<FinSet>& f);

/// Independent pointwise membership test for the subshift carrier: p lies in
/// it iff p(add(s,t)) = phi(t, p(s)) for all s, t. Returns ambient path-space
/// indices in ascending order. Kept alongside the categorical construction as
/// a cross-check; the two must agree on every system.
std::vector<std::uint64_t> subshift_membership_scan(const Flow<FinSet>& f);

/// Action of a flow morphism on subshifts: post-composition on paths restricts
/// to a map of subshift carriers that intertwines the restricted shifts.
struct SubshiftMap {
    Subshift source;
    Subshift target;
    FinSet::Mor map;            // E_source -> E_target
    LawReport naturality;       // q_target ∘ map = [T,h] ∘ q_source
    LawReport intertwines;      // map is a morphism of the restricted shifts
};

SubshiftMap subshift_map(const Semiconjugacy<FinSet>& h);

/// Over commutative time the trajectory map Ω -> [T,Ω] lands in the subshift
/// and the induced factorization is an isomorphism of flows, split by
/// evaluation at the unit. Throws TypeError for noncommutative time.
struct DomainIso {
    Subshift sub;
    FinSet::Mor iso;            // Ω -> E
    std::vector<LawReport> checks;
};

DomainIso subshift_domain_iso(const Flow<FinSet>& f);

} // namespace catdyn
