#pragma once

#include <cstdint>
#include <vector>

#include "catdyn/monoid.hpp"

namespace catdyn {

/// Exhaustive enumeration of small dynamical systems: every monoid on the
/// labelled carriers {"0"}, {"0","1"}, ... up to the given size, and for each
/// one every action table on a small state carrier, classified as a valid
/// flow or not.
///
/// Two kernels produce the same answer: a plain serial loop kept as the
/// reference, and an OpenMP-parallel version that splits the table range into
/// chunks and merges them in order, so its output is deterministic and
/// byte-identical to the serial one regardless of thread count.

/// All monoids on {"0",...,"k-1"} for k = 1..max_size, ordered by size and
/// then lexicographically by operation table.
std::vector<FiniteMonoid> enumerate_monoids(std::uint64_t max_size);

/// Number of action tables T x Ω -> Ω for the given carrier size (|Ω|^(|T|·|Ω|),
/// with the empty carrier contributing exactly one empty table). Throws
/// CarrierError when the count does not fit in 64 bits.
std::uint64_t flow_table_count(const FiniteMonoid& m, std::uint64_t carrier);

/// Decode a table index into the action table in the canonical order: slot
/// t·|Ω|+x holds the image of (t, x), and slot 0 is the most significant
/// digit of the index.
std::vector<std::uint64_t> decode_flow_table(const FiniteMonoid& m, std::uint64_t carrier,
                                             std::uint64_t index);

/// Direct check that a table is a flow: the unit row is the identity and
/// acting by add(s,t) equals acting by t then by s. Agrees with the full
/// diagram-level validation on every table; the tests pin that down.
bool flow_table_valid(const FiniteMonoid& m, std::uint64_t carrier,
                      const std::vector<std::uint64_t>& table);

std::uint64_t count_valid_flows_serial(const FiniteMonoid& m, std::uint64_t carrier);
std::uint64_t count_valid_flows_parallel(const FiniteMonoid& m, std::uint64_t carrier);

/// Indices of all valid flow tables, ascending.
std::vector<std::uint64_t> valid_flow_indices_serial(const FiniteMonoid& m,
                                                     std::uint64_t carrier);
std::vector<std::uint64_t> valid_flow_indices_parallel(const FiniteMonoid& m,
                                                       std::uint64_t carrier);

struct SweepSystem {
    FiniteMonoid monoid;
    std::uint64_t carrier_size = 0;
    std::uint64_t total_tables = 0;
    std::uint64_t valid_flows = 0;
};

struct SweepSummary {
    std::vector<SweepSystem> systems;
    std::uint64_t flows_total() const;
};

/// Classify every system with time up to max_monoid elements and carriers of
/// size 0..max_carrier.
SweepSummary sweep_flows(std::uint64_t max_monoid, std::uint64_t max_carrier, bool parallel);

} // namespace catdyn
