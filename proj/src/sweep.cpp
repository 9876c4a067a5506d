#include "catdyn/sweep.hpp"

#include <algorithm>
#include <string>

#include "catdyn/report.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace catdyn {

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && out > UINT64_MAX / base) {
            throw CarrierError("table space too large to index in 64 bits");
        }
        out *= base;
    }
    return out;
}

/// Advance the digit vector (base n, slot 0 most significant) to the next
/// table. Returns false on wrap-around.
bool next_table(std::vector<std::uint64_t>& t, std::uint64_t n) {
    std::size_t i = t.size();
    while (i > 0 && t[i - 1] + 1 == n) t[--i] = 0;
    if (i == 0) return false;
    ++t[i - 1];
    return true;
}

void decode_into(std::uint64_t carrier, std::uint64_t index, std::vector<std::uint64_t>& t) {
    for (std::size_t p = t.size(); p > 0; --p) {
        t[p - 1] = index % carrier;
        index /= carrier;
    }
}

/// Run fn(k, table) over indices [lo, hi) with an amortized-O(1) odometer.
template <class Fn>
void scan_range(const FiniteMonoid& m, std::uint64_t carrier, std::uint64_t lo,
                std::uint64_t hi, Fn&& fn) {
    std::vector<std::uint64_t> t(m.size() * carrier, 0);
    if (carrier == 0) {
        if (lo < hi) fn(lo, t);
        return;
    }
    if (lo >= hi) return;
    decode_into(carrier, lo, t);
    for (std::uint64_t k = lo; k < hi; ++k) {
        fn(k, t);
        if (!next_table(t, carrier)) break;
    }
}

std::uint64_t chunk_bound(std::uint64_t total, int chunk, int chunks) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(total) * static_cast<unsigned>(chunk)) /
        static_cast<unsigned>(chunks));
}

int chunk_count(std::uint64_t total) {
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    const std::uint64_t wanted = static_cast<std::uint64_t>(threads) * 8;
    return static_cast<int>(std::min<std::uint64_t>(std::max<std::uint64_t>(wanted, 1), total ? total : 1));
}

} // namespace

std::vector<FiniteMonoid> enumerate_monoids(std::uint64_t max_size) {
    std::vector<FiniteMonoid> out;
    for (std::uint64_t n = 1; n <= max_size; ++n) {
        std::vector<std::string> labels;
        for (std::uint64_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
        std::vector<std::uint64_t> t(n * n, 0);
        while (true) {
            // a two-sided unit, if any, is unique
            std::uint64_t unit = n;
            for (std::uint64_t e = 0; e < n && unit == n; ++e) {
                bool ok = true;
                for (std::uint64_t x = 0; x < n && ok; ++x) {
                    ok = t[e * n + x] == x && t[x * n + e] == x;
                }
                if (ok) unit = e;
            }
            if (unit < n) {
                bool assoc = true;
                for (std::uint64_t a = 0; a < n && assoc; ++a)
                    for (std::uint64_t b = 0; b < n && assoc; ++b)
                        for (std::uint64_t c = 0; c < n && assoc; ++c)
                            assoc = t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]];
                if (assoc) {
                    std::vector<std::uint32_t> table(t.begin(), t.end());
                    out.push_back(FiniteMonoid::make(labels, table, static_cast<std::uint32_t>(unit)));
                }
            }
            if (!next_table(t, n)) break;
        }
    }
    return out;
}

std::uint64_t flow_table_count(const FiniteMonoid& m, std::uint64_t carrier) {
    if (carrier == 0) return 1; // exactly the empty table
    return checked_pow(carrier, m.size() * carrier);
}

std::vector<std::uint64_t> decode_flow_table(const FiniteMonoid& m, std::uint64_t carrier,
                                             std::uint64_t index) {
    if (index >= flow_table_count(m, carrier)) {
        throw CarrierError("flow table index out of range");
    }
    std::vector<std::uint64_t> t(m.size() * carrier, 0);
    if (carrier > 0) decode_into(carrier, index, t);
    return t;
}

bool flow_table_valid(const FiniteMonoid& m, std::uint64_t carrier,
                      const std::vector<std::uint64_t>& table) {
    const std::uint64_t nt = m.size();
    for (std::uint64_t x = 0; x < carrier; ++x) {
        if (table[m.unit * carrier + x] != x) return false;
    }
    for (std::uint64_t s = 0; s < nt; ++s) {
        for (std::uint64_t u = 0; u < nt; ++u) {
            const std::uint64_t su = m.add(s, u);
            for (std::uint64_t x = 0; x < carrier; ++x) {
                if (table[su * carrier + x] != table[s * carrier + table[u * carrier + x]]) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::uint64_t count_valid_flows_serial(const FiniteMonoid& m, std::uint64_t carrier) {
    std::uint64_t count = 0;
    scan_range(m, carrier, 0, flow_table_count(m, carrier),
               [&](std::uint64_t, const std::vector<std::uint64_t>& t) {
                   if (flow_table_valid(m, carrier, t)) ++count;
               });
    return count;
}

std::uint64_t count_valid_flows_parallel(const FiniteMonoid& m, std::uint64_t carrier) {
    const std::uint64_t total = flow_table_count(m, carrier);
    const int chunks = chunk_count(total);
    std::uint64_t count = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : count)
#endif
    for (int c = 0; c < chunks; ++c) {
        std::uint64_t local = 0;
        scan_range(m, carrier, chunk_bound(total, c, chunks), chunk_bound(total, c + 1, chunks),
                   [&](std::uint64_t, const std::vector<std::uint64_t>& t) {
                       if (flow_table_valid(m, carrier, t)) ++local;
                   });
        count += local;
    }
    return count;
}

std::vector<std::uint64_t> valid_flow_indices_serial(const FiniteMonoid& m,
                                                     std::uint64_t carrier) {
    std::vector<std::uint64_t> out;
    scan_range(m, carrier, 0, flow_table_count(m, carrier),
               [&](std::uint64_t k, const std::vector<std::uint64_t>& t) {
                   if (flow_table_valid(m, carrier, t)) out.push_back(k);
               });
    return out;
}

std::vector<std::uint64_t> valid_flow_indices_parallel(const FiniteMonoid& m,
                                                       std::uint64_t carrier) {
    const std::uint64_t total = flow_table_count(m, carrier);
    const int chunks = chunk_count(total);
    std::vector<std::vector<std::uint64_t>> buckets(static_cast<std::size_t>(chunks));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int c = 0; c < chunks; ++c) {
        auto& bucket = buckets[static_cast<std::size_t>(c)];
        scan_range(m, carrier, chunk_bound(total, c, chunks), chunk_bound(total, c + 1, chunks),
                   [&](std::uint64_t k, const std::vector<std::uint64_t>& t) {
                       if (flow_table_valid(m, carrier, t)) bucket.push_back(k);
                   });
    }
    std::vector<std::uint64_t> out;
    for (const auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::uint64_t SweepSummary::flows_total() const {
    std::uint64_t total = 0;
    for (const auto& s : systems) total += s.valid_flows;
    return total;
}

SweepSummary sweep_flows(std::uint64_t max_monoid, std::uint64_t max_carrier, bool parallel) {
    SweepSummary out;
    for (const auto& m : enumerate_monoids(max_monoid)) {
        for (std::uint64_t n = 0; n <= max_carrier; ++n) {
            SweepSystem sys;
            sys.monoid = m;
            sys.carrier_size = n;
            sys.total_tables = flow_table_count(m, n);
            sys.valid_flows =
                parallel ? count_valid_flows_parallel(m, n) : count_valid_flows_serial(m, n);
            out.systems.push_back(std::move(sys));
        }
    }
    return out;
}

} // namespace catdyn
