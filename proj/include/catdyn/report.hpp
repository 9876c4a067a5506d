#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace catdyn {

// Library-level failures: malformed compositions, carrier overflow, misuse.
// Law violations are never exceptions; they are data (LawReport).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Endpoint/type mismatches between objects or morphisms.
struct TypeError : Error {
    using Error::Error;
};

// A carrier whose size cannot be represented or exceeds a configured cap.
struct CarrierError : Error {
    using Error::Error;
};

// Operation requires the tensor unit to be a terminal object and the
// backend's unit is not.
struct TerminalUnitError : Error {
    using Error::Error;
};

/// Outcome of one equational check. `holds` is true iff no counterexample
/// was found; when false, `counterexample` names the first witness in
/// canonical carrier order and `witness` is its index in the shared domain.
struct LawReport {
    std::string law;
    bool holds = true;
    std::optional<std::string> counterexample;
    std::optional<std::uint64_t> witness;

    static LawReport pass(std::string name) { return {std::move(name), true, {}, {}}; }
    static LawReport fail(std::string name, std::string cx, std::uint64_t idx) {
        return {std::move(name), false, std::move(cx), idx};
    }
};

inline bool all_hold(const std::vector<LawReport>& rs) {
    for (const auto& r : rs)
        if (!r.holds) return false;
    return true;
}

} // namespace catdyn
