#pragma once

#include <string>

#include "catdyn/doc.hpp"

namespace catdyn {

/// Render the system's transition structure in the DOT graph language: one
/// node per carrier element in carrier order, and for every non-unit time
/// element one labelled edge per state, in time-then-carrier order. The unit
/// row is omitted (it is the identity on any valid system). Output is
/// byte-stable for identical input.
std::string export_dot(const SystemDocument& doc);

} // namespace catdyn
