#include "catdyn/dot.hpp"

#include <sstream>

namespace catdyn {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

} // namespace

std::string export_dot(const SystemDocument& doc) {
    std::ostringstream out;
    out << "digraph system {\n";
    out << "  rankdir=LR;\n";
    for (const auto& x : doc.omega_elements) {
        out << "  " << quoted(x) << ";\n";
    }
    const std::size_t n = doc.omega_elements.size();
    for (std::size_t t = 0; t < doc.time_elements.size(); ++t) {
        if (t == doc.time_unit) continue;
        for (std::size_t x = 0; x < n; ++x) {
            out << "  " << quoted(doc.omega_elements[x]) << " -> "
                << quoted(doc.omega_elements[doc.flow_table[t * n + x]])
                << " [label=" << quoted(doc.time_elements[t]) << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace catdyn
