#include "catdyn/doc.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "catdyn/operators.hpp"
#include "catdyn/states.hpp"
#include "catdyn/subshift.hpp"

namespace catdyn {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bail(const std::string& msg) { throw ParseError(msg); }

const json& expect_object(const json& j, const std::string& what) {
    if (!j.is_object()) bail(what + " must be a JSON object");
    std::set<std::string> keys;
    for (const auto& item : j.items()) {
        if (!keys.insert(item.key()).second) {
            bail(what + " has a duplicate key '" + item.key() + "'");
        }
    }
    return j;
}

void expect_keys(const json& j, const std::string& what,
                 const std::vector<std::string>& required,
                 const std::vector<std::string>& optional = {}) {
    for (const auto& k : required) {
        if (!j.contains(k)) bail(what + " is missing the required field '" + k + "'");
    }
    for (const auto& item : j.items()) {
        const bool known =
            std::find(required.begin(), required.end(), item.key()) != required.end() ||
            std::find(optional.begin(), optional.end(), item.key()) != optional.end();
        if (!known) bail(what + " has an unknown field '" + item.key() + "'");
    }
}

std::vector<std::string> parse_labels(const json& j, const std::string& what,
                                      bool allow_empty_list) {
    if (!j.is_array()) bail(what + " must be an array of labels");
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& e : j) {
        if (!e.is_string()) bail(what + " entries must be strings");
        const std::string s = e.get<std::string>();
        if (s.empty()) bail(what + " entries must be non-empty");
        if (!seen.insert(s).second) bail(what + " has a duplicate label '" + s + "'");
        out.push_back(s);
    }
    if (out.empty() && !allow_empty_list) bail(what + " must not be empty");
    return out;
}

std::uint64_t resolve(const std::unordered_map<std::string, std::uint64_t>& index,
                      const json& j, const std::string& what) {
    if (!j.is_string()) bail(what + " must be a declared label");
    const auto it = index.find(j.get<std::string>());
    if (it == index.end()) bail(what + " references the undeclared label '" + j.get<std::string>() + "'");
    return it->second;
}

/// Read a nested table {row label: {col label: value label}} with exactly the
/// given rows and columns, values resolved against `values`.
std::vector<std::uint64_t> parse_table(const json& j, const std::string& what,
                                       const std::vector<std::string>& rows,
                                       const std::vector<std::string>& cols,
                                       const std::unordered_map<std::string, std::uint64_t>& values) {
    expect_object(j, what);
    if (j.size() != rows.size()) bail(what + " must have one entry per row label");
    std::vector<std::uint64_t> out(rows.size() * cols.size(), 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!j.contains(rows[r])) bail(what + " is missing the row '" + rows[r] + "'");
        const json& row = j.at(rows[r]);
        expect_object(row, what + " row '" + rows[r] + "'");
        if (row.size() != cols.size()) {
            bail(what + " row '" + rows[r] + "' must have one entry per column label");
        }
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (!row.contains(cols[c])) {
                bail(what + " row '" + rows[r] + "' is missing the column '" + cols[c] + "'");
            }
            out[r * cols.size() + c] =
                resolve(values, row.at(cols[c]), what + " entry (" + rows[r] + "," + cols[c] + ")");
        }
    }
    return out;
}

std::unordered_map<std::string, std::uint64_t> label_index(const std::vector<std::string>& labels) {
    std::unordered_map<std::string, std::uint64_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
    return index;
}

json table_json(const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                const std::vector<std::string>& values, const std::vector<std::uint64_t>& table) {
    json out = json::object();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        json row = json::object();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            row[cols[c]] = values[table[r * cols.size() + c]];
        }
        out[rows[r]] = std::move(row);
    }
    return out;
}

json law_json(const LawReport& r) {
    json j;
    j["law"] = r.law;
    j["holds"] = r.holds;
    if (r.counterexample) j["counterexample"] = *r.counterexample;
    return j;
}

json laws_json(const std::vector<LawReport>& laws) {
    json out = json::array();
    for (const auto& l : laws) out.push_back(law_json(l));
    return out;
}

/// The document resolved into backend objects, with every system-level law
/// checked along the way. `ok` gates the command-specific constructions.
struct Compiled {
    std::vector<LawReport> laws;
    bool ok = false;
    std::optional<TimeObject<FinSet>> time;
    FinSet::Obj omega;
    std::optional<Flow<FinSet>> flow;
};

Compiled compile(const SystemDocument& doc) {
    Compiled c;
    c.laws = FiniteMonoid::validate(doc.time_elements, doc.time_table, doc.time_unit);
    if (!all_hold(c.laws)) return c;
    const auto m = FiniteMonoid::make(doc.time_elements, doc.time_table, doc.time_unit);
    c.time = make_time_object_finset(m);
    for (auto& l : validate_time_object(*c.time)) c.laws.push_back(std::move(l));
    c.omega = FinSet::base(doc.omega_elements);
    auto pre = make_preflow<FinSet>(
        *c.time, c.omega,
        FinSet::make_mor(FinSet::tensor(c.time->object, c.omega), c.omega, doc.flow_table));
    const auto fr = validate_flow(pre);
    c.laws.push_back(fr.unit_law);
    c.laws.push_back(fr.composition);
    c.ok = all_hold(c.laws);
    if (c.ok) c.flow = as_flow(pre);
    return c;
}

json report_shell(const std::string& command, const std::vector<LawReport>& laws) {
    json out;
    out["command"] = command;
    out["laws"] = laws_json(laws);
    out["all_hold"] = all_hold(laws);
    return out;
}

/// Guard a function-space carrier against the size cap. Returns its size.
std::uint64_t capped_size(const FinSet::Obj& o, std::uint64_t cap, const std::string& what) {
    std::uint64_t n = 0;
    try {
        n = FinSet::size(o);
    } catch (const CarrierError&) {
        throw CapError("refusing to build the " + what + ": too many elements to index");
    }
    if (n > cap) {
        std::ostringstream msg;
        msg << "refusing to build the " << what << ": " << n << " elements exceeds the cap of "
            << cap << " (raise it with --max-carrier or CATDYN_MAX_CARRIER)";
        throw CapError(msg.str());
    }
    return n;
}

std::vector<std::string> object_labels(const FinSet::Obj& o) {
    std::vector<std::string> out;
    const std::uint64_t n = FinSet::size(o);
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(FinSet::label(o, i));
    return out;
}

SystemDocument derived_document(const SystemDocument& base, const FinSet::Obj& carrier,
                                const std::vector<std::uint64_t>& flow_table) {
    SystemDocument out;
    out.time_elements = base.time_elements;
    out.time_table = base.time_table;
    out.time_unit = base.time_unit;
    out.omega_elements = object_labels(carrier);
    out.flow_table = flow_table;
    return out;
}

} // namespace

SystemDocument parse_system(const std::string& json_text) {
    // The DOM parser silently keeps the last of two identical keys, so
    // duplicates have to be caught during the parse itself.
    std::vector<std::set<std::string>> open_objects;
    const json::parser_callback_t watch_keys = [&](int, json::parse_event_t event, json& value) {
        if (event == json::parse_event_t::object_start) {
            open_objects.emplace_back();
        } else if (event == json::parse_event_t::object_end) {
            open_objects.pop_back();
        } else if (event == json::parse_event_t::key) {
            const auto key = value.get<std::string>();
            if (!open_objects.back().insert(key).second) {
                bail("document has a duplicate key '" + key + "'");
            }
        }
        return true;
    };
    json j;
    try {
        j = json::parse(json_text, watch_keys);
    } catch (const nlohmann::json::exception& e) {
        bail(std::string("invalid JSON: ") + e.what());
    }
    expect_object(j, "document");
    expect_keys(j, "document", {"monoid", "omega", "flow"}, {"morphisms"});

    const json& monoid = expect_object(j.at("monoid"), "monoid");
    expect_keys(monoid, "monoid", {"elements", "table", "unit"});
    const json& omega = expect_object(j.at("omega"), "omega");
    expect_keys(omega, "omega", {"elements"});

    SystemDocument doc;
    doc.time_elements = parse_labels(monoid.at("elements"), "monoid.elements", false);
    doc.omega_elements = parse_labels(omega.at("elements"), "omega.elements", true);
    const auto time_index = label_index(doc.time_elements);
    const auto omega_index = label_index(doc.omega_elements);

    const auto time_table = parse_table(monoid.at("table"), "monoid.table", doc.time_elements,
                                        doc.time_elements, time_index);
    doc.time_table.assign(time_table.begin(), time_table.end());
    doc.time_unit = static_cast<std::uint32_t>(resolve(time_index, monoid.at("unit"), "monoid.unit"));

    doc.flow_table =
        parse_table(j.at("flow"), "flow", doc.time_elements, doc.omega_elements, omega_index);

    if (j.contains("morphisms")) {
        const json& morphisms = expect_object(j.at("morphisms"), "morphisms");
        for (const auto& item : morphisms.items()) {
            if (item.key().empty()) bail("morphism names must be non-empty");
            std::vector<std::uint64_t> table(doc.omega_elements.size(), 0);
            const json& t = expect_object(item.value(), "morphism '" + item.key() + "'");
            if (t.size() != doc.omega_elements.size()) {
                bail("morphism '" + item.key() + "' must have one entry per carrier label");
            }
            for (std::size_t x = 0; x < doc.omega_elements.size(); ++x) {
                if (!t.contains(doc.omega_elements[x])) {
                    bail("morphism '" + item.key() + "' is missing the label '" +
                         doc.omega_elements[x] + "'");
                }
                table[x] = resolve(omega_index, t.at(doc.omega_elements[x]),
                                   "morphism '" + item.key() + "' at '" + doc.omega_elements[x] + "'");
            }
            doc.morphisms.emplace_back(item.key(), std::move(table));
        }
    }
    return doc;
}

json system_to_json(const SystemDocument& doc) {
    json monoid;
    monoid["elements"] = doc.time_elements;
    const std::vector<std::uint64_t> tt(doc.time_table.begin(), doc.time_table.end());
    monoid["table"] = table_json(doc.time_elements, doc.time_elements, doc.time_elements, tt);
    monoid["unit"] = doc.time_elements[doc.time_unit];

    json out;
    out["monoid"] = std::move(monoid);
    out["omega"] = json{{"elements", doc.omega_elements}};
    out["flow"] = table_json(doc.time_elements, doc.omega_elements, doc.omega_elements,
                             doc.flow_table);
    if (!doc.morphisms.empty()) {
        json m = json::object();
        for (const auto& [name, table] : doc.morphisms) {
            json t = json::object();
            for (std::size_t x = 0; x < doc.omega_elements.size(); ++x) {
                t[doc.omega_elements[x]] = doc.omega_elements[table[x]];
            }
            m[name] = std::move(t);
        }
        out["morphisms"] = std::move(m);
    }
    return out;
}

std::string serialize_system(const SystemDocument& doc) {
    return system_to_json(doc).dump(2) + "\n";
}

json report_validate(const SystemDocument& doc) {
    return report_shell("validate", compile(doc).laws);
}

json report_derive(const SystemDocument& doc, const std::string& which,
                   std::uint64_t observable_codomain, std::uint64_t cap) {
    if (which != "shift" && which != "transfer" && which != "koopman") {
        throw ParseError("unknown derivation '" + which + "' (expected shift, transfer, or koopman)");
    }
    const Compiled c = compile(doc);
    if (!c.ok) return report_shell("derive", c.laws);

    json out;
    out["command"] = "derive";
    out["which"] = which;

    FinSet::Obj carrier;
    PreFlow<FinSet> derived = as_preflow(*c.flow);
    if (which == "koopman") {
        out["observable_codomain"] = observable_codomain;
        std::vector<std::string> xlabels;
        for (std::uint64_t i = 0; i < observable_codomain; ++i) {
            xlabels.push_back(std::to_string(i));
        }
        const auto x = FinSet::base(xlabels);
        carrier = FinSet::hom(c.omega, x);
        capped_size(carrier, cap, "observable space");
        derived = koopman_preflow(*c.flow, x);
    } else {
        carrier = path_space<FinSet>(*c.time, c.omega);
        capped_size(carrier, cap, "path space");
        derived = which == "shift" ? as_preflow(shift_flow<FinSet>(*c.time, c.omega))
                                   : as_preflow(transfer_flow(*c.flow));
    }
    out["pattern_space_size"] = FinSet::size(carrier);

    const auto fr = validate_flow(derived);
    const std::vector<LawReport> laws{fr.unit_law, fr.composition};
    out["laws"] = laws_json(laws);
    out["all_hold"] = all_hold(laws);
    out["derived_system"] = system_to_json(derived_document(doc, carrier, derived.phi.table));
    return out;
}

json report_subshift(const SystemDocument& doc, std::uint64_t cap) {
    const Compiled c = compile(doc);
    if (!c.ok) return report_shell("subshift", c.laws);

    const auto pattern = path_space<FinSet>(*c.time, c.omega);
    const std::uint64_t pattern_size = capped_size(pattern, cap, "path space");

    const auto sub = subshift(*c.flow);
    std::vector<LawReport> laws{sub.square_shift, sub.square_transfer};
    const auto fr = validate_flow(as_preflow(sub.flow));
    laws.push_back(fr.unit_law);
    laws.push_back(fr.composition);

    json out;
    out["command"] = "subshift";
    out["pattern_space_size"] = pattern_size;
    out["subshift_size"] = FinSet::size(sub.carrier.object);
    json members = json::array();
    for (const auto k : sub.carrier.members) members.push_back(FinSet::label(pattern, k));
    out["members"] = std::move(members);
    const auto member_labels = object_labels(sub.carrier.object);
    out["flow"] = table_json(doc.time_elements, member_labels, member_labels,
                             sub.flow.phi.table);

    const bool commutative = c.time->monoid.is_commutative();
    out["time_commutative"] = commutative;
    if (commutative) {
        const auto di = subshift_domain_iso(*c.flow);
        for (const auto& l : di.checks) laws.push_back(l);
        json iso = json::object();
        for (std::size_t x = 0; x < doc.omega_elements.size(); ++x) {
            iso[doc.omega_elements[x]] = member_labels[di.iso.table[x]];
        }
        out["iso"] = std::move(iso);
    } else {
        out["iso"] = nullptr;
    }
    out["laws"] = laws_json(laws);
    out["all_hold"] = all_hold(laws);
    return out;
}

json report_orbits(const SystemDocument& doc, std::uint64_t cap) {
    const Compiled c = compile(doc);
    if (!c.ok) return report_shell("orbits", c.laws);
    capped_size(path_space<FinSet>(*c.time, c.omega), cap, "path space");

    json orbits = json::object();
    for (std::size_t x = 0; x < doc.omega_elements.size(); ++x) {
        const auto orb = orbit(*c.flow, FinSet::point(c.omega, x));
        json path = json::array();
        for (const auto v : orb.as_morphism.table) path.push_back(doc.omega_elements[v]);
        orbits[doc.omega_elements[x]] = std::move(path);
    }
    json out;
    out["command"] = "orbits";
    out["orbits"] = std::move(orbits);
    out["laws"] = json::array();
    out["all_hold"] = true;
    return out;
}

json report_stationary(const SystemDocument& doc) {
    const Compiled c = compile(doc);
    if (!c.ok) return report_shell("stationary", c.laws);

    json fixed = json::array();
    for (const auto& s : stationary_states(*c.flow)) {
        fixed.push_back(doc.omega_elements[s.table[0]]);
    }
    json out;
    out["command"] = "stationary";
    out["stationary"] = std::move(fixed);
    out["laws"] = json::array();
    out["all_hold"] = true;
    return out;
}

std::string render_text(const json& report) {
    std::ostringstream out;
    for (const auto& item : report.items()) {
        if (item.key() == "laws") {
            for (const auto& l : item.value()) {
                out << "law " << l.at("law").get<std::string>() << ": ";
                if (l.at("holds").get<bool>()) {
                    out << "ok";
                } else {
                    out << "FAIL";
                    if (l.contains("counterexample")) {
                        out << " at " << l.at("counterexample").get<std::string>();
                    }
                }
                out << "\n";
            }
        } else if (item.value().is_string()) {
            out << item.key() << ": " << item.value().get<std::string>() << "\n";
        } else if (item.value().is_boolean()) {
            out << item.key() << ": " << (item.value().get<bool>() ? "yes" : "no") << "\n";
        } else if (item.value().is_number_unsigned()) {
            out << item.key() << ": " << item.value().get<std::uint64_t>() << "\n";
        } else {
            out << item.key() << ": " << item.value().dump() << "\n";
        }
    }
    return out.str();
}

} // namespace catdyn
