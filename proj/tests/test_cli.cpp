#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "catdyn/doc.hpp"
#include "catdyn/dot.hpp"

using catdyn::CapError;
using catdyn::ParseError;
using catdyn::SystemDocument;
using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

std::string fixture(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

std::vector<std::string> keys_of(const json& j) {
    std::vector<std::string> out;
    for (const auto& item : j.items()) out.push_back(item.key());
    return out;
}

std::vector<std::string> law_names(const json& report) {
    std::vector<std::string> out;
    for (const auto& l : report.at("laws")) out.push_back(l.at("law").get<std::string>());
    return out;
}

/// Identity plus a two-element left-zero band acting on two points by the two
/// constant maps: a valid system whose time monoid is noncommutative.
SystemDocument left_zero_doc() {
    SystemDocument doc;
    doc.time_elements = {"e", "a", "b"};
    doc.time_table = {0, 1, 2, 1, 1, 1, 2, 2, 2};
    doc.time_unit = 0;
    doc.omega_elements = {"s0", "s1"};
    doc.flow_table = {0, 1, 0, 0, 1, 1};
    return doc;
}

/// Cyclic clock with fifty ticks acting trivially on three points; every law
/// holds but the path space has far more elements than fit in 64 bits.
SystemDocument oversized_doc() {
    SystemDocument doc;
    const std::uint64_t n = 50;
    for (std::uint64_t i = 0; i < n; ++i) doc.time_elements.push_back("t" + std::to_string(i));
    doc.time_table.resize(n * n);
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j)
            doc.time_table[i * n + j] = static_cast<std::uint32_t>((i + j) % n);
    doc.time_unit = 0;
    doc.omega_elements = {"a", "b", "c"};
    doc.flow_table.resize(n * 3);
    for (std::uint64_t t = 0; t < n; ++t)
        for (std::uint64_t x = 0; x < 3; ++x) doc.flow_table[t * 3 + x] = x;
    return doc;
}

struct RunResult {
    int code = -1;
    std::string out;
};

/// Run a shell command, capturing stdout and the exit code.
RunResult run(const std::string& cmd) {
    std::FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
    return r;
}

std::string bin() { return std::string(CATDYN_BIN); }

constexpr std::uint64_t kDefaultCap = 1000000;

} // namespace

TEST_CASE("parse and serialize round-trip byte-identically") {
    for (const std::string name :
         {"z3_rotation.json", "max_idempotent.json", "trivial.json", "broken_nonassociative.json"}) {
        CAPTURE(name);
        const auto text = read_file(fixture(name));
        const auto doc = catdyn::parse_system(text);
        const auto first = catdyn::serialize_system(doc);
        const auto reparsed = catdyn::parse_system(first);
        CHECK(catdyn::serialize_system(reparsed) == first);
        CHECK(reparsed.time_elements == doc.time_elements);
        CHECK(reparsed.time_table == doc.time_table);
        CHECK(reparsed.time_unit == doc.time_unit);
        CHECK(reparsed.omega_elements == doc.omega_elements);
        CHECK(reparsed.flow_table == doc.flow_table);
        CHECK(reparsed.morphisms == doc.morphisms);
    }
}

TEST_CASE("parser rejects malformed and schema-violating documents") {
    const auto reject = [](const std::string& text) {
        CAPTURE(text);
        CHECK_THROWS_AS(catdyn::parse_system(text), ParseError);
    };

    reject("{");
    reject("[]");
    reject("42");

    const std::string good = R"({
      "monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
      "omega": {"elements": ["x"]},
      "flow": {"e": {"x": "x"}}
    })";
    CHECK_NOTHROW(catdyn::parse_system(good));

    // Unknown and missing fields.
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
               "omega": {"elements": ["x"]}, "flow": {"e": {"x": "x"}}, "bogus": 1})");
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
               "omega": {"elements": ["x"]}})");
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}},
               "omega": {"elements": ["x"]}, "flow": {"e": {"x": "x"}}})");

    // Label rules: duplicates, empty strings, wrong types, empty monoid.
    reject(R"({"monoid": {"elements": ["e", "e"], "table": {"e": {"e": "e"}}, "unit": "e"},
               "omega": {"elements": ["x"]}, "flow": {"e": {"x": "x"}}})");
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
               "omega": {"elements": ["x", "x"]}, "flow": {"e": {"x": "x"}}})");
    reject(R"({"monoid": {"elements": [""], "table": {"": {"": ""}}, "unit": ""},
               "omega": {"elements": ["x"]}, "flow": {"": {"x": "x"}}})");
    reject(R"({"monoid": {"elements": [], "table": {}, "unit": "e"},
               "omega": {"elements": ["x"]}, "flow": {}})");
    reject(R"({"monoid": {"elements": "e", "table": {"e": {"e": "e"}}, "unit": "e"},
               "omega": {"elements": ["x"]}, "flow": {"e": {"x": "x"}}})");
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": 0}}, "unit": "e"},
               "omega": {"elements": ["x"]}, "flow": {"e": {"x": "x"}}})");

    // Cross-references: undeclared labels, wrong unit.
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "u"},
               "omega": {"elements": ["x"]}, "flow": {"e": {"x": "x"}}})");
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
               "omega": {"elements": ["x"]}, "flow": {"e": {"x": "y"}}})");

    // Totality: missing rows, missing columns, extra entries.
    reject(R"({"monoid": {"elements": ["e", "a"],
                          "table": {"e": {"e": "e", "a": "a"}, "a": {"e": "a", "a": "a"}},
                          "unit": "e"},
               "omega": {"elements": ["x"]}, "flow": {"e": {"x": "x"}}})");
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
               "omega": {"elements": ["x", "y"]}, "flow": {"e": {"x": "x"}}})");
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
               "omega": {"elements": ["x"]}, "flow": {"e": {"x": "x", "y": "x"}}})");

    // Duplicate keys collapse silently in most JSON parsers; this one refuses.
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
               "omega": {"elements": ["x"]},
               "flow": {"e": {"x": "x"}, "e": {"x": "x"}}})");
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
               "omega": {"elements": ["x", "y"]},
               "flow": {"e": {"x": "x", "x": "y", "y": "y"}}})");

    // Morphisms are optional but schema-checked when present.
    CHECK_NOTHROW(catdyn::parse_system(
        R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
            "omega": {"elements": ["x"]}, "flow": {"e": {"x": "x"}},
            "morphisms": {"f": {"x": "x"}}})"));
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
               "omega": {"elements": ["x"]}, "flow": {"e": {"x": "x"}},
               "morphisms": {"f": {"x": "z"}}})");
    reject(R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
               "omega": {"elements": ["x"]}, "flow": {"e": {"x": "x"}},
               "morphisms": {"f": {}}})");

    // An empty carrier is legitimate: every flow row is empty.
    CHECK_NOTHROW(catdyn::parse_system(
        R"({"monoid": {"elements": ["e"], "table": {"e": {"e": "e"}}, "unit": "e"},
            "omega": {"elements": []}, "flow": {"e": {}}})"));
}

TEST_CASE("validation report lists laws in a fixed order") {
    const auto doc = catdyn::parse_system(read_file(fixture("z3_rotation.json")));
    const auto rep = catdyn::report_validate(doc);
    CHECK(keys_of(rep) == std::vector<std::string>{"command", "laws", "all_hold"});
    CHECK(rep.at("command") == "validate");
    CHECK(law_names(rep) ==
          std::vector<std::string>{"monoid.associativity", "monoid.unit", "time.associativity",
                                   "time.left_unit", "time.right_unit", "flow.unit",
                                   "flow.composition"});
    for (const auto& l : rep.at("laws")) CHECK(l.at("holds") == true);
    CHECK(rep.at("all_hold") == true);

    const auto broken = catdyn::parse_system(read_file(fixture("broken_nonassociative.json")));
    const auto bad = catdyn::report_validate(broken);
    CHECK(law_names(bad) == std::vector<std::string>{"monoid.associativity", "monoid.unit"});
    CHECK(bad.at("laws")[0].at("holds") == false);
    CHECK(bad.at("laws")[0].at("counterexample") == "(1,1,2)");
    CHECK(bad.at("all_hold") == false);
}

TEST_CASE("derived systems re-ingest and validate cleanly") {
    const auto doc = catdyn::parse_system(read_file(fixture("z3_rotation.json")));

    for (const std::string which : {"shift", "transfer"}) {
        CAPTURE(which);
        const auto rep = catdyn::report_derive(doc, which, 2, kDefaultCap);
        CHECK(keys_of(rep) == std::vector<std::string>{"command", "which", "pattern_space_size",
                                                       "laws", "all_hold", "derived_system"});
        CHECK(rep.at("which") == which);
        CHECK(rep.at("pattern_space_size") == 27);
        CHECK(rep.at("all_hold") == true);
        const auto derived = catdyn::parse_system(rep.at("derived_system").dump());
        CHECK(derived.omega_elements.size() == 27);
        CHECK(derived.time_elements == doc.time_elements);
        CHECK(catdyn::report_validate(derived).at("all_hold") == true);
    }

    const auto koop = catdyn::report_derive(doc, "koopman", 2, kDefaultCap);
    CHECK(keys_of(koop) ==
          std::vector<std::string>{"command", "which", "observable_codomain", "pattern_space_size",
                                   "laws", "all_hold", "derived_system"});
    CHECK(koop.at("pattern_space_size") == 8);
    CHECK(koop.at("all_hold") == true);
    const auto kderived = catdyn::parse_system(koop.at("derived_system").dump());
    CHECK(catdyn::report_validate(kderived).at("all_hold") == true);
}

TEST_CASE("observable composition fails over a noncommutative clock") {
    const auto doc = left_zero_doc();
    REQUIRE(catdyn::report_validate(doc).at("all_hold") == true);

    const auto transfer = catdyn::report_derive(doc, "transfer", 2, kDefaultCap);
    CHECK(transfer.at("all_hold") == true);

    const auto koop = catdyn::report_derive(doc, "koopman", 2, kDefaultCap);
    CHECK(koop.at("all_hold") == false);
    bool composition_fails = false;
    for (const auto& l : koop.at("laws")) {
        if (l.at("law") == "flow.unit") CHECK(l.at("holds") == true);
        if (l.at("law") == "flow.composition") composition_fails = !l.at("holds").get<bool>();
    }
    CHECK(composition_fails);
}

TEST_CASE("subshift report freezes the rotation fixture") {
    const auto doc = catdyn::parse_system(read_file(fixture("z3_rotation.json")));
    const auto rep = catdyn::report_subshift(doc, kDefaultCap);
    CHECK(keys_of(rep) ==
          std::vector<std::string>{"command", "pattern_space_size", "subshift_size", "members",
                                   "flow", "time_commutative", "iso", "laws", "all_hold"});
    CHECK(rep.at("pattern_space_size") == 27);
    CHECK(rep.at("subshift_size") == 3);
    CHECK(rep.at("members") == json::array({"p[0→a,1→b,2→c]", "p[0→b,1→c,2→a]", "p[0→c,1→a,2→b]"}));
    CHECK(rep.at("time_commutative") == true);
    CHECK(rep.at("iso").is_object());
    CHECK(rep.at("iso").at("a") == "p[0→a,1→b,2→c]");
    CHECK(law_names(rep) ==
          std::vector<std::string>{"subshift.square_shift", "subshift.square_transfer", "flow.unit",
                                   "flow.composition", "domain_iso.trajectories_equalize",
                                   "domain_iso.section", "domain_iso.retraction",
                                   "domain_iso.flow_morphism"});
    CHECK(rep.at("all_hold") == true);
}

TEST_CASE("subshift report over a noncommutative clock omits the iso") {
    const auto rep = catdyn::report_subshift(left_zero_doc(), kDefaultCap);
    CHECK(rep.at("time_commutative") == false);
    CHECK(rep.at("iso").is_null());
    CHECK(rep.at("subshift_size") == 0);
    CHECK(rep.at("members") == json::array());
    CHECK(law_names(rep) ==
          std::vector<std::string>{"subshift.square_shift", "subshift.square_transfer", "flow.unit",
                                   "flow.composition"});
    CHECK(rep.at("all_hold") == true);
}

TEST_CASE("orbit and stationary reports") {
    const auto doc = catdyn::parse_system(read_file(fixture("z3_rotation.json")));
    const auto orbits = catdyn::report_orbits(doc, kDefaultCap);
    CHECK(orbits.at("orbits").at("a") == json::array({"a", "b", "c"}));
    CHECK(orbits.at("orbits").at("b") == json::array({"b", "c", "a"}));
    CHECK(orbits.at("all_hold") == true);
    CHECK(catdyn::report_stationary(doc).at("stationary") == json::array());

    const auto max_doc = catdyn::parse_system(read_file(fixture("max_idempotent.json")));
    CHECK(catdyn::report_stationary(max_doc).at("stationary") == json::array({"0", "2"}));
}

TEST_CASE("commands on a law-violating system fall back to the validation report") {
    const auto broken = catdyn::parse_system(read_file(fixture("broken_nonassociative.json")));
    for (const auto& rep :
         {catdyn::report_subshift(broken, kDefaultCap), catdyn::report_orbits(broken, kDefaultCap),
          catdyn::report_stationary(broken), catdyn::report_derive(broken, "shift", 2, kDefaultCap)}) {
        CHECK(rep.at("all_hold") == false);
        CHECK(!rep.contains("derived_system"));
        CHECK(law_names(rep) == std::vector<std::string>{"monoid.associativity", "monoid.unit"});
    }
}

TEST_CASE("function-space caps refuse oversized constructions") {
    const auto doc = catdyn::parse_system(read_file(fixture("z3_rotation.json")));
    CHECK_THROWS_AS(catdyn::report_subshift(doc, 10), CapError);
    CHECK_THROWS_AS(catdyn::report_orbits(doc, 10), CapError);
    CHECK_THROWS_AS(catdyn::report_derive(doc, "shift", 2, 10), CapError);
    CHECK_THROWS_AS(catdyn::report_derive(doc, "koopman", 100, 10), CapError);
    CHECK_THROWS_WITH_AS(catdyn::report_subshift(doc, 26),
                         "refusing to build the path space: 27 elements exceeds the cap of 26 "
                         "(raise it with --max-carrier or CATDYN_MAX_CARRIER)",
                         CapError);
    CHECK_NOTHROW(catdyn::report_subshift(doc, 27));

    // Fifty clock ticks on three points: the path space does not even fit in
    // a 64-bit index, which must surface as the same refusal.
    CHECK_THROWS_WITH_AS(catdyn::report_subshift(oversized_doc(), kDefaultCap),
                         "refusing to build the path space: too many elements to index", CapError);
    // Stationary states never materialize a function space, so no cap
    // applies; the trivial action fixes every point.
    CHECK(catdyn::report_stationary(oversized_doc()).at("stationary") ==
          json::array({"a", "b", "c"}));
}

TEST_CASE("dot export is frozen for the rotation fixture") {
    const auto doc = catdyn::parse_system(read_file(fixture("z3_rotation.json")));
    CHECK(catdyn::export_dot(doc) == "digraph system {\n"
                                     "  rankdir=LR;\n"
                                     "  \"a\";\n"
                                     "  \"b\";\n"
                                     "  \"c\";\n"
                                     "  \"a\" -> \"b\" [label=\"1\"];\n"
                                     "  \"b\" -> \"c\" [label=\"1\"];\n"
                                     "  \"c\" -> \"a\" [label=\"1\"];\n"
                                     "  \"a\" -> \"c\" [label=\"2\"];\n"
                                     "  \"b\" -> \"a\" [label=\"2\"];\n"
                                     "  \"c\" -> \"b\" [label=\"2\"];\n"
                                     "}\n");
}

TEST_CASE("dot export escapes quotes and backslashes in labels") {
    SystemDocument doc;
    doc.time_elements = {"e"};
    doc.time_table = {0};
    doc.time_unit = 0;
    doc.omega_elements = {"x\"y", "a\\b"};
    doc.flow_table = {0, 1};
    const auto dot = catdyn::export_dot(doc);
    CHECK(dot.find("\"x\\\"y\";") != std::string::npos);
    CHECK(dot.find("\"a\\\\b\";") != std::string::npos);
}

TEST_CASE("reports are byte-deterministic across fresh evaluations") {
    const auto text = read_file(fixture("z3_rotation.json"));
    const auto once = catdyn::report_subshift(catdyn::parse_system(text), kDefaultCap).dump(2);
    const auto twice = catdyn::report_subshift(catdyn::parse_system(text), kDefaultCap).dump(2);
    CHECK(once == twice);
    CHECK(catdyn::report_derive(catdyn::parse_system(text), "koopman", 3, kDefaultCap).dump(2) ==
          catdyn::report_derive(catdyn::parse_system(text), "koopman", 3, kDefaultCap).dump(2));
}

TEST_CASE("rendered text names each law on its own line") {
    const auto broken = catdyn::parse_system(read_file(fixture("broken_nonassociative.json")));
    CHECK(catdyn::render_text(catdyn::report_validate(broken)) ==
          "command: validate\n"
          "law monoid.associativity: FAIL at (1,1,2)\n"
          "law monoid.unit: ok\n"
          "all_hold: no\n");
}

TEST_CASE("binary: exit codes follow the holds/violation/error contract") {
    const auto ok = run(bin() + " validate " + fixture("z3_rotation.json") + " 2>/dev/null");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("\"all_hold\": true") != std::string::npos);

    const auto bad = run(bin() + " validate " + fixture("broken_nonassociative.json") + " 2>/dev/null");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("\"counterexample\": \"(1,1,2)\"") != std::string::npos);

    const auto missing = run(bin() + " validate /nonexistent.json 2>/dev/null");
    CHECK(missing.code == 2);
    CHECK(missing.out.empty());

    write_file("/tmp/catdyn_malformed.json", "{\"monoid\":");
    const auto malformed = run(bin() + " validate /tmp/catdyn_malformed.json 2>&1");
    CHECK(malformed.code == 2);
    CHECK(malformed.out.rfind("error:", 0) == 0);

    const auto noargs = run(bin() + " 2>/dev/null");
    CHECK(noargs.code == 2);
    const auto badsub = run(bin() + " frobnicate 2>/dev/null");
    CHECK(badsub.code == 2);
    const auto badwhich =
        run(bin() + " derive --which bogus " + fixture("z3_rotation.json") + " 2>/dev/null");
    CHECK(badwhich.code == 2);
    const auto help = run(bin() + " --help 2>/dev/null");
    CHECK(help.code == 0);
    CHECK(help.out.find("validate") != std::string::npos);
}

TEST_CASE("binary: output bytes are identical across runs") {
    for (const std::string cmd :
         {" validate ", " subshift ", " orbits ", " stationary ", " export-dot "}) {
        CAPTURE(cmd);
        const auto full = bin() + cmd + fixture("z3_rotation.json") + " 2>/dev/null";
        const auto first = run(full);
        const auto second = run(full);
        CHECK(first.code == 0);
        CHECK(first.out == second.out);
        CHECK(!first.out.empty());
    }
    const auto derive =
        bin() + " derive --which koopman " + fixture("max_idempotent.json") + " 2>/dev/null";
    CHECK(run(derive).out == run(derive).out);
}

TEST_CASE("binary: text mode renders one line per field") {
    const auto r = run(bin() + " validate --text " + fixture("z3_rotation.json") + " 2>/dev/null");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("command: validate\n", 0) == 0);
    CHECK(r.out.find("law flow.composition: ok\n") != std::string::npos);
    CHECK(r.out.find("all_hold: yes\n") != std::string::npos);
}

TEST_CASE("binary: carrier cap honors the environment and the flag wins") {
    const auto target = fixture("z3_rotation.json");
    CHECK(run("CATDYN_MAX_CARRIER=10 " + bin() + " subshift " + target + " 2>/dev/null").code == 2);
    CHECK(run("CATDYN_MAX_CARRIER=10 " + bin() + " subshift --max-carrier 27 " + target +
              " 2>/dev/null").code == 0);
    CHECK(run(bin() + " subshift --max-carrier 26 " + target + " 2>/dev/null").code == 2);
    CHECK(run("CATDYN_MAX_CARRIER=banana " + bin() + " subshift " + target + " 2>/dev/null").code ==
          2);

    const auto refusal =
        run("CATDYN_MAX_CARRIER=10 " + bin() + " subshift " + target + " 2>&1 >/dev/null");
    CHECK(refusal.out.find("exceeds the cap") != std::string::npos);
}

TEST_CASE("binary: observable derivation exits one when composition fails") {
    write_file("/tmp/catdyn_left_zero.json", catdyn::serialize_system(left_zero_doc()));
    const auto r =
        run(bin() + " derive --which koopman /tmp/catdyn_left_zero.json 2>/dev/null");
    CHECK(r.code == 1);
    CHECK(r.out.find("\"law\": \"flow.composition\",\n      \"holds\": false") != std::string::npos);

    const auto t = run(bin() + " derive --which transfer /tmp/catdyn_left_zero.json 2>/dev/null");
    CHECK(t.code == 0);
}

TEST_CASE("binary: dot export writes graphs only for valid systems") {
    const auto good = run(bin() + " export-dot " + fixture("max_idempotent.json") + " 2>/dev/null");
    CHECK(good.code == 0);
    CHECK(good.out == "digraph system {\n"
                      "  rankdir=LR;\n"
                      "  \"0\";\n"
                      "  \"1\";\n"
                      "  \"2\";\n"
                      "  \"0\" -> \"0\" [label=\"1\"];\n"
                      "  \"1\" -> \"0\" [label=\"1\"];\n"
                      "  \"2\" -> \"2\" [label=\"1\"];\n"
                      "}\n");

    const auto bad = run(bin() + " export-dot " + fixture("broken_nonassociative.json") +
                         " 2>/dev/null");
    CHECK(bad.code == 1);
    CHECK(bad.out.empty());
}
