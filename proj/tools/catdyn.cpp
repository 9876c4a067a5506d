#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "catdyn/doc.hpp"
#include "catdyn/dot.hpp"
#include "catdyn/report.hpp"

namespace {

constexpr std::uint64_t kDefaultCap = 1'000'000;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw catdyn::ParseError("cannot read input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::uint64_t env_cap() {
    const char* env = std::getenv("CATDYN_MAX_CARRIER");
    if (env == nullptr) return kDefaultCap;
    const std::string s = env;
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw catdyn::ParseError("CATDYN_MAX_CARRIER must be a non-negative integer");
    }
    try {
        return std::stoull(s);
    } catch (...) {
        throw catdyn::ParseError("CATDYN_MAX_CARRIER is out of range");
    }
}

int emit(const nlohmann::ordered_json& report, bool text) {
    if (text) {
        std::cout << catdyn::render_text(report);
    } else {
        std::cout << report.dump(2) << "\n";
    }
    return report.at("all_hold").get<bool>() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"law checks and derived constructions for finite dynamical systems"};
    app.require_subcommand(1);

    std::string file;
    bool text = false;
    bool json_flag = false;
    std::uint64_t cap = kDefaultCap;
    std::string which;
    std::uint64_t observable_codomain = 2;
    std::vector<CLI::Option*> cap_options;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", file, "system description (JSON)")->required();
        auto* fj = sub->add_flag("--json", json_flag, "emit the report as JSON (default)");
        sub->add_flag("--text", text, "emit the report as plain text")->excludes(fj);
        cap_options.push_back(sub->add_option(
            "--max-carrier", cap,
            "largest function space a command may build (default 1000000; "
            "the CATDYN_MAX_CARRIER environment variable sets the same cap)"));
    };

    auto* cmd_validate = app.add_subcommand("validate", "check the clock and flow laws");
    add_common(cmd_validate);
    auto* cmd_derive =
        app.add_subcommand("derive", "build a derived system and check its laws");
    add_common(cmd_derive);
    cmd_derive
        ->add_option("--which", which, "derived action: shift, transfer, or koopman")
        ->required()
        ->check(CLI::IsMember({"shift", "transfer", "koopman"}));
    cmd_derive->add_option("--observable-codomain", observable_codomain,
                           "codomain size for koopman observables (default 2)");
    auto* cmd_subshift = app.add_subcommand(
        "subshift", "carve the invariant trajectory subsystem out of the path space");
    add_common(cmd_subshift);
    auto* cmd_orbits = app.add_subcommand("orbits", "list the trajectory of every state");
    add_common(cmd_orbits);
    auto* cmd_stationary = app.add_subcommand("stationary", "list the stationary states");
    add_common(cmd_stationary);
    auto* cmd_export = app.add_subcommand("export-dot", "emit the transition graph in DOT");
    add_common(cmd_export);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::uint64_t effective_cap = env_cap();
        for (const auto* opt : cap_options) {
            if (opt->count() > 0) effective_cap = cap;
        }

        const auto doc = catdyn::parse_system(read_file(file));
        if (cmd_validate->parsed()) return emit(catdyn::report_validate(doc), text);
        if (cmd_derive->parsed()) {
            return emit(catdyn::report_derive(doc, which, observable_codomain, effective_cap),
                        text);
        }
        if (cmd_subshift->parsed()) return emit(catdyn::report_subshift(doc, effective_cap), text);
        if (cmd_orbits->parsed()) return emit(catdyn::report_orbits(doc, effective_cap), text);
        if (cmd_stationary->parsed()) return emit(catdyn::report_stationary(doc), text);
        if (cmd_export->parsed()) {
            const auto report = catdyn::report_validate(doc);
            if (!report.at("all_hold").get<bool>()) {
                std::cerr << "system laws fail; nothing exported:\n"
                          << catdyn::render_text(report);
                return 1;
            }
            std::cout << catdyn::export_dot(doc);
            return 0;
        }
        return 2; // unreachable: a subcommand is required
    } catch (const catdyn::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const catdyn::CapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const catdyn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
