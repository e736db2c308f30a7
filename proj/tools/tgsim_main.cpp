// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <tgsim/scenario.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

// A scenario argument names either a bundled preset or a file on disk.
bool resolve_scenario(const std::string& arg, std::string& name, std::string& text) {
    const auto& table = tgsim::scenario::presets();
    if (const auto it = table.find(arg); it != table.end()) {
        name = arg;
        text = it->second;
        return true;
    }
    std::ifstream in(arg);
    if (!in) return false;
    std::stringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
    name = std::filesystem::path(arg).stem().string();
    return true;
}

std::vector<std::pair<std::string, std::string>> parse_overrides(const std::vector<std::string>& raw,
                                                                 std::string& bad) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const std::string& item : raw) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            bad = item;
            return {};
        }
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"TreeGraph consensus, miner-economics and attack-analysis toolkit"};
    app.require_subcommand(1);

    std::string scenario_arg;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    std::vector<std::string> overrides;

    auto* run_cmd = app.add_subcommand("run", "Run a scenario file or bundled preset");
    run_cmd->add_option("scenario", scenario_arg, "Scenario file path or preset name")->required();
    run_cmd->add_option("--out", out_dir, "Output directory (default: current)");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "Override the scenario seed(s)");
    run_cmd->add_option("--override", overrides, "Override a config entry, key=value (repeatable)");

    std::string validate_arg;
    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario and report diagnostics");
    validate_cmd->add_option("scenario", validate_arg, "Scenario file path or preset name")->required();

    auto* list_cmd = app.add_subcommand("list-presets", "List bundled scenarios");

    CLI11_PARSE(app, argc, argv);

    if (list_cmd->parsed()) {
        for (const auto& [name, text] : tgsim::scenario::presets()) {
            std::string first_line = text.substr(0, text.find('\n'));
            if (first_line.rfind("# ", 0) == 0) first_line.erase(0, 2);
            std::cout << name << "  -  " << first_line << '\n';
        }
        return 0;
    }

    if (validate_cmd->parsed()) {
        std::string name, text;
        if (!resolve_scenario(validate_arg, name, text)) {
            std::cerr << "error: no such preset or readable file: " << validate_arg << '\n';
            return 2;
        }
        const auto diags = tgsim::scenario::validate_text(text);
        for (const auto& d : diags) std::cerr << name << ": " << d.path << ": " << d.message << '\n';
        if (diags.empty()) {
            std::cout << name << ": ok\n";
            return 0;
        }
        return 3;
    }

    std::string name, text;
    if (!resolve_scenario(scenario_arg, name, text)) {
        std::cerr << "error: no such preset or readable file: " << scenario_arg << '\n';
        return 2;
    }
    std::string bad;
    auto parsed_overrides = parse_overrides(overrides, bad);
    if (!bad.empty()) {
        std::cerr << "error: --override expects key=value, got `" << bad << "`\n";
        return 2;
    }

    tgsim::scenario::run_request req;
    req.name = name;
    req.text = text;
    req.out_dir = out_dir;
    if (seed_opt->count() > 0) req.seed_override = seed;
    req.overrides = std::move(parsed_overrides);

    try {
        const auto result = tgsim::scenario::run(req);
        for (const auto& f : result.files) std::cout << f << '\n';
        return 0;
    } catch (const tgsim::cfg::parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const tgsim::scenario::validation_error& e) {
        for (const auto& d : e.diagnostics) std::cerr << name << ": " << d.path << ": " << d.message << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
