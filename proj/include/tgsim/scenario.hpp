// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <tgsim/config.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tgsim::scenario {

extern const char* const version;

struct validation_error : std::runtime_error {
    explicit validation_error(std::vector<cfg::diagnostic> diags);
    std::vector<cfg::diagnostic> diagnostics;
};

// All schema and range problems of a scenario text, with field paths.
// Syntax problems are reported as diagnostics too; never throws.
std::vector<cfg::diagnostic> validate_text(const std::string& text);

struct run_request {
    std::string name;       // output basename
    std::string text;       // scenario file contents
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed_override;
    std::vector<std::pair<std::string, std::string>> overrides;
};

struct run_output {
    std::vector<std::string> files; // paths written; run metadata last
};

// Executes one scenario. Throws cfg::parse_error on malformed input,
// validation_error on schema/range violations, std::runtime_error on
// execution failures.
run_output run(const run_request& req);

// Bundled scenarios (figure reproductions and demos), name -> file text.
const std::map<std::string, std::string, std::less<>>& presets();

} // namespace tgsim::scenario
