// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <tgsim/amount.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgsim::cfg {

// Scenario files are flat `key = value` pairs with `#` comments. Dotted
// keys namespace nested options (attacker.power); values are scalars,
// comma lists, or inclusive integer ranges `lo..hi`.

struct diagnostic {
    std::string path;    // offending key (or `line N` for syntax issues)
    std::string message;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact rational from a decimal literal such as "0.088" or "-1.5".
rational parse_decimal(const std::string& text);

class config_reader {
public:
    static config_reader parse(const std::string& text); // throws parse_error

    bool has(const std::string& key) const;

    // Typed getters mark the key consumed and record a diagnostic (while
    // returning the fallback) when the value does not convert.
    std::string get_string(const std::string& key, const std::string& fallback);
    bool get_bool(const std::string& key, bool fallback);
    double get_double(const std::string& key, double fallback);
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
    rational get_decimal(const std::string& key, const rational& fallback);
    std::optional<rational> get_optional_decimal(const std::string& key);
    std::vector<double> get_double_list(const std::string& key, std::vector<double> fallback);
    std::vector<std::uint64_t> get_u64_list(const std::string& key, std::vector<std::uint64_t> fallback);
    std::vector<std::string> get_string_list(const std::string& key, std::vector<std::string> fallback);

    void require(const std::string& key); // diagnostic if absent
    void fail(const std::string& key, const std::string& message);

    // Inserts or replaces an entry (command-line overrides).
    void override_value(const std::string& key, const std::string& value);

    // Flag every key no getter ever touched.
    void flag_unknown_keys();

    const std::vector<diagnostic>& diagnostics() const { return diags_; }
    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::optional<std::string> take(const std::string& key);

    std::map<std::string, std::string> values_;
    std::map<std::string, bool> consumed_;
    std::vector<diagnostic> diags_;
};

} // namespace tgsim::cfg
