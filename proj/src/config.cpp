// Copyright (c) 2026 The tgsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <tgsim/config.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace tgsim::cfg {

namespace {

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        std::size_t comma = value.find(',', pos);
        if (comma == std::string::npos) comma = value.size();
        out.push_back(trim(value.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

bool to_u64(const std::string& s, std::uint64_t& v) {
    if (s.empty()) return false;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool to_double(const std::string& s, double& v) {
    if (s.empty()) return false;
    if (s == "inf" || s == "+inf") {
        v = std::numeric_limits<double>::infinity();
        return true;
    }
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

} // namespace

rational parse_decimal(const std::string& text) {
    std::string s = trim(text);
    if (s.empty()) throw parse_error("empty decimal literal");
    bool negative = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        i = 1;
    }
    drip_amount numerator = 0;
    drip_amount denominator = 1;
    bool any_digit = false;
    bool seen_dot = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '.') {
            if (seen_dot) throw parse_error("bad decimal literal: " + text);
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9') throw parse_error("bad decimal literal: " + text);
        numerator = numerator * 10 + (c - '0');
        if (seen_dot) denominator *= 10;
        any_digit = true;
    }
    if (!any_digit) throw parse_error("bad decimal literal: " + text);
    rational r(numerator, denominator);
    return negative ? -r : r;
}

config_reader config_reader::parse(const std::string& text) {
    config_reader reader;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error("line " + std::to_string(line_no) + ": expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw parse_error("line " + std::to_string(line_no) + ": empty key");
        if (reader.values_.count(key))
            throw parse_error("line " + std::to_string(line_no) + ": duplicate key `" + key + "`");
        reader.values_[key] = value;
        if (pos > text.size()) break;
    }
    return reader;
}

bool config_reader::has(const std::string& key) const { return values_.count(key) != 0; }

std::optional<std::string> config_reader::take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    consumed_[key] = true;
    return it->second;
}

std::string config_reader::get_string(const std::string& key, const std::string& fallback) {
    return take(key).value_or(fallback);
}

bool config_reader::get_bool(const std::string& key, bool fallback) {
    const auto v = take(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    fail(key, "expected a boolean, got `" + *v + "`");
    return fallback;
}

double config_reader::get_double(const std::string& key, double fallback) {
    const auto v = take(key);
    if (!v) return fallback;
    double out = 0;
    if (!to_double(*v, out)) {
        fail(key, "expected a number, got `" + *v + "`");
        return fallback;
    }
    return out;
}

std::uint64_t config_reader::get_u64(const std::string& key, std::uint64_t fallback) {
    const auto v = take(key);
    if (!v) return fallback;
    std::uint64_t out = 0;
    if (!to_u64(*v, out)) {
        fail(key, "expected a non-negative integer, got `" + *v + "`");
        return fallback;
    }
    return out;
}

rational config_reader::get_decimal(const std::string& key, const rational& fallback) {
    const auto v = take(key);
    if (!v) return fallback;
    try {
        return parse_decimal(*v);
    } catch (const parse_error&) {
        fail(key, "expected a decimal, got `" + *v + "`");
        return fallback;
    }
}

std::optional<rational> config_reader::get_optional_decimal(const std::string& key) {
    const auto v = take(key);
    if (!v) return std::nullopt;
    try {
        return parse_decimal(*v);
    } catch (const parse_error&) {
        fail(key, "expected a decimal, got `" + *v + "`");
        return std::nullopt;
    }
}

std::vector<double> config_reader::get_double_list(const std::string& key, std::vector<double> fallback) {
    const auto v = take(key);
    if (!v) return fallback;
    std::vector<double> out;
    for (const std::string& item : split_list(*v)) {
        double d = 0;
        if (!to_double(item, d)) {
            fail(key, "expected numbers, got `" + item + "`");
            return fallback;
        }
        out.push_back(d);
    }
    if (out.empty()) fail(key, "empty list");
    return out;
}

std::vector<std::uint64_t> config_reader::get_u64_list(const std::string& key,
                                                       std::vector<std::uint64_t> fallback) {
    const auto v = take(key);
    if (!v) return fallback;
    std::vector<std::uint64_t> out;
    for (const std::string& item : split_list(*v)) {
        if (const auto dots = item.find(".."); dots != std::string::npos) {
            std::uint64_t lo = 0, hi = 0;
            if (!to_u64(trim(item.substr(0, dots)), lo) || !to_u64(trim(item.substr(dots + 2)), hi) ||
                lo > hi) {
                fail(key, "bad range `" + item + "`");
                return fallback;
            }
            for (std::uint64_t x = lo; x <= hi; ++x) out.push_back(x);
        } else {
            std::uint64_t x = 0;
            if (!to_u64(item, x)) {
                fail(key, "expected integers, got `" + item + "`");
                return fallback;
            }
            out.push_back(x);
        }
    }
    if (out.empty()) fail(key, "empty list");
    return out;
}

std::vector<std::string> config_reader::get_string_list(const std::string& key,
                                                        std::vector<std::string> fallback) {
    const auto v = take(key);
    if (!v) return fallback;
    auto out = split_list(*v);
    if (out.empty()) fail(key, "empty list");
    return out;
}

void config_reader::require(const std::string& key) {
    if (!has(key)) fail(key, "required key is missing");
}

void config_reader::fail(const std::string& key, const std::string& message) {
    diags_.push_back({key, message});
}

void config_reader::override_value(const std::string& key, const std::string& value) {
    values_[key] = value;
}

void config_reader::flag_unknown_keys() {
    for (const auto& [key, value] : values_)
        if (!consumed_.count(key)) fail(key, "unknown key");
}

} // namespace tgsim::cfg
