/*
 * Copyright 2026 the plpcov authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */

#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

// Flat `key = value` configuration text with `#` comments. Every physical
// value is in km-based linear units except the threshold, which enters in
// dB under the key threshold_db and is converted to linear exactly once
// here, at the boundary.

namespace plpcov {

struct ConfigEntry {
    std::string value;
    int line = 0;
};

using ConfigMap = std::map<std::string, ConfigEntry>;

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace detail

// Parses `key = value` lines. `#` starts a comment anywhere; blank lines are
// skipped; malformed lines and repeated keys report their line number.
inline ConfigMap parse_config(std::istream& in, const std::string& origin = "config") {
    ConfigMap out;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string text = detail::trim(raw);
        if (text.empty()) continue;
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(line) +
                                        ": expected key = value");
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = detail::trim(text.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument(origin + ":" + std::to_string(line) + ": empty key");
        if (value.empty())
            throw std::invalid_argument(origin + ":" + std::to_string(line) +
                                        ": empty value for '" + key + "'");
        if (!out.emplace(key, ConfigEntry{value, line}).second)
            throw std::invalid_argument(origin + ":" + std::to_string(line) +
                                        ": duplicate key '" + key + "'");
    }
    return out;
}

inline ConfigMap parse_config_text(const std::string& text, const std::string& origin = "config") {
    std::istringstream in(text);
    return parse_config(in, origin);
}

inline ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return parse_config(in, path);
}

namespace detail {

inline std::invalid_argument bad_value(const std::string& key, const ConfigEntry& e,
                                       const char* want) {
    return std::invalid_argument("line " + std::to_string(e.line) + ": key '" + key +
                                 "' needs " + want + ", got '" + e.value + "'");
}

inline double parse_double(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

inline double to_double(const std::string& key, const ConfigEntry& e) {
    try {
        return parse_double(e.value);
    } catch (const std::exception&) {
        throw bad_value(key, e, "a number");
    }
}

inline long long to_count(const std::string& key, const ConfigEntry& e) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(e.value, &used);
    } catch (const std::exception&) {
        throw bad_value(key, e, "an integer");
    }
    if (used != e.value.size()) throw bad_value(key, e, "an integer");
    return v;
}

inline std::uint64_t to_seed(const std::string& key, const ConfigEntry& e) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(e.value, &used);
    } catch (const std::exception&) {
        throw bad_value(key, e, "an unsigned integer");
    }
    if (used != e.value.size()) throw bad_value(key, e, "an unsigned integer");
    return v;
}

inline bool to_bool(const std::string& key, const ConfigEntry& e) {
    if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
    if (e.value == "false" || e.value == "0" || e.value == "no") return false;
    throw bad_value(key, e, "a boolean (true/false)");
}

}  // namespace detail

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace plpcov
