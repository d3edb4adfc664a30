// Copyright 2026 The ionramsey Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "ramsey/error.h"

namespace ramsey::cli {

namespace {

const std::map<std::string, std::set<std::string>> &schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"experiment",
         {"ions", "protocol", "t_ramsey", "omega_r", "omega_0", "final_phase", "ghz_phase", "use_bus", "trials",
          "unwrap_hint"}},
        {"noise", {"gamma", "mode"}},
        {"imperfection", {"random_phases"}},
        {"scaling", {"ions", "trials", "ghz_readout"}},
        {"dephasing", {"gamma", "ions", "trials", "t_grid", "t_min", "t_max", "points", "mode", "ghz_readout"}},
        {"calibration",
         {"protocol", "omega_0", "phase_offset", "omega_r1", "omega_r2", "t_r1", "t_r2", "final_phase", "bias",
          "bias_time", "tolerance", "max_iterations", "shots", "naive_phase"}},
        {"fourier", {"input", "harmonics", "delta_omega", "t_start", "t_step", "points", "trials", "threshold"}},
    };
    return s;
}

bool key_allowed(const std::string &section, const std::string &key) {
    auto it = schema().find(section);
    if (it == schema().end()) {
        return false;
    }
    if (it->second.count(key) != 0) {
        return true;
    }
    // Admixture amplitudes: eps_<p> = re [im].
    static const std::regex eps("eps_[1-9][0-9]?");
    return section == "imperfection" && std::regex_match(key, eps);
}

[[noreturn]] void config_error(const std::string &message) {
    throw Error(ErrorKind::Config, message);
}

std::string trim(std::string s) {
    const char *ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

double parse_double(const std::string &text, const std::string &where) {
    std::string t = trim(text);
    double value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        config_error(where + ": expected a number, got '" + text + "'");
    }
    return value;
}

std::int64_t parse_int(const std::string &text, const std::string &where) {
    std::string t = trim(text);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        config_error(where + ": expected an integer, got '" + text + "'");
    }
    return value;
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        items.push_back(trim(item));
    }
    return items;
}

}  // namespace

Config Config::load(const std::string &path) {
    if (path.empty()) {
        return Config{};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        config_error("cannot read config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    Config c = parse(buf.str(), path);
    c.base_dir_ = std::filesystem::path(path).parent_path().string();
    return c;
}

Config Config::parse(std::string_view text, const std::string &source) {
    Config c;
    c.text_ = std::string(text);
    c.source_ = source;
    std::istringstream in(c.text_);
    try {
        boost::property_tree::ini_parser::read_ini(in, c.tree_);
    } catch (const boost::property_tree::ini_parser_error &e) {
        config_error(source + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    for (const auto &[section, body] : c.tree_) {
        if (schema().count(section) == 0) {
            config_error(source + ": unknown section or key outside a section: '" + section + "'");
        }
        if (!body.data().empty()) {
            config_error(source + ": key '" + section + "' is outside any section");
        }
        for (const auto &[key, value] : body) {
            if (!key_allowed(section, key)) {
                config_error(source + ": unknown key '" + key + "' in [" + section + "]");
            }
        }
    }
    return c;
}

bool Config::has(const std::string &section, const std::string &key) const {
    auto s = tree_.get_child_optional(section);
    return s && s->get_child_optional(boost::property_tree::ptree::path_type(key, '\0'));
}

std::string Config::raw(const std::string &section, const std::string &key) const {
    return tree_.get_child(section).get<std::string>(boost::property_tree::ptree::path_type(key, '\0'));
}

std::string Config::get_string(const std::string &section, const std::string &key,
                               const std::string &fallback) const {
    return has(section, key) ? trim(raw(section, key)) : fallback;
}

double Config::get_double(const std::string &section, const std::string &key, double fallback) const {
    return has(section, key) ? parse_double(raw(section, key), section + "." + key) : fallback;
}

std::int64_t Config::get_int(const std::string &section, const std::string &key, std::int64_t fallback) const {
    return has(section, key) ? parse_int(raw(section, key), section + "." + key) : fallback;
}

bool Config::get_bool(const std::string &section, const std::string &key, bool fallback) const {
    if (!has(section, key)) {
        return fallback;
    }
    std::string v = trim(raw(section, key));
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    config_error(section + "." + key + ": expected true/false, got '" + v + "'");
}

std::vector<double> Config::get_doubles(const std::string &section, const std::string &key) const {
    std::vector<double> out;
    if (has(section, key)) {
        for (const std::string &item : split_list(raw(section, key))) {
            out.push_back(parse_double(item, section + "." + key));
        }
    }
    return out;
}

std::vector<int> Config::get_ints(const std::string &section, const std::string &key) const {
    std::vector<int> out;
    if (has(section, key)) {
        for (const std::string &item : split_list(raw(section, key))) {
            out.push_back(static_cast<int>(parse_int(item, section + "." + key)));
        }
    }
    return out;
}

std::vector<std::string> Config::keys(const std::string &section) const {
    std::vector<std::string> out;
    if (auto s = tree_.get_child_optional(section)) {
        for (const auto &[key, value] : *s) {
            out.push_back(key);
        }
    }
    return out;
}

}  // namespace ramsey::cli
