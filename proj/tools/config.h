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

#pragma once

#include <boost/property_tree/ptree.hpp>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ramsey::cli {

/// Sectioned key-value experiment configuration.
///
/// Syntax is INI: `[section]` headers, `key = value` lines, whole-line
/// comments starting with ';' or '#'. Every key must belong to a known
/// section and appear in that section's schema; anything else is an
/// ErrorKind::Config error. Lists are comma separated.
class Config {
   public:
    Config() = default;

    /// Empty path gives an empty configuration (all defaults).
    static Config load(const std::string &path);
    static Config parse(std::string_view text, const std::string &source = "<string>");

    /// Raw file contents, used for the run manifest hash.
    const std::string &text() const {
        return text_;
    }
    /// Directory of the config file ("" for string input); relative paths resolve against it.
    const std::string &base_dir() const {
        return base_dir_;
    }

    bool has(const std::string &section, const std::string &key) const;
    std::string get_string(const std::string &section, const std::string &key, const std::string &fallback) const;
    double get_double(const std::string &section, const std::string &key, double fallback) const;
    std::int64_t get_int(const std::string &section, const std::string &key, std::int64_t fallback) const;
    bool get_bool(const std::string &section, const std::string &key, bool fallback) const;
    std::vector<double> get_doubles(const std::string &section, const std::string &key) const;
    std::vector<int> get_ints(const std::string &section, const std::string &key) const;

    /// Keys present in a section, in file order.
    std::vector<std::string> keys(const std::string &section) const;

   private:
    std::string raw(const std::string &section, const std::string &key) const;

    boost::property_tree::ptree tree_;
    std::string text_;
    std::string source_;
    std::string base_dir_;
};

}  // namespace ramsey::cli
