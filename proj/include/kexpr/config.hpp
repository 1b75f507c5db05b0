// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kexpr/engine.hpp"

namespace kexpr {

struct ParamEntry {
    std::string key;
    std::string value;
    std::size_t line = 0;

    bool operator==(const ParamEntry& other) const { return key == other.key && value == other.value; }
};

/// Dotted key=value parameter file. '#' starts a comment, whitespace around
/// '=' is ignored and a repeated key overrides the earlier value in place.
class ParamFile {
public:
    static ParamFile parse(std::string_view text);
    static ParamFile load(const std::filesystem::path& path);

    std::string serialize() const;

    void set(std::string key, std::string value, std::size_t line = 0);
    std::optional<std::string> get(std::string_view key) const;
    bool contains(std::string_view key) const { return get(key).has_value(); }
    const std::vector<ParamEntry>& entries() const noexcept { return entries_; }

    bool operator==(const ParamFile&) const = default;

private:
    std::vector<ParamEntry> entries_;
};

/// Maps recognized keys onto a RunConfig on top of the defaults. Unknown keys,
/// malformed values and out-of-range rates throw ConfigError naming the key
/// and line.
RunConfig to_run_config(const ParamFile& params);

/// Exact keys understood by to_run_config (pattern keys for function slots
/// are listed with an N placeholder).
const std::vector<std::string>& known_keys();

} // namespace kexpr
