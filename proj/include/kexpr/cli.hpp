// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "kexpr/evalkit.hpp"

namespace kexpr::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kConfigError = 2,
    kDataError = 3,
    kRuntimeError = 4,
};

/// Output directory already populated and --force not given.
class OutputExists : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void cmd_gen(Problem problem, std::size_t rows, std::uint64_t seed, const std::filesystem::path& out);

struct EvolveOptions {
    std::filesystem::path config;
    std::filesystem::path data;
    std::filesystem::path out;
    std::optional<std::uint64_t> seed;
    std::size_t runs = 1;
    std::optional<std::string> algorithm;
    double train_fraction = 1.0;
    bool force = false;
};

/// Seed precedence: explicit flag, then seed.0 in the config, then the
/// KEXPR_SEED environment variable, then 1.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, const std::optional<std::string>& config_seed);

void cmd_evolve(const EvolveOptions& options);

struct PredictOptions {
    std::filesystem::path model;
    std::filesystem::path data;
    double split = 0.75;
    std::filesystem::path out;
    std::optional<std::string> target;
};

/// Returns the test RRSE written in the footer.
double cmd_predict(const PredictOptions& options);

/// First non-empty line of a model file that is not a '#' comment.
std::string read_model_text(const std::filesystem::path& path);

/// Node count of an expression; with `genes`, the top-level chain of '+'
/// nodes joining them (genes - 1 nodes) is not counted.
std::size_t cmd_size(std::string_view expression, std::optional<std::size_t> genes = std::nullopt);

/// Maps the exception currently being handled to an exit code and prints it.
int report_current_exception();

} // namespace kexpr::cli
