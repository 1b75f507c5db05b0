// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kexpr/evalkit.hpp"
#include "kexpr/moea.hpp"
#include "kexpr/operators.hpp"

namespace kexpr {

enum class Algorithm { Gep, Nsga2, Spea2 };

std::string_view algorithm_name(Algorithm a) noexcept;
Algorithm algorithm_from_name(std::string_view name);

/// Every knob of a run. Defaults follow the test-problem settings: 100
/// individuals, 3 genes with head 8, the nine-function set, 1000 generations.
struct RunConfig {
    Algorithm algorithm = Algorithm::Gep;
    std::size_t generations = 1000;
    std::size_t population_size = 100;
    std::size_t genes = 3;
    int head_size = 8;
    std::string function_set = "tp";
    std::vector<FunctionSymbol> functions; // when non-empty, replaces function_set
    Function linking = Function::Add;
    OperatorRates rates;
    std::size_t tournament_size = 2;
    std::size_t archive_size = 50;
    std::size_t elite = 10;
    ObjectiveBounds bounds;
    ConstantRange constants;
    int constant_slots = 2;
    bool rnc = true;
    std::uint64_t seed = 1;
    std::optional<std::string> target;

    void validate() const;
    std::vector<FunctionSymbol> resolved_functions() const;
};

GenomeSchema schema_for(const RunConfig& config, const Dataset& data);

struct Individual {
    Chromosome chromosome;
    ObjectiveVector objectives;
};

/// One line of stats.csv. Error statistics and sizes cover valid individuals.
struct StatsRow {
    std::size_t generation = 0;
    double best_error = 0.0;
    double mean_error = 0.0;
    double worst_error = 0.0;
    std::size_t best_size = 0;
    double mean_size = 0.0;
    std::optional<std::size_t> front_size;
    std::optional<std::size_t> archive_size;
};

StatsRow stats_row(std::size_t generation, std::span<const ObjectiveVector> population,
                   std::optional<std::size_t> front_size = std::nullopt,
                   std::optional<std::size_t> archive_size = std::nullopt);

struct RunResult {
    GenomeSchema schema;
    Algorithm algorithm = Algorithm::Gep;
    std::uint64_t seed = 0;
    /// Best-ever individual of a single-objective run; for multi-objective
    /// runs, the knee point of the final front.
    Individual best;
    /// Final non-dominated set (multi-objective runs), sorted by error.
    std::vector<Individual> front;
    std::vector<StatsRow> stats;
    std::chrono::duration<double> duration {};

    std::string infix(const Individual& ind) const { return render(ind.chromosome, schema, RenderStyle::Infix); }
    std::string karva(const Individual& ind) const { return render(ind.chromosome, schema, RenderStyle::Karva); }
};

/// Dispatches on config.algorithm.
RunResult run(const RunConfig& config, const Dataset& train);

/// Single-objective GEP on RRSE with one elite.
RunResult run_gep(const RunConfig& config, const Dataset& train);

/// Multi-objective GEP (error, size) with NSGA-II or SPEA2.
RunResult run_mogep(const RunConfig& config, const Dataset& train);

struct Prediction {
    Eigen::ArrayXd predictions; // NaN where the model is invalid
    Eigen::ArrayXd residuals;   // prediction - target, NaN where invalid
    Eigen::Array<bool, Eigen::Dynamic, 1> valid;
    double test_rrse = 0.0;     // over valid rows, against their own mean
    std::size_t invalid_rows = 0;
};

Prediction predict(const ExpressionTree& model, const Dataset& test);
Prediction predict(const Chromosome& model, const GenomeSchema& schema, const Dataset& test);

} // namespace kexpr
