// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#include "kexpr/engine.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace kexpr {

std::string_view algorithm_name(Algorithm a) noexcept
{
    switch (a) {
    case Algorithm::Gep: return "gep";
    case Algorithm::Nsga2: return "nsga2";
    case Algorithm::Spea2: return "spea2";
    }
    return "gep";
}

Algorithm algorithm_from_name(std::string_view text)
{
    std::string name(text);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == "gep") {
        return Algorithm::Gep;
    }
    if (name == "nsga2") {
        return Algorithm::Nsga2;
    }
    if (name == "spea2") {
        return Algorithm::Spea2;
    }
    throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected gep, nsga2 or spea2)");
}

void RunConfig::validate() const
{
    if (population_size < 2) {
        throw ConfigError("population size must be >= 2");
    }
    if (genes < 1 || head_size < 1) {
        throw ConfigError("gene count and head size must be positive");
    }
    if (tournament_size < 1) {
        throw ConfigError("tournament size must be >= 1");
    }
    if (algorithm == Algorithm::Spea2) {
        if (archive_size < 2) {
            throw ConfigError("archive size must be >= 2");
        }
        if (elite >= population_size || elite > archive_size) {
            throw ConfigError("elite count must be below the population size and fit in the archive");
        }
    }
    if (!(constants.lower < constants.upper)) {
        throw ConfigError("constant range needs min < max");
    }
    if (rnc && constant_slots < 1) {
        throw ConfigError("random constants need at least one slot per gene");
    }
    rates.validate();
    bounds.validate();
    (void)resolved_functions();
}

std::vector<FunctionSymbol> RunConfig::resolved_functions() const
{
    return functions.empty() ? kexpr::function_set(function_set) : functions;
}

GenomeSchema schema_for(const RunConfig& config, const Dataset& data)
{
    SymbolSet symbols(config.resolved_functions(), data.variables, config.constant_slots, config.constants);
    return make_schema(std::move(symbols), config.head_size, config.genes, config.rnc, config.linking);
}

StatsRow stats_row(std::size_t generation, std::span<const ObjectiveVector> population,
                   std::optional<std::size_t> front_size, std::optional<std::size_t> archive_size)
{
    StatsRow row;
    row.generation = generation;
    row.front_size = front_size;
    row.archive_size = archive_size;
    constexpr double inf = std::numeric_limits<double>::infinity();
    row.best_error = inf;
    row.worst_error = inf;
    row.mean_error = inf;
    std::size_t valid = 0;
    double error_sum = 0.0;
    double size_sum = 0.0;
    std::size_t min_size = std::numeric_limits<std::size_t>::max();
    double worst = -inf;
    for (const auto& o : population) {
        if (!o.valid) {
            continue;
        }
        ++valid;
        error_sum += o.error;
        size_sum += static_cast<double>(o.size);
        row.best_error = std::min(row.best_error, o.error);
        worst = std::max(worst, o.error);
        min_size = std::min(min_size, o.size);
    }
    if (valid > 0) {
        row.mean_error = error_sum / static_cast<double>(valid);
        row.worst_error = worst;
        row.best_size = min_size;
        row.mean_size = size_sum / static_cast<double>(valid);
    }
    return row;
}

namespace {

using Clock = std::chrono::steady_clock;

std::vector<Individual> evaluate_all(std::vector<Chromosome> chroms, const GenomeSchema& schema,
                                     const Dataset& data)
{
    std::vector<Individual> out;
    out.reserve(chroms.size());
    for (auto& c : chroms) {
        auto obj = objectives(c, schema, data);
        out.push_back({ std::move(c), obj });
    }
    return out;
}

std::vector<ObjectiveVector> objectives_of(std::span<const Individual> pop)
{
    std::vector<ObjectiveVector> out;
    out.reserve(pop.size());
    for (const auto& ind : pop) {
        out.push_back(ind.objectives);
    }
    return out;
}

// Lower error wins; equal errors fall back to the smaller tree.
bool lower_error(const ObjectiveVector& a, const ObjectiveVector& b)
{
    if (a.error != b.error) {
        return a.error < b.error;
    }
    return a.size < b.size;
}

std::size_t best_index(std::span<const Individual> pop)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        if (lower_error(pop[i].objectives, pop[best].objectives)) {
            best = i;
        }
    }
    return best;
}

void prepare(const RunConfig& config, const Dataset& train)
{
    config.validate();
    train.validate();
}

// Valid, mutually non-dominated members with duplicate objective pairs
// collapsed; sorted by error.
std::vector<Individual> final_front(std::span<const Individual> pool, const GenomeSchema& schema)
{
    std::vector<FrontPoint> points;
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool[i].objectives.valid) {
            points.push_back({ pool[i].objectives, render(pool[i].chromosome, schema, RenderStyle::Infix), 0, 0, {} });
            origin.push_back(i);
        }
    }
    std::vector<std::vector<FrontPoint>> sets { points };
    const auto merged = merge_fronts(sets);
    std::vector<Individual> front;
    for (const auto& m : merged) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (points[j].objectives == m.objectives && points[j].expression == m.expression) {
                front.push_back(pool[origin[j]]);
                break;
            }
        }
    }
    return front;
}

RunResult finish_mo(RunResult result, std::span<const Individual> pool, const ObjectiveBounds& bounds,
                    Clock::time_point start)
{
    result.front = final_front(pool, result.schema);
    if (!result.front.empty()) {
        result.best = result.front[knee_point(objectives_of(result.front), bounds)];
    } else {
        result.best = pool[best_index(pool)];
    }
    result.duration = Clock::now() - start;
    return result;
}

} // namespace

RunResult run_gep(const RunConfig& config, const Dataset& train)
{
    prepare(config, train);
    const auto start = Clock::now();
    RunResult result { schema_for(config, train), Algorithm::Gep, config.seed, {}, {}, {}, {} };
    const auto& schema = result.schema;
    Rng rng(config.seed);

    auto pop = evaluate_all(init_population(config.population_size, schema, rng), schema, train);
    result.best = pop[best_index(pop)];

    for (std::size_t gen = 0; gen < config.generations; ++gen) {
        const auto elite = best_index(pop);
        std::vector<Chromosome> offspring;
        offspring.reserve(config.population_size - 1);
        auto better = [&](std::size_t a, std::size_t b) { return lower_error(pop[a].objectives, pop[b].objectives); };
        for (std::size_t i = 0; i + 1 < config.population_size; ++i) {
            offspring.push_back(pop[tournament_select(pop.size(), config.tournament_size, better, rng)].chromosome);
        }
        vary(offspring, schema, config.rates, rng);
        auto next = evaluate_all(std::move(offspring), schema, train);
        next.insert(next.begin(), std::move(pop[elite]));
        pop = std::move(next);

        const auto b = best_index(pop);
        if (lower_error(pop[b].objectives, result.best.objectives)) {
            result.best = pop[b];
        }
        result.stats.push_back(stats_row(gen, objectives_of(pop)));
    }
    result.duration = Clock::now() - start;
    return result;
}

namespace {

RunResult run_nsga2(const RunConfig& config, const Dataset& train)
{
    const auto start = Clock::now();
    RunResult result { schema_for(config, train), Algorithm::Nsga2, config.seed, {}, {}, {}, {} };
    const auto& schema = result.schema;
    Rng rng(config.seed);
    const auto n = config.population_size;

    auto pop = evaluate_all(init_population(n, schema, rng), schema, train);
    auto ranked = rank_and_crowd(objectives_of(pop), config.bounds);

    for (std::size_t gen = 0; gen < config.generations; ++gen) {
        auto better = [&](std::size_t a, std::size_t b) { return crowded_better(ranked.info[a], ranked.info[b]); };
        std::vector<Chromosome> offspring;
        offspring.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            offspring.push_back(pop[tournament_select(pop.size(), config.tournament_size, better, rng)].chromosome);
        }
        vary(offspring, schema, config.rates, rng);
        auto children = evaluate_all(std::move(offspring), schema, train);

        std::vector<Individual> merged = std::move(pop);
        merged.insert(merged.end(), std::make_move_iterator(children.begin()), std::make_move_iterator(children.end()));
        const auto survivors = nsga2_environmental(objectives_of(merged), n, config.bounds);
        pop.clear();
        for (auto i : survivors) {
            pop.push_back(std::move(merged[i]));
        }
        ranked = rank_and_crowd(objectives_of(pop), config.bounds);
        result.stats.push_back(stats_row(gen, objectives_of(pop), ranked.fronts.front().size()));
    }
    return finish_mo(std::move(result), pop, config.bounds, start);
}

RunResult run_spea2(const RunConfig& config, const Dataset& train)
{
    const auto start = Clock::now();
    RunResult result { schema_for(config, train), Algorithm::Spea2, config.seed, {}, {}, {}, {} };
    const auto& schema = result.schema;
    Rng rng(config.seed);
    const auto n = config.population_size;

    auto pop = evaluate_all(init_population(n, schema, rng), schema, train);
    std::vector<Individual> archive;

    for (std::size_t gen = 0; gen < config.generations; ++gen) {
        std::vector<Individual> merged = std::move(archive);
        merged.insert(merged.end(), pop.begin(), pop.end());
        const auto points = objectives_of(merged);
        const auto info = spea2_assign(points, config.bounds);
        const auto chosen = spea2_environmental(points, info, config.archive_size, config.bounds);

        archive.clear();
        std::vector<double> fitness;
        for (auto i : chosen) {
            archive.push_back(std::move(merged[i]));
            fitness.push_back(info[i].fitness);
        }
        const auto nondominated = static_cast<std::size_t>(
            std::count_if(fitness.begin(), fitness.end(), [](double f) { return f < 1.0; }));

        std::vector<std::size_t> order(archive.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
        const auto elites = std::min(config.elite, archive.size());

        auto better = [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; };
        std::vector<Chromosome> offspring;
        offspring.reserve(n - elites);
        for (std::size_t i = elites; i < n; ++i) {
            offspring.push_back(archive[tournament_select(archive.size(), config.tournament_size, better, rng)].chromosome);
        }
        vary(offspring, schema, config.rates, rng);
        auto children = evaluate_all(std::move(offspring), schema, train);

        pop.clear();
        for (std::size_t e = 0; e < elites; ++e) {
            pop.push_back(archive[order[e]]);
        }
        pop.insert(pop.end(), std::make_move_iterator(children.begin()), std::make_move_iterator(children.end()));
        result.stats.push_back(stats_row(gen, objectives_of(pop), nondominated, archive.size()));
    }

    std::vector<Individual> pool = std::move(archive);
    pool.insert(pool.end(), pop.begin(), pop.end());
    return finish_mo(std::move(result), pool, config.bounds, start);
}

} // namespace

RunResult run_mogep(const RunConfig& config, const Dataset& train)
{
    prepare(config, train);
    switch (config.algorithm) {
    case Algorithm::Nsga2: return run_nsga2(config, train);
    case Algorithm::Spea2: return run_spea2(config, train);
    case Algorithm::Gep: break;
    }
    throw ConfigError("run_mogep requires algorithm nsga2 or spea2");
}

RunResult run(const RunConfig& config, const Dataset& train)
{
    return config.algorithm == Algorithm::Gep ? run_gep(config, train) : run_mogep(config, train);
}

Prediction predict(const ExpressionTree& model, const Dataset& test)
{
    Prediction out;
    out.predictions = evaluate(model, test);
    out.valid = out.predictions.isFinite();
    out.residuals = out.predictions - test.target.array();
    out.invalid_rows = static_cast<std::size_t>((!out.valid).count());

    const auto good = out.valid.count();
    Eigen::ArrayXd p(good), y(good);
    for (Eigen::Index i = 0, j = 0; i < out.predictions.size(); ++i) {
        if (out.valid(i)) {
            p(j) = out.predictions(i);
            y(j) = test.target(i);
            ++j;
        }
    }
    out.test_rrse = std::numeric_limits<double>::quiet_NaN();
    if (good >= 2 && (y - y.mean()).square().sum() > 0.0) {
        out.test_rrse = rrse(p, y);
    }
    return out;
}

Prediction predict(const Chromosome& model, const GenomeSchema& schema, const Dataset& test)
{
    return predict(express(model, schema), test);
}

} // namespace kexpr
