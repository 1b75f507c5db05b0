// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#include "kexpr/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "kexpr/config.hpp"
#include "kexpr/io.hpp"

namespace kexpr::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

std::size_t count_top_links(const ExpressionTree& t)
{
    if (t.kind != ExpressionTree::Kind::Function || t.function != Function::Add) {
        return 0;
    }
    return 1 + count_top_links(t.children[0]) + count_top_links(t.children[1]);
}

} // namespace

void cmd_gen(Problem problem, std::size_t rows, std::uint64_t seed, const fs::path& out)
{
    const auto data = synth_dataset(problem, rows, seed);
    auto os = open_out(out);
    write_dataset(os, data);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, const std::optional<std::string>& config_seed)
{
    if (flag) {
        return *flag;
    }
    if (config_seed) {
        return std::stoull(*config_seed);
    }
    if (const char* env = std::getenv("KEXPR_SEED"); env != nullptr && *env != '\0') {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError("KEXPR_SEED is not a non-negative integer");
        }
    }
    return 1;
}

void cmd_evolve(const EvolveOptions& options)
{
    // Everything that can be wrong with the inputs is checked before the
    // first generation runs.
    const auto params = ParamFile::load(options.config);
    auto config = to_run_config(params);
    if (options.algorithm) {
        config.algorithm = algorithm_from_name(*options.algorithm);
    }
    config.seed = resolve_seed(options.seed, params.get("seed.0"));
    if (options.runs < 1) {
        throw ConfigError("--runs must be >= 1");
    }
    config.validate();

    auto data = load_dataset(options.data, config.target);
    if (options.train_fraction < 1.0) {
        data = split(data, options.train_fraction).first;
    }
    (void)schema_for(config, data);

    if (fs::exists(options.out) && !fs::is_empty(options.out) && !options.force) {
        throw OutputExists("output directory " + options.out.string() + " is not empty (use --force)");
    }
    fs::create_directories(options.out);

    std::vector<std::vector<FrontPoint>> fronts;
    auto scatter = open_out(options.out / "scatter.csv");
    scatter << "run,seed,error,size\n";
    for (std::size_t r = 0; r < options.runs; ++r) {
        auto run_config = config;
        run_config.seed = config.seed + r;
        const auto result = run(run_config, data);

        std::ostringstream name;
        name << "run_" << std::setw(3) << std::setfill('0') << r;
        const auto dir = options.out / name.str();
        fs::create_directories(dir);
        {
            auto os = open_out(dir / "stats.csv");
            write_stats(os, result.stats);
        }
        auto points = front_points(result, r);
        if (result.algorithm == Algorithm::Gep) {
            auto os = open_out(dir / "best.txt");
            os << "# error=" << format_real(result.best.objectives.error) << " size=" << result.best.objectives.size
               << " seed=" << result.seed << '\n'
               << result.infix(result.best) << "\n\n"
               << result.karva(result.best);
        } else {
            auto os = open_out(dir / "front.csv");
            write_front(os, points);
        }
        for (const auto& p : points) {
            scatter << r << ',' << p.seed << ',' << format_real(p.objectives.error) << ',' << p.objectives.size
                    << '\n';
        }
        {
            auto os = open_out(dir / "run_meta.txt");
            os << "# kexpr run " << r << '\n'
               << "algorithm = " << algorithm_name(result.algorithm) << '\n'
               << "seed = " << result.seed << '\n'
               << "duration_seconds = " << result.duration.count() << '\n'
               << "train_rows = " << data.rows() << '\n'
               << "# config\n"
               << params.serialize();
        }
        fronts.push_back(std::move(points));
    }
    auto os = open_out(options.out / "merged_front.csv");
    write_front(os, merge_fronts(fronts));
}

std::string read_model_text(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot read model file " + path.string());
    }
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') {
            continue;
        }
        return line.substr(b);
    }
    throw DataError("model file " + path.string() + " holds no expression");
}

double cmd_predict(const PredictOptions& options)
{
    const auto model = parse_infix(read_model_text(options.model));
    const auto data = load_dataset(options.data, options.target);
    const auto [train, test] = split(data, options.split);
    (void)detail::bind_variables(model, test.variables);
    const auto p = predict(model, test);
    auto os = open_out(options.out);
    write_predictions(os, test, train.rows(), p);
    return p.test_rrse;
}

std::size_t cmd_size(std::string_view expression, std::optional<std::size_t> genes)
{
    const auto tree = parse_infix(expression);
    if (!genes) {
        return tree.size();
    }
    if (*genes < 1) {
        throw ConfigError("--genes must be >= 1");
    }
    const auto links = *genes - 1;
    if (count_top_links(tree) < links) {
        throw ConfigError("expression has fewer than " + std::to_string(links) + " top-level '+' links");
    }
    return tree.size() - links;
}

int report_current_exception()
{
    try {
        throw;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kDataError;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const OutputExists& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

} // namespace kexpr::cli
