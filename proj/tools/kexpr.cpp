// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#include <iostream>

#include <CLI11.hpp>

#include "kexpr/cli.hpp"

using namespace kexpr;

int main(int argc, char** argv)
{
    CLI::App app { "kexpr: gene expression programming with NSGA-II and SPEA2" };
    app.require_subcommand(1);

    std::string problem = "tp1";
    std::size_t rows = 100;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Write a synthetic dataset (tp1, tp2 or dew) as CSV");
    gen->add_option("--problem", problem, "tp1, tp2 or dew")->check(CLI::IsMember({ "tp1", "tp2", "dew" }));
    gen->add_option("--rows", rows, "Number of rows")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("--out", gen_out, "Output CSV path")->required();

    cli::EvolveOptions evolve;
    std::uint64_t evolve_seed = 0;
    std::string algorithm;
    auto* ev = app.add_subcommand("evolve", "Run GEP, NSGA-II or SPEA2 on a dataset");
    ev->add_option("--config", evolve.config, "Parameter file (key = value)")->required();
    ev->add_option("--data", evolve.data, "CSV dataset; last column is the target")->required();
    ev->add_option("--out", evolve.out, "Output directory")->required();
    auto* seed_opt = ev->add_option("--seed", evolve_seed, "Base seed (run r uses seed + r)");
    ev->add_option("--runs", evolve.runs, "Independent runs")->check(CLI::PositiveNumber);
    auto* alg_opt = ev->add_option("--algorithm", algorithm, "Override: gep, nsga2 or spea2")
                        ->check(CLI::IsMember({ "gep", "nsga2", "spea2" }));
    ev->add_option("--train-fraction", evolve.train_fraction, "Train on this leading fraction of rows")
        ->check(CLI::Range(0.0, 1.0));
    ev->add_flag("--force", evolve.force, "Write into a non-empty output directory");

    cli::PredictOptions pred;
    std::string target;
    auto* pr = app.add_subcommand("predict", "Evaluate a model on the held-out tail of a dataset");
    pr->add_option("--model", pred.model, "File whose first non-comment line is an infix model")->required();
    pr->add_option("--data", pred.data, "CSV dataset")->required();
    pr->add_option("--split", pred.split, "Training fraction; the remaining rows are predicted");
    pr->add_option("--out", pred.out, "Predictions CSV")->required();
    auto* target_opt = pr->add_option("--target", target, "Target column (default: last)");

    std::string expression;
    std::size_t genes = 0;
    auto* sz = app.add_subcommand("size", "Print the node count of an infix expression");
    sz->add_option("expression", expression, "Infix expression")->required();
    auto* genes_opt = sz->add_option("--genes", genes, "Treat the top-level '+' chain as gene links");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kOk : cli::kUsage;
    }

    try {
        if (gen->parsed()) {
            cli::cmd_gen(problem_from_name(problem), rows, gen_seed, gen_out);
        } else if (ev->parsed()) {
            if (*seed_opt) {
                evolve.seed = evolve_seed;
            }
            if (*alg_opt) {
                evolve.algorithm = algorithm;
            }
            cli::cmd_evolve(evolve);
        } else if (pr->parsed()) {
            if (*target_opt) {
                pred.target = target;
            }
            const double e = cli::cmd_predict(pred);
            std::cout << "test_rrse " << e << '\n';
        } else if (sz->parsed()) {
            std::cout << cli::cmd_size(expression, *genes_opt ? std::optional<std::size_t>(genes) : std::nullopt)
                      << '\n';
        }
    } catch (...) {
        return cli::report_current_exception();
    }
    return cli::kOk;
}
