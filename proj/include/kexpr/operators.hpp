// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "kexpr/genome.hpp"

namespace kexpr {

using Rng = std::mt19937_64;

/// Per-individual application probabilities, one per genetic operator.
struct OperatorRates {
    double inversion = 0.1;
    double mutation = 0.044;
    double is_transposition = 0.1;
    double ris_transposition = 0.1;
    double one_point_recomb = 0.3;
    double two_point_recomb = 0.3;
    double gene_recomb = 0.1;
    double gene_transposition = 0.1;
    double rnc_mutation = 0.01;
    double dc_mutation = 0.044;
    double dc_inversion = 0.1;
    double dc_is_transposition = 0.1;

    /// Throws ConfigError naming the first rate outside [0, 1].
    void validate() const;

    static OperatorRates zero();
};

enum class PointOp {
    Mutation,
    Inversion,
    IsTransposition,
    RisTransposition,
    GeneTransposition,
    DcMutation,
    DcInversion,
    DcIsTransposition,
    RncMutation,
};

enum class Recombination { OnePoint, TwoPoint, Gene };

Gene random_gene(const GenomeSchema& schema, Rng& rng);
Chromosome random_chromosome(const GenomeSchema& schema, Rng& rng);
std::vector<Chromosome> init_population(std::size_t size, const GenomeSchema& schema, Rng& rng);

/// Applies one operator. Mutation and Dc mutation rewrite each position
/// independently with probability equal to their rate; the others fire with
/// probability equal to their rate.
Chromosome point_op(PointOp kind, const Chromosome& chrom, const GenomeSchema& schema, const OperatorRates& rates,
                    Rng& rng);

/// Same as point_op but always fires (rate treated as 1; mutation keeps its
/// per-position probability).
Chromosome force_point_op(PointOp kind, const Chromosome& chrom, const GenomeSchema& schema,
                          const OperatorRates& rates, Rng& rng);

std::pair<Chromosome, Chromosome> recombine(Recombination kind, const Chromosome& a, const Chromosome& b,
                                            const GenomeSchema& schema, Rng& rng);

/// Recombination with explicit cut points over the linear genome
/// (symbols, then Dc, then constants, gene by gene); [from, to) is swapped.
std::pair<Chromosome, Chromosome> swap_loci(const Chromosome& a, const Chromosome& b, std::size_t from,
                                            std::size_t to);

/// Number of loci seen by one- and two-point recombination.
std::size_t locus_count(const GenomeSchema& schema);

/// Runs the full variation pipeline over `offspring` in place, one operator
/// after another in the fixed table order.
void vary(std::vector<Chromosome>& offspring, const GenomeSchema& schema, const OperatorRates& rates, Rng& rng);

/// Draws `k` indices uniformly with replacement and returns the best one
/// under `better(i, j)` (true when i beats j). Ties keep the earlier draw.
template <typename Better>
std::size_t tournament_select(std::size_t population, std::size_t k, Better better, Rng& rng)
{
    std::uniform_int_distribution<std::size_t> pick(0, population - 1);
    std::size_t best = pick(rng);
    for (std::size_t i = 1; i < k; ++i) {
        const std::size_t c = pick(rng);
        if (better(c, best)) {
            best = c;
        }
    }
    return best;
}

} // namespace kexpr
