// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#include "kexpr/operators.hpp"

#include <algorithm>
#include <numeric>

#include "kexpr/errors.hpp"

namespace kexpr {

void OperatorRates::validate() const
{
    const std::pair<const char*, double> all[] = {
        { "inversion", inversion },
        { "mutation", mutation },
        { "is_transposition", is_transposition },
        { "ris_transposition", ris_transposition },
        { "one_point_recomb", one_point_recomb },
        { "two_point_recomb", two_point_recomb },
        { "gene_recomb", gene_recomb },
        { "gene_transposition", gene_transposition },
        { "rnc_mutation", rnc_mutation },
        { "dc_mutation", dc_mutation },
        { "dc_inversion", dc_inversion },
        { "dc_is_transposition", dc_is_transposition },
    };
    for (const auto& [name, rate] : all) {
        if (!(rate >= 0.0 && rate <= 1.0)) {
            throw ConfigError(std::string("operator rate ") + name + " must lie in [0, 1]");
        }
    }
}

OperatorRates OperatorRates::zero()
{
    OperatorRates r;
    r.inversion = r.mutation = r.is_transposition = r.ris_transposition = 0.0;
    r.one_point_recomb = r.two_point_recomb = r.gene_recomb = r.gene_transposition = 0.0;
    r.rnc_mutation = r.dc_mutation = r.dc_inversion = r.dc_is_transposition = 0.0;
    return r;
}

namespace {

constexpr std::size_t kMaxSegment = 3;

std::size_t uniform_index(std::size_t n, Rng& rng)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(double p, Rng& rng)
{
    if (p <= 0.0) {
        return false;
    }
    if (p >= 1.0) {
        return true;
    }
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

std::size_t segment_length(std::size_t available, Rng& rng)
{
    const auto cap = std::min(kMaxSegment, available);
    return 1 + uniform_index(cap, rng);
}

// Constant terminals created at `pos` take their slot from the Dc array.
Symbol constant_at(const Gene& gene, std::size_t pos)
{
    const auto& dc = gene.dc;
    if (dc.empty()) {
        return Symbol::constant(0);
    }
    return Symbol::constant(static_cast<std::size_t>(dc[pos % dc.size()]));
}

Symbol random_symbol(const Gene& gene, std::size_t pos, const GenomeSchema& schema, Rng& rng)
{
    const auto& symbols = schema.symbols;
    const bool head = pos < static_cast<std::size_t>(schema.layout.head_len);
    long function_weight = 0;
    if (head) {
        for (const auto& f : symbols.functions()) {
            function_weight += f.weight;
        }
    }
    const long variable_weight = static_cast<long>(symbols.variables().size());
    const long constant_weight = schema.layout.rnc_enabled ? symbols.constant_slots() : 0;
    long r = std::uniform_int_distribution<long>(0, function_weight + variable_weight + constant_weight - 1)(rng);
    if (r < function_weight) {
        for (std::size_t i = 0; i < symbols.functions().size(); ++i) {
            r -= symbols.functions()[i].weight;
            if (r < 0) {
                return Symbol::function(i);
            }
        }
    }
    r -= function_weight;
    if (r < variable_weight) {
        return Symbol::variable(static_cast<std::size_t>(r));
    }
    return constant_at(gene, pos);
}

double random_constant(const GenomeSchema& schema, Rng& rng)
{
    const auto& range = schema.symbols.constant_range();
    return std::uniform_real_distribution<double>(range.lower, range.upper)(rng);
}

template <typename T>
void reverse_segment(std::vector<T>& v, std::size_t limit, Rng& rng)
{
    if (limit < 2) {
        return;
    }
    const auto start = uniform_index(limit, rng);
    const auto len = segment_length(limit - start, rng);
    std::reverse(v.begin() + static_cast<long>(start), v.begin() + static_cast<long>(start + len));
}

// Inserts `segment` at `pos`, shifting the region [pos, limit) right and
// dropping whatever falls past `limit`.
template <typename T>
void insert_truncated(std::vector<T>& v, std::size_t pos, std::size_t limit, const std::vector<T>& segment)
{
    std::vector<T> region(v.begin() + static_cast<long>(pos), v.begin() + static_cast<long>(limit));
    std::size_t w = pos;
    for (std::size_t i = 0; i < segment.size() && w < limit; ++i) {
        v[w++] = segment[i];
    }
    for (std::size_t i = 0; w < limit; ++i) {
        v[w++] = region[i];
    }
}

// The rate is the probability of rewriting each position. At the usual 0.044
// a three-gene chromosome of length 51 sees about two point mutations.
void mutate(Chromosome& c, const GenomeSchema& schema, double rate, Rng& rng)
{
    for (auto& gene : c.genes) {
        for (std::size_t i = 0; i < gene.symbols.size(); ++i) {
            if (coin(rate, rng)) {
                gene.symbols[i] = random_symbol(gene, i, schema, rng);
            }
        }
    }
}

void dc_mutate(Chromosome& c, const GenomeSchema& schema, double rate, Rng& rng)
{
    if (!schema.layout.rnc_enabled) {
        return;
    }
    const auto slots = static_cast<std::size_t>(schema.symbols.constant_slots());
    for (auto& gene : c.genes) {
        for (auto& d : gene.dc) {
            if (coin(rate, rng)) {
                d = static_cast<int>(uniform_index(slots, rng));
            }
        }
    }
}

void is_transpose(Chromosome& c, const GenomeSchema& schema, Rng& rng)
{
    const auto h = static_cast<std::size_t>(schema.layout.head_len);
    if (h < 2) {
        return;
    }
    const auto& source = c.genes[uniform_index(c.genes.size(), rng)];
    const auto start = uniform_index(source.symbols.size(), rng);
    const auto len = segment_length(source.symbols.size() - start, rng);
    std::vector<Symbol> segment(source.symbols.begin() + static_cast<long>(start),
                                source.symbols.begin() + static_cast<long>(start + len));
    auto& target = c.genes[uniform_index(c.genes.size(), rng)];
    const auto pos = 1 + uniform_index(h - 1, rng);
    insert_truncated(target.symbols, pos, h, segment);
}

void ris_transpose(Chromosome& c, const GenomeSchema& schema, Rng& rng)
{
    const auto h = static_cast<std::size_t>(schema.layout.head_len);
    auto& gene = c.genes[uniform_index(c.genes.size(), rng)];
    const auto scan = uniform_index(h, rng);
    std::size_t start = scan;
    while (start < h && !gene.symbols[start].is_function()) {
        ++start;
    }
    if (start == h) {
        return;
    }
    const auto len = segment_length(gene.symbols.size() - start, rng);
    std::vector<Symbol> segment(gene.symbols.begin() + static_cast<long>(start),
                                gene.symbols.begin() + static_cast<long>(start + len));
    insert_truncated(gene.symbols, 0, h, segment);
}

void gene_transpose(Chromosome& c, Rng& rng)
{
    if (c.genes.size() < 2) {
        return;
    }
    const auto g = 1 + uniform_index(c.genes.size() - 1, rng);
    auto moved = std::move(c.genes[g]);
    c.genes.erase(c.genes.begin() + static_cast<long>(g));
    c.genes.insert(c.genes.begin(), std::move(moved));
}

void dc_invert(Chromosome& c, const GenomeSchema& schema, Rng& rng)
{
    if (!schema.layout.rnc_enabled) {
        return;
    }
    auto& gene = c.genes[uniform_index(c.genes.size(), rng)];
    reverse_segment(gene.dc, gene.dc.size(), rng);
}

void dc_is_transpose(Chromosome& c, const GenomeSchema& schema, Rng& rng)
{
    if (!schema.layout.rnc_enabled) {
        return;
    }
    auto& gene = c.genes[uniform_index(c.genes.size(), rng)];
    const auto n = gene.dc.size();
    const auto start = uniform_index(n, rng);
    const auto len = segment_length(n - start, rng);
    std::vector<int> segment(gene.dc.begin() + static_cast<long>(start), gene.dc.begin() + static_cast<long>(start + len));
    insert_truncated(gene.dc, uniform_index(n, rng), n, segment);
}

void rnc_mutate(Chromosome& c, const GenomeSchema& schema, Rng& rng)
{
    if (!schema.layout.rnc_enabled) {
        return;
    }
    auto& gene = c.genes[uniform_index(c.genes.size(), rng)];
    gene.constants[uniform_index(gene.constants.size(), rng)] = random_constant(schema, rng);
}

void apply(PointOp kind, Chromosome& c, const GenomeSchema& schema, const OperatorRates& rates, Rng& rng)
{
    switch (kind) {
    case PointOp::Mutation:
        mutate(c, schema, rates.mutation, rng);
        break;
    case PointOp::DcMutation:
        dc_mutate(c, schema, rates.dc_mutation, rng);
        break;
    case PointOp::Inversion: {
        auto& gene = c.genes[uniform_index(c.genes.size(), rng)];
        reverse_segment(gene.symbols, static_cast<std::size_t>(schema.layout.head_len), rng);
        break;
    }
    case PointOp::IsTransposition:
        is_transpose(c, schema, rng);
        break;
    case PointOp::RisTransposition:
        ris_transpose(c, schema, rng);
        break;
    case PointOp::GeneTransposition:
        gene_transpose(c, rng);
        break;
    case PointOp::DcInversion:
        dc_invert(c, schema, rng);
        break;
    case PointOp::DcIsTransposition:
        dc_is_transpose(c, schema, rng);
        break;
    case PointOp::RncMutation:
        rnc_mutate(c, schema, rng);
        break;
    }
}

double gate(PointOp kind, const OperatorRates& rates)
{
    switch (kind) {
    case PointOp::Mutation:
    case PointOp::DcMutation:
        return 1.0;
    case PointOp::Inversion: return rates.inversion;
    case PointOp::IsTransposition: return rates.is_transposition;
    case PointOp::RisTransposition: return rates.ris_transposition;
    case PointOp::GeneTransposition: return rates.gene_transposition;
    case PointOp::DcInversion: return rates.dc_inversion;
    case PointOp::DcIsTransposition: return rates.dc_is_transposition;
    case PointOp::RncMutation: return rates.rnc_mutation;
    }
    return 0.0;
}

std::size_t gene_loci(const GenomeSchema& schema)
{
    return static_cast<std::size_t>(schema.layout.length() + schema.layout.dc_len)
        + (schema.layout.rnc_enabled ? static_cast<std::size_t>(schema.symbols.constant_slots()) : 0U);
}

} // namespace

Gene random_gene(const GenomeSchema& schema, Rng& rng)
{
    const auto& layout = schema.layout;
    Gene gene;
    const auto slots = static_cast<std::size_t>(schema.symbols.constant_slots());
    if (layout.rnc_enabled) {
        gene.dc.resize(static_cast<std::size_t>(layout.dc_len));
        for (auto& d : gene.dc) {
            d = static_cast<int>(uniform_index(slots, rng));
        }
        gene.constants.resize(slots);
        for (auto& k : gene.constants) {
            k = random_constant(schema, rng);
        }
    }
    gene.symbols.resize(static_cast<std::size_t>(layout.length()));
    for (std::size_t i = 0; i < gene.symbols.size(); ++i) {
        gene.symbols[i] = random_symbol(gene, i, schema, rng);
    }
    return gene;
}

Chromosome random_chromosome(const GenomeSchema& schema, Rng& rng)
{
    Chromosome c;
    c.linking = schema.linking;
    c.genes.reserve(schema.genes);
    for (std::size_t g = 0; g < schema.genes; ++g) {
        c.genes.push_back(random_gene(schema, rng));
    }
    return c;
}

std::vector<Chromosome> init_population(std::size_t size, const GenomeSchema& schema, Rng& rng)
{
    if (size < 2) {
        throw ConfigError("population size must be >= 2");
    }
    std::vector<Chromosome> pop;
    pop.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        pop.push_back(random_chromosome(schema, rng));
    }
    return pop;
}

Chromosome point_op(PointOp kind, const Chromosome& chrom, const GenomeSchema& schema, const OperatorRates& rates,
                    Rng& rng)
{
    Chromosome out = chrom;
    if (coin(gate(kind, rates), rng)) {
        apply(kind, out, schema, rates, rng);
    }
    return out;
}

Chromosome force_point_op(PointOp kind, const Chromosome& chrom, const GenomeSchema& schema,
                          const OperatorRates& rates, Rng& rng)
{
    Chromosome out = chrom;
    apply(kind, out, schema, rates, rng);
    return out;
}

std::size_t locus_count(const GenomeSchema& schema) { return schema.genes * gene_loci(schema); }

std::pair<Chromosome, Chromosome> swap_loci(const Chromosome& a, const Chromosome& b, std::size_t from,
                                            std::size_t to)
{
    if (a.genes.size() != b.genes.size()) {
        throw ConfigError("recombination parents differ in gene count");
    }
    Chromosome x = a;
    Chromosome y = b;
    std::size_t offset = 0;
    for (std::size_t g = 0; g < x.genes.size(); ++g) {
        auto& gx = x.genes[g];
        auto& gy = y.genes[g];
        if (gx.symbols.size() != gy.symbols.size() || gx.dc.size() != gy.dc.size()
            || gx.constants.size() != gy.constants.size()) {
            throw ConfigError("recombination parents differ in gene layout");
        }
        auto swap_range = [&](auto& vx, auto& vy) {
            for (std::size_t i = 0; i < vx.size(); ++i, ++offset) {
                if (offset >= from && offset < to) {
                    std::swap(vx[i], vy[i]);
                }
            }
        };
        swap_range(gx.symbols, gy.symbols);
        swap_range(gx.dc, gy.dc);
        swap_range(gx.constants, gy.constants);
    }
    return { std::move(x), std::move(y) };
}

std::pair<Chromosome, Chromosome> recombine(Recombination kind, const Chromosome& a, const Chromosome& b,
                                            const GenomeSchema& schema, Rng& rng)
{
    if (!is_valid(a, schema) || !is_valid(b, schema)) {
        throw ConfigError("recombination parents do not match the genome schema");
    }
    const auto total = locus_count(schema);
    switch (kind) {
    case Recombination::OnePoint:
        return swap_loci(a, b, uniform_index(total, rng), total);
    case Recombination::TwoPoint: {
        auto c1 = uniform_index(total, rng);
        auto c2 = uniform_index(total, rng);
        if (c1 > c2) {
            std::swap(c1, c2);
        }
        return swap_loci(a, b, c1, c2);
    }
    case Recombination::Gene: {
        const auto g = uniform_index(a.genes.size(), rng);
        const auto per_gene = gene_loci(schema);
        return swap_loci(a, b, g * per_gene, (g + 1) * per_gene);
    }
    }
    return { a, b };
}

void vary(std::vector<Chromosome>& offspring, const GenomeSchema& schema, const OperatorRates& rates, Rng& rng)
{
    const auto n = offspring.size();
    auto each = [&](PointOp op) {
        for (auto& c : offspring) {
            if (coin(gate(op, rates), rng)) {
                apply(op, c, schema, rates, rng);
            }
        }
    };
    // Individuals are paired at random; each pair recombines with the
    // operator's probability.
    std::vector<std::size_t> order(n);
    auto pairwise = [&](Recombination kind, double rate) {
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t p = 0; p + 1 < n; p += 2) {
            if (!coin(rate, rng)) {
                continue;
            }
            const auto i = order[p];
            const auto j = order[p + 1];
            auto [x, y] = recombine(kind, offspring[i], offspring[j], schema, rng);
            offspring[i] = std::move(x);
            offspring[j] = std::move(y);
        }
    };
    each(PointOp::Inversion);
    each(PointOp::Mutation);
    each(PointOp::IsTransposition);
    each(PointOp::RisTransposition);
    pairwise(Recombination::OnePoint, rates.one_point_recomb);
    pairwise(Recombination::TwoPoint, rates.two_point_recomb);
    pairwise(Recombination::Gene, rates.gene_recomb);
    each(PointOp::GeneTransposition);
    each(PointOp::RncMutation);
    each(PointOp::DcMutation);
    each(PointOp::DcInversion);
    each(PointOp::DcIsTransposition);
}

} // namespace kexpr
