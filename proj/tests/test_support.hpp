// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#pragma once

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kexpr/genome.hpp"
#include "kexpr/moea.hpp"

namespace kexpr::test {

inline GenomeSchema schema(std::string_view set, std::vector<std::string> vars, int head, std::size_t genes,
                           bool rnc = true)
{
    return make_schema(SymbolSet(function_set(set), std::move(vars)), head, genes, rnc);
}

/// Builds a gene from dot-separated Karva tokens; positions past the given
/// tokens are padded with the first variable.
inline Gene gene_from_karva(const GenomeSchema& s, std::string_view karva, std::vector<double> constants = {})
{
    Gene g;
    std::stringstream ss { std::string(karva) };
    std::string tok;
    while (std::getline(ss, tok, '.')) {
        if (tok.size() >= 2 && tok[0] == 'C' && std::isdigit(static_cast<unsigned char>(tok[1]))) {
            g.symbols.push_back(Symbol::constant(std::stoul(tok.substr(1))));
        } else if (auto v = s.symbols.variable_index(tok)) {
            g.symbols.push_back(Symbol::variable(*v));
        } else {
            const auto& fs = s.symbols.functions();
            auto it = std::find_if(fs.begin(), fs.end(), [&](const FunctionSymbol& f) { return f.symbol() == tok; });
            if (it == fs.end()) {
                throw std::invalid_argument("unknown karva token " + tok);
            }
            g.symbols.push_back(Symbol::function(static_cast<std::size_t>(it - fs.begin())));
        }
    }
    g.symbols.resize(static_cast<std::size_t>(s.layout.length()), Symbol::variable(0));
    if (s.layout.rnc_enabled) {
        constants.resize(static_cast<std::size_t>(s.symbols.constant_slots()), 0.0);
        g.constants = std::move(constants);
        g.dc.assign(static_cast<std::size_t>(s.layout.dc_len), 0);
    }
    return g;
}

inline Chromosome chromosome(std::vector<Gene> genes)
{
    Chromosome c;
    c.genes = std::move(genes);
    return c;
}

/// Random two-objective points; sizes drawn from a small range so that ties
/// and duplicates are common.
inline std::vector<ObjectiveVector> random_points(std::size_t n, std::uint64_t seed, bool with_invalid = false)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> err(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> size(1, 30);
    std::uniform_int_distribution<int> coarse(0, 19);
    std::vector<ObjectiveVector> pts;
    for (std::size_t i = 0; i < n; ++i) {
        ObjectiveVector o { i % 3 == 0 ? coarse(rng) / 20.0 : err(rng), size(rng), true };
        if (with_invalid && i % 17 == 5) {
            o = ObjectiveVector::invalid(size(rng));
        }
        pts.push_back(o);
    }
    return pts;
}

// ---- independent oracles -------------------------------------------------

/// Pareto dominance written out directly from its definition.
inline bool oracle_dominates(const ObjectiveVector& u, const ObjectiveVector& v)
{
    if (!u.valid) {
        return false;
    }
    if (!v.valid) {
        return true;
    }
    const double a[2] = { u.error, static_cast<double>(u.size) };
    const double b[2] = { v.error, static_cast<double>(v.size) };
    bool strictly = false;
    for (int m = 0; m < 2; ++m) {
        if (a[m] > b[m]) {
            return false;
        }
        strictly = strictly || a[m] < b[m];
    }
    return strictly;
}

/// Repeated peeling: each round removes every point not dominated by any
/// remaining point. Fronts are returned with ascending indices.
inline std::vector<std::vector<std::size_t>> oracle_fronts(const std::vector<ObjectiveVector>& pts)
{
    std::vector<std::size_t> left(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        left[i] = i;
    }
    std::vector<std::vector<std::size_t>> fronts;
    while (!left.empty()) {
        std::vector<std::size_t> front, rest;
        for (auto i : left) {
            bool dominated = false;
            for (auto j : left) {
                dominated = dominated || oracle_dominates(pts[j], pts[i]);
            }
            (dominated ? rest : front).push_back(i);
        }
        fronts.push_back(front);
        left = rest;
    }
    return fronts;
}

/// Crowding distance computed per member by scanning the whole front for
/// its nearest lower and upper neighbours in each objective.
inline std::vector<double> oracle_crowding(const std::vector<ObjectiveVector>& pts, const std::vector<std::size_t>& front,
                                           const ObjectiveBounds& b)
{
    const auto n = front.size();
    std::vector<double> d(n, 0.0);
    if (n <= 2) {
        std::fill(d.begin(), d.end(), std::numeric_limits<double>::infinity());
        return d;
    }
    auto value = [&](std::size_t idx, int m) {
        const auto& p = pts[idx];
        return m == 0 ? (p.valid ? p.error : 1e6) : static_cast<double>(p.size);
    };
    for (int m = 0; m < 2; ++m) {
        const double span = b.upper[static_cast<std::size_t>(m)] - b.lower[static_cast<std::size_t>(m)];
        // Rank of member i in the (value, index) order.
        auto key_less = [&](std::size_t a, std::size_t c) {
            return value(front[a], m) < value(front[c], m)
                || (value(front[a], m) == value(front[c], m) && front[a] < front[c]);
        };
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t below = n, above = n;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) {
                    continue;
                }
                if (key_less(j, i)) {
                    if (below == n || key_less(below, j)) {
                        below = j;
                    }
                } else if (above == n || key_less(j, above)) {
                    above = j;
                }
            }
            if (below == n || above == n) {
                d[i] = std::numeric_limits<double>::infinity();
            } else {
                d[i] += (value(front[above], m) - value(front[below], m)) / span;
            }
        }
    }
    return d;
}

/// NSGA-II survivor rule written naively: peel fronts, admit whole fronts,
/// then the most crowded-apart members of the split front.
inline std::vector<std::size_t> oracle_nsga2_survivors(const std::vector<ObjectiveVector>& pts, std::size_t target,
                                                       const ObjectiveBounds& b)
{
    std::vector<std::size_t> out;
    for (const auto& front : oracle_fronts(pts)) {
        if (out.size() + front.size() <= target) {
            out.insert(out.end(), front.begin(), front.end());
            continue;
        }
        const auto d = oracle_crowding(pts, front, b);
        std::vector<std::size_t> order(front.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] > d[y]; });
        for (std::size_t i = 0; out.size() < target; ++i) {
            out.push_back(front[order[i]]);
        }
        break;
    }
    return out;
}

} // namespace kexpr::test
