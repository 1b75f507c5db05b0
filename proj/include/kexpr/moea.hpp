// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kexpr/evalkit.hpp"

namespace kexpr {

/// Normalization range per objective (error, size). Used for crowding and
/// density only; dominance always works on raw values.
struct ObjectiveBounds {
    std::array<double, 2> lower { 0.0, 4.0 };
    std::array<double, 2> upper { 1.0, 64.0 };

    void validate() const;
};

/// u dominates v: no worse everywhere, strictly better somewhere. Invalid
/// vectors are dominated by every valid one and dominate nothing.
bool dominates(const ObjectiveVector& u, const ObjectiveVector& v) noexcept;

/// Points mapped to bounds-normalized coordinates, one row per point.
/// Invalid errors map to a large finite coordinate so distances stay finite.
Eigen::MatrixX2d normalized(std::span<const ObjectiveVector> points, const ObjectiveBounds& bounds);

struct Nsga2Info {
    std::size_t rank = 0;
    double crowding = 0.0;
    std::size_t domination_count = 0;       // how many points dominate this one
    std::vector<std::size_t> dominated_set; // points this one dominates
};

struct NondominatedSort {
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<Nsga2Info> info;
};

NondominatedSort fast_nondominated_sort(std::span<const ObjectiveVector> points);

/// Crowding distance of each member of `front` (indices into `points`), in
/// the same order as `front`.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> points, std::span<const std::size_t> front,
                                      const ObjectiveBounds& bounds);

/// Sort plus crowding over every front; the returned info is complete.
NondominatedSort rank_and_crowd(std::span<const ObjectiveVector> points, const ObjectiveBounds& bounds);

/// Crowded comparison: lower rank wins, then larger crowding distance.
inline bool crowded_better(const Nsga2Info& a, const Nsga2Info& b) noexcept
{
    return a.rank < b.rank || (a.rank == b.rank && a.crowding > b.crowding);
}

/// Indices of the `target` survivors of `points` (parents and offspring).
std::vector<std::size_t> nsga2_environmental(std::span<const ObjectiveVector> points, std::size_t target,
                                             const ObjectiveBounds& bounds);

struct Spea2Info {
    std::size_t strength = 0;
    std::size_t raw = 0;
    double density = 0.0;
    double fitness = 0.0;
};

/// Strength, raw fitness and k-th nearest neighbor density over the union of
/// population and archive, with k = floor(sqrt(|union|)).
std::vector<Spea2Info> spea2_assign(std::span<const ObjectiveVector> points, const ObjectiveBounds& bounds);

/// Indices of the next archive drawn from `points`, given their assigned
/// fitness. Over capacity, the point with the lexicographically smallest
/// sorted neighbor-distance list goes first, except sole holders of an
/// objective extreme. Under capacity, dominated points fill by ascending F.
std::vector<std::size_t> spea2_environmental(std::span<const ObjectiveVector> points,
                                             std::span<const Spea2Info> info, std::size_t capacity,
                                             const ObjectiveBounds& bounds);

/// Front member carried through multi-run merging.
struct FrontPoint {
    ObjectiveVector objectives;
    std::string expression;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    std::string karva;
};

/// Non-dominated subset of all sets pooled together, sorted by error. Equal
/// objective pairs collapse to the lexicographically smallest expression.
std::vector<FrontPoint> merge_fronts(std::span<const std::vector<FrontPoint>> sets);

/// Index of the point closest to the ideal (lower bounds) in normalized space.
std::size_t knee_point(std::span<const ObjectiveVector> points, const ObjectiveBounds& bounds);

} // namespace kexpr
