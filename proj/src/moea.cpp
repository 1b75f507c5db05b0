// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: Copyright 2026 The kexpr Authors

#include "kexpr/moea.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace kexpr {

namespace {

constexpr double kInvalidCoordinate = 1e6;
constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

void ObjectiveBounds::validate() const
{
    for (std::size_t m = 0; m < 2; ++m) {
        if (!(lower[m] < upper[m])) {
            throw ConfigError("objective bounds need min < max for objective " + std::to_string(m));
        }
    }
}

bool dominates(const ObjectiveVector& u, const ObjectiveVector& v) noexcept
{
    if (!u.valid) {
        return false;
    }
    if (!v.valid) {
        return true;
    }
    const bool no_worse = u.error <= v.error && u.size <= v.size;
    const bool better = u.error < v.error || u.size < v.size;
    return no_worse && better;
}

Eigen::MatrixX2d normalized(std::span<const ObjectiveVector> points, const ObjectiveBounds& bounds)
{
    Eigen::MatrixX2d x(static_cast<Eigen::Index>(points.size()), 2);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        x(r, 0) = points[i].valid ? (points[i].error - bounds.lower[0]) / (bounds.upper[0] - bounds.lower[0])
                                  : kInvalidCoordinate;
        x(r, 1) = (static_cast<double>(points[i].size) - bounds.lower[1]) / (bounds.upper[1] - bounds.lower[1]);
    }
    return x;
}

NondominatedSort fast_nondominated_sort(std::span<const ObjectiveVector> points)
{
    const auto n = points.size();
    NondominatedSort out;
    out.info.resize(n);
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) {
                continue;
            }
            if (dominates(points[p], points[q])) {
                out.info[p].dominated_set.push_back(q);
            } else if (dominates(points[q], points[p])) {
                ++out.info[p].domination_count;
            }
        }
        if (out.info[p].domination_count == 0) {
            out.info[p].rank = 0;
            current.push_back(p);
        }
    }
    std::vector<std::size_t> remaining(n);
    for (std::size_t p = 0; p < n; ++p) {
        remaining[p] = out.info[p].domination_count;
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto p : current) {
            for (auto q : out.info[p].dominated_set) {
                if (--remaining[q] == 0) {
                    out.info[q].rank = out.fronts.size() + 1;
                    next.push_back(q);
                }
            }
        }
        std::sort(next.begin(), next.end());
        out.fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return out;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> points, std::span<const std::size_t> front,
                                      const ObjectiveBounds& bounds)
{
    const auto n = front.size();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), kInf);
        return distance;
    }
    const Eigen::MatrixX2d x = normalized(points, bounds);
    std::vector<std::size_t> order(n);
    for (Eigen::Index m = 0; m < 2; ++m) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto va = x(static_cast<Eigen::Index>(front[a]), m);
            const auto vb = x(static_cast<Eigen::Index>(front[b]), m);
            return std::tie(va, front[a]) < std::tie(vb, front[b]);
        });
        distance[order.front()] = kInf;
        distance[order.back()] = kInf;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const auto prev = x(static_cast<Eigen::Index>(front[order[i - 1]]), m);
            const auto next = x(static_cast<Eigen::Index>(front[order[i + 1]]), m);
            distance[order[i]] += next - prev;
        }
    }
    return distance;
}

NondominatedSort rank_and_crowd(std::span<const ObjectiveVector> points, const ObjectiveBounds& bounds)
{
    auto sorted = fast_nondominated_sort(points);
    for (const auto& front : sorted.fronts) {
        const auto d = crowding_distance(points, front, bounds);
        for (std::size_t i = 0; i < front.size(); ++i) {
            sorted.info[front[i]].crowding = d[i];
        }
    }
    return sorted;
}

std::vector<std::size_t> nsga2_environmental(std::span<const ObjectiveVector> points, std::size_t target,
                                             const ObjectiveBounds& bounds)
{
    const auto sorted = rank_and_crowd(points, bounds);
    std::vector<std::size_t> survivors;
    survivors.reserve(target);
    for (const auto& front : sorted.fronts) {
        if (survivors.size() + front.size() <= target) {
            survivors.insert(survivors.end(), front.begin(), front.end());
            continue;
        }
        std::vector<std::size_t> last(front.begin(), front.end());
        std::stable_sort(last.begin(), last.end(), [&](std::size_t a, std::size_t b) {
            return sorted.info[a].crowding > sorted.info[b].crowding;
        });
        last.resize(target - survivors.size());
        survivors.insert(survivors.end(), last.begin(), last.end());
        break;
    }
    return survivors;
}

std::vector<Spea2Info> spea2_assign(std::span<const ObjectiveVector> points, const ObjectiveBounds& bounds)
{
    const auto n = points.size();
    std::vector<Spea2Info> info(n);
    if (n == 0) {
        return info;
    }
    std::vector<std::vector<std::size_t>> dominators(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && dominates(points[i], points[j])) {
                ++info[i].strength;
                dominators[j].push_back(i);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (auto j : dominators[i]) {
            info[i].raw += info[j].strength;
        }
    }

    const Eigen::MatrixX2d x = normalized(points, bounds);
    const auto k = std::min(static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n)))), n - 1);
    std::vector<double> dist;
    dist.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sigma = 0.0;
        if (k > 0) {
            dist.clear();
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    dist.push_back((x.row(static_cast<Eigen::Index>(i)) - x.row(static_cast<Eigen::Index>(j))).norm());
                }
            }
            std::nth_element(dist.begin(), dist.begin() + static_cast<long>(k - 1), dist.end());
            sigma = dist[k - 1];
        }
        info[i].density = 1.0 / (sigma + 2.0);
        info[i].fitness = static_cast<double>(info[i].raw) + info[i].density;
    }
    return info;
}

namespace {

struct Neighbor {
    double distance;
    std::size_t id;

    auto operator<=>(const Neighbor&) const = default;
};

std::vector<std::size_t> truncate(std::span<const ObjectiveVector> points, std::vector<std::size_t> members,
                                  std::size_t capacity, const ObjectiveBounds& bounds)
{
    const auto n = members.size();
    const Eigen::MatrixX2d x = normalized(points, bounds);
    std::vector<std::vector<Neighbor>> neighbors(n);
    for (std::size_t a = 0; a < n; ++a) {
        neighbors[a].reserve(n - 1);
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b) {
                const double d = (x.row(static_cast<Eigen::Index>(members[a]))
                                  - x.row(static_cast<Eigen::Index>(members[b])))
                                     .norm();
                neighbors[a].push_back({ d, b });
            }
        }
        std::sort(neighbors[a].begin(), neighbors[a].end());
    }

    std::vector<bool> alive(n, true);
    std::size_t count = n;
    auto objective = [&](std::size_t a, int m) {
        const auto& p = points[members[a]];
        return m == 0 ? p.error : static_cast<double>(p.size);
    };
    std::vector<bool> guarded(n);
    while (count > capacity) {
        // Sole holders of a per-objective minimum or maximum are guarded.
        std::fill(guarded.begin(), guarded.end(), false);
        for (int m = 0; m < 2; ++m) {
            double lo = kInf, hi = -kInf;
            for (std::size_t a = 0; a < n; ++a) {
                if (alive[a]) {
                    lo = std::min(lo, objective(a, m));
                    hi = std::max(hi, objective(a, m));
                }
            }
            std::size_t lo_count = 0, hi_count = 0, lo_at = 0, hi_at = 0;
            for (std::size_t a = 0; a < n; ++a) {
                if (!alive[a]) {
                    continue;
                }
                if (objective(a, m) == lo) {
                    ++lo_count;
                    lo_at = a;
                }
                if (objective(a, m) == hi) {
                    ++hi_count;
                    hi_at = a;
                }
            }
            if (lo_count == 1) {
                guarded[lo_at] = true;
            }
            if (hi_count == 1) {
                guarded[hi_at] = true;
            }
        }
        bool any_candidate = false;
        for (std::size_t a = 0; a < n; ++a) {
            any_candidate = any_candidate || (alive[a] && !guarded[a]);
        }

        std::size_t victim = n;
        for (std::size_t a = 0; a < n; ++a) {
            if (!alive[a] || (any_candidate && guarded[a])) {
                continue;
            }
            if (victim == n) {
                victim = a;
                continue;
            }
            const auto& la = neighbors[a];
            const auto& lv = neighbors[victim];
            // Distances only: neighbor ids must not decide the comparison.
            const bool smaller = std::lexicographical_compare(
                la.begin(), la.end(), lv.begin(), lv.end(),
                [](const Neighbor& p, const Neighbor& q) { return p.distance < q.distance; });
            if (smaller) {
                victim = a;
            }
        }
        alive[victim] = false;
        --count;
        for (std::size_t a = 0; a < n; ++a) {
            if (alive[a]) {
                auto& list = neighbors[a];
                list.erase(std::find_if(list.begin(), list.end(), [&](const Neighbor& nb) { return nb.id == victim; }));
            }
        }
    }
    std::vector<std::size_t> kept;
    kept.reserve(capacity);
    for (std::size_t a = 0; a < n; ++a) {
        if (alive[a]) {
            kept.push_back(members[a]);
        }
    }
    return kept;
}

} // namespace

std::vector<std::size_t> spea2_environmental(std::span<const ObjectiveVector> points,
                                             std::span<const Spea2Info> info, std::size_t capacity,
                                             const ObjectiveBounds& bounds)
{
    if (capacity < 2) {
        throw ConfigError("archive capacity must be >= 2");
    }
    std::vector<std::size_t> archive;
    std::vector<std::size_t> dominated;
    for (std::size_t i = 0; i < points.size(); ++i) {
        (info[i].fitness < 1.0 ? archive : dominated).push_back(i);
    }
    if (archive.size() > capacity) {
        return truncate(points, std::move(archive), capacity, bounds);
    }
    std::stable_sort(dominated.begin(), dominated.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].valid != points[b].valid) {
            return points[a].valid;
        }
        return info[a].fitness < info[b].fitness;
    });
    for (std::size_t i = 0; i < dominated.size() && archive.size() < capacity; ++i) {
        archive.push_back(dominated[i]);
    }
    return archive;
}

std::vector<FrontPoint> merge_fronts(std::span<const std::vector<FrontPoint>> sets)
{
    std::vector<FrontPoint> pooled;
    for (const auto& s : sets) {
        pooled.insert(pooled.end(), s.begin(), s.end());
    }
    std::vector<FrontPoint> front;
    for (std::size_t i = 0; i < pooled.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pooled.size() && !dominated; ++j) {
            dominated = dominates(pooled[j].objectives, pooled[i].objectives);
        }
        if (!dominated) {
            front.push_back(pooled[i]);
        }
    }
    std::stable_sort(front.begin(), front.end(), [](const FrontPoint& a, const FrontPoint& b) {
        return std::tie(a.objectives.error, a.objectives.size, a.expression)
            < std::tie(b.objectives.error, b.objectives.size, b.expression);
    });
    front.erase(std::unique(front.begin(), front.end(),
                            [](const FrontPoint& a, const FrontPoint& b) {
                                return a.objectives.error == b.objectives.error && a.objectives.size == b.objectives.size;
                            }),
                front.end());
    return front;
}

std::size_t knee_point(std::span<const ObjectiveVector> points, const ObjectiveBounds& bounds)
{
    const Eigen::MatrixX2d x = normalized(points, bounds);
    Eigen::Index best = 0;
    x.rowwise().squaredNorm().minCoeff(&best);
    return static_cast<std::size_t>(best);
}

} // namespace kexpr
