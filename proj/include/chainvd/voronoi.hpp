#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "chainvd/configspace.hpp"
#include "chainvd/errors.hpp"
#include "chainvd/frechet.hpp"
#include "chainvd/geometry.hpp"

namespace chainvd {

/// Non-empty collection of chains with unique ids and uniform dimension.
class SiteSet {
public:
    explicit SiteSet(std::vector<Chain> sites) : sites_(std::move(sites)) {
        if (sites_.empty()) throw EmptySiteSet("site set is empty");
        std::set<std::string> seen;
        for (const Chain& c : sites_) {
            if (c.dim() != sites_.front().dim())
                throw DimensionError("site '" + c.id() + "' is " + std::to_string(c.dim()) +
                                     "D but site '" + sites_.front().id() + "' is " +
                                     std::to_string(sites_.front().dim()) + "D");
            if (!seen.insert(c.id()).second)
                throw DuplicateId("duplicate site id '" + c.id() + "'");
        }
    }

    std::size_t size() const { return sites_.size(); }
    int dim() const { return sites_.front().dim(); }
    const Chain& operator[](std::size_t i) const { return sites_[i]; }
    const std::vector<Chain>& sites() const { return sites_; }

private:
    std::vector<Chain> sites_;
};

inline constexpr std::int64_t kDefaultSampleBudget = 10'000'000;

/// Axis-aligned sample grid over an affine slice of configuration space:
/// points origin + sum_t u_t * axes[t] with u_t running over extents[t] in
/// resolution[t] evenly spaced values. Rank m is 1, 2 or 3.
struct SliceSpec {
    ConfigPoint origin;
    std::vector<std::vector<double>> axes;
    std::vector<std::pair<double, double>> extents;
    std::vector<int> resolution;

    int rank() const { return static_cast<int>(axes.size()); }

    std::int64_t total_samples() const {
        std::int64_t n = 1;
        for (int r : resolution) n *= r;
        return n;
    }

    double param(int axis, int index) const {
        const auto [lo, hi] = extents[static_cast<std::size_t>(axis)];
        const int r = resolution[static_cast<std::size_t>(axis)];
        return lo + (hi - lo) * (static_cast<double>(index) / static_cast<double>(r - 1));
    }

    void validate(std::int64_t budget = kDefaultSampleBudget) const {
        const int m = rank();
        if (m < 1 || m > 3)
            throw std::invalid_argument("slice rank must be 1, 2 or 3, got " +
                                        std::to_string(m));
        if (extents.size() != axes.size() || resolution.size() != axes.size())
            throw std::invalid_argument("slice axes, extents and resolution disagree in rank");
        for (const auto& ax : axes)
            if (ax.size() != origin.values.size())
                throw std::invalid_argument("slice axis length does not match origin length");
        for (int r : resolution)
            if (r < 2) throw std::invalid_argument("slice resolution must be at least 2 per axis");
        double g[3][3] = {};
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c)
                for (std::size_t x = 0; x < axes[0].size(); ++x)
                    g[r][c] += axes[static_cast<std::size_t>(r)][x] *
                               axes[static_cast<std::size_t>(c)][x];
        double det = 0.0;
        if (m == 1)
            det = g[0][0];
        else if (m == 2)
            det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        else
            det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                  g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                  g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        if (!(det > 1e-12))
            throw std::invalid_argument("slice axes are not linearly independent");
        if (total_samples() > budget)
            throw BudgetExceeded("slice asks for " + std::to_string(total_samples()) +
                                 " samples, budget is " + std::to_string(budget));
    }

    ConfigPoint sample_point(std::span<const int> idx) const {
        std::vector<double> v = origin.values;
        for (int t = 0; t < rank(); ++t) {
            const double u = param(t, idx[static_cast<std::size_t>(t)]);
            const auto& ax = axes[static_cast<std::size_t>(t)];
            for (std::size_t x = 0; x < v.size(); ++x) v[x] += u * ax[x];
        }
        return ConfigPoint(std::move(v), origin.dim);
    }

    // Row-major flat index: axis 0 slowest.
    std::int64_t flatten(std::span<const int> idx) const {
        std::int64_t f = 0;
        for (int t = 0; t < rank(); ++t)
            f = f * resolution[static_cast<std::size_t>(t)] + idx[static_cast<std::size_t>(t)];
        return f;
    }

    void unflatten(std::int64_t f, std::span<int> idx) const {
        for (int t = rank() - 1; t >= 0; --t) {
            const int r = resolution[static_cast<std::size_t>(t)];
            idx[static_cast<std::size_t>(t)] = static_cast<int>(f % r);
            f /= r;
        }
    }
};

struct NearestResult {
    int index = -1;
    double distance = 0.0;
    bool tie = false;
};

/// Argmin of the Fréchet distance over the sites; ties report the lowest
/// index and set the flag. Comparisons happen on squared distances, which
/// the recurrence propagates without rounding.
inline NearestResult nearest_site(const Chain& q, const SiteSet& s) {
    if (q.dim() != s.dim())
        throw DimensionError("query is " + std::to_string(q.dim()) + "D but sites are " +
                             std::to_string(s.dim()) + "D");
    NearestResult best;
    double best_sq = std::numeric_limits<double>::infinity();
    std::vector<double> scratch;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double d = detail::dfd_sq(q, s[i], scratch);
        if (d < best_sq) {
            best_sq = d;
            best.index = static_cast<int>(i);
            best.tie = false;
        } else if (d == best_sq) {
            best.tie = true;
        }
    }
    best.distance = std::sqrt(best_sq);
    return best;
}

/// Sampled minimization diagram over a slice. owner/distance/tie are flat
/// row-major arrays; boundary_cells lists grid indices whose owner differs
/// from an axis neighbor; vertex_candidates lists anchors of 2^m blocks
/// containing three or more distinct owners.
struct RasterDiagram {
    SliceSpec slice;
    int num_sites = 0;
    std::vector<int> owner;
    std::vector<double> distance;
    std::vector<std::uint8_t> tie;
    std::vector<std::vector<int>> boundary_cells;
    std::vector<std::vector<int>> vertex_candidates;
};

namespace detail {

template <typename Fn>
inline void parallel_chunks(std::int64_t n, Fn&& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::int64_t want = n / 4096;
    const std::int64_t nthreads =
        std::max<std::int64_t>(1, std::min<std::int64_t>(hw ? hw : 1, want));
    if (nthreads == 1) {
        fn(std::int64_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    const std::int64_t chunk = (n + nthreads - 1) / nthreads;
    for (std::int64_t t = 0; t < nthreads; ++t) {
        const std::int64_t lo = t * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
    }
    for (std::thread& th : pool) th.join();
}

} // namespace detail

inline RasterDiagram rasterize(const SiteSet& sites, const SliceSpec& slice,
                               std::int64_t budget = kDefaultSampleBudget) {
    slice.validate(budget);
    if (slice.origin.dim != sites.dim())
        throw DimensionError("slice encodes " + std::to_string(slice.origin.dim) +
                             "D chains but sites are " + std::to_string(sites.dim()) + "D");
    const std::int64_t n = slice.total_samples();
    const int m = slice.rank();

    RasterDiagram r;
    r.slice = slice;
    r.num_sites = static_cast<int>(sites.size());
    r.owner.assign(static_cast<std::size_t>(n), 0);
    r.distance.assign(static_cast<std::size_t>(n), 0.0);
    r.tie.assign(static_cast<std::size_t>(n), 0);

    detail::parallel_chunks(n, [&](std::int64_t lo, std::int64_t hi) {
        std::vector<double> scratch;
        std::vector<int> idx(static_cast<std::size_t>(m));
        for (std::int64_t f = lo; f < hi; ++f) {
            slice.unflatten(f, idx);
            const Chain q = decode(slice.sample_point(idx), "sample");
            double best_sq = std::numeric_limits<double>::infinity();
            int arg = 0;
            bool tie = false;
            for (std::size_t s = 0; s < sites.size(); ++s) {
                const double d = detail::dfd_sq(q, sites[s], scratch);
                if (d < best_sq) {
                    best_sq = d;
                    arg = static_cast<int>(s);
                    tie = false;
                } else if (d == best_sq) {
                    tie = true;
                }
            }
            r.owner[static_cast<std::size_t>(f)] = arg;
            r.distance[static_cast<std::size_t>(f)] = std::sqrt(best_sq);
            r.tie[static_cast<std::size_t>(f)] = tie ? 1 : 0;
        }
    });

    std::vector<std::int64_t> stride(static_cast<std::size_t>(m));
    std::int64_t acc = 1;
    for (int t = m - 1; t >= 0; --t) {
        stride[static_cast<std::size_t>(t)] = acc;
        acc *= slice.resolution[static_cast<std::size_t>(t)];
    }

    std::vector<std::uint8_t> on_boundary(static_cast<std::size_t>(n), 0);
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (std::int64_t f = 0; f < n; ++f) {
        slice.unflatten(f, idx);
        for (int t = 0; t < m; ++t) {
            if (idx[static_cast<std::size_t>(t)] + 1 >=
                slice.resolution[static_cast<std::size_t>(t)])
                continue;
            const std::int64_t g = f + stride[static_cast<std::size_t>(t)];
            if (r.owner[static_cast<std::size_t>(f)] != r.owner[static_cast<std::size_t>(g)]) {
                on_boundary[static_cast<std::size_t>(f)] = 1;
                on_boundary[static_cast<std::size_t>(g)] = 1;
            }
        }
    }
    for (std::int64_t f = 0; f < n; ++f) {
        if (!on_boundary[static_cast<std::size_t>(f)]) continue;
        slice.unflatten(f, idx);
        r.boundary_cells.emplace_back(idx.begin(), idx.end());
    }

    for (std::int64_t f = 0; f < n; ++f) {
        slice.unflatten(f, idx);
        bool interior = true;
        for (int t = 0; t < m; ++t)
            if (idx[static_cast<std::size_t>(t)] + 1 >=
                slice.resolution[static_cast<std::size_t>(t)])
                interior = false;
        if (!interior) continue;
        int distinct[8];
        int count = 0;
        for (int corner = 0; corner < (1 << m); ++corner) {
            std::int64_t g = f;
            for (int t = 0; t < m; ++t)
                if (corner & (1 << t)) g += stride[static_cast<std::size_t>(t)];
            const int o = r.owner[static_cast<std::size_t>(g)];
            bool seen = false;
            for (int c = 0; c < count; ++c) seen = seen || distinct[c] == o;
            if (!seen) distinct[count++] = o;
        }
        if (count >= 3) r.vertex_candidates.emplace_back(idx.begin(), idx.end());
    }
    return r;
}

struct FeatureCounts {
    int num_cells = 0;
    std::int64_t num_boundary = 0;
    std::int64_t num_vertex_candidates = 0;
    int distinct_owner_triples = 0;
};

inline FeatureCounts count_features(const RasterDiagram& r) {
    FeatureCounts fc;
    std::set<int> owners(r.owner.begin(), r.owner.end());
    fc.num_cells = static_cast<int>(owners.size());
    fc.num_boundary = static_cast<std::int64_t>(r.boundary_cells.size());
    fc.num_vertex_candidates = static_cast<std::int64_t>(r.vertex_candidates.size());

    const int m = r.slice.rank();
    std::vector<std::int64_t> stride(static_cast<std::size_t>(m));
    std::int64_t acc = 1;
    for (int t = m - 1; t >= 0; --t) {
        stride[static_cast<std::size_t>(t)] = acc;
        acc *= r.slice.resolution[static_cast<std::size_t>(t)];
    }
    std::set<std::set<int>> groups;
    for (const std::vector<int>& anchor : r.vertex_candidates) {
        const std::int64_t f = r.slice.flatten(anchor);
        std::set<int> group;
        for (int corner = 0; corner < (1 << m); ++corner) {
            std::int64_t g = f;
            for (int t = 0; t < m; ++t)
                if (corner & (1 << t)) g += stride[static_cast<std::size_t>(t)];
            group.insert(r.owner[static_cast<std::size_t>(g)]);
        }
        groups.insert(std::move(group));
    }
    fc.distinct_owner_triples = static_cast<int>(groups.size());
    return fc;
}

} // namespace chainvd
