#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "chainvd/errors.hpp"
#include "chainvd/geometry.hpp"

namespace chainvd {

/// 1-based inclusive index range into a chain.
struct IndexRange {
    int lo = 0;
    int hi = 0;
    int length() const { return hi - lo + 1; }
    bool operator==(const IndexRange&) const = default;
};

struct WalkStep {
    IndexRange a;
    IndexRange b;
    bool operator==(const WalkStep&) const = default;
};

/// A coupling of two chains: both index sets are partitioned into the same
/// number of consecutive non-empty ranges, and in every step at least one
/// side is a single vertex.
struct PairedWalk {
    std::vector<WalkStep> steps;
    bool operator==(const PairedWalk&) const = default;
};

inline void validate_walk(const PairedWalk& w, int k, int l) {
    if (w.steps.empty()) throw InvalidWalk("walk has no steps");
    int a_next = 1, b_next = 1;
    for (std::size_t s = 0; s < w.steps.size(); ++s) {
        const WalkStep& st = w.steps[s];
        if (st.a.hi < st.a.lo || st.b.hi < st.b.lo)
            throw InvalidWalk("step " + std::to_string(s + 1) + " has an empty range");
        if (st.a.lo != a_next || st.b.lo != b_next)
            throw InvalidWalk("step " + std::to_string(s + 1) +
                              " breaks contiguous coverage");
        if (st.a.length() != 1 && st.b.length() != 1)
            throw InvalidWalk("step " + std::to_string(s + 1) +
                              " advances both chains by more than one vertex");
        a_next = st.a.hi + 1;
        b_next = st.b.hi + 1;
    }
    if (a_next != k + 1 || b_next != l + 1)
        throw InvalidWalk("walk does not cover both chains exactly");
}

inline double walk_cost(const Chain& a, const Chain& b, const PairedWalk& w) {
    if (a.dim() != b.dim())
        throw DimensionError("cannot compare chains of different dimension");
    validate_walk(w, static_cast<int>(a.size()), static_cast<int>(b.size()));
    double worst = 0.0;
    for (const WalkStep& st : w.steps)
        for (int i = st.a.lo; i <= st.a.hi; ++i)
            for (int j = st.b.lo; j <= st.b.hi; ++j)
                worst = std::max(worst, euclid_sq(a[static_cast<std::size_t>(i - 1)],
                                                  b[static_cast<std::size_t>(j - 1)]));
    return std::sqrt(worst);
}

struct FrechetResult {
    double distance = 0.0;
    PairedWalk alignment;
    std::pair<int, int> realizing_pair{1, 1};
};

namespace detail {

// Row-major k*l table of the min-max recurrence over squared vertex
// distances. Every entry is a copy of some euclid_sq value (max/min only
// select), so later == comparisons against entries are exact.
inline void dfd_table(const Chain& a, const Chain& b, std::vector<double>& t) {
    const std::size_t k = a.size(), l = b.size();
    t.resize(k * l);
    t[0] = euclid_sq(a[0], b[0]);
    for (std::size_t j = 1; j < l; ++j) t[j] = std::max(t[j - 1], euclid_sq(a[0], b[j]));
    for (std::size_t i = 1; i < k; ++i) {
        t[i * l] = std::max(t[(i - 1) * l], euclid_sq(a[i], b[0]));
        for (std::size_t j = 1; j < l; ++j) {
            const double reach =
                std::min({t[(i - 1) * l + (j - 1)], t[i * l + (j - 1)], t[(i - 1) * l + j]});
            t[i * l + j] = std::max(euclid_sq(a[i], b[j]), reach);
        }
    }
}

inline double dfd_sq(const Chain& a, const Chain& b, std::vector<double>& scratch) {
    if (a.dim() != b.dim())
        throw DimensionError("cannot compare chains of different dimension");
    dfd_table(a, b, scratch);
    return scratch.back();
}

inline double dfd_sq(const Chain& a, const Chain& b) {
    std::vector<double> scratch;
    return dfd_sq(a, b, scratch);
}

// Turn a monotone lattice path ((0,0) .. (k-1,l-1), 0-based cells) into a
// paired walk whose vertex pairs all lie on the path. Maximal straight runs
// become one step each; where the path turns without a diagonal move the
// corner cell is dropped, which keeps the partition property and never
// raises the cost.
inline PairedWalk path_to_walk(const std::vector<std::pair<int, int>>& path) {
    std::vector<WalkStep> rev;
    std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(path.size()) - 1;
    while (true) {
        const auto [i, j] = path[static_cast<std::size_t>(idx)];
        if (idx == 0) {
            rev.push_back({{1, 1}, {1, 1}});
            break;
        }
        const auto [pi, pj] = path[static_cast<std::size_t>(idx - 1)];
        if (pi == i - 1 && pj == j - 1) {
            rev.push_back({{i + 1, i + 1}, {j + 1, j + 1}});
            --idx;
            continue;
        }
        if (pi == i) { // run of b-advances along row i
            std::ptrdiff_t start = idx - 1;
            while (start > 0 && path[static_cast<std::size_t>(start - 1)].first == i)
                --start;
            const int j0 = path[static_cast<std::size_t>(start)].second;
            if (start == 0) {
                rev.push_back({{i + 1, i + 1}, {j0 + 1, j + 1}});
                break;
            }
            const auto [qi, qj] = path[static_cast<std::size_t>(start - 1)];
            if (qi == i - 1 && qj == j0 - 1) {
                rev.push_back({{i + 1, i + 1}, {j0 + 1, j + 1}});
            } else { // entered the run vertically: skip corner cell (i, j0)
                rev.push_back({{i + 1, i + 1}, {j0 + 2, j + 1}});
            }
            idx = start - 1;
            continue;
        }
        // run of a-advances along column j
        std::ptrdiff_t start = idx - 1;
        while (start > 0 && path[static_cast<std::size_t>(start - 1)].second == j)
            --start;
        const int i0 = path[static_cast<std::size_t>(start)].first;
        if (start == 0) {
            rev.push_back({{i0 + 1, i + 1}, {j + 1, j + 1}});
            break;
        }
        const auto [qi, qj] = path[static_cast<std::size_t>(start - 1)];
        if (qi == i0 - 1 && qj == j - 1) {
            rev.push_back({{i0 + 1, i + 1}, {j + 1, j + 1}});
        } else {
            rev.push_back({{i0 + 2, i + 1}, {j + 1, j + 1}});
        }
        idx = start - 1;
    }
    std::reverse(rev.begin(), rev.end());
    return PairedWalk{std::move(rev)};
}

} // namespace detail

/// Discrete Fréchet distance with an optimal paired walk and the vertex pair
/// realizing the distance (lexicographically smallest such pair along the
/// returned walk).
inline FrechetResult dfd(const Chain& a, const Chain& b) {
    if (a.dim() != b.dim())
        throw DimensionError("cannot compare chains of different dimension");
    const int k = static_cast<int>(a.size());
    const int l = static_cast<int>(b.size());
    std::vector<double> t;
    detail::dfd_table(a, b, t);

    // Backtrack one optimal lattice path; preference order at ties is
    // diagonal, then b-advance, then a-advance.
    std::vector<std::pair<int, int>> path;
    int i = k - 1, j = l - 1;
    path.emplace_back(i, j);
    while (i > 0 || j > 0) {
        if (i == 0) {
            --j;
        } else if (j == 0) {
            --i;
        } else {
            const std::size_t row = static_cast<std::size_t>(i) * static_cast<std::size_t>(l);
            const std::size_t up = row - static_cast<std::size_t>(l);
            const double diag = t[up + static_cast<std::size_t>(j - 1)];
            const double left = t[row + static_cast<std::size_t>(j - 1)];
            const double above = t[up + static_cast<std::size_t>(j)];
            const double best = std::min({diag, left, above});
            if (diag == best) {
                --i;
                --j;
            } else if (left == best) {
                --j;
            } else {
                --i;
            }
        }
        path.emplace_back(i, j);
    }
    std::reverse(path.begin(), path.end());

    FrechetResult r;
    r.alignment = detail::path_to_walk(path);

    double worst = -1.0;
    for (const WalkStep& st : r.alignment.steps)
        for (int ai = st.a.lo; ai <= st.a.hi; ++ai)
            for (int bj = st.b.lo; bj <= st.b.hi; ++bj) {
                const double d = euclid_sq(a[static_cast<std::size_t>(ai - 1)],
                                           b[static_cast<std::size_t>(bj - 1)]);
                if (d > worst) {
                    worst = d;
                    r.realizing_pair = {ai, bj};
                }
            }
    r.distance = std::sqrt(worst);
    return r;
}

/// Exhaustive reference: minimum over all monotone lattice paths of the
/// bottleneck vertex distance. Exponential; guarded by |A|*|B| <= 36.
inline double dfd_oracle(const Chain& a, const Chain& b) {
    if (a.dim() != b.dim())
        throw DimensionError("cannot compare chains of different dimension");
    const int k = static_cast<int>(a.size());
    const int l = static_cast<int>(b.size());
    if (k * l > 36)
        throw TooLargeForOracle("oracle limited to |A|*|B| <= 36, got " +
                                std::to_string(k * l));
    std::vector<double> d2(static_cast<std::size_t>(k) * static_cast<std::size_t>(l));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < l; ++j)
            d2[static_cast<std::size_t>(i * l + j)] =
                euclid_sq(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);

    double best = std::numeric_limits<double>::infinity();
    auto walk = [&](auto&& self, int i, int j, double cur) -> void {
        cur = std::max(cur, d2[static_cast<std::size_t>(i * l + j)]);
        if (cur >= best) return;
        if (i == k - 1 && j == l - 1) {
            best = cur;
            return;
        }
        if (i + 1 < k && j + 1 < l) self(self, i + 1, j + 1, cur);
        if (j + 1 < l) self(self, i, j + 1, cur);
        if (i + 1 < k) self(self, i + 1, j, cur);
    };
    walk(walk, 0, 0, 0.0);
    return std::sqrt(best);
}

/// Distance between two single segments: max of the two endpoint distances.
inline double dfd_segments(const Chain& a, const Chain& b) {
    if (a.size() != 2 || b.size() != 2)
        throw InvalidArity("dfd_segments requires two-vertex chains, got |A|=" +
                           std::to_string(a.size()) + ", |B|=" + std::to_string(b.size()));
    if (a.dim() != b.dim())
        throw DimensionError("cannot compare chains of different dimension");
    return std::max(euclid(a[0], b[0]), euclid(a[1], b[1]));
}

} // namespace chainvd
