#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chainvd/errors.hpp"
#include "chainvd/frechet.hpp"
#include "chainvd/geometry.hpp"

namespace chainvd {

/// A chain of k vertices in R^d flattened to a vector of length d*k,
/// vertex-major: (x1, y1[, z1], x2, y2[, z2], ...).
struct ConfigPoint {
    std::vector<double> values;
    int dim = 2;
    int num_vertices = 0;

    ConfigPoint() = default;
    ConfigPoint(std::vector<double> v, int d) : values(std::move(v)), dim(d) {
        if (d != 2 && d != 3)
            throw DimensionError("config dimension must be 2 or 3, got " + std::to_string(d));
        if (values.empty() || values.size() % static_cast<std::size_t>(d) != 0)
            throw DimensionError("config vector of length " + std::to_string(values.size()) +
                                 " does not hold whole " + std::to_string(d) + "D vertices");
        num_vertices = static_cast<int>(values.size()) / d;
    }
};

inline ConfigPoint encode(const Chain& c) {
    std::vector<double> v;
    v.reserve(c.size() * static_cast<std::size_t>(c.dim()));
    for (const Point& p : c.vertices())
        for (int i = 0; i < c.dim(); ++i) v.push_back(p[i]);
    return ConfigPoint(std::move(v), c.dim());
}

inline Chain decode(const ConfigPoint& v, std::string id = "decoded") {
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(v.num_vertices));
    for (int m = 0; m < v.num_vertices; ++m)
        pts.push_back(Point::from(std::span<const double>(
            v.values.data() + static_cast<std::size_t>(m) * static_cast<std::size_t>(v.dim),
            static_cast<std::size_t>(v.dim))));
    return Chain(std::move(id), std::move(pts));
}

struct RankedPair {
    int a_index = 0;
    int b_index = 0;
    double distance = 0.0;
};

/// Which branch of the piecewise distance field is active at a sample: the
/// vertex pair (query index, site index) realizing the distance there, and
/// optionally all vertex-pair distances ranked ascending.
struct RegionSignature {
    std::pair<int, int> active_pair{1, 1};
    std::optional<std::vector<RankedPair>> distance_order;
};

inline std::pair<double, RegionSignature> distance_field(const Chain& site,
                                                         const ConfigPoint& v,
                                                         bool with_order = false) {
    if (v.dim != site.dim())
        throw DimensionError("config point is " + std::to_string(v.dim) +
                             "D but site '" + site.id() + "' is " +
                             std::to_string(site.dim()) + "D");
    const Chain q = decode(v, "query");
    const FrechetResult r = dfd(q, site);
    RegionSignature sig;
    sig.active_pair = r.realizing_pair;
    if (with_order) {
        std::vector<RankedPair> order;
        order.reserve(q.size() * site.size());
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < site.size(); ++j)
                order.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1,
                                 euclid(q[i], site[j])});
        std::sort(order.begin(), order.end(), [](const RankedPair& x, const RankedPair& y) {
            if (x.distance != y.distance) return x.distance < y.distance;
            if (x.a_index != y.a_index) return x.a_index < y.a_index;
            return x.b_index < y.b_index;
        });
        sig.distance_order = std::move(order);
    }
    return {r.distance, std::move(sig)};
}

} // namespace chainvd
