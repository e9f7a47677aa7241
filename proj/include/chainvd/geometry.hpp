#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chainvd/errors.hpp"
#include "chainvd/random.hpp"

namespace chainvd {

/// A point in R^2 or R^3. The dimension is a runtime property so one code
/// path serves planar and spatial chains alike.
class Point {
public:
    Point(double x, double y) : c_{x, y, 0.0}, dim_(2) { check_finite(); }
    Point(double x, double y, double z) : c_{x, y, z}, dim_(3) { check_finite(); }

    static Point from(std::span<const double> coords) {
        if (coords.size() == 2) return Point(coords[0], coords[1]);
        if (coords.size() == 3) return Point(coords[0], coords[1], coords[2]);
        throw DimensionError("point dimension must be 2 or 3, got " +
                             std::to_string(coords.size()));
    }

    int dim() const { return dim_; }
    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

    bool operator==(const Point& o) const { return dim_ == o.dim_ && c_ == o.c_; }

private:
    void check_finite() const {
        for (int i = 0; i < dim_; ++i)
            if (!std::isfinite(c_[static_cast<std::size_t>(i)]))
                throw std::invalid_argument("non-finite point coordinate");
    }

    std::array<double, 3> c_;
    int dim_;
};

inline double euclid_sq(const Point& a, const Point& b) {
    if (a.dim() != b.dim())
        throw DimensionError("cannot measure distance between a 2D and a 3D point");
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double euclid(const Point& a, const Point& b) { return std::sqrt(euclid_sq(a, b)); }

/// An ordered, non-empty vertex sequence with a label. Consecutive duplicate
/// vertices are allowed and preserved.
class Chain {
public:
    Chain(std::string id, std::vector<Point> vertices)
        : id_(std::move(id)), vertices_(std::move(vertices)) {
        if (vertices_.empty()) throw EmptyChain("chain '" + id_ + "' has no vertices");
        for (const Point& p : vertices_)
            if (p.dim() != vertices_.front().dim())
                throw DimensionError("chain '" + id_ + "' mixes 2D and 3D vertices");
    }

    const std::string& id() const { return id_; }
    std::size_t size() const { return vertices_.size(); }
    int dim() const { return vertices_.front().dim(); }
    const Point& operator[](std::size_t i) const { return vertices_[i]; }
    const std::vector<Point>& vertices() const { return vertices_; }

private:
    std::string id_;
    std::vector<Point> vertices_;
};

inline Point random_point(std::mt19937_64& g, int dim, double lo, double hi) {
    if (dim == 2) return Point(uniform_double(g, lo, hi), uniform_double(g, lo, hi));
    if (dim == 3)
        return Point(uniform_double(g, lo, hi), uniform_double(g, lo, hi),
                     uniform_double(g, lo, hi));
    throw DimensionError("point dimension must be 2 or 3, got " + std::to_string(dim));
}

inline Chain random_chain(std::mt19937_64& g, int dim, std::size_t len, double lo,
                          double hi, std::string id = "rand") {
    std::vector<Point> v;
    v.reserve(len);
    for (std::size_t i = 0; i < len; ++i) v.push_back(random_point(g, dim, lo, hi));
    return Chain(std::move(id), std::move(v));
}

} // namespace chainvd
