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
#include "chainvd/frechet.hpp"
#include "chainvd/geometry.hpp"
#include "chainvd/random.hpp"

namespace chainvd {

inline double linf_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionError("L-infinity distance needs vectors of equal length");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Planar chains standing in for points of ([-M, M]^k, L_inf): vertex m of
/// the chain for base point p is (p[m], (m+1)*M). Distinct rungs are at
/// least M apart vertically, so below M the Fréchet distance can only use
/// the rung-by-rung coupling and collapses to the L_inf distance between
/// base points.
struct LinfEmbedding {
    int k = 0;
    double hypercube_bound = 0.0;
    std::vector<std::vector<double>> base_points;
    std::vector<Chain> chains;
};

inline Chain linf_chain(std::span<const double> base, double m_bound, std::string id) {
    std::vector<Point> v;
    v.reserve(base.size());
    for (std::size_t m = 0; m < base.size(); ++m)
        v.emplace_back(base[m], (static_cast<double>(m) + 1.0) * m_bound);
    return Chain(std::move(id), std::move(v));
}

inline LinfEmbedding build_linf_embedding(const std::vector<std::vector<double>>& base_points,
                                          double m_bound) {
    if (!(m_bound > 0.0)) throw std::invalid_argument("hypercube bound must be positive");
    if (base_points.empty()) throw std::invalid_argument("need at least one base point");
    LinfEmbedding e;
    e.k = static_cast<int>(base_points.front().size());
    if (e.k < 1) throw std::invalid_argument("base points must have at least one coordinate");
    e.hypercube_bound = m_bound;
    e.base_points = base_points;
    for (std::size_t i = 0; i < base_points.size(); ++i) {
        const auto& p = base_points[i];
        if (static_cast<int>(p.size()) != e.k)
            throw DimensionError("base point " + std::to_string(i + 1) + " has " +
                                 std::to_string(p.size()) + " coordinates, expected " +
                                 std::to_string(e.k));
        for (double c : p)
            if (std::abs(c) > m_bound)
                throw OutOfHypercube("base point " + std::to_string(i + 1) +
                                     " lies outside [-M, M]^k");
        e.chains.push_back(linf_chain(p, m_bound, "C" + std::to_string(i + 1)));
    }
    return e;
}

struct LinfSiteCheck {
    int site = 0;
    double linf = 0.0;
    double frechet = 0.0;
    bool gated = false;
    bool identity_ok = true;
    bool walk_condition_ok = true;
};

struct LinfIdentityReport {
    std::vector<LinfSiteCheck> sites;
    bool all_ok = true;
};

/// For a query base point, checks per site that the Fréchet distance equals
/// the L_inf distance whenever the latter is below M, and that nothing
/// cheaper than the rung-by-rung coupling exists: the coupling's cost must
/// match and every cross pairing of distinct rungs must stay at least M
/// away. Sites at L_inf >= M are reported as gated, with no assertion made.
inline LinfIdentityReport verify_linf_identity(const LinfEmbedding& e,
                                               std::span<const double> t_base,
                                               double tol = 1e-9) {
    if (static_cast<int>(t_base.size()) != e.k)
        throw DimensionError("query has " + std::to_string(t_base.size()) +
                             " coordinates, embedding uses " + std::to_string(e.k));
    for (double c : t_base)
        if (std::abs(c) > e.hypercube_bound)
            throw OutOfHypercube("query lies outside [-M, M]^k");
    const double m_bound = e.hypercube_bound;
    const Chain t_chain = linf_chain(t_base, m_bound, "T");

    PairedWalk rung_walk;
    for (int m = 1; m <= e.k; ++m) rung_walk.steps.push_back({{m, m}, {m, m}});

    LinfIdentityReport rep;
    for (std::size_t i = 0; i < e.chains.size(); ++i) {
        LinfSiteCheck chk;
        chk.site = static_cast<int>(i) + 1;
        chk.linf = linf_distance(t_base, e.base_points[i]);
        chk.frechet = dfd(t_chain, e.chains[i]).distance;
        if (chk.linf >= m_bound) {
            chk.gated = true;
        } else {
            chk.identity_ok = std::abs(chk.frechet - chk.linf) <= tol;
            const double coupled = walk_cost(t_chain, e.chains[i], rung_walk);
            chk.walk_condition_ok = std::abs(coupled - chk.linf) <= tol;
            for (std::size_t ma = 0; ma < t_chain.size() && chk.walk_condition_ok; ++ma)
                for (std::size_t mb = 0; mb < e.chains[i].size(); ++mb)
                    if (ma != mb && euclid(t_chain[ma], e.chains[i][mb]) < m_bound - tol) {
                        chk.walk_condition_ok = false;
                        break;
                    }
        }
        rep.all_ok = rep.all_ok && (chk.gated || (chk.identity_ok && chk.walk_condition_ok));
        rep.sites.push_back(chk);
    }
    return rep;
}

/// The segment family p_i = <(0,0),(i,0)>, q_j = <(j,0),(0,0)> for
/// i, j = 1..n/2. Sample points of its two-vertex configuration space are
/// read as 3D points (x, y, z) standing for the chain <(x, y), (z, 0)>.
struct DegenerateFamily {
    int n = 0;
    std::vector<Chain> p_chains;
    std::vector<Chain> q_chains;

    int half() const { return n / 2; }
    const Chain& p(int i) const { return p_chains.at(static_cast<std::size_t>(i) - 1); }
    const Chain& q(int j) const { return q_chains.at(static_cast<std::size_t>(j) - 1); }
};

inline DegenerateFamily build_degenerate(int n) {
    if (n < 4 || n % 2 != 0)
        throw InvalidArity("family size must be even and at least 4, got " + std::to_string(n));
    DegenerateFamily f;
    f.n = n;
    for (int i = 1; i <= n / 2; ++i) {
        f.p_chains.push_back(Chain("p" + std::to_string(i),
                                   {Point(0.0, 0.0), Point(static_cast<double>(i), 0.0)}));
        f.q_chains.push_back(Chain("q" + std::to_string(i),
                                   {Point(static_cast<double>(i), 0.0), Point(0.0, 0.0)}));
    }
    return f;
}

inline Chain point_chain(double x, double y, double z, std::string id = "s") {
    return Chain(std::move(id), {Point(x, y), Point(z, 0.0)});
}

inline Chain point_chain(const Point& s, std::string id = "s") {
    if (s.dim() != 3) throw DimensionError("sample point must be 3D");
    return point_chain(s[0], s[1], s[2], std::move(id));
}

enum class PatchKind { plane, paraboloid_cap, lune_region };

/// One analytic piece of a bisector between consecutive family members.
/// For p_i/p_{i+1}: a disk of radius 1/2 on the plane z = (2i+1)/2, plus two
/// paraboloid sheets z = i + r and z = i+1 - r for radius r = hypot(x, y)
/// at least 1/2. For q_j/q_{j+1}: the strip of the plane x = (2j+1)/2 where
/// z^2 <= 1/4 + y^2, plus the full-dimensional region where both
/// z^2 >= (x-j)^2 + y^2 and z^2 >= (x-j-1)^2 + y^2 hold.
struct BisectorPatch {
    PatchKind kind = PatchKind::plane;
    bool p_family = true;
    int index = 1;
    double plane_offset = 0.0;
    int apex = 0;
    int apex_sign = 1;

    bool contains(double x, double y, double z, double tol = 1e-9) const {
        switch (kind) {
        case PatchKind::plane:
            if (p_family)
                return std::abs(z - plane_offset) <= tol && x * x + y * y <= 0.25 + tol;
            return std::abs(x - plane_offset) <= tol && z * z <= 0.25 + y * y + tol;
        case PatchKind::paraboloid_cap: {
            const double r = std::hypot(x, y);
            return r >= 0.5 - tol && std::abs(z - (apex + apex_sign * r)) <= tol;
        }
        case PatchKind::lune_region: {
            const double dj = (x - index) * (x - index) + y * y;
            const double dj1 = (x - index - 1) * (x - index - 1) + y * y;
            return z * z >= dj - tol && z * z >= dj1 - tol;
        }
        }
        return false;
    }

    std::array<double, 3> sample(std::mt19937_64& rng) const {
        switch (kind) {
        case PatchKind::plane: {
            if (p_family) {
                const double r = uniform_double(rng, 0.0, 0.5);
                const double th = uniform_double(rng, 0.0, 6.283185307179586);
                return {r * std::cos(th), r * std::sin(th), plane_offset};
            }
            const double y = uniform_double(rng, -3.0, 3.0);
            const double zcap = std::sqrt(0.25 + y * y);
            return {plane_offset, y, uniform_double(rng, -zcap, zcap)};
        }
        case PatchKind::paraboloid_cap: {
            const double r = uniform_double(rng, 0.5, 4.5);
            const double th = uniform_double(rng, 0.0, 6.283185307179586);
            return {r * std::cos(th), r * std::sin(th), apex + apex_sign * r};
        }
        case PatchKind::lune_region: {
            const double radius = uniform_double(rng, 0.5, 4.0);
            const double z = (rng() & 1) ? radius : -radius;
            const double x =
                uniform_double(rng, index + 1 - radius, static_cast<double>(index) + radius);
            const double near_sq = std::max((x - index) * (x - index),
                                            (x - index - 1) * (x - index - 1));
            const double ycap = std::sqrt(std::max(0.0, radius * radius - near_sq));
            return {x, uniform_double(rng, -ycap, ycap), z};
        }
        }
        return {0.0, 0.0, 0.0};
    }
};

inline std::vector<BisectorPatch> p_bisector(int i) {
    if (i < 1) throw std::invalid_argument("p-bisector index must be at least 1");
    std::vector<BisectorPatch> patches;
    patches.push_back({PatchKind::plane, true, i, (2.0 * i + 1.0) / 2.0, 0, 1});
    patches.push_back({PatchKind::paraboloid_cap, true, i, 0.0, i, 1});
    patches.push_back({PatchKind::paraboloid_cap, true, i, 0.0, i + 1, -1});
    return patches;
}

inline std::vector<BisectorPatch> q_bisector(int j) {
    if (j < 1) throw std::invalid_argument("q-bisector index must be at least 1");
    std::vector<BisectorPatch> patches;
    patches.push_back({PatchKind::plane, false, j, (2.0 * j + 1.0) / 2.0, 0, 1});
    patches.push_back({PatchKind::lune_region, false, j, 0.0, 0, 1});
    return patches;
}

/// Meeting point of the bisectors of p_i/p_{i+1} and q_j/q_{j+1}: the point
/// ((j+1)/2, sqrt(i^2 - (j+1)^2)/2, i/2), real only for i >= j+1.
inline Point t_vertex(int i, int j) {
    if (i < 1 || j < 1) throw std::invalid_argument("vertex indices start at 1");
    if (i < j + 1)
        throw ComplexVertex("t(" + std::to_string(i) + "," + std::to_string(j) +
                            ") is not real: requires i >= j+1");
    const double di = i, dj1 = j + 1;
    return Point(dj1 / 2.0, std::sqrt(di * di - dj1 * dj1) / 2.0, di / 2.0);
}

struct VertexReport {
    int i = 0;
    int j = 0;
    std::array<double, 3> t{};
    bool pass = true;
    std::vector<std::string> violations;
    std::vector<std::pair<int, double>> q_low_measured;
};

/// Measures the distances from t(i,j) to every family member and checks the
/// separation pattern that makes it a diagram vertex: distance max(i/2,
/// |i/2 - h|) to each p_h, nothing among the q_m closer than i/2, and every
/// site beyond p_i / q_{j+1} strictly farther. Distances to q_m for
/// m <= j are recorded rather than asserted.
inline VertexReport verify_vertex(const DegenerateFamily& f, int i, int j,
                                  double tol = 1e-9) {
    if (i < 1 || j < 1 || i + 1 > f.half() || j + 1 > f.half())
        throw std::out_of_range("vertex (" + std::to_string(i) + "," + std::to_string(j) +
                                ") needs p" + std::to_string(i + 1) + " and q" +
                                std::to_string(j + 1) + " inside the family");
    const Point t = t_vertex(i, j);
    const Chain tc = point_chain(t, "t");
    const double ref = i / 2.0;

    VertexReport rep;
    rep.i = i;
    rep.j = j;
    rep.t = {t[0], t[1], t[2]};
    auto fail = [&rep](std::string msg) {
        rep.pass = false;
        rep.violations.push_back(std::move(msg));
    };

    for (int h = 1; h <= f.half(); ++h) {
        const double dh = dfd(tc, f.p(h)).distance;
        const double expect = std::max(ref, std::abs(ref - h));
        if (std::abs(dh - expect) > tol)
            fail("p" + std::to_string(h) + ": measured " + std::to_string(dh) +
                 ", expected " + std::to_string(expect));
        if (h > i && !(dh > ref))
            fail("p" + std::to_string(h) + " is not strictly farther than i/2");
        if (h < i && std::abs(dh - ref) > tol)
            fail("p" + std::to_string(h) + " is not at distance i/2");
    }
    for (int m = 1; m <= f.half(); ++m) {
        const double dm = dfd(tc, f.q(m)).distance;
        if (dm < ref - tol)
            fail("q" + std::to_string(m) + " is closer than i/2");
        if (m > j + 1 && !(dm > ref))
            fail("q" + std::to_string(m) + " is not strictly farther than i/2");
        if (std::abs(dm - ref) > tol && (m == j || m == j + 1))
            fail("q" + std::to_string(m) + " is not at distance i/2");
        if (m <= j) rep.q_low_measured.emplace_back(m, dm);
    }
    return rep;
}

/// Number of (i,j) pairs whose t(i,j) is real, lies inside the family range
/// and passes verification. Grows quadratically with the family size.
inline int count_vertices(const DegenerateFamily& f, double tol = 1e-9) {
    int count = 0;
    for (int i = 1; i + 1 <= f.half(); ++i)
        for (int j = 1; j + 1 <= f.half() && j + 1 <= i; ++j)
            if (verify_vertex(f, i, j, tol).pass) ++count;
    return count;
}

} // namespace chainvd
