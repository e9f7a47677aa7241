#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chainvd/configspace.hpp"
#include "chainvd/errors.hpp"
#include "chainvd/geometry.hpp"
#include "chainvd/voronoi.hpp"

namespace chainvd {

namespace detail {

inline void write_atomic(const std::filesystem::path& path, const std::string& data) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!out) throw Error("failed writing '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

inline void append_g17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

} // namespace detail

/// Reads a JSON-Lines chain file: one {"id": ..., "vertices": [[x,y],...]}
/// object per line, blank lines ignored. All records must share one
/// dimension and ids must be unique.
inline SiteSet load_chains(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");

    std::vector<Chain> chains;
    std::map<std::string, int> id_lines;
    int first_dim = 0, first_dim_line = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = "line " + std::to_string(lineno);

        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(where + ": " + e.what());
        }
        if (!rec.is_object() || !rec.contains("id") || !rec.contains("vertices"))
            throw ParseError(where + ": expected an object with 'id' and 'vertices'");
        if (!rec["id"].is_string()) throw ParseError(where + ": 'id' must be a string");
        if (!rec["vertices"].is_array())
            throw ParseError(where + ": 'vertices' must be an array");
        const std::string id = rec["id"].get<std::string>();
        if (rec["vertices"].empty())
            throw EmptyChain(where + ": chain '" + id + "' has no vertices");

        std::vector<Point> pts;
        int dim = 0;
        for (const auto& v : rec["vertices"]) {
            if (!v.is_array() || (v.size() != 2 && v.size() != 3))
                throw ParseError(where + ": each vertex must be an array of 2 or 3 numbers");
            for (const auto& c : v)
                if (!c.is_number())
                    throw ParseError(where + ": vertex coordinates must be numbers");
            const int vdim = static_cast<int>(v.size());
            if (dim == 0)
                dim = vdim;
            else if (vdim != dim)
                throw DimensionError(where + ": chain '" + id + "' mixes 2D and 3D vertices");
            if (vdim == 2)
                pts.emplace_back(v[0].get<double>(), v[1].get<double>());
            else
                pts.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
        }
        if (first_dim == 0) {
            first_dim = dim;
            first_dim_line = lineno;
        } else if (dim != first_dim) {
            throw DimensionError(where + ": chain '" + id + "' is " + std::to_string(dim) +
                                 "D but line " + std::to_string(first_dim_line) +
                                 " established " + std::to_string(first_dim) + "D");
        }
        if (auto [it, fresh] = id_lines.emplace(id, lineno); !fresh)
            throw DuplicateId("duplicate chain id '" + id + "' (lines " +
                              std::to_string(it->second) + " and " + std::to_string(lineno) +
                              ")");
        chains.emplace_back(id, std::move(pts));
    }
    if (chains.empty()) throw EmptySiteSet("no chain records in '" + path.string() + "'");
    return SiteSet(std::move(chains));
}

inline void save_chains(const std::filesystem::path& path, const std::vector<Chain>& chains) {
    std::string out;
    for (const Chain& c : chains) {
        nlohmann::json rec;
        rec["id"] = c.id();
        nlohmann::json verts = nlohmann::json::array();
        for (const Point& p : c.vertices()) {
            nlohmann::json v = nlohmann::json::array();
            for (int i = 0; i < p.dim(); ++i) v.push_back(p[i]);
            verts.push_back(std::move(v));
        }
        rec["vertices"] = std::move(verts);
        out += rec.dump();
        out += '\n';
    }
    detail::write_atomic(path, out);
}

/// Reads a slice description: {"dim": d, "origin": [...], "axes": [[...],...],
/// "extents": [[lo,hi],...], "resolution": [n,...]}.
inline SliceSpec load_slice_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + std::string(e.what()));
    }
    const auto need = [&](const char* key, bool array) {
        if (!doc.contains(key) || (array && !doc[key].is_array()))
            throw ParseError(path.string() + ": missing or malformed '" + key + "'");
    };
    need("dim", false);
    need("origin", true);
    need("axes", true);
    need("extents", true);
    need("resolution", true);
    if (!doc["dim"].is_number_integer())
        throw ParseError(path.string() + ": 'dim' must be an integer");

    const int dim = doc["dim"].get<int>();
    std::vector<double> origin;
    for (const auto& c : doc["origin"]) {
        if (!c.is_number()) throw ParseError(path.string() + ": 'origin' must hold numbers");
        origin.push_back(c.get<double>());
    }
    if (dim != 2 && dim != 3)
        throw ParseError(path.string() + ": 'dim' must be 2 or 3");
    if (origin.empty() || origin.size() % static_cast<std::size_t>(dim) != 0)
        throw ParseError(path.string() + ": 'origin' length must be a positive multiple of 'dim'");

    SliceSpec spec;
    spec.origin = ConfigPoint(std::move(origin), dim);
    for (const auto& ax : doc["axes"]) {
        if (!ax.is_array()) throw ParseError(path.string() + ": each axis must be an array");
        std::vector<double> a;
        for (const auto& c : ax) {
            if (!c.is_number()) throw ParseError(path.string() + ": axes must hold numbers");
            a.push_back(c.get<double>());
        }
        spec.axes.push_back(std::move(a));
    }
    for (const auto& ex : doc["extents"]) {
        if (!ex.is_array() || ex.size() != 2 || !ex[0].is_number() || !ex[1].is_number())
            throw ParseError(path.string() + ": each extent must be [lo, hi]");
        spec.extents.emplace_back(ex[0].get<double>(), ex[1].get<double>());
    }
    for (const auto& r : doc["resolution"]) {
        if (!r.is_number_integer())
            throw ParseError(path.string() + ": 'resolution' must hold integers");
        spec.resolution.push_back(r.get<int>());
    }
    return spec;
}

enum class RasterFormat { pgm, csv };

inline RasterFormat parse_raster_format(std::string_view s) {
    if (s == "pgm") return RasterFormat::pgm;
    if (s == "csv") return RasterFormat::csv;
    throw UnsupportedFormat("unknown raster format '" + std::string(s) + "'");
}

/// Writes a raster to disk. pgm: plain P2 grayscale, rank-2 slices only,
/// owners spread over 0..255 and ties forced to 255. csv: one row per
/// sample in row-major order with the slice parameters, owner, distance
/// and tie flag. Writes are atomic (temp file + rename).
inline void emit_raster(const RasterDiagram& r, RasterFormat fmt,
                        const std::filesystem::path& out_path) {
    const int m = r.slice.rank();
    std::string out;
    if (fmt == RasterFormat::pgm) {
        if (m != 2)
            throw UnsupportedFormat("pgm output requires a rank-2 slice, got rank " +
                                    std::to_string(m));
        const int rows = r.slice.resolution[0];
        const int cols = r.slice.resolution[1];
        out += "P2\n";
        out += std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                const std::size_t f = static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                                      static_cast<std::size_t>(j);
                int v;
                if (r.tie[f])
                    v = 255;
                else if (r.num_sites > 1)
                    v = static_cast<int>(r.owner[f] * 255L / (r.num_sites - 1));
                else
                    v = 0;
                if (j) out += ' ';
                out += std::to_string(v);
            }
            out += '\n';
        }
    } else {
        for (int t = 0; t < m; ++t) {
            if (t) out += ',';
            out += "axis" + std::to_string(t);
        }
        out += ",owner,distance,tie\n";
        const std::int64_t n = r.slice.total_samples();
        std::vector<int> idx(static_cast<std::size_t>(m));
        for (std::int64_t f = 0; f < n; ++f) {
            r.slice.unflatten(f, idx);
            for (int t = 0; t < m; ++t) {
                if (t) out += ',';
                detail::append_g17(out, r.slice.param(t, idx[static_cast<std::size_t>(t)]));
            }
            out += ',';
            out += std::to_string(r.owner[static_cast<std::size_t>(f)]);
            out += ',';
            detail::append_g17(out, r.distance[static_cast<std::size_t>(f)]);
            out += ',';
            out += r.tie[static_cast<std::size_t>(f)] ? '1' : '0';
            out += '\n';
        }
    }
    detail::write_atomic(out_path, out);
}

/// Knobs shared by the CLI subcommands.
struct RunConfig {
    double tolerance = 1e-9;
    std::int64_t sample_budget = kDefaultSampleBudget;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = ".";
};

} // namespace chainvd
