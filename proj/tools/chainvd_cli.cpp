#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chainvd/chainvd.hpp"

namespace {

using namespace chainvd;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const Chain& chain_by_id(const SiteSet& s, const std::string& id) {
    for (const Chain& c : s.sites())
        if (c.id() == id) return c;
    throw Error("no chain with id '" + id + "'");
}

struct DfdArgs {
    std::string file, id_a, id_b;
    bool alignment = false;
};

int run_dfd(const DfdArgs& a) {
    const SiteSet chains = load_chains(a.file);
    const FrechetResult r = dfd(chain_by_id(chains, a.id_a), chain_by_id(chains, a.id_b));
    std::printf("%s\n", g17(r.distance).c_str());
    if (a.alignment) {
        for (const WalkStep& st : r.alignment.steps)
            std::printf("a[%d..%d] b[%d..%d]\n", st.a.lo, st.a.hi, st.b.lo, st.b.hi);
        std::printf("realized-by a%d b%d\n", r.realizing_pair.first, r.realizing_pair.second);
    }
    return 0;
}

struct OracleArgs {
    int trials = 1000;
    int max_k = 6;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
};

int run_oracle_check(const OracleArgs& a) {
    std::mt19937_64 rng(a.seed);
    double worst = 0.0;
    int mismatches = 0;
    for (int t = 0; t < a.trials; ++t) {
        const int dim = uniform_int(rng, 2, 3);
        const int k = uniform_int(rng, 1, a.max_k);
        const int l = uniform_int(rng, 1, std::min(a.max_k, 36 / k));
        const Chain x = random_chain(rng, dim, static_cast<std::size_t>(k), -10, 10, "a");
        const Chain y = random_chain(rng, dim, static_cast<std::size_t>(l), -10, 10, "b");
        const double fast = dfd(x, y).distance;
        const double slow = dfd_oracle(x, y);
        const double dev = std::abs(fast - slow);
        worst = std::max(worst, dev);
        if (dev > a.tolerance) {
            ++mismatches;
            std::printf("mismatch at trial %d: dfd=%s oracle=%s\n", t, g17(fast).c_str(),
                        g17(slow).c_str());
        }
    }
    std::printf("oracle-check: trials=%d max-deviation=%s\n", a.trials, g17(worst).c_str());
    if (mismatches) {
        std::printf("FAIL (%d mismatches)\n", mismatches);
        return 1;
    }
    std::printf("OK\n");
    return 0;
}

struct NnArgs {
    std::string sites, queries;
};

int run_nn(const NnArgs& a) {
    const SiteSet sites = load_chains(a.sites);
    const SiteSet queries = load_chains(a.queries);
    for (const Chain& q : queries.sites()) {
        const NearestResult r = nearest_site(q, sites);
        std::printf("%s\t%s\t%s\t%d\n", q.id().c_str(),
                    sites[static_cast<std::size_t>(r.index)].id().c_str(),
                    g17(r.distance).c_str(), r.tie ? 1 : 0);
    }
    return 0;
}

struct SliceArgs {
    std::string sites, slice, out, format;
    std::int64_t budget = kDefaultSampleBudget;
};

int run_voronoi_slice(const SliceArgs& a) {
    const SiteSet sites = load_chains(a.sites);
    const SliceSpec spec = load_slice_spec(a.slice);
    const RasterDiagram raster = rasterize(sites, spec, a.budget);
    emit_raster(raster, parse_raster_format(a.format), a.out);
    const FeatureCounts fc = count_features(raster);
    std::printf("samples=%" PRId64 " cells=%d boundary=%" PRId64
                " vertex-candidates=%" PRId64 " owner-groups=%d\n",
                spec.total_samples(), fc.num_cells, fc.num_boundary,
                fc.num_vertex_candidates, fc.distinct_owner_triples);
    return 0;
}

struct ConstructLinfArgs {
    int k = 2;
    int n = 4;
    double m_bound = 100.0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_construct_linf(const ConstructLinfArgs& a) {
    std::mt19937_64 rng(a.seed);
    std::vector<std::vector<double>> base(static_cast<std::size_t>(a.n));
    for (auto& p : base) {
        p.resize(static_cast<std::size_t>(a.k));
        for (double& c : p) c = uniform_double(rng, -a.m_bound, a.m_bound);
    }
    const LinfEmbedding e = build_linf_embedding(base, a.m_bound);
    save_chains(a.out, e.chains);
    std::printf("wrote %d chains (k=%d, M=%s) to %s\n", a.n, a.k, g17(a.m_bound).c_str(),
                a.out.c_str());
    return 0;
}

struct ConstructCoplanarArgs {
    int n = 8;
    std::string out;
};

int run_construct_coplanar(const ConstructCoplanarArgs& a) {
    const DegenerateFamily f = build_degenerate(a.n);
    std::vector<Chain> chains = f.p_chains;
    chains.insert(chains.end(), f.q_chains.begin(), f.q_chains.end());
    save_chains(a.out, chains);
    std::printf("wrote %d chains to %s\n", a.n, a.out.c_str());
    return 0;
}

struct VerifyLinfArgs {
    std::string file;
    int trials = 100;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
};

int run_verify_linf(const VerifyLinfArgs& a) {
    const SiteSet file_sites = load_chains(a.file);
    const std::vector<Chain>& chains = file_sites.sites();
    const int k = static_cast<int>(chains.front().size());
    for (const Chain& c : chains) {
        if (c.dim() != 2)
            throw ParseError("'" + a.file + "' is not an embedding file: chain '" + c.id() +
                             "' is not 2D");
        if (static_cast<int>(c.size()) != k)
            throw ParseError("'" + a.file + "' is not an embedding file: chain '" + c.id() +
                             "' has " + std::to_string(c.size()) + " vertices, expected " +
                             std::to_string(k));
    }
    const double m_bound = chains.front()[0][1];
    if (!(m_bound > 0.0))
        throw ParseError("'" + a.file + "' is not an embedding file: first rung height " +
                         g17(m_bound) + " is not positive");

    std::int64_t flat_violations = 0;
    LinfEmbedding e;
    e.k = k;
    e.hypercube_bound = m_bound;
    e.chains = chains;
    for (const Chain& c : chains) {
        std::vector<double> base;
        for (int m = 0; m < k; ++m) {
            const Point& v = c[static_cast<std::size_t>(m)];
            if (std::abs(v[1] - (m + 1) * m_bound) > a.tolerance) {
                ++flat_violations;
                std::printf("flat violation: chain '%s' vertex %d at height %s, expected %s\n",
                            c.id().c_str(), m + 1, g17(v[1]).c_str(),
                            g17((m + 1) * m_bound).c_str());
            }
            if (std::abs(v[0]) > m_bound) {
                ++flat_violations;
                std::printf("flat violation: chain '%s' vertex %d leaves [-M, M]\n",
                            c.id().c_str(), m + 1);
            }
            base.push_back(v[0]);
        }
        e.base_points.push_back(std::move(base));
    }

    std::mt19937_64 rng(a.seed);
    std::int64_t checked = 0, gated = 0, identity_failures = 0, walk_failures = 0;
    for (int t = 0; t < a.trials; ++t) {
        std::vector<double> query(static_cast<std::size_t>(k));
        for (double& c : query) c = uniform_double(rng, -m_bound, m_bound);
        const LinfIdentityReport rep = verify_linf_identity(e, query, a.tolerance);
        for (const LinfSiteCheck& chk : rep.sites) {
            ++checked;
            if (chk.gated) {
                ++gated;
                continue;
            }
            if (!chk.identity_ok) {
                ++identity_failures;
                std::printf("identity failure: trial %d site %d linf=%s frechet=%s\n", t,
                            chk.site, g17(chk.linf).c_str(), g17(chk.frechet).c_str());
            }
            if (!chk.walk_condition_ok) {
                ++walk_failures;
                std::printf("walk-condition failure: trial %d site %d\n", t, chk.site);
            }
        }
    }
    std::printf("linf-verify: n=%zu k=%d M=%s\n", chains.size(), k, g17(m_bound).c_str());
    std::printf("trials=%d sites-checked=%" PRId64 " gated=%" PRId64
                " identity-failures=%" PRId64 " walk-failures=%" PRId64
                " flat-violations=%" PRId64 "\n",
                a.trials, checked, gated, identity_failures, walk_failures, flat_violations);
    if (identity_failures || walk_failures || flat_violations) {
        std::printf("FAIL\n");
        return 1;
    }
    std::printf("OK\n");
    return 0;
}

struct VerifyCoplanarArgs {
    std::string file;
    double tolerance = 1e-9;
};

int run_verify_coplanar(const VerifyCoplanarArgs& a) {
    const SiteSet file_sites = load_chains(a.file);
    std::vector<const Chain*> p_by_index, q_by_index;
    for (const Chain& c : file_sites.sites()) {
        const std::string& id = c.id();
        std::size_t pos = 1;
        int index = 0;
        if (id.size() < 2 || (id[0] != 'p' && id[0] != 'q'))
            throw ParseError("'" + a.file + "' is not a family file: unexpected id '" + id + "'");
        while (pos < id.size() && id[pos] >= '0' && id[pos] <= '9')
            index = index * 10 + (id[pos++] - '0');
        if (pos != id.size() || index < 1)
            throw ParseError("'" + a.file + "' is not a family file: unexpected id '" + id + "'");
        if (c.dim() != 2 || c.size() != 2)
            throw ParseError("'" + a.file + "' is not a family file: chain '" + id +
                             "' is not a planar segment");
        auto& bucket = (id[0] == 'p') ? p_by_index : q_by_index;
        if (index > static_cast<int>(bucket.size())) bucket.resize(static_cast<std::size_t>(index));
        bucket[static_cast<std::size_t>(index) - 1] = &c;
    }
    const int half = static_cast<int>(p_by_index.size());
    if (half < 2 || q_by_index.size() != p_by_index.size())
        throw ParseError("'" + a.file + "' is not a family file: need p1..ph and q1..qh, h >= 2");
    DegenerateFamily f;
    f.n = 2 * half;
    for (int i = 0; i < half; ++i) {
        if (!p_by_index[static_cast<std::size_t>(i)] || !q_by_index[static_cast<std::size_t>(i)])
            throw ParseError("'" + a.file + "' is not a family file: missing p" +
                             std::to_string(i + 1) + " or q" + std::to_string(i + 1));
        f.p_chains.push_back(*p_by_index[static_cast<std::size_t>(i)]);
        f.q_chains.push_back(*q_by_index[static_cast<std::size_t>(i)]);
    }

    int pairs = 0, failures = 0;
    for (int i = 1; i + 1 <= f.half(); ++i)
        for (int j = 1; j + 1 <= f.half() && j + 1 <= i; ++j) {
            const VertexReport rep = verify_vertex(f, i, j, a.tolerance);
            ++pairs;
            if (!rep.pass) {
                ++failures;
                for (const std::string& v : rep.violations)
                    std::printf("vertex (%d,%d): %s\n", i, j, v.c_str());
            }
        }
    std::printf("coplanar-verify: n=%d pairs=%d failures=%d\n", f.n, pairs, failures);
    if (failures) {
        std::printf("FAIL\n");
        return 1;
    }
    std::printf("all pairs verified\nOK\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Fréchet distances and sampled Voronoi diagrams of polygonal chains"};
    app.require_subcommand(1);

    DfdArgs dfd_args;
    CLI::App* cmd_dfd = app.add_subcommand("dfd", "Distance between two chains of a file");
    cmd_dfd->add_option("file", dfd_args.file, "JSON-Lines chain file")->required();
    cmd_dfd->add_option("idA", dfd_args.id_a, "id of the first chain")->required();
    cmd_dfd->add_option("idB", dfd_args.id_b, "id of the second chain")->required();
    cmd_dfd->add_flag("--alignment", dfd_args.alignment, "also print an optimal walk");

    OracleArgs oracle_args;
    CLI::App* cmd_oracle =
        app.add_subcommand("oracle-check", "Sweep dfd against the exhaustive oracle");
    cmd_oracle->add_option("--trials", oracle_args.trials, "number of random instances");
    cmd_oracle->add_option("--max-k", oracle_args.max_k, "maximum vertices per chain");
    cmd_oracle->add_option("--seed", oracle_args.seed, "RNG seed");
    cmd_oracle->add_option("--tolerance", oracle_args.tolerance, "allowed deviation");

    NnArgs nn_args;
    CLI::App* cmd_nn = app.add_subcommand("nn", "Nearest site for each query chain");
    cmd_nn->add_option("sites", nn_args.sites, "JSON-Lines site file")->required();
    cmd_nn->add_option("queries", nn_args.queries, "JSON-Lines query file")->required();

    SliceArgs slice_args;
    CLI::App* cmd_slice =
        app.add_subcommand("voronoi-slice", "Rasterize the nearest-site diagram over a slice");
    cmd_slice->add_option("sites", slice_args.sites, "JSON-Lines site file")->required();
    cmd_slice->add_option("--slice", slice_args.slice, "slice description (JSON)")->required();
    cmd_slice->add_option("--out", slice_args.out, "output path")->required();
    cmd_slice->add_option("--format", slice_args.format, "pgm or csv")->required();
    cmd_slice->add_option("--budget", slice_args.budget, "sample budget");

    CLI::App* cmd_construct = app.add_subcommand("construct", "Generate benchmark families");
    cmd_construct->require_subcommand(1);
    ConstructLinfArgs cl_args;
    CLI::App* cons_linf = cmd_construct->add_subcommand(
        "linf", "Random chains emulating points of an L-infinity hypercube");
    cons_linf->add_option("--k", cl_args.k, "hypercube dimension")->required();
    cons_linf->add_option("--n", cl_args.n, "number of chains")->required();
    cons_linf->add_option("--M", cl_args.m_bound, "hypercube half-width");
    cons_linf->add_option("--seed", cl_args.seed, "RNG seed");
    cons_linf->add_option("--out", cl_args.out, "output path")->required();

    ConstructCoplanarArgs cc_args;
    CLI::App* cons_cop = cmd_construct->add_subcommand(
        "coplanar", "Segment family whose diagram has quadratically many vertices");
    cons_cop->add_option("--n", cc_args.n, "family size (even, >= 4)")->required();
    cons_cop->add_option("--out", cc_args.out, "output path")->required();

    CLI::App* cmd_verify = app.add_subcommand("verify", "Check invariants of a family file");
    cmd_verify->require_subcommand(1);
    VerifyLinfArgs vl_args;
    CLI::App* ver_linf =
        cmd_verify->add_subcommand("linf", "Fréchet distance equals L-infinity below M");
    ver_linf->add_option("file", vl_args.file, "JSON-Lines chain file")->required();
    ver_linf->add_option("--trials", vl_args.trials, "number of random queries");
    ver_linf->add_option("--seed", vl_args.seed, "RNG seed");
    ver_linf->add_option("--tolerance", vl_args.tolerance, "comparison tolerance");

    VerifyCoplanarArgs vc_args;
    CLI::App* ver_cop =
        cmd_verify->add_subcommand("coplanar", "Diagram vertices of the segment family");
    ver_cop->add_option("file", vc_args.file, "JSON-Lines chain file")->required();
    ver_cop->add_option("--tolerance", vc_args.tolerance, "comparison tolerance");

    int count_n = 0;
    CLI::App* cmd_count =
        app.add_subcommand("count-vertices", "Verified diagram vertices of the segment family");
    cmd_count->add_option("--n", count_n, "family size (even, >= 4)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_dfd->parsed()) return run_dfd(dfd_args);
        if (cmd_oracle->parsed()) return run_oracle_check(oracle_args);
        if (cmd_nn->parsed()) return run_nn(nn_args);
        if (cmd_slice->parsed()) return run_voronoi_slice(slice_args);
        if (cmd_construct->parsed()) {
            if (cons_linf->parsed()) return run_construct_linf(cl_args);
            if (cons_cop->parsed()) return run_construct_coplanar(cc_args);
        }
        if (cmd_verify->parsed()) {
            if (ver_linf->parsed()) return run_verify_linf(vl_args);
            if (ver_cop->parsed()) return run_verify_coplanar(vc_args);
        }
        if (cmd_count->parsed()) {
            std::printf("%d\n", count_vertices(build_degenerate(count_n)));
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
