#include "tlcn/metrics.hpp"
#include "tlcn/build.hpp"
#include "tlcn/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace tlcn {

double mdr(const UndirectedGraph& g) {
    if (g.n < 2)
        throw ValidationError("mdr requires at least two nodes");
    std::size_t kmax = 0;
    for (std::size_t v = 0; v < g.n; ++v)
        kmax = std::max(kmax, g.degree(static_cast<std::uint32_t>(v)));
    return double(kmax) / double(g.n - 1);
}

ClusteringResult clustering(const UndirectedGraph& g) {
    ClusteringResult res;
    res.local.assign(g.n, 0.0);
    if (g.n == 0)
        return res;

    const auto n = static_cast<std::ptrdiff_t>(g.n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (std::ptrdiff_t sv = 0; sv < n; ++sv) {
        const auto v = static_cast<std::uint32_t>(sv);
        const std::size_t k = g.degree(v);
        if (k < 2) continue;
        auto nv = g.neighbors(v);
        std::uint64_t closed = 0; // twice the links among neighbors
        for (std::uint32_t u : nv) {
            auto nu = g.neighbors(u);
            // sorted-list intersection
            std::size_t a = 0, b = 0;
            while (a < nv.size() && b < nu.size()) {
                if (nv[a] < nu[b]) ++a;
                else if (nu[b] < nv[a]) ++b;
                else { ++closed; ++a; ++b; }
            }
        }
        res.local[sv] = double(closed) / (double(k) * double(k - 1));
    }

    double sum = 0;
    for (double c : res.local)
        sum += c;
    res.global = sum / double(g.n);
    return res;
}

std::vector<std::pair<std::size_t, double>> rich_club(const UndirectedGraph& g) {
    std::vector<std::pair<std::size_t, double>> out;
    if (g.n == 0)
        return out;
    auto deg = g.degrees();
    const std::size_t kmax = *std::max_element(deg.begin(), deg.end());

    // N_{>k} via suffix sums of the degree histogram, E_{>k} via suffix sums
    // over min(deg(u), deg(v)) per edge.
    std::vector<std::uint64_t> node_hist(kmax + 2, 0), edge_hist(kmax + 2, 0);
    for (std::size_t d : deg)
        ++node_hist[d];
    for (std::size_t v = 0; v < g.n; ++v)
        for (std::uint32_t u : g.neighbors(static_cast<std::uint32_t>(v)))
            if (u > v)
                ++edge_hist[std::min(deg[v], deg[u])];

    std::uint64_t nodes_above = 0, edges_above = 0;
    std::vector<std::pair<std::size_t, double>> rev;
    for (std::size_t k = kmax + 1; k-- > 0;) {
        nodes_above += node_hist[k + 1];
        edges_above += edge_hist[k + 1];
        if (nodes_above >= 2)
            rev.emplace_back(k, 2.0 * double(edges_above) /
                                    (double(nodes_above) * double(nodes_above - 1)));
    }
    out.assign(rev.rbegin(), rev.rend());
    return out;
}

std::vector<DegreePoint> degree_distribution(const UndirectedGraph& g) {
    if (g.n == 0)
        throw ValidationError("degree_distribution requires a non-empty graph");
    auto deg = g.degrees();
    const std::size_t kmax = *std::max_element(deg.begin(), deg.end());
    std::vector<std::uint64_t> hist(kmax + 1, 0);
    for (std::size_t d : deg)
        ++hist[d];
    std::vector<DegreePoint> out;
    for (std::size_t k = 0; k <= kmax; ++k)
        if (hist[k] > 0)
            out.push_back({k, double(hist[k]) / double(g.n)});
    return out;
}

std::optional<PowerlawFit> fit_powerlaw(std::span<const DegreePoint> dist, std::size_t k_min) {
    std::vector<double> x, y;
    for (const DegreePoint& p : dist)
        if (p.k >= std::max<std::size_t>(k_min, 1) && p.p > 0) {
            x.push_back(std::log(double(p.k)));
            y.push_back(std::log(p.p));
        }
    if (x.size() < 3)
        return std::nullopt;
    const double n = double(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0)
        return std::nullopt;
    const double slope = sxy / sxx;
    PowerlawFit fit;
    fit.lambda_exp = -slope;
    fit.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

std::optional<double> assortativity(const UndirectedGraph& g) {
    if (g.m < 2)
        return std::nullopt;
    auto deg = g.degrees();
    // Newman's formula over edges, with j,k the endpoint degrees; integer
    // accumulation keeps the result independent of edge order.
    std::uint64_t s_jk = 0, s_sum = 0, s_sq = 0;
    for (std::size_t v = 0; v < g.n; ++v)
        for (std::uint32_t u : g.neighbors(static_cast<std::uint32_t>(v)))
            if (u > v) {
                const std::uint64_t j = deg[v], k = deg[u];
                s_jk += j * k;
                s_sum += j + k;
                s_sq += j * j + k * k;
            }
    const double m = double(g.m);
    const double mean = double(s_sum) / (2.0 * m);
    const double num = double(s_jk) / m - mean * mean;
    const double den = double(s_sq) / (2.0 * m) - mean * mean;
    if (den <= 1e-12 * std::max(1.0, double(s_sq) / (2.0 * m)))
        return std::nullopt;
    return num / den;
}

PathMetrics path_metrics(const UndirectedGraph& g) {
    PathMetrics pm;
    if (g.n < 2)
        return pm;
    std::uint64_t total_dist = 0, finite_pairs = 0, ecc_max = 0;

    const auto n = static_cast<std::ptrdiff_t>(g.n);
#ifdef _OPENMP
#pragma omp parallel reduction(+ : total_dist, finite_pairs) reduction(max : ecc_max)
#endif
    {
        std::vector<std::int32_t> dist(g.n);
        std::vector<std::uint32_t> queue(g.n);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16)
#endif
        for (std::ptrdiff_t ss = 0; ss < n; ++ss) {
            const auto s = static_cast<std::uint32_t>(ss);
            std::fill(dist.begin(), dist.end(), -1);
            dist[s] = 0;
            std::size_t head = 0, tail = 0;
            queue[tail++] = s;
            while (head < tail) {
                const std::uint32_t v = queue[head++];
                for (std::uint32_t u : g.neighbors(v))
                    if (dist[u] < 0) {
                        dist[u] = dist[v] + 1;
                        queue[tail++] = u;
                    }
            }
            for (std::size_t v = 0; v < g.n; ++v)
                if (v != s && dist[v] > 0) {
                    total_dist += std::uint64_t(dist[v]);
                    ++finite_pairs;
                    ecc_max = std::max(ecc_max, std::uint64_t(dist[v]));
                }
        }
    }
    if (finite_pairs > 0) {
        pm.spl = double(total_dist) / double(finite_pairs);
        pm.diameter = static_cast<std::size_t>(ecc_max);
    }
    return pm;
}

std::optional<double> structure_entropy(const UndirectedGraph& g) {
    if (g.n < 2 || g.m == 0)
        return std::nullopt;
    const double total = 2.0 * double(g.m);
    double h = 0;
    for (std::size_t v = 0; v < g.n; ++v) {
        const std::size_t k = g.degree(static_cast<std::uint32_t>(v));
        if (k == 0) continue;
        const double share = double(k) / total;
        h -= share * std::log(share);
    }
    return h / std::log(double(g.n));
}

namespace {

// One Brandes source sweep; accumulates dependencies into `delta_out`.
void brandes_source(const DirectedGraph& g, std::uint32_t s, std::vector<double>& delta_out) {
    const std::size_t n = g.n;
    std::vector<std::int32_t> dist(n, -1);
    std::vector<double> sigma(n, 0.0);
    std::vector<double> delta(n, 0.0);
    std::vector<std::uint32_t> order;
    order.reserve(n);
    std::vector<std::vector<std::uint32_t>> preds(n);

    dist[s] = 0;
    sigma[s] = 1.0;
    std::vector<std::uint32_t> queue;
    queue.reserve(n);
    queue.push_back(s);
    std::size_t head = 0;
    while (head < queue.size()) {
        const std::uint32_t v = queue[head++];
        order.push_back(v);
        for (std::uint32_t u : g.successors(v)) {
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
            if (dist[u] == dist[v] + 1) {
                sigma[u] += sigma[v];
                preds[u].push_back(v);
            }
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::uint32_t w = *it;
        for (std::uint32_t v : preds[w])
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        if (w != s)
            delta_out[w] += delta[w];
    }
}

} // namespace

std::vector<double> betweenness(const DirectedGraph& g) {
    std::vector<double> bc(g.n, 0.0);
    if (g.n == 0)
        return bc;

    // Sources are processed in fixed-size blocks; each source writes its
    // dependency vector into its own slot and the block is folded in source
    // order, so the floating-point sum order never depends on the thread
    // count.
    constexpr std::size_t kBlock = 64;
    std::vector<std::vector<double>> slot(std::min(kBlock, g.n));
    for (auto& v : slot)
        v.assign(g.n, 0.0);

    for (std::size_t base = 0; base < g.n; base += kBlock) {
        const std::size_t count = std::min(kBlock, g.n - base);
        const auto scount = static_cast<std::ptrdiff_t>(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (std::ptrdiff_t i = 0; i < scount; ++i) {
            std::fill(slot[i].begin(), slot[i].end(), 0.0);
            brandes_source(g, static_cast<std::uint32_t>(base + i), slot[i]);
        }
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t v = 0; v < g.n; ++v)
                bc[v] += slot[i][v];
    }
    return bc;
}

UndirectedGraph gnm_random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    if (n < 2)
        throw ValidationError("gnm_random_graph requires n >= 2");
    const std::size_t max_edges = n * (n - 1) / 2;
    if (m > max_edges)
        throw ValidationError("gnm_random_graph: too many edges requested");
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(m * 2);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(m);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    while (edges.size() < m) {
        std::uint32_t u = pick(rng), v = pick(rng);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (seen.insert((std::uint64_t(u) << 32) | v).second)
            edges.emplace_back(u, v);
    }
    return UndirectedGraph::from_edges(n, edges);
}

std::optional<double> small_world_coefficient(const UndirectedGraph& g,
                                              unsigned realizations,
                                              std::uint64_t seed) {
    if (realizations == 0)
        throw ValidationError("small_world_coefficient requires realizations >= 1");
    auto own = path_metrics(g);
    if (!own.spl)
        throw ValidationError("small_world_coefficient requires a finite shortest path length");
    auto own_c = clustering(g);

    constexpr unsigned kMaxRetries = 32;
    std::mt19937_64 rng(seed);
    double c_sum = 0, spl_sum = 0;
    for (unsigned r = 0; r < realizations; ++r) {
        bool ok = false;
        for (unsigned attempt = 0; attempt < kMaxRetries; ++attempt) {
            UndirectedGraph sample = gnm_random_graph(g.n, g.m, rng);
            auto c = clustering(sample);
            auto paths = path_metrics(sample);
            if (c.global && *c.global > 0 && paths.spl) {
                c_sum += *c.global;
                spl_sum += *paths.spl;
                ok = true;
                break;
            }
        }
        if (!ok)
            return std::nullopt;
    }
    const double c_r = c_sum / realizations;
    const double spl_r = spl_sum / realizations;
    return (*own_c.global / c_r) / (*own.spl / spl_r);
}

MetricsReport compute_metrics(const Tlcn& net, const MetricsOptions& options) {
    MetricsReport rep;
    UndirectedGraph proj = undirected_projection(net);
    rep.node_count = net.node_count();
    rep.edge_count = net.edge_count();
    rep.edge_count_undirected = proj.m;
    if (proj.n > 0)
        rep.mean_degree = 2.0 * double(proj.m) / double(proj.n);
    if (proj.n >= 2)
        rep.mdr = mdr(proj);
    auto cl = clustering(proj);
    rep.clustering_global = cl.global;
    rep.clustering_local = std::move(cl.local);
    rep.rich_club = rich_club(proj);
    if (proj.n > 0) {
        rep.degree_dist = degree_distribution(proj);
        rep.powerlaw = fit_powerlaw(rep.degree_dist, options.powerlaw_kmin);
    }
    rep.assortativity = assortativity(proj);
    auto pm = path_metrics(proj);
    rep.spl = pm.spl;
    rep.diameter = pm.diameter;
    rep.entropy = structure_entropy(proj);
    if (options.with_betweenness)
        rep.betweenness = betweenness(directed_view(net));
    if (options.small_world_realizations > 0 && pm.spl && cl.global)
        rep.small_world =
            small_world_coefficient(proj, options.small_world_realizations, options.seed);
    return rep;
}

namespace {

constexpr const char* kScalarNames[] = {
    "node_count", "edge_count", "edge_count_undirected", "mean_degree",
    "mdr",        "clustering", "assortativity",         "spl",
    "diameter",   "entropy",    "lambda_exp",            "r_squared",
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string();
}

} // namespace

bool is_scalar_metric(const std::string& name) {
    for (const char* n : kScalarNames)
        if (name == n) return true;
    return false;
}

std::span<const char* const> scalar_metric_names() {
    return {kScalarNames, std::size(kScalarNames)};
}

std::optional<double> scalar_metric(const MetricsReport& r, const std::string& name) {
    if (name == "node_count") return double(r.node_count);
    if (name == "edge_count") return double(r.edge_count);
    if (name == "edge_count_undirected") return double(r.edge_count_undirected);
    if (name == "mean_degree") return r.mean_degree;
    if (name == "mdr") return r.mdr;
    if (name == "clustering") return r.clustering_global;
    if (name == "assortativity") return r.assortativity;
    if (name == "spl") return r.spl;
    if (name == "diameter")
        return r.diameter ? std::optional<double>(double(*r.diameter)) : std::nullopt;
    if (name == "entropy") return r.entropy;
    if (name == "lambda_exp")
        return r.powerlaw ? std::optional<double>(r.powerlaw->lambda_exp) : std::nullopt;
    if (name == "r_squared")
        return r.powerlaw ? std::optional<double>(r.powerlaw->r_squared) : std::nullopt;
    throw ValidationError("unknown metric name '" + name + "'");
}

std::string metrics_csv_header() {
    std::string s;
    for (const char* n : kScalarNames) {
        if (!s.empty()) s += ',';
        s += n;
    }
    return s + ",small_world";
}

std::string metrics_csv_row(const MetricsReport& r) {
    std::string s;
    for (const char* n : kScalarNames) {
        if (!s.empty()) s += ',';
        s += fmt_opt(scalar_metric(r, n));
    }
    return s + ',' + fmt_opt(r.small_world);
}

void write_metrics_text(const MetricsReport& r, std::ostream& out) {
    auto line = [&out](const char* name, const std::string& v) {
        out << name << ": " << (v.empty() ? "absent" : v) << '\n';
    };
    line("node_count", std::to_string(r.node_count));
    line("edge_count", std::to_string(r.edge_count));
    line("edge_count_undirected", std::to_string(r.edge_count_undirected));
    line("mean_degree", fmt_opt(r.mean_degree));
    line("mdr", fmt_opt(r.mdr));
    line("clustering", fmt_opt(r.clustering_global));
    line("assortativity", fmt_opt(r.assortativity));
    line("spl", fmt_opt(r.spl));
    line("diameter", r.diameter ? std::to_string(*r.diameter) : std::string());
    line("entropy", fmt_opt(r.entropy));
    if (r.powerlaw) {
        line("powerlaw_lambda", fmt_double(r.powerlaw->lambda_exp));
        line("powerlaw_r_squared", fmt_double(r.powerlaw->r_squared));
    } else {
        line("powerlaw_lambda", {});
        line("powerlaw_r_squared", {});
    }
    line("small_world", fmt_opt(r.small_world));
    if (!r.betweenness.empty()) {
        double bmax = 0;
        std::size_t zeros = 0;
        for (double b : r.betweenness) {
            bmax = std::max(bmax, b);
            if (b == 0.0) ++zeros;
        }
        line("betweenness_max", fmt_double(bmax));
        line("betweenness_zero_fraction",
             fmt_double(double(zeros) / double(r.betweenness.size())));
    }
}

void write_curve_csv(std::span<const std::pair<std::size_t, double>> curve,
                     const char* key_name, const char* value_name, std::ostream& out) {
    out << key_name << ',' << value_name << '\n';
    for (const auto& [k, v] : curve)
        out << k << ',' << fmt_double(v) << '\n';
}

std::vector<SweepRow> sweep_delta_w(const Trace& trace, std::span<const Ticks> windows,
                                    KeyMode mode, const NodeFilter& node_filter,
                                    EdgeFilter edge_filter, const MetricsOptions& options) {
    if (windows.empty())
        throw ValidationError("sweep requires at least one window");
    Trace filtered = apply_node_filter(trace, node_filter, mode);
    MetricsOptions opts = options;
    opts.with_betweenness = false;
    opts.small_world_realizations = 0;
    std::vector<SweepRow> out;
    out.reserve(windows.size());
    for (Ticks w : windows) {
        SweepRow row;
        row.delta_w = w;
        row.report = compute_metrics(
            build_tlcn(filtered, w, mode, NodeFilter::all(), edge_filter), opts);
        out.push_back(std::move(row));
    }
    return out;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        return std::nullopt;
    const double n = double(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0 || syy <= 0)
        return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace tlcn
