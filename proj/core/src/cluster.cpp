#include "soupfall/cluster.hpp"

#include "soupfall/parallel.hpp"
#include "soupfall/raster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace soupfall {

CrossingGraph crossing_graph_bruteforce(std::span<const Curve> curves) {
    CrossingGraph g;
    g.n = curves.size();
    for (uint32_t i = 0; i < curves.size(); ++i)
        for (uint32_t j = i + 1; j < curves.size(); ++j)
            if (curves_cross(curves[i], curves[j])) g.edges.emplace_back(i, j);
    return g;
}

namespace {

double median_diameter(std::span<const Curve> curves) {
    std::vector<double> d;
    d.reserve(curves.size());
    for (const Curve& c : curves) d.push_back(diameter(c));
    size_t mid = d.size() / 2;
    std::nth_element(d.begin(), d.begin() + mid, d.end());
    double m = d[mid];
    return m > 0 ? m : 1.0;
}

}  // namespace

CrossingGraph crossing_graph(std::span<const Curve> curves) {
    CrossingGraph g;
    g.n = curves.size();
    if (curves.size() < 2) return g;

    double cell = median_diameter(curves);
    std::unordered_map<uint64_t, std::vector<uint32_t>> grid;
    std::vector<BBox> boxes(curves.size());
    auto key = [](long long i, long long j) {
        return (static_cast<uint64_t>(i) << 32) ^ static_cast<uint32_t>(j);
    };
    for (uint32_t id = 0; id < curves.size(); ++id) {
        boxes[id] = curve_bbox(curves[id]);
        const BBox& b = boxes[id];
        long long i0 = static_cast<long long>(std::floor(b.x0 / cell));
        long long i1 = static_cast<long long>(std::floor(b.x1 / cell));
        long long j0 = static_cast<long long>(std::floor(b.y0 / cell));
        long long j1 = static_cast<long long>(std::floor(b.y1 / cell));
        for (long long j = j0; j <= j1; ++j)
            for (long long i = i0; i <= i1; ++i) grid[key(i, j)].push_back(id);
    }
    std::unordered_set<uint64_t> seen;
    for (const auto& [k, ids] : grid) {
        for (size_t a = 0; a < ids.size(); ++a) {
            for (size_t b = a + 1; b < ids.size(); ++b) {
                uint32_t i = std::min(ids[a], ids[b]);
                uint32_t j = std::max(ids[a], ids[b]);
                uint64_t pk = (static_cast<uint64_t>(i) << 32) | j;
                if (!seen.insert(pk).second) continue;
                if (!boxes[i].intersects(boxes[j])) continue;
                if (curves_cross(curves[i], curves[j])) g.edges.emplace_back(i, j);
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

namespace {

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<uint32_t>(i);
    }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(uint32_t a, uint32_t b) { parent[find(a)] = find(b); }
};

double union_trace_diameter(std::span<const Curve> curves,
                            const std::vector<uint32_t>& members) {
    std::vector<Point> pts;
    for (uint32_t id : members) {
        const Curve& c = curves[id];
        if (const auto* ci = std::get_if<Circle>(&c)) {
            double r = ci->diam / 2;
            for (int k = 0; k < 32; ++k) {
                double th = 2 * M_PI * k / 32;
                pts.push_back({ci->center.x + r * std::cos(th),
                               ci->center.y + r * std::sin(th)});
            }
        } else {
            std::vector<Point> tv = trace_vertices(c);
            pts.insert(pts.end(), tv.begin(), tv.end());
        }
    }
    if (pts.size() < 2) return 0.0;
    double best = 0;
    // hull not needed: cluster point clouds stay small
    if (pts.size() > 4096) {
        // subsample deterministically to bound the quadratic pass
        std::vector<Point> sub;
        for (size_t i = 0; i < pts.size(); i += pts.size() / 4096 + 1)
            sub.push_back(pts[i]);
        pts.swap(sub);
    }
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, dist(pts[i], pts[j]));
    return best;
}

ClusterInfo make_cluster_info(std::span<const Curve> curves,
                              std::vector<uint32_t> members, int fill_cells) {
    ClusterInfo info;
    std::sort(members.begin(), members.end());
    info.bbox = curve_bbox(curves[members[0]]);
    for (size_t k = 1; k < members.size(); ++k)
        info.bbox.expand(curve_bbox(curves[members[k]]));
    if (members.size() == 1) {
        const Curve& only = curves[members[0]];
        info.diameter = diameter(only);
        if (const auto* ci = std::get_if<Circle>(&only)) {
            info.filled_area = M_PI * ci->diam * ci->diam / 4;  // exact
        } else if (fill_cells > 0 && !std::holds_alternative<Stick>(only) &&
                   info.diameter > 0) {
            info.filled_area = filled_area(only, info.diameter / fill_cells);
        }
        info.members = std::move(members);
        return info;
    }
    info.diameter = union_trace_diameter(curves, members);
    bool any_loop = false;
    for (uint32_t id : members)
        if (!std::holds_alternative<Stick>(curves[id])) any_loop = true;
    if (any_loop && info.diameter > 0 && fill_cells > 0) {
        std::vector<Curve> sub;
        sub.reserve(members.size());
        for (uint32_t id : members) sub.push_back(curves[id]);
        info.filled_area = filled_area(std::span<const Curve>(sub),
                                       info.diameter / fill_cells);
    }
    info.members = std::move(members);
    return info;
}

}  // namespace

ClusterSet clusters_from_edges(std::span<const Curve> curves,
                               const CrossingGraph& g, int fill_cells) {
    ClusterSet cs;
    size_t n = curves.size();
    UnionFind uf(n);
    for (auto [i, j] : g.edges) uf.unite(i, j);

    std::unordered_map<uint32_t, std::vector<uint32_t>> groups;
    for (uint32_t i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);

    // order by the largest member curve (curves are sorted by decreasing
    // diameter, so smallest min index first)
    std::vector<std::vector<uint32_t>> ordered;
    ordered.reserve(groups.size());
    for (auto& [root, members] : groups) ordered.push_back(std::move(members));
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) {
                  return *std::min_element(a.begin(), a.end()) <
                         *std::min_element(b.begin(), b.end());
              });

    cs.labels.assign(n, 0);
    cs.clusters.reserve(ordered.size());
    for (auto& members : ordered) {
        uint32_t id = static_cast<uint32_t>(cs.clusters.size());
        for (uint32_t m : members) cs.labels[m] = id;
        cs.clusters.push_back(make_cluster_info(curves, std::move(members), fill_cells));
    }
    return cs;
}

ClusterSet clusters(const Soup& soup, int fill_cells) {
    return clusters_from_edges(soup.curves, crossing_graph(soup.curves), fill_cells);
}

double cluster_filling(const ClusterSet& cs, std::span<const Curve> curves,
                       size_t id, double pitch) {
    std::vector<Curve> sub;
    for (uint32_t m : cs.clusters[id].members) sub.push_back(curves[m]);
    return filled_area(std::span<const Curve>(sub), pitch);
}

// --- sequential exploration ----------------------------------------------

namespace {

bool crosses_any(const Curve& c, std::span<const Curve> others) {
    BBox cb = curve_bbox(c);
    for (const Curve& o : others) {
        if (!cb.intersects(curve_bbox(o))) continue;
        if (curves_cross(c, o)) return true;
    }
    return false;
}

// connected component of vertex 0 in the crossing graph of `pool`
std::vector<uint32_t> component_of_first(std::span<const Curve> pool) {
    CrossingGraph g = crossing_graph(pool);
    std::vector<std::vector<uint32_t>> adj(pool.size());
    for (auto [i, j] : g.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<uint8_t> vis(pool.size(), 0);
    std::deque<uint32_t> q{0};
    vis[0] = 1;
    std::vector<uint32_t> members;
    while (!q.empty()) {
        uint32_t v = q.front();
        q.pop_front();
        members.push_back(v);
        for (uint32_t w : adj[v])
            if (!vis[w]) {
                vis[w] = 1;
                q.push_back(w);
            }
    }
    return members;
}

}  // namespace

std::vector<ClusterInfo> explore_clusters_sequential(
    const Domain& domain, double c, const ShapeMeasure& shape, double eps_min,
    uint64_t seed, size_t iteration_cap) {
    SoupSpec spec;
    spec.c = c;
    spec.shape = shape;
    spec.domain = domain;
    spec.eps_min = eps_min;
    spec.rho_max = domain_diameter(domain);

    // the base realization supplies the cluster seeds, in decreasing diameter
    CounterRng base_rng(seed, 2, 0);
    Soup base = sample_soup(spec, base_rng);

    std::vector<ClusterInfo> out;
    std::vector<Curve> frontier;  // union of curves of discovered clusters
    std::vector<uint8_t> consumed(base.curves.size(), 0);

    for (size_t n = 1;; ++n) {
        // largest base curve not meeting any discovered cluster
        size_t seed_idx = base.curves.size();
        for (size_t i = 0; i < base.curves.size(); ++i) {
            if (consumed[i]) continue;
            if (crosses_any(base.curves[i], frontier)) {
                consumed[i] = 1;  // never eligible again
                continue;
            }
            seed_idx = i;
            break;
        }
        if (seed_idx == base.curves.size()) break;
        if (out.size() >= iteration_cap)
            throw std::runtime_error("explore_clusters_sequential: iteration cap hit");
        consumed[seed_idx] = 1;
        const Curve& seed_curve = base.curves[seed_idx];
        double seed_diam = diameter(seed_curve);

        // fresh companions: smaller curves not crossing discovered clusters
        CounterRng rng(seed, 2, n);
        Soup fresh = sample_soup(spec, rng);
        std::vector<Curve> pool;
        pool.push_back(seed_curve);
        for (Curve& cv : fresh.curves) {
            if (!(diameter(cv) < seed_diam)) continue;
            if (crosses_any(cv, frontier)) continue;
            pool.push_back(std::move(cv));
        }
        std::vector<uint32_t> members = component_of_first(pool);
        out.push_back(make_cluster_info(pool, members, 64));
        for (uint32_t m : members) frontier.push_back(pool[m]);
    }
    return out;
}

// --- gamma* ------------------------------------------------------------------

namespace {

GammaStar grow_gamma_star(const Curve& seed_curve, std::span<const Curve> soup,
                          double W, double pitch) {
    GammaStar gs;
    gs.seed_curve = seed_curve;
    std::vector<Curve> all;
    all.reserve(soup.size() + 1);
    all.push_back(seed_curve);
    all.insert(all.end(), soup.begin(), soup.end());
    CrossingGraph g = crossing_graph(all);
    std::vector<std::vector<uint32_t>> adj(all.size());
    for (auto [i, j] : g.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<uint8_t> vis(all.size(), 0);
    std::deque<uint32_t> q{0};
    vis[0] = 1;
    std::vector<uint32_t> members;
    while (!q.empty()) {
        uint32_t v = q.front();
        q.pop_front();
        members.push_back(v);
        for (uint32_t w : adj[v])
            if (!vis[w]) {
                vis[w] = 1;
                q.push_back(w);
            }
    }
    std::sort(members.begin(), members.end());
    gs.cluster_members.reserve(members.size());
    BBox box = curve_bbox(all[members[0]]);
    for (uint32_t m : members) {
        gs.cluster_members.push_back(all[m]);
        box.expand(curve_bbox(all[m]));
    }
    gs.diameter = union_trace_diameter(all, members);
    gs.filled_area =
        filled_area(std::span<const Curve>(gs.cluster_members), pitch);
    // a cluster within one max-diameter of the window edge may be missing
    // curves rejected by the containment step
    double margin = 1.0;
    gs.truncated = box.x0 < -W + margin || box.x1 > W - margin ||
                   box.y0 < -W + margin || box.y1 > W - margin;
    return gs;
}

}  // namespace

GammaStar sample_gamma_star(double c, const ShapeMeasure& shape, double W,
                            double eps_min, double pitch, uint64_t seed) {
    if (!(W >= 4)) throw window_too_small_error("sample_gamma_star: W must be >= 4");
    CounterRng rng(seed, 3, 0);
    Curve seed_curve = sample_shape(shape, rng);
    // center the unit seed curve at the origin
    BBox sb = curve_bbox(seed_curve);
    seed_curve = place(seed_curve,
                       {-(sb.x0 + sb.x1) / 2, -(sb.y0 + sb.y1) / 2}, 1.0);
    SoupSpec spec;
    spec.c = c;
    spec.shape = shape;
    spec.domain = Rect{-W, -W, W, W};
    spec.eps_min = eps_min;
    spec.rho_max = 1.0;
    Soup soup = sample_soup(spec, rng);
    return grow_gamma_star(seed_curve, soup.curves, W, pitch);
}

std::vector<GammaStar> sample_gamma_star_coupled(
    const std::vector<double>& c_list, const ShapeMeasure& shape, double W,
    double eps_min, double pitch, uint64_t seed) {
    if (!(W >= 4))
        throw window_too_small_error("sample_gamma_star_coupled: W must be >= 4");
    double c_max = *std::max_element(c_list.begin(), c_list.end());
    CounterRng rng(seed, 3, 0);
    Curve seed_curve = sample_shape(shape, rng);
    BBox sb = curve_bbox(seed_curve);
    seed_curve = place(seed_curve,
                       {-(sb.x0 + sb.x1) / 2, -(sb.y0 + sb.y1) / 2}, 1.0);
    SoupSpec spec;
    spec.c = c_max;
    spec.shape = shape;
    spec.domain = Rect{-W, -W, W, W};
    spec.eps_min = eps_min;
    spec.rho_max = 1.0;
    Soup soup = sample_soup(spec, rng);
    // uniform time marks: curve j belongs to the soup at intensity c iff
    // mark_j <= c, giving a monotone coupling across the grid
    CounterRng mark_rng(seed, 4, 0);
    std::vector<double> marks(soup.curves.size());
    for (double& m : marks) m = mark_rng.uniform(0.0, c_max);

    std::vector<GammaStar> out;
    out.reserve(c_list.size());
    for (double c : c_list) {
        std::vector<Curve> sub;
        for (size_t i = 0; i < soup.curves.size(); ++i)
            if (marks[i] <= c) sub.push_back(soup.curves[i]);
        out.push_back(grow_gamma_star(seed_curve, sub, W, pitch));
    }
    return out;
}

BetaStarResult estimate_beta_star(double c, const ShapeMeasure& shape, double W,
                                  double eps_min, double pitch,
                                  uint64_t replicas, uint64_t seed,
                                  unsigned threads) {
    if (c == 0.0) {
        // degenerate: no companions, beta* equals beta(pi) exactly
        BetaStarResult res;
        res.estimate = beta(shape, replicas, pitch, seed);
        return res;
    }
    std::vector<GammaStar> draws(replicas);
    parallel_for_index(replicas, threads, [&](size_t i) {
        draws[i] = sample_gamma_star(c, shape, W, eps_min, pitch,
                                     seed + i * 0x9e3779b97f4a7c15ULL);
    });
    BetaStarResult res;
    double sum = 0, sum2 = 0;
    uint64_t kept = 0, truncated = 0;
    for (GammaStar& g : draws) {
        if (g.truncated) {
            ++truncated;
            continue;
        }
        sum += g.filled_area;
        sum2 += g.filled_area * g.filled_area;
        ++kept;
        res.samples.push_back(std::move(g));
    }
    res.truncated_fraction =
        replicas ? static_cast<double>(truncated) / replicas : 0.0;
    if (res.truncated_fraction > 0.10)
        throw window_too_small_error(
            "estimate_beta_star: more than 10% of draws hit the window edge");
    if (kept == 0)
        throw window_too_small_error("estimate_beta_star: no usable draws");
    double n = static_cast<double>(kept);
    double mean = sum / n;
    double var = kept > 1 ? (sum2 - n * mean * mean) / (n - 1) : 0.0;
    res.estimate.mean = shape.mass * mean;
    res.estimate.half_width =
        shape.mass * 1.959964 * std::sqrt(std::max(0.0, var) / n);
    res.estimate.n = kept;
    return res;
}

}  // namespace soupfall
