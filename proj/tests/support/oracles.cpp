#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace oracle {

namespace {

const Point kSteps[4] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::set<Point> component_of(const PointSet& s, Point start) {
    std::set<Point> seen{start};
    std::vector<Point> stack{start};
    while (!stack.empty()) {
        Point p = stack.back();
        stack.pop_back();
        for (Point d : kSteps) {
            Point q = p + d;
            if (s.contains(q) && seen.insert(q).second) stack.push_back(q);
        }
    }
    return seen;
}

bool has_connected_bridge(const PointSet& gen, bool horizontal) {
    Coord l = std::numeric_limits<Coord>::max(), r = std::numeric_limits<Coord>::min();
    Coord b = l, t = r;
    for (Point p : gen) {
        l = std::min(l, p.x);
        r = std::max(r, p.x);
        b = std::min(b, p.y);
        t = std::max(t, p.y);
    }
    if (horizontal) {
        for (Coord y = b; y <= t; ++y) {
            if (gen.contains({l, y}) && gen.contains({r, y}) && component_of(gen, {l, y}).count({r, y})) return true;
        }
    } else {
        for (Coord x = l; x <= r; ++x) {
            if (gen.contains({x, b}) && gen.contains({x, t}) && component_of(gen, {x, b}).count({x, t})) return true;
        }
    }
    return false;
}

struct Frame {
    Coord l, r, b, t;
};

Frame frame(const PointSet& s) {
    Frame f{std::numeric_limits<Coord>::max(), std::numeric_limits<Coord>::min(), std::numeric_limits<Coord>::max(),
            std::numeric_limits<Coord>::min()};
    for (Point p : s) {
        f.l = std::min(f.l, p.x);
        f.r = std::max(f.r, p.x);
        f.b = std::min(f.b, p.y);
        f.t = std::max(f.t, p.y);
    }
    return f;
}

bool any_of(const PointSet& s, const std::function<bool(Point)>& pred) { return std::any_of(s.begin(), s.end(), pred); }

// Weighted adjacency of the binding graph, vertices in placement order.
std::vector<std::vector<std::uint64_t>> weights(const Assembly& alpha) {
    const auto cells = alpha.placements();
    std::map<Point, std::size_t> id;
    for (std::size_t k = 0; k < cells.size(); ++k) id[cells[k].first] = k;
    std::vector<std::vector<std::uint64_t>> w(cells.size(), std::vector<std::uint64_t>(cells.size(), 0));
    const Direction dirs[4] = {Direction::N, Direction::E, Direction::S, Direction::W};
    for (const auto& [p, t] : cells) {
        for (int k = 0; k < 4; ++k) {
            Point q = p + kSteps[k];
            auto it = id.find(q);
            if (it == id.end()) continue;
            const Glue& a = alpha.tiles()->at(t).glues[static_cast<std::size_t>(dirs[k])];
            const Glue& b = alpha.tiles()->at(*alpha.at(q)).glues[static_cast<std::size_t>(dirs[(k + 2) % 4])];
            if (a.label == b.label && a.strength == b.strength && a.strength > 0) w[id[p]][it->second] = a.strength;
        }
    }
    return w;
}

}  // namespace

bool connected(const PointSet& s) {
    if (s.empty()) return false;
    std::vector<Point> pts(s.begin(), s.end());
    std::map<Point, std::size_t> id;
    for (std::size_t k = 0; k < pts.size(); ++k) id[pts[k]] = k;
    UnionFind uf(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        for (Point d : kSteps) {
            auto it = id.find(pts[k] + d);
            if (it != id.end()) uf.unite(k, it->second);
        }
    }
    const auto root = uf.find(0);
    for (std::size_t k = 1; k < pts.size(); ++k) {
        if (uf.find(k) != root) return false;
    }
    return true;
}

bool tree(const PointSet& s) {
    if (s.empty()) return false;
    std::set<Point> seen;
    // Iterative DFS with parent tracking; a visited non-parent neighbor is a cycle.
    std::vector<std::pair<Point, Point>> stack{{*s.begin(), *s.begin()}};
    while (!stack.empty()) {
        auto [p, parent] = stack.back();
        stack.pop_back();
        if (!seen.insert(p).second) return false;
        for (Point d : kSteps) {
            Point q = p + d;
            if (!s.contains(q) || q == parent) continue;
            if (seen.count(q)) return false;
            stack.push_back({q, p});
        }
    }
    return seen.size() == s.size();
}

std::uint64_t min_cut_exhaustive(const Assembly& alpha) {
    const auto w = weights(alpha);
    const std::size_t n = w.size();
    if (n < 2 || n > 20) throw std::invalid_argument("exhaustive cut needs 2..20 vertices");
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    // Vertex n-1 always sits on side 0, so each cut is visited once.
    for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
        std::uint64_t cut = 0;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                if (((mask >> a) & 1u) != ((mask >> b) & 1u)) cut += w[a][b];
            }
        }
        best = std::min(best, cut);
    }
    return best;
}

std::uint64_t min_cut_flow(const Assembly& alpha) {
    const auto w = weights(alpha);
    const std::size_t n = w.size();
    if (n < 2) throw std::invalid_argument("flow cut needs at least 2 vertices");
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t t = 1; t < n; ++t) {
        auto cap = w;
        std::uint64_t flow = 0;
        while (true) {
            std::vector<std::size_t> prev(n, n);
            prev[0] = 0;
            std::deque<std::size_t> queue{0};
            while (!queue.empty() && prev[t] == n) {
                auto v = queue.front();
                queue.pop_front();
                for (std::size_t u = 0; u < n; ++u) {
                    if (cap[v][u] > 0 && prev[u] == n) {
                        prev[u] = v;
                        queue.push_back(u);
                    }
                }
            }
            if (prev[t] == n) break;
            std::uint64_t push = std::numeric_limits<std::uint64_t>::max();
            for (auto v = t; v != 0; v = prev[v]) push = std::min(push, cap[prev[v]][v]);
            for (auto v = t; v != 0; v = prev[v]) {
                cap[prev[v]][v] -= push;
                cap[v][prev[v]] += push;
            }
            flow += push;
        }
        best = std::min(best, flow);
    }
    return best;
}

bool tau_stable(const Assembly& alpha, std::uint32_t tau) {
    if (alpha.size() == 1) return true;
    return connected(alpha.domain()) && min_cut_flow(alpha) >= tau;
}

std::set<std::pair<Point, TileId>> frontier(const TileSystem& sys, const Assembly& alpha, const Box& region) {
    std::set<std::pair<Point, TileId>> out;
    for (Coord y = region.y0; y <= region.y1; ++y) {
        for (Coord x = region.x0; x <= region.x1; ++x) {
            const Point p{x, y};
            if (alpha.contains(p)) continue;
            for (TileId t = 0; t < sys.tiles().size(); ++t) {
                Assembly bigger = alpha;
                bigger.place(p, t);
                if (!connected(bigger.domain())) continue;
                if (tau_stable(bigger, sys.temperature())) out.insert({p, t});
            }
        }
    }
    return out;
}

std::vector<PointSet> valid_generators(int g) {
    std::vector<PointSet> out;
    const int n = g * g;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (!(mask & 1u)) continue;
        PointSet s;
        std::vector<bool> row(static_cast<std::size_t>(g)), col(static_cast<std::size_t>(g));
        for (int k = 0; k < n; ++k) {
            if (mask >> k & 1u) {
                s.insert({k % g, k / g});
                row[static_cast<std::size_t>(k / g)] = true;
                col[static_cast<std::size_t>(k % g)] = true;
            }
        }
        if (std::all_of(row.begin(), row.end(), [](bool b) { return b; }) &&
            std::all_of(col.begin(), col.end(), [](bool b) { return b; })) {
            out.push_back(s);
        }
    }
    return out;
}

bool north_hypotheses(const PointSet& gen, const PointSet& comp) {
    const Frame f = frame(gen);
    return has_connected_bridge(gen, true) && any_of(comp, [&](Point p) { return p.y == f.t; }) &&
           !any_of(comp, [&](Point p) { return p.x == f.l; });
}

bool northeast_hypotheses(const PointSet& gen, const PointSet& comp) {
    const Frame f = frame(gen);
    return has_connected_bridge(gen, false) && any_of(comp, [&](Point p) { return p.x == f.r; }) &&
           any_of(comp, [&](Point p) { return p.y == f.t; }) && !any_of(comp, [&](Point p) { return p.y == f.b; });
}

bool east_hypotheses(const PointSet& gen, const PointSet& comp) {
    const Frame f = frame(gen);
    return has_connected_bridge(gen, false) && any_of(comp, [&](Point p) { return p.x == f.r; }) &&
           !any_of(comp, [&](Point p) { return p.y == f.b; });
}

std::set<Point> north_free_candidates(const PointSet& gen, const PointSet& comp) {
    const Frame f = frame(gen);
    std::set<Point> out;
    for (Point p : gen) {
        if (!comp.contains(p) && !gen.contains(p + Point{0, 1}) && p.y < f.t) out.insert(p);
    }
    return out;
}

std::set<Point> northeast_free_candidates(const PointSet& gen, const PointSet& comp) {
    const Frame f = frame(gen);
    std::set<Point> out;
    for (Point p : gen) {
        if (!comp.contains(p) && p.y == f.t && p.x < f.r && !gen.contains(p + Point{1, 0})) out.insert(p);
    }
    return out;
}

std::set<Point> east_free_candidates(const PointSet& gen, const PointSet& comp) {
    const Frame f = frame(gen);
    std::set<Point> out;
    for (Point p : gen) {
        if (!comp.contains(p) && p.x < f.r && !gen.contains(p + Point{1, 0})) out.insert(p);
    }
    return out;
}

std::vector<FreePointCase> detached_cases(const std::function<bool(const PointSet&, const PointSet&)>& hyp) {
    std::vector<FreePointCase> out;
    for (int g : {3, 4}) {
        for (const PointSet& base : valid_generators(g)) {
            if (!tree(base)) continue;
            for (Point cut : base) {
                if (cut == Point{0, 0}) continue;
                PointSet gen = base;
                gen.erase(cut);
                const Frame f = frame(gen);
                if (f.l != 0 || f.b != 0 || f.r != g - 1 || f.t != g - 1) continue;
                std::set<Point> done;
                for (Point p : gen) {
                    if (done.count(p)) continue;
                    const auto comp_set = component_of(gen, p);
                    done.insert(comp_set.begin(), comp_set.end());
                    if (comp_set.size() == gen.size()) continue;
                    PointSet comp(comp_set.begin(), comp_set.end());
                    if (hyp(gen, comp)) out.push_back({gen, comp});
                }
            }
        }
    }
    return out;
}

std::array<std::size_t, 4> contacts(const PointSet& shape, const Box& w) {
    std::array<std::size_t, 4> out{};
    for (Coord x = w.x0; x <= w.x1; ++x) {
        if (shape.contains({x, w.y1}) && shape.contains({x, w.y1 + 1})) ++out[static_cast<std::size_t>(Direction::N)];
        if (shape.contains({x, w.y0}) && shape.contains({x, w.y0 - 1})) ++out[static_cast<std::size_t>(Direction::S)];
    }
    for (Coord y = w.y0; y <= w.y1; ++y) {
        if (shape.contains({w.x1, y}) && shape.contains({w.x1 + 1, y})) ++out[static_cast<std::size_t>(Direction::E)];
        if (shape.contains({w.x0, y}) && shape.contains({w.x0 - 1, y})) ++out[static_cast<std::size_t>(Direction::W)];
    }
    return out;
}

}  // namespace oracle
