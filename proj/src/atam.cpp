#include "fractile/atam.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/one_bit_color_map.hpp>
#include <boost/graph/stoer_wagner_min_cut.hpp>
#include <boost/property_map/property_map.hpp>

#include "fractile/error.hpp"

namespace fractile {

TileSet::TileSet(std::vector<TileType> tiles) {
    for (auto& t : tiles) add(std::move(t));
}

TileId TileSet::add(TileType tile) {
    if (tile.name.empty()) throw Error("tile name must not be empty");
    if (by_name_.count(tile.name)) throw Error("duplicate tile name '" + tile.name + "'");
    const auto id = static_cast<TileId>(tiles_.size());
    by_name_.emplace(tile.name, id);
    for (Direction d : kDirections) {
        const Glue& g = tile.glue(d);
        if (g.strength > 0) by_glue_[index(d)][g].push_back(id);
    }
    tiles_.push_back(std::move(tile));
    return id;
}

std::optional<TileId> TileSet::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

const std::vector<TileId>& TileSet::with_glue(Direction d, const Glue& g) const {
    static const std::vector<TileId> kNone;
    const auto& table = by_glue_[index(d)];
    auto it = table.find(g);
    return it == table.end() ? kNone : it->second;
}

std::size_t TileSet::distinct_glue_count() const {
    std::set<Glue> glues;
    for (const auto& table : by_glue_) {
        for (const auto& [g, ids] : table) glues.insert(g);
    }
    return glues.size();
}

void Assembly::place(Point p, TileId tile) {
    if (tile >= tiles_->size()) throw Error("unknown tile id");
    if (!cells_.emplace(p, tile).second) throw Error("position occupied");
}

std::optional<TileId> Assembly::at(Point p) const {
    auto it = cells_.find(p);
    if (it == cells_.end()) return std::nullopt;
    return it->second;
}

const TileType* Assembly::tile_at(Point p) const {
    auto it = cells_.find(p);
    return it == cells_.end() ? nullptr : &tiles_->at(it->second);
}

PointSet Assembly::domain() const {
    PointSet out;
    for (const auto& [p, t] : cells_) out.insert(p);
    return out;
}

std::vector<std::pair<Point, TileId>> Assembly::placements() const {
    std::vector<std::pair<Point, TileId>> out(cells_.begin(), cells_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return RowMajorLess{}(a.first, b.first); });
    return out;
}

Assembly Assembly::translated(Point v) const {
    Assembly out(tiles_);
    out.cells_.reserve(cells_.size());
    for (const auto& [p, t] : cells_) out.cells_.emplace(p + v, t);
    return out;
}

Assembly Assembly::merged(const Assembly& other) const {
    Assembly out = *this;
    for (const auto& [p, t] : other.cells_) out.place(p, t);
    return out;
}

bool operator==(const Assembly& a, const Assembly& b) {
    if (a.cells_.size() != b.cells_.size()) return false;
    for (const auto& [p, t] : a.cells_) {
        const TileType* other = b.tile_at(p);
        if (!other || !(*other == a.tiles_->at(t))) return false;
    }
    return true;
}

std::uint32_t bond_strength(const Assembly& alpha, Point a, Point b) {
    std::optional<Direction> dir;
    for (Direction d : kDirections) {
        if (apply(d, a) == b) dir = d;
    }
    if (!dir) throw Error("points " + to_string(a) + " and " + to_string(b) + " are not adjacent");
    const TileType* ta = alpha.tile_at(a);
    const TileType* tb = alpha.tile_at(b);
    if (!ta || !tb) throw Error("bond endpoint not placed");
    return bond(ta->glue(*dir), tb->glue(inverse(*dir)));
}

std::uint64_t binding_min_cut(const Assembly& alpha) {
    if (alpha.size() < 2) throw Error("min cut needs at least two tiles");
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                        boost::property<boost::edge_weight_t, std::uint64_t>>;
    const auto cells = alpha.placements();
    std::unordered_map<Point, std::size_t, PointHash> id;
    for (std::size_t i = 0; i < cells.size(); ++i) id.emplace(cells[i].first, i);

    Graph graph(cells.size());
    std::vector<std::vector<std::size_t>> adj(cells.size());
    for (const auto& [p, t] : cells) {
        for (Direction d : {Direction::E, Direction::N}) {
            Point q = apply(d, p);
            if (!alpha.contains(q)) continue;
            const auto w = bond_strength(alpha, p, q);
            if (w == 0) continue;
            boost::add_edge(id.at(p), id.at(q), std::uint64_t{w}, graph);
            adj[id.at(p)].push_back(id.at(q));
            adj[id.at(q)].push_back(id.at(p));
        }
    }
    // Stoer-Wagner assumes a connected graph.
    std::vector<bool> seen(cells.size());
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto u : adj[v]) {
            if (!seen[u]) {
                seen[u] = true;
                ++reached;
                queue.push_back(u);
            }
        }
    }
    if (reached != cells.size()) return 0;
    return boost::stoer_wagner_min_cut(graph, boost::get(boost::edge_weight, graph));
}

bool is_tau_stable(const Assembly& alpha, std::uint32_t tau) {
    if (alpha.empty()) return false;
    if (alpha.size() == 1) return true;
    return binding_min_cut(alpha) >= tau;
}

TileSystem TileSystem::make(std::shared_ptr<const TileSet> tiles, Assembly seed, std::uint32_t temperature) {
    if (temperature < 1) throw Error("temperature must be positive");
    if (seed.empty()) throw Error("seed is empty");
    if (seed.tiles() != tiles && !(*seed.tiles() == *tiles)) throw Error("seed uses a different tile set");
    if (!is_connected(seed.domain())) throw Error("seed is not connected");
    if (!is_tau_stable(seed, temperature)) throw Error("seed is not τ-stable");
    Assembly rebased(tiles);
    for (const auto& [p, t] : seed.placements()) rebased.place(p, t);
    return TileSystem(std::move(tiles), std::move(rebased), temperature);
}

std::uint32_t attachment_strength(const Assembly& alpha, Point p, const TileType& tile) {
    std::uint32_t total = 0;
    for (Direction d : kDirections) {
        if (const TileType* nb = alpha.tile_at(apply(d, p))) total += bond(tile.glue(d), nb->glue(inverse(d)));
    }
    return total;
}

namespace {

// Tiles that bind to at least one placed neighbor of the empty position p
// with total strength >= tau, in id order.
std::vector<TileId> attachable_tiles(const TileSystem& sys, const Assembly& alpha, Point p) {
    std::vector<TileId> candidates;
    for (Direction d : kDirections) {
        const TileType* nb = alpha.tile_at(apply(d, p));
        if (!nb) continue;
        const Glue& facing = nb->glue(inverse(d));
        if (facing.strength == 0) continue;
        const auto& ids = sys.tiles().with_glue(d, facing);
        candidates.insert(candidates.end(), ids.begin(), ids.end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<TileId> out;
    for (TileId t : candidates) {
        if (attachment_strength(alpha, p, sys.tiles().at(t)) >= sys.temperature()) out.push_back(t);
    }
    return out;
}

struct AttachmentOrder {
    const TileSet* tiles;
    bool operator()(const Attachment& a, const Attachment& b) const {
        if (a.position != b.position) return RowMajorLess{}(a.position, b.position);
        return tiles->at(a.tile).name < tiles->at(b.tile).name;
    }
};

}  // namespace

std::vector<Attachment> frontier(const TileSystem& sys, const Assembly& alpha, const Box& region) {
    std::set<Point> empties;
    for (const auto& [p, t] : alpha.placements()) {
        for (Direction d : kDirections) {
            Point q = apply(d, p);
            if (!alpha.contains(q) && region.contains(q)) empties.insert(q);
        }
    }
    std::vector<Attachment> out;
    for (Point q : empties) {
        for (TileId t : attachable_tiles(sys, alpha, q)) out.push_back({q, t});
    }
    std::sort(out.begin(), out.end(), AttachmentOrder{&sys.tiles()});
    return out;
}

AssemblySequence run(const TileSystem& sys, const RunOptions& opts) {
    for (const auto& [p, t] : sys.seed().placements()) {
        if (!opts.region.contains(p)) throw Error("seed outside region");
    }
    Assembly alpha = sys.seed();
    std::set<Attachment, AttachmentOrder> pool(AttachmentOrder{&sys.tiles()});
    std::unordered_map<Point, std::vector<TileId>, PointHash> at_position;
    std::set<Point> clipped;

    auto refresh = [&](Point q) {
        if (alpha.contains(q)) return;
        if (!opts.region.contains(q)) {
            if (attachable_tiles(sys, alpha, q).empty()) {
                clipped.erase(q);
            } else {
                clipped.insert(q);
            }
            return;
        }
        if (auto it = at_position.find(q); it != at_position.end()) {
            for (TileId t : it->second) pool.erase({q, t});
            at_position.erase(it);
        }
        auto ids = attachable_tiles(sys, alpha, q);
        for (TileId t : ids) pool.insert({q, t});
        if (!ids.empty()) at_position.emplace(q, std::move(ids));
    };
    for (const auto& [p, t] : alpha.placements()) {
        for (Direction d : kDirections) refresh(apply(d, p));
    }

    std::mt19937_64 rng(opts.seed);
    std::vector<SequenceEvent> events;
    while (!pool.empty() && events.size() < opts.max_steps) {
        auto it = pool.begin();
        if (opts.policy == SelectionPolicy::uniform) {
            // Plain modulo keeps the choice identical across standard libraries.
            std::advance(it, static_cast<std::ptrdiff_t>(rng() % pool.size()));
        }
        const Attachment chosen = *it;
        if (auto old = at_position.find(chosen.position); old != at_position.end()) {
            for (TileId t : old->second) pool.erase({chosen.position, t});
            at_position.erase(old);
        }
        alpha.place(chosen.position, chosen.tile);
        events.push_back({events.size(), chosen.position, chosen.tile});
        for (Direction d : kDirections) refresh(apply(d, chosen.position));
    }

    AssemblySequence out{sys, std::move(events), std::move(alpha), {}, pool.empty()};
    out.clipped_frontier.assign(clipped.begin(), clipped.end());
    std::sort(out.clipped_frontier.begin(), out.clipped_frontier.end(), RowMajorLess{});
    return out;
}

Assembly replay(const TileSystem& sys, const std::vector<SequenceEvent>& events) {
    Assembly alpha = sys.seed();
    for (std::size_t k = 0; k < events.size(); ++k) {
        const auto& ev = events[k];
        if (ev.tile >= sys.tiles().size()) throw ReplayError(k, "unknown tile");
        if (alpha.contains(ev.position)) throw ReplayError(k, "position occupied");
        if (attachment_strength(alpha, ev.position, sys.tiles().at(ev.tile)) < sys.temperature()) {
            throw ReplayError(k, "insufficient strength");
        }
        alpha.place(ev.position, ev.tile);
    }
    return alpha;
}

StrictnessVerdict check_strict_self_assembly(const TileSystem& sys, const PointSet& target, const Box& region,
                                             std::size_t uniform_runs) {
    for (const auto& [p, t] : sys.seed().placements()) {
        if (!region.contains(p)) throw Error("seed outside region");
    }
    std::vector<RunOptions> plans{{region, SelectionPolicy::lexicographic, 0}};
    for (std::size_t k = 0; k < uniform_runs; ++k) plans.push_back({region, SelectionPolicy::uniform, k + 1});

    std::size_t clipped_runs = 0;
    for (const auto& plan : plans) {
        auto seq = run(sys, plan);
        for (const auto& [p, t] : sys.seed().placements()) {
            if (!target.contains(p)) return {StrictnessVerdictKind::violation, p, "seed tile outside the target"};
        }
        for (const auto& ev : seq.events) {
            if (!target.contains(ev.position)) {
                return {StrictnessVerdictKind::violation, ev.position,
                        "tile placed outside the target at step " + std::to_string(ev.index)};
            }
        }
        if (seq.clipped_frontier.empty()) {
            // Terminal: every target point must be covered.
            for (Point p : target) {
                if (!seq.result.contains(p)) {
                    return {StrictnessVerdictKind::violation, p, "terminal assembly misses a target point"};
                }
            }
        } else {
            ++clipped_runs;
        }
    }
    return {StrictnessVerdictKind::incomplete_ok, std::nullopt,
            std::to_string(plans.size()) + " bounded runs stayed on target (" + std::to_string(clipped_runs) +
                " clipped at the region boundary)"};
}

EdgeKey EdgeKey::of(Point p, Direction d) {
    switch (d) {
        case Direction::E:
        case Direction::N: return {p, d};
        case Direction::W: return {apply(d, p), Direction::E};
        case Direction::S: return {apply(d, p), Direction::N};
    }
    return {p, d};
}

TileSystem make_hardcoded_system(const PointSet& shape, Point root, std::uint32_t temperature,
                                 const std::map<EdgeKey, std::string>& labels) {
    if (!shape.contains(root)) throw Error("root not in shape");
    if (!is_connected(shape)) throw Error("shape is not connected");

    std::map<Point, std::array<Glue, 4>> glues;
    for (Point p : shape) glues[p] = {};
    std::set<Point> seen{root};
    std::deque<Point> queue{root};
    std::size_t next_label = 0;
    while (!queue.empty()) {
        Point p = queue.front();
        queue.pop_front();
        for (Direction d : kDirections) {
            Point q = apply(d, p);
            if (!shape.contains(q) || !seen.insert(q).second) continue;
            auto it = labels.find(EdgeKey::of(p, d));
            Glue g{it != labels.end() ? it->second : "e" + std::to_string(next_label++), temperature};
            glues[p][index(d)] = g;
            glues[q][index(inverse(d))] = g;
            queue.push_back(q);
        }
    }
    auto tiles = std::make_shared<TileSet>();
    std::map<Point, TileId> id;
    for (const auto& [p, gs] : glues) {
        id[p] = tiles->add(TileType{"t" + std::to_string(p.x) + "_" + std::to_string(p.y), gs});
    }
    Assembly seed(tiles);
    seed.place(root, id.at(root));
    return TileSystem::make(tiles, std::move(seed), temperature);
}

}  // namespace fractile
