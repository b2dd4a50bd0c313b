#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fractile/grid.hpp"

namespace fractile {

/// A glue: label and strength. The null glue has an empty label and strength 0.
struct Glue {
    std::string label;
    std::uint32_t strength = 0;

    bool is_null() const { return label.empty() && strength == 0; }
    friend bool operator==(const Glue&, const Glue&) = default;
    friend auto operator<=>(const Glue&, const Glue&) = default;
};

/// Two abutting glues bind iff they are equal in label and strength and the
/// strength is positive. Returns the bond strength (0 when they do not bind).
inline std::uint32_t bond(const Glue& a, const Glue& b) { return (a == b && a.strength > 0) ? a.strength : 0; }

struct TileType {
    std::string name;
    std::array<Glue, 4> glues;  // indexed by Direction

    const Glue& glue(Direction d) const { return glues[index(d)]; }
    friend bool operator==(const TileType&, const TileType&) = default;
};

using TileId = std::uint32_t;

/// Immutable-after-construction list of tile types with unique names.
class TileSet {
public:
    TileSet() = default;
    explicit TileSet(std::vector<TileType> tiles);

    /// Throws Error on a duplicate name.
    TileId add(TileType tile);

    const TileType& at(TileId id) const { return tiles_.at(id); }
    std::optional<TileId> find(const std::string& name) const;
    std::size_t size() const { return tiles_.size(); }
    const std::vector<TileType>& types() const { return tiles_; }

    /// Tiles whose glue on side d equals g (g must have positive strength).
    const std::vector<TileId>& with_glue(Direction d, const Glue& g) const;

    /// Distinct positive-strength glues over all sides of all tiles.
    std::size_t distinct_glue_count() const;

    friend bool operator==(const TileSet& a, const TileSet& b) { return a.tiles_ == b.tiles_; }

private:
    std::vector<TileType> tiles_;
    std::unordered_map<std::string, TileId> by_name_;
    std::array<std::map<Glue, std::vector<TileId>>, 4> by_glue_;
};

/// A partial placement of tiles on the lattice. Assemblies proper are nonempty
/// and connected; partitions by a window may produce any configuration.
class Assembly {
public:
    explicit Assembly(std::shared_ptr<const TileSet> tiles) : tiles_(std::move(tiles)) {}

    /// Throws Error("position occupied") if p already holds a tile.
    void place(Point p, TileId tile);
    void erase(Point p) { cells_.erase(p); }

    bool contains(Point p) const { return cells_.count(p) > 0; }
    std::optional<TileId> at(Point p) const;
    const TileType* tile_at(Point p) const;
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }

    PointSet domain() const;
    /// Placements in (y, x) order.
    std::vector<std::pair<Point, TileId>> placements() const;

    const std::shared_ptr<const TileSet>& tiles() const { return tiles_; }

    Assembly translated(Point v) const;
    /// Union of two non-overlapping configurations over the same tile set.
    Assembly merged(const Assembly& other) const;

    friend bool operator==(const Assembly& a, const Assembly& b);

private:
    std::shared_ptr<const TileSet> tiles_;
    std::unordered_map<Point, TileId, PointHash> cells_;
};

/// Strength of the bond between the tiles at two adjacent placed positions.
/// Throws Error when the points are not adjacent or not both placed.
std::uint32_t bond_strength(const Assembly& alpha, Point a, Point b);

/// Every cut of the binding graph has weight at least tau. Single tiles are stable.
bool is_tau_stable(const Assembly& alpha, std::uint32_t tau);

/// Minimum cut weight of the binding graph (0 when it is disconnected).
/// Requires at least two tiles.
std::uint64_t binding_min_cut(const Assembly& alpha);

class TileSystem {
public:
    /// Throws Error if the seed is empty, disconnected, or not tau-stable.
    static TileSystem make(std::shared_ptr<const TileSet> tiles, Assembly seed, std::uint32_t temperature);

    const TileSet& tiles() const { return *tiles_; }
    const std::shared_ptr<const TileSet>& tile_set() const { return tiles_; }
    const Assembly& seed() const { return seed_; }
    std::uint32_t temperature() const { return temperature_; }

    friend bool operator==(const TileSystem& a, const TileSystem& b) {
        return *a.tiles_ == *b.tiles_ && a.seed_ == b.seed_ && a.temperature_ == b.temperature_;
    }

private:
    TileSystem(std::shared_ptr<const TileSet> tiles, Assembly seed, std::uint32_t temperature)
        : tiles_(std::move(tiles)), seed_(std::move(seed)), temperature_(temperature) {}

    std::shared_ptr<const TileSet> tiles_;
    Assembly seed_;
    std::uint32_t temperature_;
};

struct Attachment {
    Point position;
    TileId tile;
    friend bool operator==(const Attachment&, const Attachment&) = default;
};

/// Total strength a tile would gain by attaching at an empty position.
std::uint32_t attachment_strength(const Assembly& alpha, Point p, const TileType& tile);

/// All (position, tile) pairs inside the region that could stably attach,
/// ordered by (y, x, tile name).
std::vector<Attachment> frontier(const TileSystem& sys, const Assembly& alpha, const Box& region);

struct SequenceEvent {
    std::size_t index = 0;  // alpha_{index+1} = alpha_index + (position -> tile)
    Point position;
    TileId tile = 0;
    friend bool operator==(const SequenceEvent&, const SequenceEvent&) = default;
};

struct AssemblySequence {
    TileSystem system;
    std::vector<SequenceEvent> events;
    Assembly result;
    /// Positions outside the region where some tile could still attach.
    std::vector<Point> clipped_frontier;
    /// The frontier inside the region was empty when the run stopped.
    bool exhausted = false;
};

enum class SelectionPolicy { uniform, lexicographic };

struct RunOptions {
    Box region;
    SelectionPolicy policy = SelectionPolicy::uniform;
    std::uint64_t seed = 0;
    std::size_t max_steps = static_cast<std::size_t>(-1);
};

/// Grows the seed one tile at a time until the in-region frontier is empty or
/// max_steps is reached. Identical options give an identical sequence.
AssemblySequence run(const TileSystem& sys, const RunOptions& opts);

/// Applies events to the seed, checking each one is a legal attachment.
/// Throws ReplayError naming the first bad step.
Assembly replay(const TileSystem& sys, const std::vector<SequenceEvent>& events);

enum class StrictnessVerdictKind { violation, incomplete_ok };

struct StrictnessVerdict {
    StrictnessVerdictKind kind = StrictnessVerdictKind::incomplete_ok;
    std::optional<Point> witness;  // off-target tile, or a target point missing from a terminal assembly
    std::string detail;
};

/// Bounded check: runs the lexicographic policy and `uniform_runs` seeded
/// uniform runs inside the region. Never proves strict self-assembly.
/// Throws Error("seed outside region").
StrictnessVerdict check_strict_self_assembly(const TileSystem& sys, const PointSet& target, const Box& region,
                                             std::size_t uniform_runs = 4);

/// Key of an undirected lattice edge: its lower-left endpoint and E or N.
struct EdgeKey {
    Point base;
    Direction dir;  // E or N
    static EdgeKey of(Point p, Direction d);
    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Hard-coded system for a connected shape: one tile type per point, unique
/// glues of strength `temperature` along a BFS spanning tree from `root`, null
/// glues elsewhere. `labels` overrides the label of chosen tree edges.
TileSystem make_hardcoded_system(const PointSet& shape, Point root, std::uint32_t temperature = 1,
                                 const std::map<EdgeKey, std::string>& labels = {});

}  // namespace fractile
