#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fractile/grid.hpp"

namespace fractile {

/// The stage-1 pattern of a g-discrete self-similar fractal: a subset of
/// {0..g-1}^2 that contains the origin and meets every row and column.
class Generator {
public:
    /// Validates and throws Error naming the violated clause.
    static Generator make(int g, PointSet cells);

    int g() const { return g_; }
    const PointSet& cells() const { return cells_; }

    /// Bit (y*g + x) is set for each cell. Requires g <= 8.
    std::uint64_t mask() const;

    friend bool operator==(const Generator&, const Generator&) = default;

private:
    Generator(int g, PointSet cells) : g_(g), cells_(std::move(cells)) {}

    int g_;
    PointSet cells_;
};

/// Parses the .gen text format: `g=<int>` followed by g rows of `#`/`.`,
/// top row first (the last line is row y=0).
Generator parse_generator(std::string_view text);

/// Canonical .gen text, newline-terminated.
std::string write_generator(const Generator& gen);

/// Renders any point set inside [0, side)^2 with the .gen grid syntax (no header line).
std::string grid_text(const PointSet& s, Coord side);

/// X_1 = G, X_{i+1} = X_i + g^i G. Throws Error for i < 1.
PointSet stage(const Generator& gen, int i);

/// Replaces every point by a c x c block.
PointSet scale(const PointSet& s, Coord c);

enum class BridgeKind { horizontal, vertical };

struct Bridge {
    BridgeKind kind;
    Coord index;  // y of hb_S(y) or x of vb_S(x)
    Point first;  // (l,y) or (x,b)
    Point second; // (r,y) or (x,t)
    bool connected;

    friend bool operator==(const Bridge&, const Bridge&) = default;
};

/// All h-bridges (bottom to top) followed by all v-bridges (left to right).
std::vector<Bridge> bridges(const PointSet& s);

struct BridgeCounts {
    std::size_t horizontal = 0;
    std::size_t vertical = 0;
};
BridgeCounts count_bridges(const std::vector<Bridge>& bs);

struct Characterization {
    bool tree_fractal = false;
    std::string diagnosis;  // first failing clause, empty on success
    explicit operator bool() const { return tree_fractal; }
};

/// G is a tree and has exactly one h-bridge and exactly one v-bridge.
Characterization is_tree_fractal_generator(const Generator& gen);

enum class PierTaxonomy { real, parallel_single_bridge, orthogonal_single_bridge, double_bridge };

std::string to_string(PierTaxonomy t);

/// A point that is D-free in exactly three directions. `pointing` is the D with
/// D^-1(position) in G, i.e. the direction *away* from the occupied neighbor.
struct Pier {
    Point position;
    Direction pointing;
    PierTaxonomy taxonomy;

    friend bool operator==(const Pier&, const Pier&) = default;
};

/// Piers in (y, x) order.
std::vector<Pier> piers(const Generator& gen);

/// Choice of pier (p,q) and anchor (e,f) such that every window W^c_s(e,f,p,q)
/// over the scaled fractal has exactly three free sides.
struct PierAnchor {
    Pier pier;
    Point anchor;          // (e,f)
    Direction glue_side;   // the one side of the window that is not free
    Coord bridge_offset;   // h-bridge row for E/W glue sides, v-bridge column for N/S
};

/// Picks a pier by priority (real, then parallel single-bridge, then orthogonal
/// single-bridge; never double-bridge). Within a class, piers whose orientation
/// already matches the canonical case are preferred, then (y, x) order.
/// Throws Error when gen is not a tree-fractal generator.
PierAnchor select_pier_anchor(const Generator& gen);

/// Anchor for a specific pier. Throws Error for double-bridge piers, points that
/// are not piers, and generators failing the characterization.
PierAnchor anchor_for_pier(const Generator& gen, Point pier);

/// Stage s is a tree with exactly one h-bridge and one v-bridge.
bool stage_property(const Generator& gen, int s);

/// Constructive free points. Each requires C to be a connected component of G
/// and throws Error naming the failed hypothesis otherwise.
Point free_point_north(const PointSet& gen, const PointSet& component);
Point free_point_northeast(const PointSet& gen, const PointSet& component);
Point free_point_east(const PointSet& gen, const PointSet& component);

/// One of the eight symmetries of the g x g square, as p -> M p + offset.
class Dihedral {
public:
    static const std::vector<Dihedral>& all();  // identity first

    Point apply(Point p, int g) const;
    Point apply_inverse(Point p, int g) const;
    Direction apply(Direction d) const;
    Direction apply_inverse(Direction d) const;
    PointSet apply(const PointSet& s, int g) const;
    std::string_view name() const { return name_; }

private:
    Dihedral(std::string_view name, int a, int b, int c, int d) : name_(name), a_(a), b_(b), c_(c), d_(d) {}
    Point linear(Point p) const { return {a_ * p.x + b_ * p.y, c_ * p.x + d_ * p.y}; }
    Point offset(int g) const;

    std::string_view name_;
    int a_, b_, c_, d_;
};

struct CensusOptions {
    int g = 2;
    bool allow_large = false;  // required for g = 4
    unsigned threads = 0;      // 0: hardware concurrency
    std::function<bool(const Generator&)> predicate;
};

struct CensusStats {
    int g = 0;
    std::size_t candidates = 0;
    std::size_t valid = 0;
    std::size_t tree_fractal = 0;
    std::size_t predicate_valid = 0;         // valid generators satisfying the predicate
    std::size_t predicate_tree_fractal = 0;  // tree-fractal generators satisfying it
    std::map<PierTaxonomy, std::size_t> pier_taxonomy;  // over tree-fractal generators
    std::vector<Generator> tree_fractal_generators;     // ordered by mask
};

/// Enumerates every valid generator of side g. Throws Error when g is out of range.
CensusStats census(const CensusOptions& opts);

}  // namespace fractile
