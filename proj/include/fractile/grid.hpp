#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fractile {

using Coord = std::int64_t;

/// A lattice point. Also used for translation vectors.
struct Point {
    Coord x = 0;
    Coord y = 0;

    friend constexpr auto operator<=>(const Point&, const Point&) = default;

    constexpr Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    constexpr Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    constexpr Point operator-() const { return {-x, -y}; }
    constexpr Point& operator+=(Point o) {
        x += o.x;
        y += o.y;
        return *this;
    }
};

std::ostream& operator<<(std::ostream& os, Point p);
std::string to_string(Point p);

struct PointHash {
    std::size_t operator()(Point p) const noexcept {
        auto h = static_cast<std::uint64_t>(p.x) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<std::uint64_t>(p.y) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/// Row-major order with the bottom row first: (y, then x).
struct RowMajorLess {
    constexpr bool operator()(Point a, Point b) const {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

enum class Direction : std::uint8_t { N = 0, E = 1, S = 2, W = 3 };

inline constexpr std::array<Direction, 4> kDirections{Direction::N, Direction::E, Direction::S, Direction::W};

/// Directions sorted by the lexicographic order of their unit vectors:
/// W=(-1,0) < S=(0,-1) < N=(0,1) < E=(1,0).
inline constexpr std::array<Direction, 4> kDirectionsByUnitVector{Direction::W, Direction::S, Direction::N,
                                                                  Direction::E};

constexpr Point unit(Direction d) {
    switch (d) {
        case Direction::N: return {0, 1};
        case Direction::E: return {1, 0};
        case Direction::S: return {0, -1};
        case Direction::W: return {-1, 0};
    }
    return {0, 0};
}

constexpr Point apply(Direction d, Point p) { return p + unit(d); }

constexpr Direction inverse(Direction d) {
    switch (d) {
        case Direction::N: return Direction::S;
        case Direction::E: return Direction::W;
        case Direction::S: return Direction::N;
        case Direction::W: return Direction::E;
    }
    return d;
}

constexpr std::size_t index(Direction d) { return static_cast<std::size_t>(d); }

char to_char(Direction d);
std::optional<Direction> direction_from_char(char c);

/// Position of d in kDirectionsByUnitVector.
int unit_vector_rank(Direction d);

struct Extents {
    Coord l = 0;
    Coord r = 0;
    Coord b = 0;
    Coord t = 0;

    friend bool operator==(const Extents&, const Extents&) = default;
};

/// Inclusive axis-aligned rectangle of lattice points.
struct Box {
    Coord x0 = 0;
    Coord y0 = 0;
    Coord x1 = -1;
    Coord y1 = -1;

    static Box square(Point corner, Coord side) { return {corner.x, corner.y, corner.x + side - 1, corner.y + side - 1}; }

    bool empty() const { return x1 < x0 || y1 < y0; }
    bool contains(Point p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
    bool contains(const Box& o) const { return o.empty() || (contains(Point{o.x0, o.y0}) && contains(Point{o.x1, o.y1})); }
    Coord width() const { return empty() ? 0 : x1 - x0 + 1; }
    Coord height() const { return empty() ? 0 : y1 - y0 + 1; }

    friend bool operator==(const Box&, const Box&) = default;
};

/// Finite set of lattice points, iterated in (x, y) order.
class PointSet {
public:
    using const_iterator = std::set<Point>::const_iterator;

    PointSet() = default;
    PointSet(std::initializer_list<Point> pts) : pts_(pts) {}
    template <typename It>
    PointSet(It first, It last) : pts_(first, last) {}

    bool insert(Point p) { return pts_.insert(p).second; }
    bool erase(Point p) { return pts_.erase(p) > 0; }
    bool contains(Point p) const { return pts_.count(p) > 0; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }

    const_iterator begin() const { return pts_.begin(); }
    const_iterator end() const { return pts_.end(); }

    PointSet translated(Point v) const;
    bool is_subset_of(const PointSet& other) const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::set<Point> pts_;
};

PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_difference(const PointSet& a, const PointSet& b);
PointSet symmetric_difference(const PointSet& a, const PointSet& b);

/// Coordinate-wise min/max. Throws Error("empty point set").
Extents extents(const PointSet& s);

/// Number of edges of the full grid graph of s.
std::size_t grid_edge_count(const PointSet& s);

/// Connectivity of the full grid graph. The empty set is not connected.
bool is_connected(const PointSet& s);

/// Connected and |E| = |V| - 1. The empty set is not a tree.
bool is_tree(const PointSet& s);

/// Connected components, each listed once, ordered by their smallest point.
std::vector<PointSet> components(const PointSet& s);

/// True iff d(p) is not in s. Throws Error("point not in set") when p is not in s.
bool d_free(const PointSet& s, Point p, Direction d);

/// Shortest path between two points of s inside the full grid graph of s, or
/// nothing if they lie in different components. Neighbors are explored in
/// N, E, S, W order so the path is deterministic.
std::optional<std::vector<Point>> grid_path(const PointSet& s, Point from, Point to);

/// Checked integer arithmetic. Throws std::overflow_error.
Coord checked_mul(Coord a, Coord b);
Coord checked_add(Coord a, Coord b);
Coord checked_pow(Coord base, int exponent);

}  // namespace fractile
