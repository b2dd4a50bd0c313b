#include "fractile/grid.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "fractile/error.hpp"

namespace fractile {

std::ostream& operator<<(std::ostream& os, Point p) { return os << '(' << p.x << ',' << p.y << ')'; }

std::string to_string(Point p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

char to_char(Direction d) {
    switch (d) {
        case Direction::N: return 'N';
        case Direction::E: return 'E';
        case Direction::S: return 'S';
        case Direction::W: return 'W';
    }
    return '?';
}

std::optional<Direction> direction_from_char(char c) {
    switch (c) {
        case 'N': return Direction::N;
        case 'E': return Direction::E;
        case 'S': return Direction::S;
        case 'W': return Direction::W;
        default: return std::nullopt;
    }
}

int unit_vector_rank(Direction d) {
    for (int i = 0; i < 4; ++i) {
        if (kDirectionsByUnitVector[static_cast<std::size_t>(i)] == d) return i;
    }
    return -1;
}

PointSet PointSet::translated(Point v) const {
    PointSet out;
    for (Point p : pts_) out.pts_.insert(out.pts_.end(), p + v);
    return out;
}

bool PointSet::is_subset_of(const PointSet& other) const {
    return std::includes(other.pts_.begin(), other.pts_.end(), pts_.begin(), pts_.end());
}

PointSet set_union(const PointSet& a, const PointSet& b) {
    PointSet out = a;
    for (Point p : b) out.insert(p);
    return out;
}

PointSet set_difference(const PointSet& a, const PointSet& b) {
    PointSet out;
    for (Point p : a) {
        if (!b.contains(p)) out.insert(p);
    }
    return out;
}

PointSet symmetric_difference(const PointSet& a, const PointSet& b) {
    return set_union(set_difference(a, b), set_difference(b, a));
}

Extents extents(const PointSet& s) {
    if (s.empty()) throw Error("empty point set");
    Extents e{s.begin()->x, s.begin()->x, s.begin()->y, s.begin()->y};
    for (Point p : s) {
        e.l = std::min(e.l, p.x);
        e.r = std::max(e.r, p.x);
        e.b = std::min(e.b, p.y);
        e.t = std::max(e.t, p.y);
    }
    return e;
}

std::size_t grid_edge_count(const PointSet& s) {
    std::size_t edges = 0;
    for (Point p : s) {
        if (s.contains(apply(Direction::E, p))) ++edges;
        if (s.contains(apply(Direction::N, p))) ++edges;
    }
    return edges;
}

std::vector<PointSet> components(const PointSet& s) {
    std::vector<PointSet> out;
    PointSet seen;
    for (Point start : s) {
        if (seen.contains(start)) continue;
        PointSet comp;
        std::deque<Point> queue{start};
        seen.insert(start);
        while (!queue.empty()) {
            Point p = queue.front();
            queue.pop_front();
            comp.insert(p);
            for (Direction d : kDirections) {
                Point q = apply(d, p);
                if (s.contains(q) && seen.insert(q)) queue.push_back(q);
            }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_connected(const PointSet& s) {
    if (s.empty()) return false;
    return components(s).size() == 1;
}

bool is_tree(const PointSet& s) { return is_connected(s) && grid_edge_count(s) + 1 == s.size(); }

bool d_free(const PointSet& s, Point p, Direction d) {
    if (!s.contains(p)) throw Error("point not in set");
    return !s.contains(apply(d, p));
}

std::optional<std::vector<Point>> grid_path(const PointSet& s, Point from, Point to) {
    if (!s.contains(from) || !s.contains(to)) return std::nullopt;
    std::unordered_map<Point, Point, PointHash> parent;
    parent.emplace(from, from);
    std::deque<Point> queue{from};
    while (!queue.empty()) {
        Point p = queue.front();
        queue.pop_front();
        if (p == to) break;
        for (Direction d : kDirections) {
            Point q = apply(d, p);
            if (s.contains(q) && parent.emplace(q, p).second) queue.push_back(q);
        }
    }
    if (!parent.count(to)) return std::nullopt;
    std::vector<Point> path{to};
    while (path.back() != from) path.push_back(parent.at(path.back()));
    std::reverse(path.begin(), path.end());
    return path;
}

Coord checked_mul(Coord a, Coord b) {
    Coord out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("coordinate overflow");
    return out;
}

Coord checked_add(Coord a, Coord b) {
    Coord out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("coordinate overflow");
    return out;
}

Coord checked_pow(Coord base, int exponent) {
    if (exponent < 0) throw Error("negative exponent");
    Coord out = 1;
    for (int i = 0; i < exponent; ++i) out = checked_mul(out, base);
    return out;
}

}  // namespace fractile
