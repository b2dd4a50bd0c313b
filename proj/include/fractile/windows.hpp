#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "fractile/atam.hpp"
#include "fractile/grid.hpp"

namespace fractile {

/// A closed window, represented by its finite, connected inside. The cut is
/// every grid edge joining an inside point to an outside one.
class ClosedWindow {
public:
    static ClosedWindow square(Point southwest, Coord side);
    /// Throws Error unless inside is nonempty and connected.
    static ClosedWindow from_points(PointSet inside);

    bool contains(Point p) const;
    PointSet inside() const;
    std::size_t size() const;
    Box bounds() const { return bounds_; }
    bool is_square() const { return square_; }

    ClosedWindow translated(Point v) const;

    /// Cut edges as (inside point, direction towards the outside point).
    std::vector<std::pair<Point, Direction>> cut_edges() const;

    /// True iff the edge {p, apply(d, p)} crosses the cut.
    bool crosses(Point p, Direction d) const { return contains(p) != contains(apply(d, p)); }

    friend bool operator==(const ClosedWindow& a, const ClosedWindow& b);

private:
    ClosedWindow() = default;

    bool square_ = false;
    Box bounds_;
    PointSet cells_;  // empty for squares
};

/// inside(inner) is a subset of inside(outer).
bool encloses(const ClosedWindow& outer, const ClosedWindow& inner);

/// Parameters of the square window W^c_s(e,f,p,q) for a side-g generator.
struct WindowSpec {
    Coord c = 1;
    int s = 2;
    int g = 2;
    Coord e = 0, f = 0, p = 0, q = 0;

    friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

/// Side length c * g^(s-2). Throws Error for s < 2 or invalid parameters.
Coord window_side(const WindowSpec& spec);
/// c g^(s-1) (e,f) + c g^(s-2) (p,q).
Point window_corner(const WindowSpec& spec);
ClosedWindow window(const WindowSpec& spec);
PointSet window_inside(const WindowSpec& spec);

/// Vector from the southwest corner of W^c_i(e,f,p,q) to that of W^c_j(e,f,p,q).
/// Throws Error unless 2 <= i < j.
Point translation(Coord c, int g, int i, int j, Coord e, Coord f, Coord p, Coord q);

/// m = c (g^(j-2) - g^(i-2)), the largest shift that keeps the translated
/// small window inside the large one.
Coord enclosure_margin(Coord c, int g, int i, int j);
bool enclosure_bound_ok(Coord c, int g, int i, int j, Coord x, Coord y);

/// Number of adjacent (inside, outside) pairs of `shape` across each side of
/// the window, indexed by Direction. A side is free when its count is 0.
std::array<std::size_t, 4> side_contacts(const PointSet& shape, const ClosedWindow& w);

/// Splits a configuration into the parts inside and outside the window.
std::pair<Assembly, Assembly> partition(const Assembly& alpha, const ClosedWindow& w);

}  // namespace fractile
