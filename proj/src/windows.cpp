#include "fractile/windows.hpp"

#include <algorithm>

#include "fractile/error.hpp"

namespace fractile {

ClosedWindow ClosedWindow::square(Point southwest, Coord side) {
    if (side < 1) throw Error("window side must be positive");
    ClosedWindow w;
    w.square_ = true;
    w.bounds_ = Box::square(southwest, side);
    return w;
}

ClosedWindow ClosedWindow::from_points(PointSet inside) {
    if (inside.empty()) throw Error("window inside is empty");
    if (!is_connected(inside)) throw Error("window inside is not connected");
    ClosedWindow w;
    const Extents ex = extents(inside);
    w.bounds_ = {ex.l, ex.b, ex.r, ex.t};
    if (static_cast<Coord>(inside.size()) == w.bounds_.width() * w.bounds_.height() &&
        w.bounds_.width() == w.bounds_.height()) {
        w.square_ = true;
        return w;
    }
    w.cells_ = std::move(inside);
    return w;
}

bool ClosedWindow::contains(Point p) const { return square_ ? bounds_.contains(p) : cells_.contains(p); }

PointSet ClosedWindow::inside() const {
    if (!square_) return cells_;
    PointSet out;
    for (Coord y = bounds_.y0; y <= bounds_.y1; ++y) {
        for (Coord x = bounds_.x0; x <= bounds_.x1; ++x) out.insert({x, y});
    }
    return out;
}

std::size_t ClosedWindow::size() const {
    return square_ ? static_cast<std::size_t>(bounds_.width() * bounds_.height()) : cells_.size();
}

ClosedWindow ClosedWindow::translated(Point v) const {
    ClosedWindow w = *this;
    w.bounds_ = {bounds_.x0 + v.x, bounds_.y0 + v.y, bounds_.x1 + v.x, bounds_.y1 + v.y};
    if (!square_) w.cells_ = cells_.translated(v);
    return w;
}

std::vector<std::pair<Point, Direction>> ClosedWindow::cut_edges() const {
    std::vector<std::pair<Point, Direction>> out;
    if (square_) {
        for (Coord x = bounds_.x0; x <= bounds_.x1; ++x) {
            out.push_back({{x, bounds_.y0}, Direction::S});
            out.push_back({{x, bounds_.y1}, Direction::N});
        }
        for (Coord y = bounds_.y0; y <= bounds_.y1; ++y) {
            out.push_back({{bounds_.x0, y}, Direction::W});
            out.push_back({{bounds_.x1, y}, Direction::E});
        }
    } else {
        for (Point p : cells_) {
            for (Direction d : kDirections) {
                if (!cells_.contains(apply(d, p))) out.push_back({p, d});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return RowMajorLess{}(a.first, b.first);
        return index(a.second) < index(b.second);
    });
    return out;
}

bool operator==(const ClosedWindow& a, const ClosedWindow& b) {
    if (a.square_ && b.square_) return a.bounds_ == b.bounds_;
    return a.inside() == b.inside();
}

bool encloses(const ClosedWindow& outer, const ClosedWindow& inner) {
    if (outer.is_square() && inner.is_square()) return outer.bounds().contains(inner.bounds());
    if (!outer.bounds().contains(inner.bounds())) return false;
    for (Point p : inner.inside()) {
        if (!outer.contains(p)) return false;
    }
    return true;
}

namespace {

void validate(const WindowSpec& spec) {
    if (spec.s < 2) throw Error("window stage s must be at least 2");
    if (spec.c < 1) throw Error("scale c must be at least 1");
    if (spec.g < 2) throw Error("g must be at least 2");
    for (Coord v : {spec.e, spec.f, spec.p, spec.q}) {
        if (v < 0 || v >= spec.g) throw Error("window anchor outside N_g");
    }
}

}  // namespace

Coord window_side(const WindowSpec& spec) {
    validate(spec);
    return checked_mul(spec.c, checked_pow(spec.g, spec.s - 2));
}

Point window_corner(const WindowSpec& spec) {
    validate(spec);
    const Coord big = checked_mul(spec.c, checked_pow(spec.g, spec.s - 1));
    const Coord small = checked_mul(spec.c, checked_pow(spec.g, spec.s - 2));
    return {checked_add(checked_mul(big, spec.e), checked_mul(small, spec.p)),
            checked_add(checked_mul(big, spec.f), checked_mul(small, spec.q))};
}

ClosedWindow window(const WindowSpec& spec) { return ClosedWindow::square(window_corner(spec), window_side(spec)); }

PointSet window_inside(const WindowSpec& spec) { return window(spec).inside(); }

Point translation(Coord c, int g, int i, int j, Coord e, Coord f, Coord p, Coord q) {
    if (i < 2) throw Error("translation needs i >= 2");
    if (i >= j) throw Error("translation needs i < j");
    const Coord big = checked_mul(c, checked_pow(g, j - 1) - checked_pow(g, i - 1));
    const Coord small = checked_mul(c, checked_pow(g, j - 2) - checked_pow(g, i - 2));
    return {checked_add(checked_mul(big, e), checked_mul(small, p)),
            checked_add(checked_mul(big, f), checked_mul(small, q))};
}

Coord enclosure_margin(Coord c, int g, int i, int j) {
    if (i < 2 || i >= j) throw Error("enclosure margin needs 2 <= i < j");
    return checked_mul(c, checked_pow(g, j - 2) - checked_pow(g, i - 2));
}

bool enclosure_bound_ok(Coord c, int g, int i, int j, Coord x, Coord y) {
    const Coord m = enclosure_margin(c, g, i, j);
    return x <= m && y <= m;
}

std::array<std::size_t, 4> side_contacts(const PointSet& shape, const ClosedWindow& w) {
    std::array<std::size_t, 4> out{};
    for (const auto& [p, d] : w.cut_edges()) {
        if (shape.contains(p) && shape.contains(apply(d, p))) ++out[index(d)];
    }
    return out;
}

std::pair<Assembly, Assembly> partition(const Assembly& alpha, const ClosedWindow& w) {
    Assembly in(alpha.tiles());
    Assembly out(alpha.tiles());
    for (const auto& [p, t] : alpha.placements()) (w.contains(p) ? in : out).place(p, t);
    return {std::move(in), std::move(out)};
}

}  // namespace fractile
