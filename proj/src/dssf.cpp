#include "fractile/dssf.hpp"

#include <algorithm>
#include <charconv>
#include <future>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "fractile/error.hpp"
#include "fractile/windows.hpp"

namespace fractile {

namespace {

constexpr int kMaxGeneratorSide = 1 << 12;

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
    std::size_t start = 0;
    while (true) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

}  // namespace

Generator Generator::make(int g, PointSet cells) {
    if (g < 2) throw Error("g must be at least 2");
    if (g > kMaxGeneratorSide) throw Error("g too large");
    for (Point p : cells) {
        if (p.x < 0 || p.y < 0 || p.x >= g || p.y >= g) throw Error("cell outside N_g² " + to_string(p));
    }
    if (!cells.contains({0, 0})) throw Error("origin not occupied");
    std::vector<bool> row(static_cast<std::size_t>(g)), col(static_cast<std::size_t>(g));
    for (Point p : cells) {
        row[static_cast<std::size_t>(p.y)] = true;
        col[static_cast<std::size_t>(p.x)] = true;
    }
    for (int k = 0; k < g; ++k) {
        if (!row[static_cast<std::size_t>(k)]) throw Error("row " + std::to_string(k) + " empty");
    }
    for (int k = 0; k < g; ++k) {
        if (!col[static_cast<std::size_t>(k)]) throw Error("column " + std::to_string(k) + " empty");
    }
    return Generator(g, std::move(cells));
}

std::uint64_t Generator::mask() const {
    if (g_ > 8) throw Error("mask requires g <= 8");
    std::uint64_t m = 0;
    for (Point p : cells_) m |= std::uint64_t{1} << (p.y * g_ + p.x);
    return m;
}

Generator parse_generator(std::string_view text) {
    auto lines = split_lines(text);
    std::string_view header = lines.front();
    if (header.substr(0, 2) != "g=") throw ParseError("line 1: expected g=<int>");
    int g = 0;
    auto digits = header.substr(2);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), g);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
        throw ParseError("line 1: expected g=<int>");
    }
    if (g < 2 || g > kMaxGeneratorSide) throw ParseError("line 1: g out of range");
    if (lines.size() < static_cast<std::size_t>(g) + 1) {
        throw ParseError("expected " + std::to_string(g) + " rows, got " + std::to_string(lines.size() - 1));
    }
    if (lines.size() > static_cast<std::size_t>(g) + 1) throw ParseError("trailing garbage after row data");
    PointSet cells;
    for (int i = 0; i < g; ++i) {
        auto row = lines[static_cast<std::size_t>(i) + 1];
        const int lineno = i + 2;
        if (row.size() != static_cast<std::size_t>(g)) {
            throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(g) + " characters");
        }
        for (int x = 0; x < g; ++x) {
            char ch = row[static_cast<std::size_t>(x)];
            if (ch == '#') {
                cells.insert({x, g - 1 - i});
            } else if (ch != '.') {
                throw ParseError("line " + std::to_string(lineno) + ": invalid character '" + std::string(1, ch) + "'");
            }
        }
    }
    return Generator::make(g, std::move(cells));
}

std::string grid_text(const PointSet& s, Coord side) {
    std::string out;
    out.reserve(static_cast<std::size_t>(side * (side + 1)));
    for (Coord y = side - 1; y >= 0; --y) {
        for (Coord x = 0; x < side; ++x) out.push_back(s.contains({x, y}) ? '#' : '.');
        out.push_back('\n');
    }
    return out;
}

std::string write_generator(const Generator& gen) {
    return "g=" + std::to_string(gen.g()) + "\n" + grid_text(gen.cells(), gen.g());
}

PointSet stage(const Generator& gen, int i) {
    if (i < 1) throw Error("stage index must be at least 1");
    PointSet current = gen.cells();
    Coord step = gen.g();
    for (int k = 1; k < i; ++k) {
        PointSet next;
        for (Point q : gen.cells()) {
            Point shift{checked_mul(step, q.x), checked_mul(step, q.y)};
            for (Point p : current) next.insert(p + shift);
        }
        current = std::move(next);
        if (k + 1 < i) step = checked_mul(step, gen.g());
    }
    return current;
}

PointSet scale(const PointSet& s, Coord c) {
    if (c < 1) throw Error("scale factor must be at least 1");
    if (c == 1) return s;
    PointSet out;
    for (Point p : s) {
        Point base{checked_mul(p.x, c), checked_mul(p.y, c)};
        for (Coord dx = 0; dx < c; ++dx) {
            for (Coord dy = 0; dy < c; ++dy) out.insert({base.x + dx, base.y + dy});
        }
    }
    return out;
}

std::vector<Bridge> bridges(const PointSet& s) {
    const Extents e = extents(s);
    std::unordered_map<Point, std::size_t, PointHash> component_of;
    auto comps = components(s);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (Point p : comps[i]) component_of.emplace(p, i);
    }
    auto joined = [&](Point a, Point b) { return component_of.at(a) == component_of.at(b); };

    std::vector<Bridge> out;
    for (Coord y = e.b; y <= e.t; ++y) {
        Point a{e.l, y}, b{e.r, y};
        if (s.contains(a) && s.contains(b)) out.push_back({BridgeKind::horizontal, y, a, b, joined(a, b)});
    }
    for (Coord x = e.l; x <= e.r; ++x) {
        Point a{x, e.b}, b{x, e.t};
        if (s.contains(a) && s.contains(b)) out.push_back({BridgeKind::vertical, x, a, b, joined(a, b)});
    }
    return out;
}

BridgeCounts count_bridges(const std::vector<Bridge>& bs) {
    BridgeCounts n;
    for (const auto& b : bs) (b.kind == BridgeKind::horizontal ? n.horizontal : n.vertical) += 1;
    return n;
}

Characterization is_tree_fractal_generator(const Generator& gen) {
    if (!is_tree(gen.cells())) return {false, "not a tree"};
    auto n = count_bridges(bridges(gen.cells()));
    if (n.horizontal != 1) return {false, "nhb = " + std::to_string(n.horizontal) + ", expected 1"};
    if (n.vertical != 1) return {false, "nvb = " + std::to_string(n.vertical) + ", expected 1"};
    return {true, {}};
}

std::string to_string(PierTaxonomy t) {
    switch (t) {
        case PierTaxonomy::real: return "real";
        case PierTaxonomy::parallel_single_bridge: return "parallel";
        case PierTaxonomy::orthogonal_single_bridge: return "orthogonal";
        case PierTaxonomy::double_bridge: return "double";
    }
    return "?";
}

namespace {

struct Membership {
    int horizontal = 0;
    int vertical = 0;
};

Membership bridge_membership(const std::vector<Bridge>& bs, Point p) {
    Membership m;
    for (const auto& b : bs) {
        if (b.first == p || b.second == p) (b.kind == BridgeKind::horizontal ? m.horizontal : m.vertical) += 1;
    }
    return m;
}

bool is_vertical(Direction d) { return d == Direction::N || d == Direction::S; }

std::optional<Pier> pier_at(const PointSet& cells, const std::vector<Bridge>& bs, Point p) {
    if (!cells.contains(p)) return std::nullopt;
    int occupied = 0;
    Direction toward = Direction::N;
    for (Direction d : kDirections) {
        if (cells.contains(apply(d, p))) {
            ++occupied;
            toward = d;
        }
    }
    if (occupied != 1) return std::nullopt;
    const Direction pointing = inverse(toward);
    const Membership m = bridge_membership(bs, p);
    PierTaxonomy tax = PierTaxonomy::real;
    if (m.horizontal + m.vertical >= 2) {
        tax = PierTaxonomy::double_bridge;
    } else if (m.horizontal == 1) {
        tax = is_vertical(pointing) ? PierTaxonomy::orthogonal_single_bridge : PierTaxonomy::parallel_single_bridge;
    } else if (m.vertical == 1) {
        tax = is_vertical(pointing) ? PierTaxonomy::parallel_single_bridge : PierTaxonomy::orthogonal_single_bridge;
    }
    return Pier{p, pointing, tax};
}

// Canonical orientations handled directly:
//   parallel:   north-pointing pier at (p, g-1) on a v-bridge
//   orthogonal: east-pointing pier at (p, g-1) on a v-bridge
// Every other single-bridge pier is mapped onto one of these by a symmetry.
bool is_canonical(const PointSet& cells, int g, const Pier& pier) {
    if (pier.position.y != g - 1) return false;
    const Membership m = bridge_membership(bridges(cells), pier.position);
    if (m.vertical != 1 || m.horizontal != 0) return false;
    if (pier.taxonomy == PierTaxonomy::parallel_single_bridge) return pier.pointing == Direction::N;
    if (pier.taxonomy == PierTaxonomy::orthogonal_single_bridge) return pier.pointing == Direction::E;
    return false;
}

// Topmost point of column x strictly below row `below`. Must be north-free.
Point topmost_below(const PointSet& cells, Coord x, Coord below) {
    for (Coord y = below - 1; y >= 0; --y) {
        Point p{x, y};
        if (cells.contains(p)) {
            if (cells.contains(apply(Direction::N, p))) throw InternalError("anchor candidate is not north-free");
            return p;
        }
    }
    throw InternalError("no anchor candidate in column " + std::to_string(x));
}

Point canonical_anchor(const PointSet& cells, int g, const Pier& pier) {
    const Coord p = pier.position.x;
    if (pier.taxonomy == PierTaxonomy::parallel_single_bridge) {
        return topmost_below(cells, p == 0 ? 1 : p - 1, g - 1);
    }
    if (p < g - 1) return topmost_below(cells, p, g - 2);
    return topmost_below(cells, 0, g - 1);
}

Coord bridge_offset_for(const PointSet& cells, Direction glue_side) {
    for (const auto& b : bridges(cells)) {
        if (is_vertical(glue_side) && b.kind == BridgeKind::vertical) return b.index;
        if (!is_vertical(glue_side) && b.kind == BridgeKind::horizontal) return b.index;
    }
    throw InternalError("generator has no bridge of the required orientation");
}

void verify_three_free_sides(const Generator& gen, const PierAnchor& a) {
    WindowSpec spec{1, 2, gen.g(), a.anchor.x, a.anchor.y, a.pier.position.x, a.pier.position.y};
    auto contacts = side_contacts(stage(gen, 3), window(spec));
    for (Direction d : kDirections) {
        const std::size_t expected = d == a.glue_side ? 1 : 0;
        if (contacts[index(d)] != expected) {
            throw InternalError("anchor window for pier " + to_string(a.pier.position) + " does not have three free sides");
        }
    }
}

}  // namespace

std::vector<Pier> piers(const Generator& gen) {
    const auto bs = bridges(gen.cells());
    std::vector<Point> order(gen.cells().begin(), gen.cells().end());
    std::sort(order.begin(), order.end(), RowMajorLess{});
    std::vector<Pier> out;
    for (Point p : order) {
        if (auto pier = pier_at(gen.cells(), bs, p)) out.push_back(*pier);
    }
    return out;
}

PierAnchor anchor_for_pier(const Generator& gen, Point position) {
    if (auto ch = is_tree_fractal_generator(gen); !ch) throw Error("characterization failed: " + ch.diagnosis);
    auto pier = pier_at(gen.cells(), bridges(gen.cells()), position);
    if (!pier) throw Error(to_string(position) + " is not a pier");

    PierAnchor out{*pier, position, inverse(pier->pointing), 0};
    switch (pier->taxonomy) {
        case PierTaxonomy::double_bridge:
            throw Error("double-bridge pier " + to_string(position) + " has no anchor");
        case PierTaxonomy::real:
            break;
        case PierTaxonomy::parallel_single_bridge:
        case PierTaxonomy::orthogonal_single_bridge: {
            const int g = gen.g();
            bool found = false;
            for (const Dihedral& t : Dihedral::all()) {
                PointSet cells = t.apply(gen.cells(), g);
                Pier moved{t.apply(position, g), t.apply(pier->pointing), pier->taxonomy};
                if (!is_canonical(cells, g, moved)) continue;
                const Direction canonical_glue =
                    pier->taxonomy == PierTaxonomy::parallel_single_bridge ? Direction::S : Direction::W;
                out.anchor = t.apply_inverse(canonical_anchor(cells, g, moved), g);
                out.glue_side = t.apply_inverse(canonical_glue);
                found = true;
                break;
            }
            if (!found) throw InternalError("no symmetry maps pier " + to_string(position) + " to a canonical case");
            break;
        }
    }
    out.bridge_offset = bridge_offset_for(gen.cells(), out.glue_side);
    verify_three_free_sides(gen, out);
    return out;
}

PierAnchor select_pier_anchor(const Generator& gen) {
    if (auto ch = is_tree_fractal_generator(gen); !ch) throw Error("characterization failed: " + ch.diagnosis);
    const auto all = piers(gen);
    for (PierTaxonomy tax : {PierTaxonomy::real, PierTaxonomy::parallel_single_bridge,
                             PierTaxonomy::orthogonal_single_bridge}) {
        const Pier* choice = nullptr;
        for (const Pier& p : all) {
            if (p.taxonomy != tax) continue;
            if (tax != PierTaxonomy::real && is_canonical(gen.cells(), gen.g(), p)) {
                choice = &p;
                break;
            }
            if (!choice) choice = &p;
        }
        if (choice) return anchor_for_pier(gen, choice->position);
    }
    throw InternalError("tree-fractal generator without a usable pier");
}

bool stage_property(const Generator& gen, int s) {
    PointSet x = stage(gen, s);
    if (!is_tree(x)) return false;
    auto n = count_bridges(bridges(x));
    return n.horizontal == 1 && n.vertical == 1;
}

namespace {

void require_component(const PointSet& gen, const PointSet& comp) {
    if (comp.empty() || !comp.is_subset_of(gen) || !is_connected(comp)) {
        throw Error("C is not a connected component of G");
    }
    for (Point p : comp) {
        for (Direction d : kDirections) {
            Point q = apply(d, p);
            if (gen.contains(q) && !comp.contains(q)) throw Error("C is not a connected component of G");
        }
    }
}

std::optional<Bridge> first_connected(const PointSet& gen, BridgeKind kind) {
    for (const auto& b : bridges(gen)) {
        if (b.kind == kind && b.connected) return b;
    }
    return std::nullopt;
}

bool touches_row(const PointSet& s, Coord y) {
    return std::any_of(s.begin(), s.end(), [y](Point p) { return p.y == y; });
}

bool touches_column(const PointSet& s, Coord x) {
    return std::any_of(s.begin(), s.end(), [x](Point p) { return p.x == x; });
}

// Moves along d while the next point is in gen. The run stays in the
// component of the start, so it never enters C.
Point slide(const PointSet& gen, Point p, Direction d) {
    while (gen.contains(apply(d, p))) p = apply(d, p);
    return p;
}

}  // namespace

Point free_point_north(const PointSet& gen, const PointSet& comp) {
    require_component(gen, comp);
    const Extents e = extents(gen);
    auto bridge = first_connected(gen, BridgeKind::horizontal);
    if (!bridge) throw Error("G has no connected h-bridge");
    if (!touches_row(comp, e.t)) throw Error("C does not meet the top row of G");
    if (touches_column(comp, e.l)) throw Error("C meets the leftmost column of G");

    const auto path = *grid_path(gen, bridge->first, bridge->second);
    const Coord bottom = extents(comp).b;
    for (Point p : comp) {  // (x, y) order: smallest x first
        if (p.y != bottom) continue;
        std::optional<Point> q;
        for (Point r : path) {
            if (r.x == p.x && r.y < bottom && (!q || r.y > q->y)) q = r;
        }
        if (!q) continue;
        Point out = slide(gen, *q, Direction::N);
        if (comp.contains(out) || out.y >= e.t) throw InternalError("north-free construction left G \\ C");
        return out;
    }
    throw InternalError("no path point below the component");
}

Point free_point_northeast(const PointSet& gen, const PointSet& comp) {
    require_component(gen, comp);
    const Extents e = extents(gen);
    auto bridge = first_connected(gen, BridgeKind::vertical);
    if (!bridge) throw Error("G has no connected v-bridge");
    if (!touches_column(comp, e.r)) throw Error("C does not meet the rightmost column of G");
    if (!touches_row(comp, e.t)) throw Error("C does not meet the top row of G");
    if (touches_row(comp, e.b)) throw Error("C meets the bottom row of G");

    const auto path = *grid_path(gen, bridge->first, bridge->second);
    std::optional<Point> top;
    for (Point r : path) {
        if (r.y == e.t && (!top || r.x > top->x)) top = r;
    }
    if (!top) throw InternalError("v-bridge path misses the top row");
    Point out = slide(gen, *top, Direction::E);
    if (comp.contains(out) || out.x >= e.r) throw InternalError("north-east construction left G \\ C");
    return out;
}

Point free_point_east(const PointSet& gen, const PointSet& comp) {
    require_component(gen, comp);
    const Extents e = extents(gen);
    auto bridge = first_connected(gen, BridgeKind::vertical);
    if (!bridge) throw Error("G has no connected v-bridge");
    if (!touches_column(comp, e.r)) throw Error("C does not meet the rightmost column of G");
    if (touches_row(comp, e.b)) throw Error("C meets the bottom row of G");

    const auto path = *grid_path(gen, bridge->first, bridge->second);
    const Coord left = extents(comp).l;
    for (Point p : comp) {  // smallest y first within the leftmost column
        if (p.x != left) continue;
        std::optional<Point> q;
        for (Point r : path) {
            if (r.y == p.y && r.x < left && (!q || r.x > q->x)) q = r;
        }
        if (!q) continue;
        Point out = slide(gen, *q, Direction::E);
        if (comp.contains(out) || out.x >= e.r) throw InternalError("east-free construction left G \\ C");
        return out;
    }
    throw InternalError("no path point left of the component");
}

const std::vector<Dihedral>& Dihedral::all() {
    static const std::vector<Dihedral> kAll{
        Dihedral("identity", 1, 0, 0, 1),        Dihedral("transpose", 0, 1, 1, 0),
        Dihedral("flip-y", 1, 0, 0, -1),         Dihedral("flip-x", -1, 0, 0, 1),
        Dihedral("anti-transpose", 0, -1, -1, 0), Dihedral("rotate-90", 0, -1, 1, 0),
        Dihedral("rotate-180", -1, 0, 0, -1),    Dihedral("rotate-270", 0, 1, -1, 0),
    };
    return kAll;
}

Point Dihedral::offset(int g) const {
    return {(a_ < 0 || b_ < 0) ? g - 1 : 0, (c_ < 0 || d_ < 0) ? g - 1 : 0};
}

Point Dihedral::apply(Point p, int g) const { return linear(p) + offset(g); }

Point Dihedral::apply_inverse(Point p, int g) const {
    Point v = p - offset(g);
    // The matrix is orthogonal, so its inverse is its transpose.
    return {a_ * v.x + c_ * v.y, b_ * v.x + d_ * v.y};
}

Direction Dihedral::apply(Direction d) const {
    Point v = linear(unit(d));
    for (Direction out : kDirections) {
        if (unit(out) == v) return out;
    }
    return d;
}

Direction Dihedral::apply_inverse(Direction d) const {
    for (Direction out : kDirections) {
        if (apply(out) == d) return out;
    }
    return d;
}

PointSet Dihedral::apply(const PointSet& s, int g) const {
    PointSet out;
    for (Point p : s) out.insert(apply(p, g));
    return out;
}

namespace {

bool rows_and_columns_covered(std::uint64_t mask, int g) {
    const std::uint64_t row_bits = (std::uint64_t{1} << g) - 1;
    std::uint64_t columns = 0;
    for (int y = 0; y < g; ++y) {
        const std::uint64_t row = (mask >> (y * g)) & row_bits;
        if (row == 0) return false;
        columns |= row;
    }
    return columns == row_bits;
}

Generator from_mask(std::uint64_t mask, int g) {
    PointSet cells;
    for (int y = 0; y < g; ++y) {
        for (int x = 0; x < g; ++x) {
            if (mask >> (y * g + x) & 1U) cells.insert({x, y});
        }
    }
    return Generator::make(g, std::move(cells));
}

CensusStats census_range(const CensusOptions& opts, std::uint64_t begin, std::uint64_t end) {
    CensusStats st;
    st.g = opts.g;
    for (std::uint64_t m = begin; m < end; ++m) {
        const std::uint64_t mask = (m << 1) | 1U;
        ++st.candidates;
        if (!rows_and_columns_covered(mask, opts.g)) continue;
        Generator gen = from_mask(mask, opts.g);
        ++st.valid;
        const bool pred = opts.predicate && opts.predicate(gen);
        if (pred) ++st.predicate_valid;
        if (!is_tree_fractal_generator(gen)) continue;
        ++st.tree_fractal;
        if (pred) ++st.predicate_tree_fractal;
        for (const Pier& p : piers(gen)) ++st.pier_taxonomy[p.taxonomy];
        st.tree_fractal_generators.push_back(std::move(gen));
    }
    return st;
}

}  // namespace

CensusStats census(const CensusOptions& opts) {
    const int max_g = opts.allow_large ? 4 : 3;
    if (opts.g < 2 || opts.g > max_g) {
        throw Error("census supports 2 <= g <= " + std::to_string(max_g) +
                    (opts.allow_large ? std::string{} : std::string{" (g=4 requires the large flag)"}));
    }
    const std::uint64_t total = std::uint64_t{1} << (opts.g * opts.g - 1);
    unsigned threads = opts.threads ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));
    const std::uint64_t chunk = (total + threads - 1) / threads;

    std::vector<std::future<CensusStats>> parts;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t begin = t * chunk;
        const std::uint64_t end = std::min(total, begin + chunk);
        parts.push_back(std::async(std::launch::async, census_range, std::cref(opts), begin, end));
    }
    CensusStats out;
    out.g = opts.g;
    for (auto& f : parts) {  // chunks are in mask order, so the merge is deterministic
        CensusStats part = f.get();
        out.candidates += part.candidates;
        out.valid += part.valid;
        out.tree_fractal += part.tree_fractal;
        out.predicate_valid += part.predicate_valid;
        out.predicate_tree_fractal += part.predicate_tree_fractal;
        for (auto [k, v] : part.pier_taxonomy) out.pier_taxonomy[k] += v;
        for (auto& gen : part.tree_fractal_generators) out.tree_fractal_generators.push_back(std::move(gen));
    }
    return out;
}

}  // namespace fractile
