#include "fractile/movies.hpp"

#include <functional>
#include <sstream>

namespace fractile {

namespace {

void emit_tile(const TileType& tile, Point p, std::size_t step, const ClosedWindow& w, std::vector<GlueEvent>& out) {
    for (Direction d : kDirectionsByUnitVector) {
        const Glue& g = tile.glue(d);
        if (g.strength > 0 && w.crosses(p, d)) out.push_back({step, p, d, g});
    }
}

}  // namespace

WindowMovie record_movie(const TileSystem& sys, const std::vector<SequenceEvent>& events, const ClosedWindow& w) {
    WindowMovie m{w, {}};
    for (const auto& [p, t] : sys.seed().placements()) emit_tile(sys.tiles().at(t), p, 0, w, m.events);
    for (const auto& ev : events) emit_tile(sys.tiles().at(ev.tile), ev.position, ev.index + 1, w, m.events);
    return m;
}

WindowMovie record_movie(const AssemblySequence& seq, const ClosedWindow& w) {
    return record_movie(seq.system, seq.events, w);
}

BondFormingSubmovie bond_forming(const std::vector<GlueEvent>& events, const Assembly& result) {
    BondFormingSubmovie out;
    for (const auto& ev : events) {
        Point q = apply(ev.orientation, ev.cell);
        if (!result.contains(ev.cell) || !result.contains(q)) continue;
        if (bond_strength(result, ev.cell, q) > 0) out.events.push_back(ev);
    }
    return out;
}

BondFormingSubmovie bond_forming(const WindowMovie& m, const Assembly& result) { return bond_forming(m.events, result); }

bool matches_with_translation(const BondFormingSubmovie& a, const BondFormingSubmovie& b, Point c) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const auto& x = a.events[k];
        const auto& y = b.events[k];
        if (x.cell + c != y.cell || x.orientation != y.orientation || x.glue != y.glue) return false;
        if (k > 0) {
            const bool same_a = x.step == a.events[k - 1].step;
            const bool same_b = y.step == b.events[k - 1].step;
            if (same_a != same_b) return false;
        }
    }
    return true;
}

std::optional<Point> match_up_to_translation(const BondFormingSubmovie& a, const BondFormingSubmovie& b) {
    if (a.empty() || a.size() != b.size()) return std::nullopt;
    const Point c = b.events.front().cell - a.events.front().cell;
    if (c == Point{0, 0}) return std::nullopt;
    if (!matches_with_translation(a, b, c)) return std::nullopt;
    return c;
}

std::string dump_movie(const std::vector<GlueEvent>& events) {
    std::ostringstream os;
    for (const auto& ev : events) {
        os << ev.step << ' ' << ev.cell.x << ' ' << ev.cell.y << ' ' << to_char(ev.orientation) << ' '
           << ev.glue.label << ' ' << ev.glue.strength << '\n';
    }
    return os.str();
}

namespace {

// One half of the spliced assembly: the tiles of the original sequence whose
// positions satisfy `member`, moved by `shift`, added in sequence order.
struct Side {
    std::function<bool(Point)> member;
    Point shift;
    const std::vector<GlueEvent>* movie = nullptr;
    std::size_t next = 0;
};

}  // namespace

SpliceResult splice(const AssemblySequence& seq, const ClosedWindow& w, const ClosedWindow& w2, Point c) {
    if (c == Point{0, 0}) throw SpliceError("zero translation");
    if (!encloses(w2, w.translated(c))) throw SpliceError("enclosure");

    const Assembly& alpha = seq.result;
    const auto m = bond_forming(record_movie(seq, w), alpha);
    const auto m2 = bond_forming(record_movie(seq, w2), alpha);
    if (!matches_with_translation(m, m2, c)) throw SpliceError("movie mismatch");

    const auto seed = seq.system.seed().placements();
    bool all_out = true;
    bool all_in = true;
    for (const auto& [p, t] : seed) {
        all_out = all_out && !w.contains(p) && !w2.contains(p);
        all_in = all_in && w.contains(p) && w2.contains(p);
    }
    if (!all_out && !all_in) throw SpliceError("seed placement");
    const SeedSide seed_side = all_out ? SeedSide::outside : SeedSide::inside;

    auto outside_w2 = [&](Point p) { return !w2.contains(p); };
    auto inside_w = [&](Point p) { return w.contains(p); };

    // Side a holds the seed and stays in place; side b is moved.
    Side a, b;
    if (seed_side == SeedSide::outside) {
        a = {outside_w2, {0, 0}, &m2.events};
        b = {inside_w, c, &m.events};
    } else {
        a = {inside_w, {0, 0}, &m.events};
        b = {outside_w2, -c, &m2.events};
    }

    const auto& events = seq.events;
    std::vector<SequenceEvent> gamma;
    auto push = [&](const SequenceEvent& ev, Point shift) {
        gamma.push_back({gamma.size(), ev.position + shift, ev.tile});
    };
    // Adds the side's member tiles up to and including sequence event `target`.
    auto advance = [&](Side& side, std::size_t target) {
        while (side.next < target) {
            if (side.member(events[side.next].position)) push(events[side.next], side.shift);
            ++side.next;
        }
        if (side.next == target) {
            if (!side.member(events[target].position)) throw InternalError("splice: movie event on the wrong side");
            push(events[target], side.shift);
            ++side.next;
        }
    };

    for (std::size_t k = 0; k < m.events.size(); ++k) {
        const GlueEvent& ea = (*a.movie)[k];
        Side& side = a.member(ea.cell) ? a : b;
        const GlueEvent& ev = (*side.movie)[k];
        if (&side == &b && !b.member(ev.cell)) throw InternalError("splice: movie event on neither side");
        // Step 0 is the seed, already present. Later events of a tile that was
        // already added are skipped by advance().
        if (ev.step > 0 && ev.step - 1 >= side.next) advance(side, ev.step - 1);
    }
    for (Side* side : {&b, &a}) {
        for (; side->next < events.size(); ++side->next) {
            if (side->member(events[side->next].position)) push(events[side->next], side->shift);
        }
    }

    // Expected union. Enclosure keeps the two parts disjoint.
    auto [in_w, out_w] = partition(alpha, w);
    auto [in_w2, out_w2] = partition(alpha, w2);
    Assembly expected = seed_side == SeedSide::outside ? out_w2 : out_w2.translated(-c);
    const Assembly moved = seed_side == SeedSide::outside ? in_w.translated(c) : in_w;
    for (const auto& [p, t] : moved.placements()) {
        if (expected.contains(p)) throw InternalError("splice: translated inside overlaps the outside part");
        expected.place(p, t);
    }

    Assembly result(alpha.tiles());
    try {
        result = replay(seq.system, gamma);
    } catch (const ReplayError& e) {
        throw InternalError(std::string("splice produced an invalid sequence: ") + e.what());
    }
    if (!(result == expected)) throw InternalError("splice result differs from the expected union");

    AssemblySequence out{seq.system, std::move(gamma), result, {}, false};
    return {std::move(out), seed_side, std::move(expected)};
}

}  // namespace fractile
