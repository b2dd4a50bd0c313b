#include "fractile/refuter.hpp"

#include <algorithm>
#include <future>

#include "fractile/error.hpp"
#include "fractile/io.hpp"

namespace fractile {

std::optional<std::uint64_t> glue_line_bound(std::uint64_t distinct_glues, Coord c) {
    if (c < 1) throw Error("scale c must be at least 1");
    std::uint64_t out = 1;
    for (Coord k = 0; k < 2 * c; ++k) {
        if (__builtin_mul_overflow(out, distinct_glues, &out)) return std::nullopt;
    }
    for (Coord k = 2; k <= 2 * c; ++k) {
        if (__builtin_mul_overflow(out, static_cast<std::uint64_t>(k), &out)) return std::nullopt;
    }
    return out;
}

std::optional<std::uint64_t> glue_line_bound(const TileSystem& sys, Coord c) {
    return glue_line_bound(sys.tiles().distinct_glue_count(), c);
}

Point alignment_offset(int g, Coord c, int i, int j, const PierAnchor& anchor) {
    if (i < 2 || i >= j) throw Error("alignment needs 2 <= i < j");
    Coord sum = 0;
    for (int k = i - 2; k <= j - 3; ++k) sum = checked_add(sum, checked_pow(g, k));
    const Coord shift = checked_mul(checked_mul(anchor.bridge_offset, c), sum);
    // Mirroring the west case onto an east or north glue side also moves the
    // line across by the full margin, since w_j is wider than w_i by m.
    const Coord m = enclosure_margin(c, g, i, j);
    switch (anchor.glue_side) {
        case Direction::W: return {0, shift};
        case Direction::E: return {m, shift};
        case Direction::S: return {shift, 0};
        case Direction::N: return {shift, m};
    }
    return {0, 0};
}

std::vector<Point> glue_line_cells(int g, Coord c, int s, const PierAnchor& anchor) {
    const WindowSpec spec{c, s, g, anchor.anchor.x, anchor.anchor.y, anchor.pier.position.x, anchor.pier.position.y};
    const Point corner = window_corner(spec);
    const Coord side = window_side(spec);
    Coord sum = 0;
    for (int k = 0; k <= s - 3; ++k) sum = checked_add(sum, checked_pow(g, k));
    const Coord offset = checked_mul(checked_mul(anchor.bridge_offset, c), sum);
    std::vector<Point> out;
    for (Coord t = 0; t < c; ++t) {
        switch (anchor.glue_side) {
            case Direction::S: out.push_back({corner.x + offset + t, corner.y}); break;
            case Direction::N: out.push_back({corner.x + offset + t, corner.y + side - 1}); break;
            case Direction::W: out.push_back({corner.x, corner.y + offset + t}); break;
            case Direction::E: out.push_back({corner.x + side - 1, corner.y + offset + t}); break;
        }
    }
    return out;
}

PointSet scaled_fractal_in(const Generator& gen, Coord c, const Box& region) {
    if (region.empty()) return {};
    const Coord reach = std::max(region.x1, region.y1);
    int k = 1;
    while (reach >= 0 && checked_mul(c, checked_pow(gen.g(), k)) <= reach) ++k;
    PointSet out;
    for (Point p : scale(stage(gen, k), c)) {
        if (region.contains(p)) out.insert(p);
    }
    return out;
}

namespace {

std::size_t classify(std::vector<BondFormingSubmovie>& distinct, const BondFormingSubmovie& m) {
    for (std::size_t k = 0; k < distinct.size(); ++k) {
        const auto& rep = distinct[k];
        if (rep.size() != m.size()) continue;
        if (m.empty()) return k;
        if (matches_with_translation(rep, m, m.events.front().cell - rep.events.front().cell)) return k;
    }
    distinct.push_back(m);
    return distinct.size() - 1;
}

}  // namespace

RefutationOutcome refute(const RefutationConfig& cfg) {
    const Generator& gen = cfg.generator;
    if (auto ch = is_tree_fractal_generator(gen); !ch) throw Error("characterization failed: " + ch.diagnosis);
    if (cfg.c < 1) throw Error("scale c must be at least 1");
    if (cfg.max_stage < 3) throw Error("max stage must be at least 3");

    const PierAnchor anchor = select_pier_anchor(gen);
    const Box needed = Box::square({0, 0}, checked_mul(cfg.c, checked_pow(gen.g(), cfg.max_stage)));
    const Box region = cfg.region.value_or(needed);
    if (!region.contains(needed)) throw Error("region too small");

    const AssemblySequence seq = run(cfg.system, {region, cfg.policy, cfg.seed});
    const Assembly& alpha = seq.result;
    const std::string digest = sha256_hex(write_generator(gen));

    auto spec_for = [&](int s) {
        return WindowSpec{cfg.c, s, gen.g(), anchor.anchor.x, anchor.anchor.y, anchor.pier.position.x,
                          anchor.pier.position.y};
    };

    std::vector<std::future<BondFormingSubmovie>> pending;
    for (int s = 2; s <= cfg.max_stage; ++s) {
        pending.push_back(std::async(std::launch::async, [&, s] {
            return bond_forming(record_movie(seq, window(spec_for(s))), alpha);
        }));
    }
    NoMatchReport report{digest, cfg.c, cfg.max_stage, {}, {}, {}};
    for (int s = 2; s <= cfg.max_stage; ++s) {
        WindowRecord rec{s, spec_for(s), pending[s - 2].get(), 0, false};
        const ClosedWindow w = window(rec.spec);
        for (const auto& [p, t] : cfg.system.seed().placements()) rec.holds_seed = rec.holds_seed || w.contains(p);
        rec.movie_class = classify(report.distinct, rec.submovie);
        report.windows.push_back(std::move(rec));
    }

    const PointSet target = scaled_fractal_in(gen, cfg.c, region);
    for (std::size_t a = 0; a < report.windows.size(); ++a) {
        for (std::size_t b = a + 1; b < report.windows.size(); ++b) {
            const WindowRecord& wi = report.windows[a];
            const WindowRecord& wj = report.windows[b];
            if (wi.submovie.empty() || wi.movie_class != wj.movie_class) continue;
            const std::string pair = "(" + std::to_string(wi.s) + "," + std::to_string(wj.s) + ")";
            if (wi.holds_seed != wj.holds_seed) {
                report.notes.push_back(pair + ": seed in only one window");
                continue;
            }
            const Point t = translation(cfg.c, gen.g(), wi.s, wj.s, wi.spec.e, wi.spec.f, wi.spec.p, wi.spec.q);
            const Point xy = alignment_offset(gen.g(), cfg.c, wi.s, wj.s, anchor);
            if (!enclosure_bound_ok(cfg.c, gen.g(), wi.s, wj.s, xy.x, xy.y)) {
                throw InternalError("alignment offset exceeds the enclosure margin");
            }
            const Point c_vec = t + xy;
            if (!matches_with_translation(wi.submovie, wj.submovie, c_vec)) {
                report.notes.push_back(pair + ": submovies match only by a different translation");
                continue;
            }
            const ClosedWindow w = window(wi.spec);
            const ClosedWindow w2 = window(wj.spec);
            if (partition(alpha, w).first.translated(c_vec) == partition(alpha, w2).first) {
                report.notes.push_back(pair + ": identical interiors");
                continue;
            }
            SpliceResult spliced = splice(seq, w, w2, c_vec);
            const auto& result = spliced.sequence.result;
            PointSet diff = symmetric_difference(result.domain(), target);
            if (diff.empty()) {
                report.notes.push_back(pair + ": spliced assembly equals the target");
                continue;
            }
            bool replay_ok = false;
            std::string replay_digest;
            try {
                const Assembly again = replay(cfg.system, spliced.sequence.events);
                replay_ok = again == result;
                replay_digest = assembly_digest(again);
            } catch (const ReplayError&) {
                replay_ok = false;
            }
            SpliceCertificate cert;
            cert.generator_digest = digest;
            cert.c = cfg.c;
            cert.temperature = cfg.system.temperature();
            cert.policy = cfg.policy;
            cert.policy_seed = cfg.seed;
            cert.pier_anchor = anchor;
            cert.i = wi.s;
            cert.j = wj.s;
            cert.w_i = wi.spec;
            cert.w_j = wj.spec;
            cert.translation = t;
            cert.alignment = xy;
            cert.c_vec = c_vec;
            cert.seed_side = spliced.seed_side;
            cert.submovie = wi.submovie;
            cert.spliced = spliced.sequence.events;
            cert.spliced_domain_diff.assign(diff.begin(), diff.end());
            std::sort(cert.spliced_domain_diff.begin(), cert.spliced_domain_diff.end(), RowMajorLess{});
            cert.replay_ok = replay_ok;
            cert.replay_digest = replay_digest;
            if (!cert.replay_ok) throw InternalError("spliced sequence failed to replay");
            return cert;
        }
    }
    return report;
}

}  // namespace fractile
