#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "fractile/atam.hpp"
#include "fractile/error.hpp"
#include "oracles.hpp"

using namespace fractile;

namespace {

const Glue kNull{};

// Seed row and column with strength-2 glues, then a fill tile that needs both
// its west and south strength-1 neighbors.
TileSystem cooperation() {
    auto tiles = std::make_shared<TileSet>();
    const Glue h{"h", 2}, v{"v", 2}, f{"f", 1};
    const TileId origin = tiles->add({"O", {v, h, kNull, kNull}});
    tiles->add({"R", {f, h, kNull, h}});
    tiles->add({"C", {v, f, v, kNull}});
    tiles->add({"F", {f, f, f, f}});
    Assembly seed(tiles);
    seed.place({0, 0}, origin);
    return TileSystem::make(tiles, std::move(seed), 2);
}

std::vector<TileSystem> corpus() {
    return {fixtures::all_glue(1, 1), fixtures::all_glue(2, 2), cooperation(), fixtures::ribbon(),
            make_hardcoded_system(stage(fixtures::sierpinski(), 2), {0, 0})};
}

std::set<std::pair<Point, TileId>> as_set(const std::vector<Attachment>& v) {
    std::set<std::pair<Point, TileId>> out;
    for (const auto& a : v) out.insert({a.position, a.tile});
    return out;
}

// Random configuration over a small multi-glue tile set with a connected domain.
Assembly random_assembly(std::mt19937_64& rng, const std::shared_ptr<const TileSet>& tiles, std::size_t n) {
    Assembly alpha(tiles);
    alpha.place({0, 0}, static_cast<TileId>(rng() % tiles->size()));
    std::vector<Point> cells{{0, 0}};
    while (alpha.size() < n) {
        const Point base = cells[rng() % cells.size()];
        const Point p = apply(kDirections[rng() % 4], base);
        if (alpha.contains(p)) continue;
        alpha.place(p, static_cast<TileId>(rng() % tiles->size()));
        cells.push_back(p);
    }
    return alpha;
}

std::shared_ptr<const TileSet> mixed_tiles() {
    auto tiles = std::make_shared<TileSet>();
    const Glue a1{"a", 1}, a2{"a", 2}, b1{"b", 1};
    tiles->add({"u", {a1, a1, a1, a1}});
    tiles->add({"v", {a2, a2, a2, a2}});
    tiles->add({"w", {a1, a2, b1, kNull}});
    tiles->add({"x", {b1, kNull, a2, a1}});
    return tiles;
}

}  // namespace

TEST_CASE("bond strength") {
    auto tiles = std::make_shared<TileSet>();
    const TileId a = tiles->add({"a", {Glue{"a", 1}, Glue{"a", 1}, Glue{"a", 1}, Glue{"a", 1}}});
    const TileId b = tiles->add({"b", {Glue{"b", 1}, Glue{"b", 1}, Glue{"b", 1}, Glue{"b", 1}}});
    const TileId a2 = tiles->add({"a2", {Glue{"a", 2}, Glue{"a", 2}, Glue{"a", 2}, Glue{"a", 2}}});
    Assembly alpha(tiles);
    alpha.place({0, 0}, a);
    alpha.place({1, 0}, a);
    alpha.place({0, 1}, b);
    alpha.place({-1, 0}, a2);
    CHECK(bond_strength(alpha, {0, 0}, {1, 0}) == 1);
    CHECK(bond_strength(alpha, {0, 0}, {0, 1}) == 0);
    CHECK(bond_strength(alpha, {0, 0}, {-1, 0}) == 0);
    CHECK_THROWS_AS(bond_strength(alpha, {1, 0}, {0, 1}), Error);
    CHECK_THROWS_AS(bond_strength(alpha, {1, 0}, {2, 0}), Error);
    CHECK(bond(Glue{}, Glue{}) == 0);
}

TEST_CASE("tau-stability examples") {
    auto tiles = std::make_shared<TileSet>();
    const Glue a{"a", 1};
    const TileId t = tiles->add({"t", {a, a, a, a}});
    Assembly pair(tiles);
    pair.place({0, 0}, t);
    pair.place({1, 0}, t);
    CHECK(is_tau_stable(pair, 1));
    CHECK_FALSE(is_tau_stable(pair, 2));

    Assembly block = pair;
    block.place({0, 1}, t);
    block.place({1, 1}, t);
    CHECK(is_tau_stable(block, 2));
    CHECK(binding_min_cut(block) == 2);
    CHECK(oracle::min_cut_exhaustive(block) == 2);

    Assembly single(tiles);
    single.place({5, 5}, t);
    CHECK(is_tau_stable(single, 3));
}

TEST_CASE("stability agrees with exhaustive cut enumeration") {
    std::mt19937_64 rng(17);
    const auto tiles = mixed_tiles();
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        const Assembly alpha = random_assembly(rng, tiles, n);
        const std::uint64_t cut = oracle::min_cut_exhaustive(alpha);
        REQUIRE(binding_min_cut(alpha) == cut);
        REQUIRE(oracle::min_cut_flow(alpha) == cut);
        for (std::uint32_t tau : {1u, 2u, 3u}) CHECK(is_tau_stable(alpha, tau) == (cut >= tau));
    }
}

TEST_CASE("tile system validation") {
    auto tiles = std::make_shared<TileSet>();
    const Glue a{"a", 1};
    const TileId t = tiles->add({"t", {a, a, a, a}});
    CHECK_THROWS_AS(tiles->add({"t", {a, a, a, a}}), Error);
    CHECK_THROWS_AS(TileSystem::make(tiles, Assembly(tiles), 1), Error);
    Assembly apart(tiles);
    apart.place({0, 0}, t);
    apart.place({2, 0}, t);
    CHECK_THROWS_AS(TileSystem::make(tiles, apart, 1), Error);
    Assembly weak(tiles);
    weak.place({0, 0}, t);
    weak.place({1, 0}, t);
    CHECK_THROWS_AS(TileSystem::make(tiles, weak, 2), Error);
    CHECK_NOTHROW(TileSystem::make(tiles, weak, 1));
}

TEST_CASE("frontier examples") {
    const TileSystem one = fixtures::all_glue(1, 1);
    const auto f = frontier(one, one.seed(), Box{-5, -5, 5, 5});
    CHECK(f.size() == 4);
    CHECK(frontier(one, one.seed(), Box{0, 0, 0, 0}).empty());

    const TileSystem coop = cooperation();
    const auto seq = run(coop, {Box{0, 0, 1, 1}, SelectionPolicy::lexicographic, 0});
    CHECK(seq.result.size() == 4);
    // F at (1,1) can only join after both R at (1,0) and C at (0,1)
    const TileId fill = *coop.tiles().find("F");
    for (const auto& ev : seq.events) {
        if (ev.tile == fill) CHECK(ev.index == 2);
    }
    Assembly partial = coop.seed();
    partial.place({1, 0}, *coop.tiles().find("R"));
    for (const auto& a : frontier(coop, partial, Box{0, 0, 1, 1})) CHECK(a.tile != fill);
}

TEST_CASE("frontier agrees with the brute-force oracle") {
    std::mt19937_64 rng(23);
    for (const TileSystem& sys : corpus()) {
        const Box region{-1, -1, 2, 2};
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const auto seq = run(sys, {region, SelectionPolicy::uniform, seed});
            REQUIRE(seq.result.size() <= 20);
            Assembly alpha = sys.seed();
            CHECK(as_set(frontier(sys, alpha, region)) == oracle::frontier(sys, alpha, region));
            for (const auto& ev : seq.events) {
                alpha.place(ev.position, ev.tile);
                if (rng() % 2 == 0) CHECK(as_set(frontier(sys, alpha, region)) == oracle::frontier(sys, alpha, region));
            }
            CHECK(oracle::frontier(sys, alpha, region).empty());
        }
    }
}

TEST_CASE("runs are monotone, replay, and are reproducible") {
    for (const TileSystem& sys : corpus()) {
        const Box region{-3, -3, 4, 4};
        for (auto policy : {SelectionPolicy::uniform, SelectionPolicy::lexicographic}) {
            for (std::uint64_t seed : {0u, 9u}) {
                const auto seq = run(sys, {region, policy, seed});
                Assembly alpha = sys.seed();
                for (std::size_t k = 0; k < seq.events.size(); ++k) {
                    const auto& ev = seq.events[k];
                    CHECK(ev.index == k);
                    CHECK_FALSE(alpha.contains(ev.position));
                    const std::size_t before = alpha.size();
                    alpha.place(ev.position, ev.tile);
                    CHECK(alpha.size() == before + 1);
                    CHECK(oracle::tau_stable(alpha, sys.temperature()));
                }
                CHECK(alpha == seq.result);
                CHECK(replay(sys, seq.events) == seq.result);
                const auto again = run(sys, {region, policy, seed});
                CHECK(again.events == seq.events);
                CHECK(seq.exhausted);
            }
        }
    }
}

TEST_CASE("run examples") {
    const TileSystem one = fixtures::all_glue(1, 1);
    const auto full = run(one, {Box{0, 0, 2, 2}, SelectionPolicy::uniform, 4});
    CHECK(full.events.size() == 8);
    CHECK(full.result.size() == 9);
    const auto none = run(one, {Box{0, 0, 2, 2}, SelectionPolicy::uniform, 4, 0});
    CHECK(none.events.empty());
    CHECK(none.result == one.seed());
    CHECK_FALSE(none.exhausted);

    // directed system: result set independent of the policy seed
    const TileSystem hard = make_hardcoded_system(stage(fixtures::sierpinski(), 3), {0, 0});
    const Box region{0, 0, 7, 7};
    const auto a = run(hard, {region, SelectionPolicy::uniform, 1});
    const auto b = run(hard, {region, SelectionPolicy::uniform, 2});
    CHECK(a.events != b.events);
    CHECK(a.result.domain() == b.result.domain());
    CHECK(a.result.domain() == stage(fixtures::sierpinski(), 3));
}

TEST_CASE("clipped frontier is reported") {
    const TileSystem one = fixtures::all_glue(1, 1);
    const auto seq = run(one, {Box{0, 0, 1, 1}, SelectionPolicy::lexicographic, 0});
    CHECK(seq.exhausted);
    CHECK(seq.clipped_frontier.size() == 8);
}

TEST_CASE("replay rejects illegal steps") {
    const TileSystem one = fixtures::all_glue(1, 1);
    std::vector<SequenceEvent> twice{{0, {1, 0}, 0}, {1, {1, 0}, 0}};
    try {
        replay(one, twice);
        FAIL("replay accepted a repeated position");
    } catch (const ReplayError& e) {
        CHECK(e.reason() == "position occupied");
        CHECK(e.step() == 1);
    }
    std::vector<SequenceEvent> far{{0, {5, 5}, 0}};
    try {
        replay(one, far);
        FAIL("replay accepted a detached tile");
    } catch (const ReplayError& e) {
        CHECK(e.reason() == "insufficient strength");
        CHECK(e.step() == 0);
    }
    CHECK_THROWS_AS(replay(one, {{0, {1, 0}, 7}}), ReplayError);
}

TEST_CASE("bounded strict self-assembly check") {
    const PointSet x2 = stage(fixtures::sierpinski(), 2);
    const Box region{0, 0, 3, 3};
    const auto bad = check_strict_self_assembly(fixtures::all_glue(1, 1), x2, region);
    CHECK(bad.kind == StrictnessVerdictKind::violation);
    REQUIRE(bad.witness.has_value());
    CHECK_FALSE(x2.contains(*bad.witness));
    CHECK(*bad.witness == Point{1, 1});

    const auto good = check_strict_self_assembly(make_hardcoded_system(x2, {0, 0}), x2, region);
    CHECK(good.kind == StrictnessVerdictKind::incomplete_ok);

    CHECK_THROWS_WITH_AS(check_strict_self_assembly(fixtures::all_glue(1, 1), x2, Box{10, 10, 12, 12}),
                         "seed outside region", Error);
}

TEST_CASE("hard-coded systems follow a spanning tree") {
    const PointSet shape = stage(fixtures::l_shape(), 3);
    const TileSystem sys = make_hardcoded_system(shape, {0, 0}, 2);
    CHECK(sys.tiles().size() == shape.size());
    CHECK(sys.temperature() == 2);
    const auto seq = run(sys, {Box{0, 0, 7, 7}, SelectionPolicy::uniform, 3});
    CHECK(seq.result.domain() == shape);
    // a spanning tree has |V|-1 bonds
    std::size_t bonds = 0;
    for (Point p : shape) {
        for (Direction d : {Direction::N, Direction::E}) {
            if (shape.contains(apply(d, p))) bonds += bond_strength(seq.result, p, apply(d, p)) > 0;
        }
    }
    CHECK(bonds == shape.size() - 1);
    CHECK(EdgeKey::of({1, 1}, Direction::W) == EdgeKey{{0, 1}, Direction::E});
    CHECK(EdgeKey::of({1, 1}, Direction::S) == EdgeKey{{1, 0}, Direction::N});
}

TEST_CASE("assembly helpers") {
    const TileSystem one = fixtures::all_glue(1, 1);
    Assembly a = one.seed();
    CHECK_THROWS_AS(a.place({0, 0}, 0), Error);
    a.place({1, 0}, 0);
    const Assembly moved = a.translated({3, 4});
    CHECK(moved.domain() == PointSet{{3, 4}, {4, 4}});
    CHECK(a.merged(moved).size() == 4);
    CHECK(one.tiles().distinct_glue_count() == 1);
    CHECK(one.tiles().with_glue(Direction::N, Glue{"a", 1}).size() == 1);
}
