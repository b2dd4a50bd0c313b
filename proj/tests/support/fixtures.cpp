#include "fixtures.hpp"

#include <map>
#include <string>

#include "fractile/refuter.hpp"
#include "fractile/windows.hpp"

namespace fixtures {

Generator sierpinski() { return Generator::make(2, {{0, 0}, {1, 0}, {0, 1}}); }
Generator l_shape() { return Generator::make(2, {{0, 0}, {1, 0}, {1, 1}}); }
Generator mirrored_l() { return Generator::make(2, {{0, 0}, {0, 1}, {1, 1}}); }
Generator full_square() { return Generator::make(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }
Generator diagonal() { return Generator::make(2, {{0, 0}, {1, 1}}); }
Generator t_shape() { return Generator::make(4, {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 2}, {3, 2}}); }

TileSystem pier_line_system(const Generator& gen, Coord c, int max_stage, bool stage_indexed) {
    const PierAnchor anchor = select_pier_anchor(gen);
    std::map<EdgeKey, std::string> labels;
    for (int s = 2; s <= max_stage; ++s) {
        for (Point q : glue_line_cells(gen.g(), c, s, anchor)) {
            labels[EdgeKey::of(q, anchor.glue_side)] = stage_indexed ? "p" + std::to_string(s) : "p";
        }
    }
    return make_hardcoded_system(scale(stage(gen, max_stage), c), {0, 0}, 1, labels);
}

TileSystem ribbon() {
    auto tiles = std::make_shared<TileSet>();
    const Glue ab{"ab", 1}, ba{"ba", 1}, x{"x", 1};
    const TileId a = tiles->add({"A", {ab, x, ba, Glue{}}});
    tiles->add({"B", {ba, Glue{}, ab, Glue{}}});
    tiles->add({"C", {Glue{}, Glue{}, Glue{}, x}});
    Assembly seed(tiles);
    seed.place({0, 0}, a);
    return TileSystem::make(tiles, std::move(seed), 1);
}

TileSystem all_glue(std::uint32_t temperature, std::uint32_t strength) {
    auto tiles = std::make_shared<TileSet>();
    const Glue g{"a", strength};
    const TileId id = tiles->add({"all", {g, g, g, g}});
    Assembly seed(tiles);
    seed.place({0, 0}, id);
    return TileSystem::make(tiles, std::move(seed), temperature);
}

}  // namespace fixtures
