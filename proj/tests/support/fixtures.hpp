#pragma once

#include <cstdint>

#include "fractile/atam.hpp"
#include "fractile/dssf.hpp"

namespace fixtures {

using namespace fractile;

Generator sierpinski();   // {(0,0),(1,0),(0,1)}
Generator l_shape();      // {(0,0),(1,0),(1,1)}
Generator mirrored_l();   // {(0,0),(0,1),(1,1)}
Generator full_square();  // all of {0,1}^2
Generator diagonal();     // {(0,0),(1,1)}
Generator t_shape();      // g=4: column x=0 plus row y=2

/// Hard-coded tiling of the c-scaled stage S rooted at the origin. The edges of
/// the glue lines of w_2..w_S carry the label "p" (shared) or "p<s>" (one
/// label per stage) instead of a unique one.
TileSystem pier_line_system(const Generator& gen, Coord c, int max_stage, bool stage_indexed);

/// Width-1 column growing north from (0,0): tile A on even rows (with an east
/// bump tile C), tile B on odd rows. Period 2.
TileSystem ribbon();

/// One tile type with glue "a" of strength `strength` on all four sides.
TileSystem all_glue(std::uint32_t temperature, std::uint32_t strength);

/// Frozen policy seed for which the shared-label Sierpinski system reaches a
/// certificate at max stage 4.
inline constexpr std::uint64_t kRefuteSeed = 1;

}  // namespace fixtures
