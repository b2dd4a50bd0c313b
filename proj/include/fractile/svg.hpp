#pragma once

#include <string>
#include <vector>

#include "fractile/grid.hpp"

namespace fractile {

struct SvgScene {
    PointSet shape;
    std::vector<Box> windows;     // drawn as outlines
    std::vector<Point> glue_line; // drawn as dots
};

/// One unit square (class "cell") per shape point, y axis pointing up.
std::string render_svg(const SvgScene& scene);

}  // namespace fractile
