#include "fractile/svg.hpp"

#include <algorithm>
#include <sstream>

namespace fractile {

namespace {

constexpr const char* kShapeFill = "#3b4a5a";
constexpr const char* kWindowStroke = "#d62728";
constexpr const char* kGlueFill = "#ff7f0e";

}  // namespace

std::string render_svg(const SvgScene& scene) {
    Box view{0, 0, 0, 0};
    bool first = true;
    auto grow = [&](Point p) {
        if (first) {
            view = {p.x, p.y, p.x, p.y};
            first = false;
            return;
        }
        view.x0 = std::min(view.x0, p.x);
        view.y0 = std::min(view.y0, p.y);
        view.x1 = std::max(view.x1, p.x);
        view.y1 = std::max(view.y1, p.y);
    };
    for (Point p : scene.shape) grow(p);
    for (const Box& b : scene.windows) {
        grow({b.x0, b.y0});
        grow({b.x1, b.y1});
    }
    for (Point p : scene.glue_line) grow(p);

    const Coord w = view.width() + 2;
    const Coord h = view.height() + 2;
    // Lattice y grows upward; SVG y grows downward.
    auto top = [&](Coord y, Coord height) { return view.y1 + 1 - y - height + 1; };
    auto left = [&](Coord x) { return x - view.x0 + 1; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << ' ' << h << "\" width=\"" << w * 8
       << "\" height=\"" << h * 8 << "\">\n";
    os << "<g fill=\"" << kShapeFill << "\">\n";
    for (Point p : scene.shape) {
        os << "<rect class=\"cell\" x=\"" << left(p.x) << "\" y=\"" << top(p.y, 1) << "\" width=\"1\" height=\"1\"/>\n";
    }
    os << "</g>\n";
    if (!scene.windows.empty()) {
        os << "<g fill=\"none\" stroke=\"" << kWindowStroke << "\" stroke-width=\"0.15\">\n";
        for (const Box& b : scene.windows) {
            os << "<rect class=\"window\" x=\"" << left(b.x0) << "\" y=\"" << top(b.y0, b.height()) << "\" width=\""
               << b.width() << "\" height=\"" << b.height() << "\"/>\n";
        }
        os << "</g>\n";
    }
    if (!scene.glue_line.empty()) {
        os << "<g fill=\"" << kGlueFill << "\">\n";
        for (Point p : scene.glue_line) {
            os << "<circle class=\"glue\" cx=\"" << left(p.x) << ".5\" cy=\"" << top(p.y, 1) << ".5\" r=\"0.3\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace fractile
