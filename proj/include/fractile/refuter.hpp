#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fractile/atam.hpp"
#include "fractile/dssf.hpp"
#include "fractile/movies.hpp"
#include "fractile/windows.hpp"

namespace fractile {

/// T^(2c) * (2c)! where T counts distinct positive-strength glues: every glue
/// slot on both sides of the c cut edges of a glue line, in every order.
/// Nothing on overflow. Throws Error for c < 1.
std::optional<std::uint64_t> glue_line_bound(const TileSystem& sys, Coord c);
std::optional<std::uint64_t> glue_line_bound(std::uint64_t distinct_glues, Coord c);

/// Extra shift that lines up the glue lines of w_i + t and w_j. Along the glue
/// side it is the bridge offset times c times sum_{k=i-2}^{j-3} g^k; for an
/// east or north glue side it also crosses the margin m.
Point alignment_offset(int g, Coord c, int i, int j, const PierAnchor& anchor);

/// Cells of w_s = W^c_s(e,f,p,q) that touch its glue side along the glue line,
/// in increasing coordinate order (c cells).
std::vector<Point> glue_line_cells(int g, Coord c, int s, const PierAnchor& anchor);

struct RefutationConfig {
    Generator generator;
    Coord c = 1;
    TileSystem system;
    int max_stage = 6;
    std::optional<Box> region;  // default: [0, c g^max_stage)^2
    SelectionPolicy policy = SelectionPolicy::uniform;
    std::uint64_t seed = 0;
};

struct SpliceCertificate {
    std::string generator_digest;
    Coord c = 1;
    std::uint32_t temperature = 1;
    SelectionPolicy policy = SelectionPolicy::uniform;
    std::uint64_t policy_seed = 0;
    PierAnchor pier_anchor;
    int i = 0;
    int j = 0;
    WindowSpec w_i;
    WindowSpec w_j;
    Point translation;
    Point alignment;
    Point c_vec;
    SeedSide seed_side = SeedSide::outside;
    BondFormingSubmovie submovie;          // B(M) of w_i
    std::vector<SequenceEvent> spliced;    // the spliced sequence
    std::vector<Point> spliced_domain_diff;  // dom(result) xor (T^c within the region)
    bool replay_ok = false;
    std::string replay_digest;
};

struct WindowRecord {
    int s = 0;
    WindowSpec spec;
    BondFormingSubmovie submovie;
    std::size_t movie_class = 0;  // index into NoMatchReport::distinct
    bool holds_seed = false;
};

struct NoMatchReport {
    std::string generator_digest;
    Coord c = 1;
    int max_stage = 0;
    std::vector<WindowRecord> windows;
    /// One representative per class of submovies equal up to translation.
    std::vector<BondFormingSubmovie> distinct;
    /// Pairs that matched but were skipped, with the reason.
    std::vector<std::string> notes;
};

using RefutationOutcome = std::variant<SpliceCertificate, NoMatchReport>;

/// Runs the system, records the bond-forming submovies of w_2..w_max_stage and
/// splices the first usable matching pair. Throws Error("characterization
/// failed: ...") and Error("region too small").
RefutationOutcome refute(const RefutationConfig& cfg);

/// The points of T^c (the c-scaled fractal) inside the region.
PointSet scaled_fractal_in(const Generator& gen, Coord c, const Box& region);

}  // namespace fractile
