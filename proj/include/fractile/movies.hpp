#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fractile/atam.hpp"
#include "fractile/error.hpp"
#include "fractile/windows.hpp"

namespace fractile {

/// A positive-strength glue presented across a window cut. The vertex is the
/// cell of the placing tile; `orientation` is the side of that tile.
struct GlueEvent {
    std::size_t step = 0;  // 0 for seed tiles, k+1 for sequence event k
    Point cell;
    Direction orientation = Direction::N;
    Glue glue;

    friend bool operator==(const GlueEvent&, const GlueEvent&) = default;
};

struct WindowMovie {
    ClosedWindow window;
    std::vector<GlueEvent> events;
};

struct BondFormingSubmovie {
    std::vector<GlueEvent> events;

    std::size_t size() const { return events.size(); }
    bool empty() const { return events.empty(); }
    friend bool operator==(const BondFormingSubmovie&, const BondFormingSubmovie&) = default;
};

/// Movie of the seed followed by every event of the sequence. Events of one
/// tile are ordered W, S, N, E (lexicographic on unit vectors).
WindowMovie record_movie(const TileSystem& sys, const std::vector<SequenceEvent>& events, const ClosedWindow& w);
WindowMovie record_movie(const AssemblySequence& seq, const ClosedWindow& w);

/// Keeps the events whose cut edge carries a positive bond in `result`.
BondFormingSubmovie bond_forming(const std::vector<GlueEvent>& events, const Assembly& result);
BondFormingSubmovie bond_forming(const WindowMovie& m, const Assembly& result);

/// True iff translating every event of a by c gives b, with equal glues,
/// orientations, order and grouping of simultaneous events.
bool matches_with_translation(const BondFormingSubmovie& a, const BondFormingSubmovie& b, Point c);

/// The nonzero c with a + c = b, if any. Empty movies never match.
std::optional<Point> match_up_to_translation(const BondFormingSubmovie& a, const BondFormingSubmovie& b);

/// One line per event: `step x y orientation label strength`.
std::string dump_movie(const std::vector<GlueEvent>& events);

/// A violated splice hypothesis: "zero translation", "enclosure",
/// "movie mismatch" or "seed placement".
class SpliceError : public Error {
public:
    explicit SpliceError(std::string hypothesis)
        : Error("splice precondition failed: " + hypothesis), hypothesis_(std::move(hypothesis)) {}
    const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
    std::string hypothesis_;
};

enum class SeedSide { outside, inside };

struct SpliceResult {
    AssemblySequence sequence;
    /// outside: result = a'_O + (a_I + c). inside: result = (a'_O - c) + a_I,
    /// the same assembly moved by -c so that the seed stays in place.
    SeedSide seed_side = SeedSide::outside;
    Assembly expected;
};

/// Interleaves the tiles outside w' with the tiles inside w moved by c, keyed on
/// the bond-forming movie steps, then drains both. The result is replayed and
/// compared with the expected union; a mismatch throws InternalError.
SpliceResult splice(const AssemblySequence& seq, const ClosedWindow& w, const ClosedWindow& w2, Point c);

}  // namespace fractile
