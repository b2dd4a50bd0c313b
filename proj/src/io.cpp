#include "fractile/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <tuple>

#include <openssl/evp.h>

#include "fractile/error.hpp"

namespace fractile {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("cannot write " + path);
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream is{std::string(line)};
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

template <typename T>
T parse_number(const std::string& tok, std::size_t line, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("line " + std::to_string(line) + ": invalid " + what + " '" + tok + "'");
    }
    return value;
}

Glue parse_glue(const std::string& tok, std::size_t line) {
    if (tok == "-") return {};
    const auto colon = tok.rfind(':');
    if (colon == std::string::npos || colon == 0) {
        throw ParseError("line " + std::to_string(line) + ": expected <label>:<strength> or -, got '" + tok + "'");
    }
    return {tok.substr(0, colon), parse_number<std::uint32_t>(tok.substr(colon + 1), line, "strength")};
}

std::string glue_text(const Glue& g) {
    if (g.is_null()) return "-";
    return g.label + ":" + std::to_string(g.strength);
}

}  // namespace

TileSystem parse_tas(std::string_view text) {
    std::optional<std::uint32_t> temperature;
    auto tiles = std::make_shared<TileSet>();
    std::vector<std::tuple<Point, std::string, std::size_t>> seeds;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (toks[0] == "temperature") {
            if (toks.size() != 2) throw ParseError(where + "expected temperature <int>");
            if (temperature) throw ParseError(where + "temperature given twice");
            temperature = parse_number<std::uint32_t>(toks[1], line_no, "temperature");
            if (*temperature < 1) throw ParseError(where + "temperature must be positive");
        } else if (toks[0] == "tile") {
            if (toks.size() != 6) throw ParseError(where + "expected tile <name> N=.. E=.. S=.. W=..");
            TileType t{toks[1], {}};
            const char sides[] = {'N', 'E', 'S', 'W'};
            for (int k = 0; k < 4; ++k) {
                const std::string& tok = toks[2 + k];
                if (tok.size() < 2 || tok[0] != sides[k] || tok[1] != '=') {
                    throw ParseError(where + "expected " + std::string(1, sides[k]) + "=<glue>");
                }
                t.glues[k] = parse_glue(tok.substr(2), line_no);
            }
            try {
                tiles->add(std::move(t));
            } catch (const Error& e) {
                throw ParseError(where + e.what());
            }
        } else if (toks[0] == "seed") {
            if (toks.size() != 4) throw ParseError(where + "expected seed <x> <y> <name>");
            seeds.emplace_back(Point{parse_number<Coord>(toks[1], line_no, "coordinate"),
                                     parse_number<Coord>(toks[2], line_no, "coordinate")},
                               toks[3], line_no);
        } else {
            throw ParseError(where + "unknown directive '" + toks[0] + "'");
        }
    }
    if (!temperature) throw ParseError("missing temperature line");
    if (seeds.empty()) throw ParseError("missing seed line");

    Assembly seed(tiles);
    for (const auto& [p, name, line] : seeds) {
        auto id = tiles->find(name);
        if (!id) throw ParseError("line " + std::to_string(line) + ": unknown tile '" + name + "'");
        try {
            seed.place(p, *id);
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(line) + ": seed " + e.what());
        }
    }
    try {
        return TileSystem::make(tiles, std::move(seed), *temperature);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

std::string write_tas(const TileSystem& sys) {
    std::ostringstream os;
    os << "temperature " << sys.temperature() << '\n';
    for (const auto& t : sys.tiles().types()) {
        os << "tile " << t.name << " N=" << glue_text(t.glue(Direction::N)) << " E=" << glue_text(t.glue(Direction::E))
           << " S=" << glue_text(t.glue(Direction::S)) << " W=" << glue_text(t.glue(Direction::W)) << '\n';
    }
    for (const auto& [p, id] : sys.seed().placements()) {
        os << "seed " << p.x << ' ' << p.y << ' ' << sys.tiles().at(id).name << '\n';
    }
    return os.str();
}

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 failed");
    }
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int k = 0; k < len; ++k) os << std::setw(2) << static_cast<int>(md[k]);
    return os.str();
}

std::string assembly_digest(const Assembly& alpha) {
    std::ostringstream os;
    for (const auto& [p, id] : alpha.placements()) os << p.x << ' ' << p.y << ' ' << alpha.tiles()->at(id).name << '\n';
    return sha256_hex(os.str());
}

std::string to_string(SelectionPolicy p) { return p == SelectionPolicy::uniform ? "uniform" : "lexicographic"; }

namespace {

void write_spec(std::ostream& os, const char* key, const WindowSpec& w) {
    const Point corner = window_corner(w);
    os << key << " s=" << w.s << " e=" << w.e << " f=" << w.f << " p=" << w.p << " q=" << w.q << " corner " << corner.x
       << ' ' << corner.y << " side " << window_side(w) << '\n';
}

}  // namespace

std::string write_certificate(const SpliceCertificate& cert, const TileSet& tiles) {
    std::ostringstream os;
    os << "certificate fractile 1\n";
    os << "generator-sha256 " << cert.generator_digest << '\n';
    os << "scale " << cert.c << '\n';
    os << "temperature " << cert.temperature << '\n';
    os << "policy " << to_string(cert.policy) << ' ' << cert.policy_seed << '\n';
    const auto& pa = cert.pier_anchor;
    os << "pier " << pa.pier.position.x << ' ' << pa.pier.position.y << ' ' << to_char(pa.pier.pointing) << ' '
       << to_string(pa.pier.taxonomy) << '\n';
    os << "anchor " << pa.anchor.x << ' ' << pa.anchor.y << '\n';
    os << "glue-side " << to_char(pa.glue_side) << '\n';
    os << "bridge-offset " << pa.bridge_offset << '\n';
    os << "stages " << cert.i << ' ' << cert.j << '\n';
    write_spec(os, "window-i", cert.w_i);
    write_spec(os, "window-j", cert.w_j);
    os << "translation " << cert.translation.x << ' ' << cert.translation.y << '\n';
    os << "alignment " << cert.alignment.x << ' ' << cert.alignment.y << '\n';
    os << "c-vec " << cert.c_vec.x << ' ' << cert.c_vec.y << '\n';
    os << "seed-side " << (cert.seed_side == SeedSide::outside ? "outside" : "inside") << '\n';
    os << "submovie " << cert.submovie.size() << '\n' << dump_movie(cert.submovie.events);
    os << "domain-diff " << cert.spliced_domain_diff.size() << '\n';
    for (Point p : cert.spliced_domain_diff) os << p.x << ' ' << p.y << '\n';
    os << "sequence " << cert.spliced.size() << '\n';
    for (const auto& ev : cert.spliced) os << ev.position.x << ' ' << ev.position.y << ' ' << tiles.at(ev.tile).name << '\n';
    os << "replay " << (cert.replay_ok ? "ok" : "failed") << '\n';
    os << "replay-sha256 " << cert.replay_digest << '\n';
    return os.str();
}

std::string write_report(const NoMatchReport& report) {
    std::ostringstream os;
    os << "no-match fractile 1\n";
    os << "generator-sha256 " << report.generator_digest << '\n';
    os << "scale " << report.c << '\n';
    os << "max-stage " << report.max_stage << '\n';
    for (const auto& w : report.windows) {
        const Point corner = window_corner(w.spec);
        os << "window s=" << w.s << " corner " << corner.x << ' ' << corner.y << " side " << window_side(w.spec)
           << " events " << w.submovie.size() << " class " << w.movie_class << (w.holds_seed ? " seed" : "") << '\n';
    }
    os << "distinct " << report.distinct.size() << '\n';
    for (std::size_t k = 0; k < report.distinct.size(); ++k) {
        os << "class " << k << ' ' << report.distinct[k].size() << '\n' << dump_movie(report.distinct[k].events);
    }
    for (const auto& n : report.notes) os << "note " << n << '\n';
    return os.str();
}

}  // namespace fractile
