#include "fractile/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fractile/dssf.hpp"
#include "fractile/error.hpp"
#include "fractile/io.hpp"
#include "fractile/movies.hpp"
#include "fractile/refuter.hpp"
#include "fractile/svg.hpp"

namespace fractile {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kNoResult = 3;
constexpr int kInternal = 4;

constexpr Coord kDefaultCellCap = Coord{1} << 22;

Coord cell_cap() {
    if (const char* env = std::getenv("FRACTILE_CELL_CAP")) {
        try {
            const long long v = std::stoll(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
        throw Error("FRACTILE_CELL_CAP must be a positive integer");
    }
    return kDefaultCellCap;
}

void check_cap(Coord side, const std::string& hint) {
    const Coord cap = cell_cap();
    if (side > cap || side * side > cap) {
        throw Error("rendering " + std::to_string(side) + "x" + std::to_string(side) + " cells exceeds the cap of " +
                    std::to_string(cap) + "; " + hint);
    }
}

Coord rendered_side(const Generator& gen, int s, Coord c) {
    if (s < 1) throw Error("stage must be at least 1");
    if (c < 1) throw Error("scale must be at least 1");
    return checked_mul(c, checked_pow(gen.g(), s));
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
}

SelectionPolicy parse_policy(const std::string& name) {
    if (name == "uniform") return SelectionPolicy::uniform;
    if (name == "lexicographic") return SelectionPolicy::lexicographic;
    throw Error("unknown policy '" + name + "'");
}

std::string bridge_line(const std::vector<Bridge>& bs) {
    std::ostringstream os;
    for (std::size_t k = 0; k < bs.size(); ++k) {
        const auto& b = bs[k];
        os << (k ? ", " : "") << (b.kind == BridgeKind::horizontal ? "h y=" : "v x=") << b.index << ' '
           << (b.connected ? "connected" : "disconnected");
    }
    return bs.empty() ? "none" : os.str();
}

int cmd_analyze(const std::string& path, std::ostream& out) {
    const Generator gen = parse_generator(read_file(path));
    const auto bs = bridges(gen.cells());
    const auto counts = count_bridges(bs);
    const auto ch = is_tree_fractal_generator(gen);
    out << "generator: g=" << gen.g() << ", " << gen.cells().size() << " cells\n";
    out << "connected: " << (is_connected(gen.cells()) ? "yes" : "no") << '\n';
    out << "tree: " << (is_tree(gen.cells()) ? "yes" : "no") << '\n';
    out << "bridges: " << bridge_line(bs) << '\n';
    out << "nhb: " << counts.horizontal << "\nnvb: " << counts.vertical << '\n';
    out << "tree-fractal: " << (ch ? "yes" : "no (" + ch.diagnosis + ")") << '\n';
    out << "piers:";
    const auto ps = piers(gen);
    for (std::size_t k = 0; k < ps.size(); ++k) {
        out << (k ? ", " : " ") << to_string(ps[k].position) << to_char(ps[k].pointing) << '/'
            << to_string(ps[k].taxonomy);
    }
    out << (ps.empty() ? " none\n" : "\n");
    if (!ch) return kNegative;
    const PierAnchor a = select_pier_anchor(gen);
    out << "anchor: pier " << to_string(a.pier.position) << ", (e,f)=" << to_string(a.anchor) << ", glue side "
        << to_char(a.glue_side) << ", bridge offset " << a.bridge_offset << '\n';
    return kOk;
}

std::string render_shape(const PointSet& shape, Coord side, const std::string& format) {
    if (format == "svg") return render_svg({shape, {}, {}});
    return grid_text(shape, side);
}

int cmd_stages(const std::string& path, int s, Coord c, const std::string& format, const std::string& out_path,
               std::ostream& out) {
    const Generator gen = parse_generator(read_file(path));
    const Coord side = rendered_side(gen, s, c);
    check_cap(side, "try a smaller --stage or --scale");
    emit(out, out_path, render_shape(scale(stage(gen, s), c), side, format));
    return kOk;
}

int cmd_census(int g, bool allow_large, unsigned threads, std::ostream& out) {
    CensusOptions opts;
    opts.g = g;
    opts.allow_large = allow_large;
    opts.threads = threads;
    opts.predicate = [](const Generator& gen) { return piers(gen).size() >= 2; };
    const CensusStats st = census(opts);
    out << "g: " << st.g << '\n';
    out << "candidates: " << st.candidates << '\n';
    out << "valid: " << st.valid << '\n';
    out << "tree-fractal: " << st.tree_fractal << '\n';
    out << "tree-fractal with >= 2 piers: " << st.predicate_tree_fractal << '\n';
    for (const auto& [tax, n] : st.pier_taxonomy) out << "piers " << to_string(tax) << ": " << n << '\n';
    for (const auto& gen : st.tree_fractal_generators) {
        out << "generator mask " << gen.mask() << '\n' << grid_text(gen.cells(), gen.g());
    }
    return kOk;
}

struct RunFlags {
    Coord size = 16;
    std::vector<Coord> region;
    std::string policy = "uniform";
    std::uint64_t seed = 0;
    std::size_t max_steps = static_cast<std::size_t>(-1);
};

Box region_of(const RunFlags& f) {
    if (!f.region.empty()) {
        if (f.region.size() != 4) throw Error("--region takes x0 y0 x1 y1");
        return {f.region[0], f.region[1], f.region[2], f.region[3]};
    }
    if (f.size < 1) throw Error("--size must be positive");
    return Box::square({0, 0}, f.size);
}

int cmd_simulate(const std::string& tas, const RunFlags& flags, const std::string& gen_path, int s, Coord c,
                 const std::string& out_path, std::ostream& out) {
    const TileSystem sys = parse_tas(read_file(tas));
    Box region = region_of(flags);
    std::optional<PointSet> target;
    if (!gen_path.empty()) {
        const Generator gen = parse_generator(read_file(gen_path));
        const Coord side = rendered_side(gen, s, c);
        if (flags.region.empty()) region = Box::square({0, 0}, side);
        target = scaled_fractal_in(gen, c, region);
    }
    const auto seq = run(sys, {region, parse_policy(flags.policy), flags.seed, flags.max_steps});
    out << "steps: " << seq.events.size() << '\n';
    out << "tiles: " << seq.result.size() << '\n';
    out << "exhausted: " << (seq.exhausted ? "yes" : "no") << '\n';
    out << "clipped frontier: " << seq.clipped_frontier.size() << '\n';
    out << "result sha256: " << assembly_digest(seq.result) << '\n';
    if (!out_path.empty()) {
        std::ostringstream os;
        for (const auto& ev : seq.events) {
            os << ev.index << ' ' << ev.position.x << ' ' << ev.position.y << ' ' << sys.tiles().at(ev.tile).name << '\n';
        }
        write_file(out_path, os.str());
    }
    if (!target) return kOk;
    const auto verdict = check_strict_self_assembly(sys, *target, region);
    if (verdict.kind == StrictnessVerdictKind::violation) {
        out << "strict: VIOLATION at " << to_string(*verdict.witness) << " (" << verdict.detail << ")\n";
        return kNegative;
    }
    out << "strict: INCOMPLETE-OK (" << verdict.detail << ")\n";
    return kOk;
}

int cmd_movie(const std::string& tas, const RunFlags& flags, const std::vector<Coord>& win, bool bonds_only,
              std::ostream& out) {
    if (win.size() != 3) throw Error("--window takes x y side");
    const TileSystem sys = parse_tas(read_file(tas));
    const auto seq = run(sys, {region_of(flags), parse_policy(flags.policy), flags.seed, flags.max_steps});
    const auto movie = record_movie(seq, ClosedWindow::square({win[0], win[1]}, win[2]));
    out << dump_movie(bonds_only ? bond_forming(movie, seq.result).events : movie.events);
    return kOk;
}

int cmd_refute(const std::string& gen_path, const std::string& tas, Coord c, int max_stage, std::uint64_t seed,
               const std::string& policy, const std::string& out_path, std::ostream& out) {
    const Generator gen = parse_generator(read_file(gen_path));
    const TileSystem sys = parse_tas(read_file(tas));
    if (auto ch = is_tree_fractal_generator(gen); !ch) {
        out << "characterization failed: " << ch.diagnosis << '\n';
        return kNegative;
    }
    RefutationConfig cfg{gen, c, sys, max_stage, std::nullopt, parse_policy(policy), seed};
    const auto outcome = refute(cfg);
    if (const auto* cert = std::get_if<SpliceCertificate>(&outcome)) {
        out << "certificate: stages " << cert->i << " and " << cert->j << ", c-vec " << to_string(cert->c_vec)
            << ", " << cert->spliced_domain_diff.size() << " witness points, replay "
            << (cert->replay_ok ? "ok" : "failed") << '\n';
        emit(out, out_path, write_certificate(*cert, sys.tiles()));
        return kOk;
    }
    const auto& report = std::get<NoMatchReport>(outcome);
    out << "no match up to stage " << max_stage << ": " << report.distinct.size() << " distinct submovies\n";
    emit(out, out_path, write_report(report));
    return kNoResult;
}

int cmd_render(const std::string& path, int s, Coord c, const std::string& out_path, std::ostream& out) {
    const Generator gen = parse_generator(read_file(path));
    const Coord side = rendered_side(gen, s, c);
    check_cap(side, "try a smaller --stage or --scale");
    SvgScene scene{scale(stage(gen, s), c), {}, {}};
    if (is_tree_fractal_generator(gen)) {
        const PierAnchor a = select_pier_anchor(gen);
        for (int k = 2; k <= s; ++k) {
            const WindowSpec spec{c, k, gen.g(), a.anchor.x, a.anchor.y, a.pier.position.x, a.pier.position.y};
            scene.windows.push_back(window(spec).bounds());
            for (Point p : glue_line_cells(gen.g(), c, k, a)) scene.glue_line.push_back(p);
        }
    }
    emit(out, out_path, render_svg(scene));
    return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"fractile: tree fractals, tile assembly and window-movie splicing"};
    app.require_subcommand(1);

    std::string gen_path, tas_path, out_path, format = "text", policy = "uniform";
    int s = 1, max_stage = 6, g = 2;
    Coord c = 1;
    std::uint64_t seed = 0;
    bool allow_large = false, bonds_only = false;
    unsigned threads = 0;
    RunFlags run_flags;
    std::vector<Coord> win;

    auto* analyze = app.add_subcommand("analyze", "characterize a generator");
    analyze->add_option("generator", gen_path, ".gen file")->required();

    auto* stages = app.add_subcommand("stages", "render a stage of the fractal");
    stages->add_option("generator", gen_path, ".gen file")->required();
    stages->add_option("--stage", s, "stage s >= 1")->default_val(1);
    stages->add_option("--scale", c, "scale factor c >= 1")->default_val(1);
    stages->add_option("--format", format, "text or svg")->check(CLI::IsMember({"text", "svg"}));
    stages->add_option("--out", out_path, "output file");

    auto* scale_cmd = app.add_subcommand("scale", "render a generator scaled by c");
    scale_cmd->add_option("generator", gen_path, ".gen file")->required();
    scale_cmd->add_option("--scale", c, "scale factor c >= 1")->required();
    scale_cmd->add_option("--format", format, "text or svg")->check(CLI::IsMember({"text", "svg"}));
    scale_cmd->add_option("--out", out_path, "output file");

    auto* census_cmd = app.add_subcommand("census", "enumerate all generators of side g");
    census_cmd->add_option("--g", g, "side length")->default_val(2);
    census_cmd->add_flag("--allow-large", allow_large, "permit g = 4");
    census_cmd->add_option("--threads", threads, "worker threads (0: all cores)");

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("--size", run_flags.size, "square region [0,size)^2")->default_val(16);
        cmd->add_option("--region", run_flags.region, "x0 y0 x1 y1")->expected(4);
        cmd->add_option("--policy", run_flags.policy, "uniform or lexicographic")
            ->check(CLI::IsMember({"uniform", "lexicographic"}));
        cmd->add_option("--seed", run_flags.seed, "policy seed");
        cmd->add_option("--max-steps", run_flags.max_steps, "step limit");
    };

    auto* simulate = app.add_subcommand("simulate", "run a tile system in a bounded region");
    simulate->add_option("tas", tas_path, ".tas file")->required();
    add_run_flags(simulate);
    simulate->add_option("--generator", gen_path, "check strict self-assembly of this fractal");
    simulate->add_option("--stage", s, "stage of the target")->default_val(3);
    simulate->add_option("--scale", c, "scale of the target")->default_val(1);
    simulate->add_option("--out", out_path, "write the sequence here");

    auto* movie = app.add_subcommand("movie", "dump the window movie of a run");
    movie->add_option("tas", tas_path, ".tas file")->required();
    add_run_flags(movie);
    movie->add_option("--window", win, "x y side")->expected(3)->required();
    movie->add_flag("--bond-forming", bonds_only, "keep only bond-forming events");

    auto* refute_cmd = app.add_subcommand("refute", "search for a splice certificate");
    refute_cmd->add_option("generator", gen_path, ".gen file")->required();
    refute_cmd->add_option("tas", tas_path, ".tas file")->required();
    refute_cmd->add_option("--scale", c, "scale factor c")->default_val(1);
    refute_cmd->add_option("--max-stage", max_stage, "largest window stage")->default_val(6);
    refute_cmd->add_option("--seed", seed, "policy seed")->default_val(0);
    refute_cmd->add_option("--policy", policy, "uniform or lexicographic")
        ->check(CLI::IsMember({"uniform", "lexicographic"}));
    refute_cmd->add_option("--out", out_path, "certificate or report file");

    auto* render = app.add_subcommand("render", "SVG of a stage with the anchor windows");
    render->add_option("generator", gen_path, ".gen file")->required();
    render->add_option("--stage", s, "stage s >= 1")->default_val(3);
    render->add_option("--scale", c, "scale factor c >= 1")->default_val(1);
    render->add_option("--out", out_path, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*analyze) return cmd_analyze(gen_path, out);
        if (*stages) return cmd_stages(gen_path, s, c, format, out_path, out);
        if (*scale_cmd) return cmd_stages(gen_path, 1, c, format, out_path, out);
        if (*census_cmd) return cmd_census(g, allow_large, threads, out);
        if (*simulate) return cmd_simulate(tas_path, run_flags, gen_path, s, c, out_path, out);
        if (*movie) return cmd_movie(tas_path, run_flags, win, bonds_only, out);
        if (*refute_cmd) return cmd_refute(gen_path, tas_path, c, max_stage, seed, policy, out_path, out);
        if (*render) return cmd_render(gen_path, s, c, out_path, out);
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace fractile
