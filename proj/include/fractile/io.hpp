#pragma once

#include <string>
#include <string_view>

#include "fractile/atam.hpp"
#include "fractile/refuter.hpp"

namespace fractile {

/// Whole file as a string. Throws Error("cannot read <path>").
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// .tas: `temperature <t>`, `tile <name> N=<label>:<s> E=.. S=.. W=..` (`-` is
/// the null glue) and `seed <x> <y> <name>` lines. Blank lines and lines
/// starting with '#' are ignored. Throws ParseError.
TileSystem parse_tas(std::string_view text);
/// Canonical form: temperature, tiles in id order, seeds in (y, x) order.
std::string write_tas(const TileSystem& sys);

std::string sha256_hex(std::string_view data);
/// Digest of the sorted `x y name` placement list.
std::string assembly_digest(const Assembly& alpha);

std::string to_string(SelectionPolicy p);

std::string write_certificate(const SpliceCertificate& cert, const TileSet& tiles);
std::string write_report(const NoMatchReport& report);

}  // namespace fractile
