#pragma once

#include <iosfwd>
#include <string>

#include "ca/automaton.hpp"
#include "ca/tiles.hpp"

namespace ca::io {

// Rule file ("ca v1"): UTF-8, line-based, '#' comments. Lines:
//   ca v1
//   alphabet <s1> <s2> ...
//   memory <int>
//   anticipation <int>
//   <w1> ... <wk> -> <s>     (one per window; gaps filled by the default)
//   default <s>              (optional)
CellularAutomaton parse_rule_file(std::istream& in);
CellularAutomaton parse_rule_file_text(const std::string& text);

// Canonical serialization: full table in lexicographic window order, no
// default line. parse(serialize(ca)) reproduces the table exactly.
std::string serialize(const CellularAutomaton& f);

// Tile file ("tiles v1"): optional "colors <c1> <c2> ..." line, then
// "tile <id> <N> <E> <S> <W>" lines.
tiles::TileSet parse_tile_file(std::istream& in);
tiles::TileSet parse_tile_file_text(const std::string& text);
std::string serialize(const tiles::TileSet& ts);

// Command-line configuration syntax "LEFT|CENTER|RIGHT": each part a word
// over the alphabet (single characters, or comma-separated symbol names);
// the center may be empty. The center starts at position 0.
Configuration parse_config_spec(const Alphabet& alpha, const std::string& spec);

}  // namespace ca::io
