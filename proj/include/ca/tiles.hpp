#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ca/automaton.hpp"

namespace ca::tiles {

struct WangTile {
    std::string id;
    std::string n, e, s, w;  // edge colors
};

struct TileSet {
    std::vector<WangTile> tiles;
    // Declared color universe; when empty, the colors appearing in tiles.
    std::vector<std::string> declared_colors;

    std::vector<std::string> colors() const;
    int find(const std::string& id) const;  // -1 if absent
};

struct DeterminismFlags {
    bool ne = false, sw = false, two_way = false;
    // For each failing side, a violating tile pair.
    std::optional<std::pair<std::string, std::string>> ne_violation, sw_violation;
};

DeterminismFlags check_determinism(const TileSet& ts);

// ts plus the forced complement: missing (N,E) pairs are matched to missing
// (S,W) pairs in lexicographic color order. Original tiles keep their ids
// and come first; added tiles get ids "+<N>:<E>".
TileSet complete(const TileSet& ts);

// Radius-1/2 CA on the tiles of a complete 2-way deterministic set:
// f(a, b) = the unique c with c_N = a_S and c_E = b_W.
CellularAutomaton ca_from_tileset(const TileSet& ts);

struct Patch {
    // grid[r][c]; row r+1 lies below row r (south of it)
    std::vector<std::vector<std::string>> grid;
};

struct PatchReport {
    bool valid = true;
    std::string violation;  // first mismatching edge, if any
};

PatchReport check_valid_patch(const TileSet& ts, const Patch& patch);

// Uniformly random complete 2-way deterministic set on n_colors colors:
// one tile per (N,E) pair, (S,W) sides assigned by a random bijection.
TileSet random_complete_tileset(int n_colors, std::mt19937_64& rng);

struct ImmortalityWitness {
    Configuration x;       // spatially periodic, period length
    int spatial_period;
    int temporal_period;   // orbit cycle length through x
};

struct ImmortalityCaps {
    int period_cap = 3;          // spatial period lengths tried
    int time_cap = 2000;         // orbit steps before giving up on a cycle
    std::uint64_t candidates = 200'000;  // periodic words tried
};

// Bounded sound-but-incomplete search: follow orbits of spatially periodic
// configurations, detect the temporal cycle, and check the diagonal
// condition F^{iq+j}(x)[ip] in B along it. "nullopt" means none found
// within bounds, never nonexistence.
std::optional<ImmortalityWitness> search_local_immortality(
    const CellularAutomaton& f, const std::vector<bool>& B, int p, int q,
    const ImmortalityCaps& caps = {});

// Re-check a periodic witness against the raw definition for the given
// number of full temporal cycles, by plain configuration stepping.
bool verify_local_immortality(const CellularAutomaton& f, const std::vector<bool>& B,
                              const ImmortalityWitness& w, int p, int q, int cycles = 3);

}  // namespace ca::tiles
