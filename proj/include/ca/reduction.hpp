#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ca/analysis.hpp"
#include "ca/automaton.hpp"
#include "ca/tiles.hpp"

namespace ca::reduction {

// The two auxiliary arrow-marked tile rows used to attach defect arrows to a
// 2-way deterministic base set. Edge colors are pairs (base color, arrow
// flags): horizontal edges may carry a left-arrow crossing, vertical edges a
// down-arrow crossing, so that every arrow head meets its tail in any valid
// patch. Row one: blank, left-through, down-through, both-through. Row two:
// left-head, left-through + down-tail, down-through, left-tail + down-head.
struct ArrowTileSets {
    tiles::TileSet row1;  // first tile is the blank tile
    tiles::TileSet row2;
};

ArrowTileSets build_arrow_tilesets();

// The immortality-problem automaton built on a 2-way deterministic tile set
// T: pairs T with row1 and the forced complement of T with row2 to get a
// complete set A1, takes the induced tile CA G1, runs it on the upper layer
// of A1 x {0,1,2}, and composes with the involutions J1 (value swap 1<->2),
// J2 (width-2 borrow rule) and H (lower-bit flip under arrow tiles). The
// marked subset B is (T x blank) x {0}: F is (1,5)-locally immortal w.r.t.
// B exactly when T tiles the plane.
struct ImmortalityCA {
    CellularAutomaton f;        // F = H o (id x J2) o (id x J1) o G
    std::vector<bool> B;        // over f's alphabet
    Alphabet a1;                // completed arrow-tile alphabet
    Alphabet a2;                // {0,1,2}
    CellularAutomaton g1;       // tile CA on a1
    std::vector<bool> arrow1;   // over a1: true iff arrow tile
};

ImmortalityCA build_immortality_ca(const tiles::TileSet& T);

// The bouncing-particle automaton S on {0,|,<,>,v,w}: walls | never move;
// fast arrows travel 2 cells per step, slow arrows 1, and an arrow meeting
// a wall turns into the arrow of the same speed and opposite direction.
// Alphabet glyphs: 0 empty, I wall, L/R fast left/right, l/r slow.
// Memory -2, anticipation 2; defined by an explicit first-match rule list
// with the identity as default. Meaningful on configurations with at most
// one arrow (and on the evenly-spaced unfoldings used by the belt stepper).
CellularAutomaton build_particle_ca();

// Direction flip on the particle alphabet: swaps L<->R and l<->r.
Symbol particle_flip(const Alphabet& a1, Symbol s);
bool is_particle(const Alphabet& a1, Symbol s);

struct StructuralCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

// A composed system F (on pairs-with-particle-track configurations) or F'
// (on the conveyor-belt full shift). The composed map is not stored as a
// rule table -- its exact dependence is unbounded through belt junctions --
// so the bundle carries a configuration-level stepper plus the structural
// reversibility evidence gathered at build time.
struct ReductionBundle {
    std::string target;          // "sofic" | "fullshift"
    Alphabet alpha;              // product alphabet of the composed system
    Alphabet layer1;             // particle alphabet (sofic) or belt alphabet
    Alphabet particle_alpha;     // the 6-symbol particle alphabet
    Alphabet a2;                 // inner alphabet
    CellularAutomaton particle;  // S
    CellularAutomaton inner;     // G
    std::vector<bool> B;         // over a2
    std::vector<StructuralCheck> checks;
    Stepper step;                // one application of the composed map

    bool all_checks_pass() const;
};

// Composed system F = F1 o G2 o F2 on pairs (particle layer, inner layer):
// G2 advances the inner layer by G^10; F1 applies S to the particle layer;
// F2 swaps "R 0" <-> "l I" at i when the inner layer fails the local
// immortality condition (G^j(x2)[i] outside B for some 0<=j<=5, or
// G^j(x2)[i+1] outside B for some 5<=j<=10). Inputs must carry at most one
// particle, with particle-free backgrounds.
ReductionBundle build_sofic_F(const CellularAutomaton& G, const std::vector<bool>& B);

// Conveyor-belt version F' = F1' o G2' o F2' on the full shift over
// (top, bottom, mark) x inner: maximal blocks "+...+ [particle] -...-" act
// as belts gluing the top track to the reversed, direction-flipped bottom
// track; F1' runs S on the glued loop (so arrows wrap around at junctions),
// F2' applies the F2 swap on each track guarded by mark[i+1] = '-'.
ReductionBundle build_fullshift_F(const CellularAutomaton& G, const std::vector<bool>& B);

// Layer plumbing. pair_config zips two configurations positionwise into the
// bundle's product alphabet; layer projections invert it.
Configuration pair_config(const ReductionBundle& b, const Configuration& x1,
                          const Configuration& x2);
Configuration layer1_of(const ReductionBundle& b, const Configuration& x);
Configuration layer2_of(const ReductionBundle& b, const Configuration& x);

// Full-shift embedding of a particle-layer/inner-layer pair on one
// bi-infinite belt: top track carries x1, bottom track is empty, marks are
// '+' left of the particle and '-' from it onward ('-' everywhere if x1 has
// no particle).
Configuration belt_config(const ReductionBundle& b, const Configuration& x1,
                          const Configuration& x2);
// Top/bottom track and mark projections of a full-shift configuration.
Configuration belt_top(const ReductionBundle& b, const Configuration& x);
Configuration belt_bottom(const ReductionBundle& b, const Configuration& x);
std::string belt_marks(const ReductionBundle& b, const Configuration& x,
                       std::int64_t lo, std::int64_t hi);

struct SpeedReport {
    FrontTrace trace;
    double slope = 0.0;
    std::string classification;       // "fast" | "slow" | "inconclusive"
    bool witness_found = false;       // (1,5)-witness for the inner layer
    std::optional<int> empty_c_level; // least N with C(2N) empty, if searched
};

// The defect-speed experiment: drop a fast right arrow at the origin over a
// shared inner layer (a locally immortal one when available), track the
// rightmost disagreement front for n steps, and classify the slope against
// the bands >= 2 - tol ("fast") and <= 5/3 + tol ("slow"), tol = 0.1.
// When no witness exists within search bounds, also reports the least N
// with C(2N) empty, where C(n) collects inner configurations satisfying the
// diagonal condition G^(5i+j)(x)[i] in B for 0<=i<=n, 0<=j<=5.
SpeedReport speed_dichotomy_experiment(const ReductionBundle& bundle, int n);

}  // namespace ca::reduction
