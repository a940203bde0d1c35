#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ca/automaton.hpp"

namespace ca {

enum class Verdict { True, False, Undecided };

struct DecisionResult {
    std::string property;  // "injective" | "surjective" | "reversible"
    Verdict verdict = Verdict::Undecided;
    std::string detail;
    // Non-injectivity: two distinct spatially periodic configurations with
    // the same image. Non-surjectivity: an orphan word.
    std::optional<std::pair<Configuration, Configuration>> collision;
    std::optional<std::vector<Symbol>> orphan;
};

struct ExponentReport {
    std::string direction;  // "left" | "right"
    int n = 0;
    int lambda = 0;
    // lambda/n as an exact pair (display helper; exact rationals proper live
    // in the mult module where they matter).
    std::string method;
    bool undecided = false;
    std::string note;
};

enum class LyapMethod { Enumerate, Propagate };

struct AnalysisCaps {
    std::uint64_t pair_graph_nodes = 10'000'000;
    std::uint64_t subset_states = 2'000'000;
    std::uint64_t enumeration = 10'000'000;  // assignments / pairs tried
};

// Pair-graph (de Bruijn product) decision: F is non-injective on the full
// shift iff some non-diagonal pair state lies on a cycle of the compatible-
// extension graph. The certificate traces such a cycle into two periodic
// configurations with equal images.
DecisionResult is_injective(const CellularAutomaton& f, const AnalysisCaps& caps = {});

// Subset-automaton orphan search: F is surjective iff the empty set is not
// reachable from the full state set when consuming output symbols. The path
// to the empty set is an orphan word (balance: surjective CA give every
// word equally many preimages; an orphan has none).
DecisionResult is_surjective(const CellularAutomaton& f, const AnalysisCaps& caps = {});

// Count length-(|w| + window - 1) preimage words of w (balance diagnostic).
std::uint64_t count_preimages(const CellularAutomaton& f, std::span<const Symbol> w);

// Growing-window search for the inverse local rule of an injective CA.
CellularAutomaton inverse(const CellularAutomaton& f, int radius_cap = 6);

// Exact finite-horizon perturbation radius: the least s >= 0 such that no
// change of x strictly beyond distance s on the given side can affect the
// other half-line within n steps.
ExponentReport lambda_finite(const CellularAutomaton& f, const Configuration& x, int n,
                             std::string_view direction,
                             LyapMethod method = LyapMethod::Enumerate,
                             const AnalysisCaps& caps = {});

// Max over translates of x (finitely many distinct values; exact).
ExponentReport lambda_bar_finite(const CellularAutomaton& f, const Configuration& x, int n,
                                 std::string_view direction,
                                 LyapMethod method = LyapMethod::Enumerate,
                                 const AnalysisCaps& caps = {});

// Max over all configurations (full shift), by joint enumeration over the
// dependence window with early exit; caps give honest "undecided".
ExponentReport max_lambda_finite(const CellularAutomaton& f, int n, std::string_view direction,
                                 const AnalysisCaps& caps = {});

struct FrontTrace {
    std::vector<std::int64_t> positions;  // extremal disagreement per step
    double slope = 0.0;                   // fit over the last half
};

// Track the rightmost (direction "right") or leftmost disagreement of the
// orbits of x and y. max_speed bounds the search window growth per step.
using Stepper = std::function<Configuration(const Configuration&)>;
FrontTrace front_speed(const Stepper& stepf, const Configuration& x, const Configuration& y,
                       int n, std::string_view direction, int max_speed = 4);
FrontTrace front_speed(const CellularAutomaton& f, const Configuration& x,
                       const Configuration& y, int n, std::string_view direction);

}  // namespace ca
