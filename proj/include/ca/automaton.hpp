#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ca/alphabet.hpp"
#include "ca/configuration.hpp"

namespace ca {

inline constexpr std::uint64_t kDefaultTableCap = 100'000'000;  // table entries

// A CA given by memory m <= a (anticipation) and a total local rule on
// windows of length a-m+1. F(x)[i] = f(x[i+m], ..., x[i+a]). The rule is
// either a dense table indexed by the mixed-radix window code (leftmost
// symbol most significant) or, past the table cap, an on-demand evaluator.
class CellularAutomaton {
public:
    using Rule = std::function<Symbol(std::span<const Symbol>)>;

    CellularAutomaton(Alphabet alpha, int memory, int anticipation, std::vector<Symbol> table);
    static CellularAutomaton lazy(Alphabet alpha, int memory, int anticipation, Rule rule);

    const Alphabet& alphabet() const { return alpha_; }
    int memory() const { return m_; }
    int anticipation() const { return a_; }
    int window_size() const { return a_ - m_ + 1; }
    bool radius_half() const { return m_ == 0 && a_ == 1; }

    bool has_table() const { return !table_.empty(); }
    const std::vector<Symbol>& table() const;
    // Force a dense table (throws CapExceeded past cap).
    CellularAutomaton materialized(std::uint64_t cap = kDefaultTableCap) const;

    Symbol local(std::span<const Symbol> w) const;
    // Local rule extended to words: output length |w| - (a-m).
    std::vector<Symbol> apply_word(std::span<const Symbol> w) const;

    std::uint64_t table_size() const;  // |A|^(a-m+1), saturating

private:
    CellularAutomaton(Alphabet alpha, int memory, int anticipation);

    Alphabet alpha_;
    int m_, a_;
    std::vector<Symbol> table_;
    Rule rule_;
};

enum class ComposeMode { Eager, Lazy };

// Identity CA (m = a = 0) and the shift sigma (m = 0, a = 1, f(a,b) = b).
CellularAutomaton identity_ca(Alphabet alpha);
CellularAutomaton shift_ca(Alphabet alpha);

// g after f; memory/anticipation add. Eager mode materializes the table
// (CapExceeded past cap); lazy mode defers evaluation.
CellularAutomaton compose(const CellularAutomaton& g, const CellularAutomaton& f,
                          ComposeMode mode = ComposeMode::Eager,
                          std::uint64_t cap = kDefaultTableCap);

// Componentwise action on the product alphabet A1 x A2 (symbol "s1*s2").
CellularAutomaton product(const CellularAutomaton& c1, const CellularAutomaton& c2);
Alphabet product_alphabet(const Alphabet& a1, const Alphabet& a2);
// Componentwise symbol codec for product alphabets built as above.
Symbol product_symbol(const Alphabet& a1, const Alphabet& a2, Symbol s1, Symbol s2);
std::pair<Symbol, Symbol> product_split(const Alphabet& a1, const Alphabet& a2, Symbol s);

// Mirror image: mirror(F)(x) = reverse(F(reverse(x))). Swaps the roles of
// the two directions, so left-exponent machinery answers right questions.
CellularAutomaton mirror(const CellularAutomaton& f);
Configuration mirror(const Configuration& x);

Configuration step(const CellularAutomaton& f, const Configuration& x);

struct SpaceTimeDiagram {
    std::vector<Configuration> rows;  // rows[t] = F^t(x)
};

SpaceTimeDiagram iterate(const CellularAutomaton& f, const Configuration& x, int t);

// ASCII rendering of a window of the diagram, one row per time step.
std::string render(const SpaceTimeDiagram& d, std::int64_t lo, std::int64_t hi);

}  // namespace ca
