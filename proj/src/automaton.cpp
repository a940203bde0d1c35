#include "ca/automaton.hpp"

#include <algorithm>
#include <string>

namespace ca {

namespace {

std::uint64_t pow_sat(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > UINT64_MAX / b) return UINT64_MAX;
        r *= b;
    }
    return r;
}

}  // namespace

CellularAutomaton::CellularAutomaton(Alphabet alpha, int memory, int anticipation)
    : alpha_(std::move(alpha)), m_(memory), a_(anticipation) {
    if (m_ > a_) throw Error("memory must be <= anticipation");
}

CellularAutomaton::CellularAutomaton(Alphabet alpha, int memory, int anticipation,
                                     std::vector<Symbol> table)
    : CellularAutomaton(std::move(alpha), memory, anticipation) {
    std::uint64_t want = pow_sat(alpha_.size(), window_size());
    if ((std::uint64_t)table.size() != want) throw Error("rule table has wrong size");
    for (Symbol s : table)
        if (s < 0 || s >= alpha_.size()) throw Error("rule table symbol out of range");
    table_ = std::move(table);
}

CellularAutomaton CellularAutomaton::lazy(Alphabet alpha, int memory, int anticipation,
                                          Rule rule) {
    CellularAutomaton ca(std::move(alpha), memory, anticipation);
    ca.rule_ = std::move(rule);
    return ca;
}

const std::vector<Symbol>& CellularAutomaton::table() const {
    if (table_.empty()) throw Error("rule table not materialized");
    return table_;
}

std::uint64_t CellularAutomaton::table_size() const {
    return pow_sat(alpha_.size(), window_size());
}

CellularAutomaton CellularAutomaton::materialized(std::uint64_t cap) const {
    if (has_table()) return *this;
    std::uint64_t n = table_size();
    if (n > cap)
        throw CapExceeded("rule table would need " + std::to_string(n) +
                          " entries (cap " + std::to_string(cap) + ")");
    int w = window_size(), k = alpha_.size();
    std::vector<Symbol> table(n);
    std::vector<Symbol> win(w, 0);
    for (std::uint64_t code = 0; code < n; ++code) {
        table[code] = rule_(win);
        // Increment the mixed-radix window, rightmost digit fastest.
        for (int i = w - 1; i >= 0; --i) {
            if (++win[i] < k) break;
            win[i] = 0;
        }
    }
    return CellularAutomaton(alpha_, m_, a_, std::move(table));
}

Symbol CellularAutomaton::local(std::span<const Symbol> w) const {
    if ((int)w.size() != window_size()) throw Error("window too short");
    if (!table_.empty()) {
        std::uint64_t code = 0;
        for (Symbol s : w) code = code * alpha_.size() + s;
        return table_[code];
    }
    return rule_(w);
}

std::vector<Symbol> CellularAutomaton::apply_word(std::span<const Symbol> w) const {
    int win = window_size();
    if ((int)w.size() < win) throw Error("window too short");
    std::vector<Symbol> out;
    out.reserve(w.size() - win + 1);
    for (size_t i = 0; i + win <= w.size(); ++i) out.push_back(local(w.subspan(i, win)));
    return out;
}

CellularAutomaton identity_ca(Alphabet alpha) {
    int n = alpha.size();
    std::vector<Symbol> table(n);
    for (int i = 0; i < n; ++i) table[i] = i;
    return CellularAutomaton(std::move(alpha), 0, 0, std::move(table));
}

CellularAutomaton shift_ca(Alphabet alpha) {
    int n = alpha.size();
    std::vector<Symbol> table(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a * n + b] = b;
    return CellularAutomaton(std::move(alpha), 0, 1, std::move(table));
}

CellularAutomaton compose(const CellularAutomaton& g, const CellularAutomaton& f,
                          ComposeMode mode, std::uint64_t cap) {
    if (g.alphabet() != f.alphabet()) throw Error("compose: alphabet mismatch");
    int m = g.memory() + f.memory();
    int a = g.anticipation() + f.anticipation();
    CellularAutomaton gc = g, fc = f;
    auto rule = [gc, fc](std::span<const Symbol> w) {
        return gc.apply_word(fc.apply_word(w))[0];
    };
    CellularAutomaton lazy = CellularAutomaton::lazy(g.alphabet(), m, a, std::move(rule));
    return mode == ComposeMode::Eager ? lazy.materialized(cap) : lazy;
}

Alphabet product_alphabet(const Alphabet& a1, const Alphabet& a2) {
    std::vector<std::string> names;
    names.reserve((size_t)a1.size() * a2.size());
    for (int i = 0; i < a1.size(); ++i)
        for (int j = 0; j < a2.size(); ++j) names.push_back(a1.name(i) + "*" + a2.name(j));
    return Alphabet(std::move(names));
}

Symbol product_symbol(const Alphabet&, const Alphabet& a2, Symbol s1, Symbol s2) {
    return s1 * a2.size() + s2;
}

std::pair<Symbol, Symbol> product_split(const Alphabet&, const Alphabet& a2, Symbol s) {
    return {s / a2.size(), s % a2.size()};
}

CellularAutomaton product(const CellularAutomaton& c1, const CellularAutomaton& c2) {
    int m = std::min(c1.memory(), c2.memory());
    int a = std::max(c1.anticipation(), c2.anticipation());
    Alphabet pa = product_alphabet(c1.alphabet(), c2.alphabet());
    int n2 = c2.alphabet().size();
    CellularAutomaton f1 = c1, f2 = c2;
    int off1 = c1.memory() - m, off2 = c2.memory() - m;
    auto rule = [f1, f2, n2, off1, off2](std::span<const Symbol> w) {
        std::vector<Symbol> w1(f1.window_size()), w2(f2.window_size());
        for (int i = 0; i < (int)w1.size(); ++i) w1[i] = w[off1 + i] / n2;
        for (int i = 0; i < (int)w2.size(); ++i) w2[i] = w[off2 + i] % n2;
        return f1.local(w1) * n2 + f2.local(w2);
    };
    CellularAutomaton lazy = CellularAutomaton::lazy(std::move(pa), m, a, std::move(rule));
    if (lazy.table_size() <= kDefaultTableCap) return lazy.materialized();
    return lazy;
}

CellularAutomaton mirror(const CellularAutomaton& f) {
    CellularAutomaton fc = f;
    auto rule = [fc](std::span<const Symbol> w) {
        std::vector<Symbol> rev(w.rbegin(), w.rend());
        return fc.local(rev);
    };
    CellularAutomaton lazy =
        CellularAutomaton::lazy(f.alphabet(), -f.anticipation(), -f.memory(), std::move(rule));
    if (f.has_table()) return lazy.materialized();
    return lazy;
}

Configuration mirror(const Configuration& x) {
    std::vector<Symbol> l(x.right_period().rbegin(), x.right_period().rend());
    std::vector<Symbol> r(x.left_period().rbegin(), x.left_period().rend());
    std::vector<Symbol> c(x.center().rbegin(), x.center().rend());
    return Configuration(x.alphabet(), std::move(l), std::move(c), std::move(r),
                         -x.center_end());
}

Configuration step(const CellularAutomaton& f, const Configuration& x) {
    if (f.alphabet() != x.alphabet()) throw Error("step: alphabet mismatch");
    int m = f.memory(), a = f.anticipation();
    std::int64_t L = (std::int64_t)x.left_period().size();
    std::int64_t R = (std::int64_t)x.right_period().size();
    // Output center region: old center plus the cells whose windows touch it,
    // padded by one full period on each side so the new backgrounds can be
    // read off homogeneous regions.
    std::int64_t out_lo = x.center_start() - a - L;
    std::int64_t out_hi = x.center_end() - m + R;
    std::vector<Symbol> in = x.window(out_lo + m, out_hi + a);
    std::vector<Symbol> out = f.apply_word(in);
    // New backgrounds: image of a p-periodic background is p-periodic. Read
    // them from the homogeneous padding at the region's two ends.
    std::vector<Symbol> nl(out.begin(), out.begin() + L);
    std::vector<Symbol> nr(out.end() - R, out.end());
    std::vector<Symbol> nc(out.begin() + L, out.end() - R);
    return Configuration(x.alphabet(), std::move(nl), std::move(nc), std::move(nr), out_lo + L)
        .normalized();
}

SpaceTimeDiagram iterate(const CellularAutomaton& f, const Configuration& x, int t) {
    if (t < 0) throw Error("iterate: negative time");
    SpaceTimeDiagram d;
    d.rows.push_back(x);
    for (int i = 0; i < t; ++i) d.rows.push_back(step(f, d.rows.back()));
    return d;
}

std::string render(const SpaceTimeDiagram& d, std::int64_t lo, std::int64_t hi) {
    std::string out;
    for (const auto& row : d.rows) {
        auto w = row.window(lo, hi);
        out += row.alphabet().format(w);
        out += '\n';
    }
    return out;
}

}  // namespace ca
