#include "ca/reduction.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

namespace ca::reduction {

namespace {

// Symbol indices of the particle alphabet {0, I, L, R, l, r}.
enum : Symbol { kEmpty = 0, kWall = 1, kFastL = 2, kFastR = 3, kSlowL = 4, kSlowR = 5 };

Symbol flip_sym(Symbol s) {
    switch (s) {
        case kFastL: return kFastR;
        case kFastR: return kFastL;
        case kSlowL: return kSlowR;
        case kSlowR: return kSlowL;
        default: return s;
    }
}

bool particle_sym(Symbol s) { return s >= kFastL; }

struct ParticleRule {
    std::array<int, 5> pat;  // -1 matches anything
    Symbol out;
};

// Right-mover rules, then their left-mover reflections (window reversed,
// directions flipped); first match wins, identity on the center otherwise.
std::vector<ParticleRule> particle_rules() {
    const int X = -1;
    const std::vector<ParticleRule> right = {
        {{kFastR, kEmpty, kEmpty, X, X}, kFastR},
        {{X, kFastR, kEmpty, kWall, X}, kFastL},
        {{X, X, kFastR, kEmpty, X}, kEmpty},
        {{X, kEmpty, kFastR, kWall, X}, kEmpty},
        {{X, kWall, kFastR, kWall, X}, kFastR},
        {{X, X, kEmpty, kFastR, kWall}, kFastL},
        {{X, kSlowR, kEmpty, X, X}, kSlowR},
        {{X, X, kSlowR, kEmpty, X}, kEmpty},
        {{X, X, kSlowR, kWall, X}, kSlowL},
    };
    std::vector<ParticleRule> rules = right;
    for (const auto& r : right) {
        ParticleRule m;
        for (int i = 0; i < 5; ++i) {
            int p = r.pat[4 - i];
            m.pat[i] = p < 0 ? p : flip_sym(p);
        }
        m.out = flip_sym(r.out);
        rules.push_back(m);
    }
    return rules;
}

// Shrink a dense-table CA's window by dropping edge cells the table does
// not actually depend on.
CellularAutomaton tightened(const CellularAutomaton& f) {
    CellularAutomaton t = f.materialized();
    int m = t.memory(), a = t.anticipation();
    std::vector<Symbol> table = t.table();
    const int k = f.alphabet().size();
    while (a > m) {
        const std::size_t n = table.size() / k;
        bool indep = true;
        for (std::size_t i = 0; i < n && indep; ++i)
            for (int s = 1; s < k; ++s)
                if (table[i * k + s] != table[i * k]) {
                    indep = false;
                    break;
                }
        if (!indep) break;
        std::vector<Symbol> nt(n);
        for (std::size_t i = 0; i < n; ++i) nt[i] = table[i * k];
        table = std::move(nt);
        --a;
    }
    while (a > m) {
        const std::size_t n = table.size() / k;
        bool indep = true;
        for (std::size_t i = 0; i < n && indep; ++i)
            for (int s = 1; s < k; ++s)
                if (table[s * n + i] != table[i]) {
                    indep = false;
                    break;
                }
        if (!indep) break;
        table.resize(n);
        ++m;
    }
    return CellularAutomaton(f.alphabet(), m, a, std::move(table));
}

// --- belt alphabet -------------------------------------------------------

struct GammaCode {
    Alphabet gamma;
    std::vector<Symbol> top, bot;  // per belt symbol
    std::vector<char> mark;        // '+', '-', 'o'
    std::map<std::tuple<Symbol, Symbol, char>, Symbol> enc;

    Symbol code(Symbol t, Symbol b, char d) const {
        auto it = enc.find({t, b, d});
        if (it == enc.end()) throw Error("invalid belt symbol combination");
        return it->second;
    }
};

GammaCode make_gamma(const Alphabet& pa) {
    std::vector<std::string> names;
    std::vector<std::tuple<Symbol, Symbol, char>> syms;
    auto add = [&](Symbol t, Symbol b, char d) {
        names.push_back(std::string{pa.name(t)[0], pa.name(b)[0], d});
        syms.push_back({t, b, d});
    };
    const std::array<Symbol, 2> sigma{kEmpty, kWall};
    const std::array<Symbol, 4> q{kFastL, kFastR, kSlowL, kSlowR};
    for (Symbol a : sigma)
        for (Symbol b : sigma)
            for (char d : {'+', '-'}) add(a, b, d);
    for (Symbol p : q)
        for (Symbol b : sigma) add(p, b, 'o');
    for (Symbol a : sigma)
        for (Symbol p : q) add(a, p, 'o');
    GammaCode gc{Alphabet(names), {}, {}, {}, {}};
    for (Symbol s = 0; s < (Symbol)syms.size(); ++s) {
        auto [t, b, d] = syms[s];
        gc.top.push_back(t);
        gc.bot.push_back(b);
        gc.mark.push_back(d);
        gc.enc[syms[s]] = s;
    }
    return gc;
}

// --- shared stepper pieces ----------------------------------------------

std::array<Symbol, 5> win5(const std::function<Symbol(std::int64_t)>& at, std::int64_t i) {
    return {at(i - 2), at(i - 1), at(i), at(i + 1), at(i + 2)};
}

Symbol run5(const CellularAutomaton& S, const std::array<Symbol, 5>& w) {
    return S.local(std::span<const Symbol>(w.data(), w.size()));
}

// The wall-dropping swap R0 <-> lI, applied simultaneously at every index i
// with fire(i) true. Occurrences cannot overlap, so this is an involution
// for any fixed predicate.
void apply_swaps(std::vector<Symbol>& t, std::int64_t count,
                 const std::function<bool(std::int64_t)>& fire) {
    const std::vector<Symbol> orig = t;
    for (std::int64_t i = 0; i + 1 < count; ++i) {
        bool fwd = orig[i] == kFastR && orig[i + 1] == kEmpty;
        bool bwd = orig[i] == kSlowL && orig[i + 1] == kWall;
        if ((fwd || bwd) && fire(i)) {
            if (fwd) {
                t[i] = kSlowL;
                t[i + 1] = kWall;
            } else {
                t[i] = kFastR;
                t[i + 1] = kEmpty;
            }
        }
    }
}

Configuration assemble(const Alphabet& A, const std::vector<Symbol>& out, std::int64_t lo,
                       std::int64_t Lbg, std::int64_t Rbg) {
    std::vector<Symbol> left(out.begin(), out.begin() + Lbg);
    std::vector<Symbol> right(out.end() - Rbg, out.end());
    std::vector<Symbol> center(out.begin() + Lbg, out.end() - Rbg);
    return Configuration(A, std::move(left), std::move(center), std::move(right), lo + Lbg)
        .normalized();
}

struct SoficCtx {
    CellularAutomaton S, G;
    Alphabet pa, a2, alpha;
    std::vector<bool> B;
};

Configuration sofic_step(const SoficCtx& c, const Configuration& x) {
    if (x.alphabet() != c.alpha) throw Error("configuration uses the wrong alphabet");
    const std::int64_t Lbg = (std::int64_t)x.left_period().size();
    const std::int64_t Rbg = (std::int64_t)x.right_period().size();
    const std::int64_t cs = x.center_start(), ce = x.center_end();
    const std::int64_t P = 16;
    const std::int64_t lo = cs - P - Lbg, hi = ce + P + Rbg;
    const std::int64_t alo = lo - 2, ahi = hi + 12;
    const std::int64_t n = ahi - alo + 1;

    for (Symbol s : x.left_period())
        if (particle_sym(product_split(c.pa, c.a2, s).first))
            throw Error("background carries a particle");
    for (Symbol s : x.right_period())
        if (particle_sym(product_split(c.pa, c.a2, s).first))
            throw Error("background carries a particle");

    std::vector<Symbol> l1(n), l2(n);
    for (std::int64_t k = 0; k < n; ++k) {
        auto [s1, s2] = product_split(c.pa, c.a2, x.at(alo + k));
        l1[k] = s1;
        l2[k] = s2;
    }
    int particles = 0;
    for (std::int64_t i = cs; i <= ce; ++i) particles += particle_sym(l1[i - alo]);
    if (particles > 1) throw Error("configuration carries more than one particle");

    std::vector<std::vector<Symbol>> rows(11);
    rows[0] = l2;
    for (int t = 1; t <= 10; ++t) rows[t] = c.G.apply_word(rows[t - 1]);

    auto bad = [&](std::int64_t i) {
        const std::int64_t k = i - alo;
        for (int j = 0; j <= 5; ++j)
            if (!c.B[rows[j][k]]) return true;
        for (int j = 5; j <= 10; ++j)
            if (!c.B[rows[j][k + 1]]) return true;
        return false;
    };
    std::vector<Symbol> f1 = l1;
    apply_swaps(f1, hi + 2 - alo, [&](std::int64_t k) { return bad(alo + k); });

    std::vector<Symbol> out;
    out.reserve(hi - lo + 1);
    auto f1at = [&](std::int64_t i) { return f1[i - alo]; };
    for (std::int64_t i = lo; i <= hi; ++i)
        out.push_back(
            product_symbol(c.pa, c.a2, run5(c.S, win5(f1at, i)), rows[10][i - alo]));
    return assemble(c.alpha, out, lo, Lbg, Rbg);
}

struct FullCtx {
    CellularAutomaton S, G;
    GammaCode gc;
    Alphabet pa, a2, alpha;
    std::vector<bool> B;
};

struct BeltSeg {
    std::int64_t s, e;
    bool open_l, open_r;
};

// Belt boundary between positions i and i+1: the block form is
// "+...+ [particle] -...-", so a new belt starts exactly when the left mark
// is not '+' and the right mark is not '-'.
bool belt_boundary(char a, char b) { return a != '+' && b != '-'; }

std::vector<BeltSeg> decompose(const std::string& marks, std::int64_t alo) {
    std::vector<BeltSeg> segs;
    std::int64_t s = 0;
    for (std::int64_t k = 0; k + 1 < (std::int64_t)marks.size(); ++k)
        if (belt_boundary(marks[k], marks[k + 1])) {
            segs.push_back({alo + s, alo + k, s == 0, false});
            s = k + 1;
        }
    segs.push_back({alo + s, alo + (std::int64_t)marks.size() - 1, s == 0, true});
    return segs;
}

Configuration fullshift_step(const FullCtx& c, const Configuration& x) {
    if (x.alphabet() != c.alpha) throw Error("configuration uses the wrong alphabet");
    const std::int64_t Lbg = (std::int64_t)x.left_period().size();
    const std::int64_t Rbg = (std::int64_t)x.right_period().size();
    const std::int64_t cs = x.center_start(), ce = x.center_end();
    const std::int64_t P = 20;
    const std::int64_t lo = cs - P - Lbg, hi = ce + P + Rbg;
    const std::int64_t alo = lo - 8, ahi = hi + 12;
    const std::int64_t n = ahi - alo + 1;

    for (Symbol s : x.left_period())
        if (c.gc.mark[product_split(c.gc.gamma, c.a2, s).first] == 'o')
            throw Error("background carries a particle");
    for (Symbol s : x.right_period())
        if (c.gc.mark[product_split(c.gc.gamma, c.a2, s).first] == 'o')
            throw Error("background carries a particle");

    std::vector<Symbol> top(n), bot(n), l2(n);
    std::string dl(n, ' ');
    for (std::int64_t k = 0; k < n; ++k) {
        auto [g, s2] = product_split(c.gc.gamma, c.a2, x.at(alo + k));
        top[k] = c.gc.top[g];
        bot[k] = c.gc.bot[g];
        dl[k] = c.gc.mark[g];
        l2[k] = s2;
    }

    std::vector<std::vector<Symbol>> rows(11);
    rows[0] = l2;
    for (int t = 1; t <= 10; ++t) rows[t] = c.G.apply_word(rows[t - 1]);
    auto bad = [&](std::int64_t i) {
        const std::int64_t k = i - alo;
        for (int j = 0; j <= 5; ++j)
            if (!c.B[rows[j][k]]) return true;
        for (int j = 5; j <= 10; ++j)
            if (!c.B[rows[j][k + 1]]) return true;
        return false;
    };
    auto guard = [&](std::int64_t k) { return dl[k + 1] == '-' && bad(alo + k); };
    apply_swaps(top, hi + 2 - alo, guard);
    apply_swaps(bot, hi + 2 - alo, guard);

    std::vector<Symbol> t2 = top, b2 = bot;
    std::string d2 = dl;
    auto topAt = [&](std::int64_t i) { return top[i - alo]; };
    auto botAt = [&](std::int64_t i) { return bot[i - alo]; };

    for (const BeltSeg& seg : decompose(dl, alo)) {
        bool has_particle = false;
        for (std::int64_t i = seg.s; i <= seg.e; ++i)
            if (dl[i - alo] == 'o') has_particle = true;
        if (!has_particle) continue;
        const bool closed = !seg.open_l && !seg.open_r;
        if (closed && seg.s == seg.e) continue;  // degenerate one-cell loop

        // Unfolded-coordinate accessor for the glued loop and the unfolded
        // coordinate of a bottom-track cell.
        std::function<Symbol(std::int64_t)> zf;
        std::function<std::int64_t(std::int64_t)> ubot;
        const std::int64_t s = seg.s, e = seg.e;
        if (closed) {
            const std::int64_t Lb = e - s + 1, n2 = 2 * Lb;
            zf = [=](std::int64_t k) {
                std::int64_t kk = ((k - s) % n2 + n2) % n2;
                return kk < Lb ? topAt(s + kk) : flip_sym(botAt(e - (kk - Lb)));
            };
            ubot = [=](std::int64_t i) { return s + Lb + (e - i); };
        } else if (seg.open_l && !seg.open_r) {
            zf = [=](std::int64_t k) { return k <= e ? topAt(k) : flip_sym(botAt(2 * e + 1 - k)); };
            ubot = [=](std::int64_t i) { return 2 * e + 1 - i; };
        } else if (!seg.open_l && seg.open_r) {
            zf = [=](std::int64_t k) { return k >= s ? topAt(k) : flip_sym(botAt(2 * s - 1 - k)); };
            ubot = [=](std::int64_t i) { return 2 * s - 1 - i; };
        } else {
            zf = topAt;  // bi-infinite belt: no junctions, tracks independent
        }

        const std::int64_t wlo = std::max(s, lo - 4), whi = std::min(e, hi + 4);
        if (ubot) {
            for (std::int64_t i = wlo; i <= whi; ++i) {
                t2[i - alo] = run5(c.S, win5(zf, i));
                b2[i - alo] = flip_sym(run5(c.S, win5(zf, ubot(i))));
            }
        } else {
            auto zb = [&](std::int64_t k) { return flip_sym(botAt(-k)); };
            for (std::int64_t i = wlo; i <= whi; ++i) {
                t2[i - alo] = run5(c.S, win5(zf, i));
                b2[i - alo] = flip_sym(run5(c.S, win5(zb, -i)));
            }
        }

        std::int64_t pp = -1;
        int count = 0;
        for (std::int64_t i = s; i <= e; ++i)
            if (particle_sym(t2[i - alo]) || particle_sym(b2[i - alo])) {
                pp = i;
                ++count;
            }
        if (count != 1) throw Error("belt step corrupted the particle structure");
        for (std::int64_t i = s; i <= e; ++i)
            d2[i - alo] = i < pp ? '+' : i == pp ? 'o' : '-';
    }

    std::vector<Symbol> out;
    out.reserve(hi - lo + 1);
    for (std::int64_t i = lo; i <= hi; ++i) {
        const std::int64_t k = i - alo;
        out.push_back(product_symbol(c.gc.gamma, c.a2,
                                     c.gc.code(t2[k], b2[k], d2[k]), rows[10][k]));
    }
    return assemble(c.alpha, out, lo, Lbg, Rbg);
}

// --- structural evidence --------------------------------------------------

// The particle map composed with its direction-flipped conjugate returns
// every input: checked on all width-9 windows holding at most one particle,
// which cover every local situation of the at-most-one-particle space.
StructuralCheck check_particle_inverse(const CellularAutomaton& S) {
    StructuralCheck c{"particle-inverse", true, ""};
    std::uint64_t tried = 0;
    auto test = [&](const std::array<Symbol, 9>& w) {
        ++tried;
        std::array<Symbol, 5> y;
        for (int j = 0; j < 5; ++j) {
            std::array<Symbol, 5> win;
            for (int d = 0; d < 5; ++d) win[d] = w[j + d];
            y[j] = run5(S, win);
        }
        std::array<Symbol, 5> fy;
        for (int j = 0; j < 5; ++j) fy[j] = flip_sym(y[j]);
        Symbol back = flip_sym(run5(S, fy));
        if (back != w[4]) {
            c.ok = false;
            c.detail = "window " + S.alphabet().format(std::span<const Symbol>(w.data(), 9));
        }
    };
    const std::array<Symbol, 2> sigma{kEmpty, kWall};
    const std::array<Symbol, 4> q{kFastL, kFastR, kSlowL, kSlowR};
    std::array<Symbol, 9> w{};
    // particle-free windows, then one particle at each position
    for (int mask = 0; mask < 512 && c.ok; ++mask) {
        for (int j = 0; j < 9; ++j) w[j] = sigma[(mask >> j) & 1];
        test(w);
    }
    for (int pos = 0; pos < 9 && c.ok; ++pos)
        for (Symbol p : q)
            for (int mask = 0; mask < 256 && c.ok; ++mask) {
                int b = 0;
                for (int j = 0; j < 9; ++j)
                    w[j] = j == pos ? p : sigma[(mask >> b++) & 1];
                test(w);
            }
    if (c.ok) c.detail = std::to_string(tried) + " windows";
    return c;
}

StructuralCheck check_swap_involution() {
    StructuralCheck c{"wall-swap-involution", true, ""};
    std::mt19937_64 rng(271828);
    for (int trial = 0; trial < 10000 && c.ok; ++trial) {
        const std::int64_t len = 12;
        std::vector<Symbol> t(len);
        std::vector<bool> fire(len);
        for (auto& s : t) s = (Symbol)(rng() % 6);
        for (std::size_t i = 0; i < fire.size(); ++i) fire[i] = rng() & 1;
        std::vector<Symbol> once = t;
        auto pred = [&](std::int64_t i) { return (bool)fire[i]; };
        apply_swaps(once, len, pred);
        std::vector<Symbol> twice = once;
        apply_swaps(twice, len, pred);
        if (twice != t) {
            c.ok = false;
            c.detail = "trial " + std::to_string(trial);
        }
    }
    if (c.ok) c.detail = "10000 random windows";
    return c;
}

StructuralCheck check_belt_roundtrip(const GammaCode& gc) {
    StructuralCheck c{"belt-roundtrip", true, ""};
    std::mt19937_64 rng(314159);
    const int k = gc.gamma.size();
    for (int trial = 0; trial < 10000 && c.ok; ++trial) {
        const std::int64_t len = 14;
        std::vector<Symbol> w(len);
        for (auto& s : w) s = (Symbol)(rng() % k);
        std::string marks(len, ' ');
        for (std::int64_t i = 0; i < len; ++i) marks[i] = gc.mark[w[i]];
        std::string rebuilt = marks;
        for (const BeltSeg& seg : decompose(marks, 0)) {
            std::int64_t pp = -1;
            for (std::int64_t i = seg.s; i <= seg.e; ++i)
                if (marks[i] == 'o') pp = i;
            if (pp < 0) continue;  // no particle: marks stay as they are
            for (std::int64_t i = seg.s; i <= seg.e; ++i)
                rebuilt[i] = i < pp ? '+' : i == pp ? 'o' : '-';
        }
        if (rebuilt != marks) {
            c.ok = false;
            c.detail = "marks " + marks + " rebuilt as " + rebuilt;
        }
    }
    if (c.ok) c.detail = "10000 random belt words";
    return c;
}

// One conveyor step on a closed belt, as used by the full-shift stepper.
void step_closed_belt(const CellularAutomaton& S, std::vector<Symbol>& top,
                      std::vector<Symbol>& bot) {
    const std::int64_t Lb = (std::int64_t)top.size(), n2 = 2 * Lb;
    auto zf = [&](std::int64_t k) {
        std::int64_t kk = ((k % n2) + n2) % n2;
        return kk < Lb ? top[kk] : flip_sym(bot[Lb - 1 - (kk - Lb)]);
    };
    std::vector<Symbol> nt(Lb), nb(Lb);
    for (std::int64_t i = 0; i < Lb; ++i) {
        nt[i] = run5(S, win5(zf, i));
        nb[i] = flip_sym(run5(S, win5(zf, Lb + (Lb - 1 - i))));
    }
    top = std::move(nt);
    bot = std::move(nb);
}

StructuralCheck check_small_belt_bijection(const CellularAutomaton& S) {
    StructuralCheck c{"belt-step-bijective", true, ""};
    const std::array<Symbol, 2> sigma{kEmpty, kWall};
    const std::array<Symbol, 4> q{kFastL, kFastR, kSlowL, kSlowR};
    std::uint64_t total = 0;
    for (int Lb = 2; Lb <= 4 && c.ok; ++Lb) {
        std::map<std::vector<Symbol>, std::vector<Symbol>> image;
        auto submit = [&](const std::vector<Symbol>& belt) {
            ++total;
            std::vector<Symbol> top(belt.begin(), belt.begin() + Lb);
            std::vector<Symbol> bot(belt.begin() + Lb, belt.end());
            int before = 0;
            for (Symbol s : belt) before += particle_sym(s);
            if (before == 1) {
                step_closed_belt(S, top, bot);
            }  // particle-free belts are fixed
            std::vector<Symbol> out = top;
            out.insert(out.end(), bot.begin(), bot.end());
            int after = 0;
            for (Symbol s : out) after += particle_sym(s);
            if (after != before) {
                c.ok = false;
                c.detail = "particle count changed on a length-" + std::to_string(Lb) + " belt";
                return;
            }
            if (!image.emplace(out, belt).second) {
                c.ok = false;
                c.detail = "collision on length-" + std::to_string(Lb) + " belts";
            }
        };
        std::vector<Symbol> belt(2 * Lb);
        // particle-free
        for (int mask = 0; mask < (1 << (2 * Lb)) && c.ok; ++mask) {
            for (int j = 0; j < 2 * Lb; ++j) belt[j] = sigma[(mask >> j) & 1];
            submit(belt);
        }
        // one particle
        for (int pos = 0; pos < 2 * Lb && c.ok; ++pos)
            for (Symbol p : q)
                for (int mask = 0; mask < (1 << (2 * Lb - 1)) && c.ok; ++mask) {
                    int b = 0;
                    for (int j = 0; j < 2 * Lb; ++j)
                        belt[j] = j == pos ? p : sigma[(mask >> b++) & 1];
                    submit(belt);
                }
    }
    if (c.ok) c.detail = std::to_string(total) + " belts of length 2..4";
    return c;
}

// --- C(n) emptiness search ------------------------------------------------

bool c_nonempty(const CellularAutomaton& G, const std::vector<bool>& B, int n,
                std::uint64_t cap) {
    const int k = G.alphabet().size();
    const int len = 6 * n + 6;
    std::vector<std::vector<Symbol>> rows(5 * n + 6);
    std::uint64_t nodes = 0;
    std::function<bool(int)> go = [&](int p) -> bool {
        if (p == len) return true;
        if (++nodes > cap) throw CapExceeded("inner-configuration search cap exceeded");
        for (Symbol s = 0; s < k; ++s) {
            rows[0].push_back(s);
            bool ok = !(p == 0 && !B[s]);  // constraint (i, j) = (0, 0)
            std::vector<int> grown{0};
            for (int t = 1; t < (int)rows.size() && ok; ++t) {
                if (rows[t - 1].size() < rows[t].size() + 2) break;
                const std::size_t j = rows[t].size();
                std::array<Symbol, 2> w{rows[t - 1][j], rows[t - 1][j + 1]};
                rows[t].push_back(G.local(std::span<const Symbol>(w.data(), w.size())));
                grown.push_back(t);
                const int idx = (int)rows[t].size() - 1;
                if (idx <= n) {
                    const int jj = t - 5 * idx;
                    if (0 <= jj && jj <= 5 && !B[rows[t][idx]]) ok = false;
                }
            }
            if (ok && go(p + 1)) return true;
            for (int t : grown) rows[t].pop_back();
        }
        return false;
    };
    return go(0);
}

std::optional<int> find_empty_c(const CellularAutomaton& G, const std::vector<bool>& B,
                                int max_level) {
    try {
        for (int N = 1; N <= max_level; ++N)
            if (!c_nonempty(G, B, 2 * N, 2'000'000)) return N;
    } catch (const CapExceeded&) {
    }
    return std::nullopt;
}

Configuration map_symbols(const Alphabet& out, const Configuration& x,
                          const std::function<Symbol(Symbol)>& f) {
    auto conv = [&](const std::vector<Symbol>& w) {
        std::vector<Symbol> r(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) r[i] = f(w[i]);
        return r;
    };
    return Configuration(out, conv(x.left_period()), conv(x.center()), conv(x.right_period()),
                         x.center_start())
        .normalized();
}

}  // namespace

// --- arrow tiles ----------------------------------------------------------

namespace {
tiles::WangTile flag_tile(std::string id, bool n, bool e, bool s, bool w) {
    auto c = [](bool f) { return std::string(f ? "a" : "."); };
    return {std::move(id), c(n), c(e), c(s), c(w)};
}
}  // namespace

ArrowTileSets build_arrow_tilesets() {
    ArrowTileSets r;
    r.row1.tiles = {flag_tile("blank", false, false, false, false),
                    flag_tile("left", false, true, false, true),
                    flag_tile("down", true, false, true, false),
                    flag_tile("both", true, true, true, true)};
    r.row2.tiles = {flag_tile("head", false, false, false, true),
                    flag_tile("leftdown", false, true, true, true),
                    flag_tile("down", true, false, true, false),
                    flag_tile("tails", true, true, false, false)};
    return r;
}

ImmortalityCA build_immortality_ca(const tiles::TileSet& T) {
    auto fl = tiles::check_determinism(T);
    if (!fl.two_way) throw Error("tile set is not 2-way deterministic");
    tiles::TileSet Tc = tiles::complete(T);
    const int n0 = (int)T.tiles.size();
    ArrowTileSets at = build_arrow_tilesets();
    tiles::TileSet A1;
    std::vector<bool> arrow1, blank1;
    for (int i = 0; i < (int)Tc.tiles.size(); ++i) {
        const auto& t = Tc.tiles[i];
        const auto& row = i < n0 ? at.row1.tiles : at.row2.tiles;
        for (std::size_t u = 0; u < row.size(); ++u) {
            tiles::WangTile w;
            w.id = t.id + "." + row[u].id;
            w.n = t.n + row[u].n;
            w.e = t.e + row[u].e;
            w.s = t.s + row[u].s;
            w.w = t.w + row[u].w;
            A1.tiles.push_back(std::move(w));
            const bool blank = i < n0 && u == 0;
            blank1.push_back(blank);
            arrow1.push_back(!blank);
        }
    }
    CellularAutomaton g1 = tiles::ca_from_tileset(A1);
    Alphabet a1 = g1.alphabet();
    Alphabet a2 = Alphabet::digits(3);
    Alphabet A = product_alphabet(a1, a2);
    const int kA = A.size();

    CellularAutomaton G = product(g1, identity_ca(a2));
    auto j1 = [](Symbol b) { return b == 0 ? 0 : 3 - b; };
    std::vector<Symbol> tj1(kA);
    for (Symbol s = 0; s < kA; ++s) {
        auto [s1, s2] = product_split(a1, a2, s);
        tj1[s] = product_symbol(a1, a2, s1, j1(s2));
    }
    CellularAutomaton J1(A, 0, 0, std::move(tj1));

    auto j2 = [](Symbol a, Symbol b) {
        if (a == 0 && b == 2) return 1;
        if (a == 1 && b == 2) return 0;
        return (int)a;
    };
    std::vector<Symbol> tj2((std::size_t)kA * kA);
    for (Symbol s = 0; s < kA; ++s)
        for (Symbol t = 0; t < kA; ++t) {
            auto [s1, s2] = product_split(a1, a2, s);
            auto [t1, t2] = product_split(a1, a2, t);
            tj2[(std::size_t)s * kA + t] = product_symbol(a1, a2, s1, j2(s2, t2));
        }
    CellularAutomaton J2(A, 0, 1, std::move(tj2));

    std::vector<Symbol> th(kA);
    for (Symbol s = 0; s < kA; ++s) {
        auto [s1, s2] = product_split(a1, a2, s);
        Symbol b = s2;
        if (arrow1[s1] && (b == 0 || b == 1)) b = 1 - b;
        th[s] = product_symbol(a1, a2, s1, b);
    }
    CellularAutomaton H(A, 0, 0, std::move(th));

    CellularAutomaton F = tightened(compose(H, compose(J2, compose(J1, G))));
    std::vector<bool> B(kA, false);
    for (Symbol s = 0; s < kA; ++s) {
        auto [s1, s2] = product_split(a1, a2, s);
        if (blank1[s1] && s2 == 0) B[s] = true;
    }
    return {std::move(F), std::move(B), std::move(a1), std::move(a2), std::move(g1),
            std::move(arrow1)};
}

CellularAutomaton build_particle_ca() {
    Alphabet alpha({"0", "I", "L", "R", "l", "r"});
    const auto rules = particle_rules();
    std::vector<Symbol> table(7776);
    std::array<Symbol, 5> w{};
    for (std::size_t code = 0; code < table.size(); ++code) {
        std::size_t c = code;
        for (int i = 4; i >= 0; --i) {
            w[i] = (Symbol)(c % 6);
            c /= 6;
        }
        Symbol out = w[2];
        for (const auto& r : rules) {
            bool ok = true;
            for (int i = 0; i < 5 && ok; ++i) ok = r.pat[i] < 0 || r.pat[i] == w[i];
            if (ok) {
                out = r.out;
                break;
            }
        }
        table[code] = out;
    }
    return CellularAutomaton(std::move(alpha), -2, 2, std::move(table));
}

Symbol particle_flip(const Alphabet& a1, Symbol s) {
    static const std::map<std::string, std::string> m{
        {"L", "R"}, {"R", "L"}, {"l", "r"}, {"r", "l"}};
    auto it = m.find(a1.name(s));
    return it == m.end() ? s : a1.index(it->second);
}

bool is_particle(const Alphabet& a1, Symbol s) {
    const std::string& n = a1.name(s);
    return n == "L" || n == "R" || n == "l" || n == "r";
}

bool ReductionBundle::all_checks_pass() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return !checks.empty();
}

ReductionBundle build_sofic_F(const CellularAutomaton& G, const std::vector<bool>& B) {
    if (!G.radius_half()) throw Error("inner CA must be radius-1/2");
    if ((int)B.size() != G.alphabet().size()) throw Error("B has the wrong size");
    DecisionResult inj = is_injective(G);
    if (inj.verdict != Verdict::True) throw Error("inner CA must be reversible");

    CellularAutomaton S = build_particle_ca();
    Alphabet pa = S.alphabet();
    Alphabet alpha = product_alphabet(pa, G.alphabet());

    std::vector<StructuralCheck> checks;
    checks.push_back({"inner-reversible", true, inj.detail});
    checks.push_back(check_particle_inverse(S));
    checks.push_back(check_swap_involution());

    auto ctx = std::make_shared<const SoficCtx>(SoficCtx{S, G, pa, G.alphabet(), alpha, B});
    Stepper step = [ctx](const Configuration& x) { return sofic_step(*ctx, x); };
    return ReductionBundle{"sofic", alpha,    pa, pa,   G.alphabet(), std::move(S),
                           G,       B,        std::move(checks),      std::move(step)};
}

ReductionBundle build_fullshift_F(const CellularAutomaton& G, const std::vector<bool>& B) {
    if (!G.radius_half()) throw Error("inner CA must be radius-1/2");
    if ((int)B.size() != G.alphabet().size()) throw Error("B has the wrong size");
    DecisionResult inj = is_injective(G);
    if (inj.verdict != Verdict::True) throw Error("inner CA must be reversible");

    CellularAutomaton S = build_particle_ca();
    Alphabet pa = S.alphabet();
    GammaCode gc = make_gamma(pa);
    Alphabet alpha = product_alphabet(gc.gamma, G.alphabet());

    std::vector<StructuralCheck> checks;
    checks.push_back({"inner-reversible", true, inj.detail});
    checks.push_back(check_particle_inverse(S));
    checks.push_back(check_swap_involution());
    checks.push_back(check_belt_roundtrip(gc));
    checks.push_back(check_small_belt_bijection(S));

    Alphabet gamma = gc.gamma;
    auto ctx = std::make_shared<const FullCtx>(
        FullCtx{S, G, std::move(gc), pa, G.alphabet(), alpha, B});
    Stepper step = [ctx](const Configuration& x) { return fullshift_step(*ctx, x); };
    return ReductionBundle{"fullshift", alpha, gamma, pa,  G.alphabet(), std::move(S),
                           G,           B,     std::move(checks),        std::move(step)};
}

Configuration pair_config(const ReductionBundle& b, const Configuration& x1,
                          const Configuration& x2) {
    if (x1.alphabet() != b.layer1 || x2.alphabet() != b.a2)
        throw Error("layer alphabets do not match the bundle");
    const std::int64_t cs = std::min(x1.center_start(), x2.center_start());
    const std::int64_t ce = std::max(x1.center_end(), x2.center_end());
    const std::int64_t L =
        std::lcm((std::int64_t)x1.left_period().size(), (std::int64_t)x2.left_period().size());
    const std::int64_t R =
        std::lcm((std::int64_t)x1.right_period().size(), (std::int64_t)x2.right_period().size());
    auto pair_at = [&](std::int64_t i) {
        return product_symbol(b.layer1, b.a2, x1.at(i), x2.at(i));
    };
    std::vector<Symbol> left(L), center(ce - cs + 1), right(R);
    for (std::int64_t k = 0; k < L; ++k) left[L - 1 - k] = pair_at(cs - 1 - k);
    for (std::int64_t i = cs; i <= ce; ++i) center[i - cs] = pair_at(i);
    for (std::int64_t k = 0; k < R; ++k) right[k] = pair_at(ce + 1 + k);
    return Configuration(b.alpha, std::move(left), std::move(center), std::move(right), cs)
        .normalized();
}

Configuration layer1_of(const ReductionBundle& b, const Configuration& x) {
    if (x.alphabet() != b.alpha) throw Error("configuration uses the wrong alphabet");
    return map_symbols(b.layer1, x, [&](Symbol s) {
        return product_split(b.layer1, b.a2, s).first;
    });
}

Configuration layer2_of(const ReductionBundle& b, const Configuration& x) {
    if (x.alphabet() != b.alpha) throw Error("configuration uses the wrong alphabet");
    return map_symbols(b.a2, x, [&](Symbol s) {
        return product_split(b.layer1, b.a2, s).second;
    });
}

Configuration belt_config(const ReductionBundle& b, const Configuration& x1,
                          const Configuration& x2) {
    if (b.target != "fullshift") throw Error("belt encoding needs a full-shift bundle");
    if (x1.alphabet() != b.particle_alpha) throw Error("particle-layer alphabet mismatch");
    for (Symbol s : x1.left_period())
        if (is_particle(b.particle_alpha, s)) throw Error("background carries a particle");
    for (Symbol s : x1.right_period())
        if (is_particle(b.particle_alpha, s)) throw Error("background carries a particle");
    std::int64_t pp = x1.center_start() - 1;  // sentinel: no particle
    int count = 0;
    for (std::int64_t i = x1.center_start(); i <= x1.center_end(); ++i)
        if (is_particle(b.particle_alpha, x1.at(i))) {
            pp = i;
            ++count;
        }
    if (count > 1) throw Error("configuration carries more than one particle");
    const bool has = count == 1;
    auto gsym = [&](Symbol t, char d) {
        const std::string& g = b.particle_alpha.name(t);
        return b.layer1.index(std::string{g[0], '0', d});
    };
    auto lift = [&](std::int64_t i) {
        char d = !has ? '-' : i < pp ? '+' : i == pp ? 'o' : '-';
        return gsym(x1.at(i), d);
    };
    const std::int64_t cs = x1.center_start(), ce = x1.center_end();
    const std::int64_t L = (std::int64_t)x1.left_period().size();
    const std::int64_t R = (std::int64_t)x1.right_period().size();
    std::vector<Symbol> left(L), center(ce - cs + 1), right(R);
    for (std::int64_t k = 0; k < L; ++k) left[L - 1 - k] = lift(cs - 1 - k);
    for (std::int64_t i = cs; i <= ce; ++i) center[i - cs] = lift(i);
    for (std::int64_t k = 0; k < R; ++k) right[k] = lift(ce + 1 + k);
    Configuration g1(b.layer1, std::move(left), std::move(center), std::move(right), cs);
    return pair_config(b, g1, x2);
}

Configuration belt_top(const ReductionBundle& b, const Configuration& x) {
    if (b.target != "fullshift") throw Error("belt projection needs a full-shift bundle");
    return map_symbols(b.particle_alpha, x, [&](Symbol s) {
        Symbol g = product_split(b.layer1, b.a2, s).first;
        return b.particle_alpha.index(std::string(1, b.layer1.name(g)[0]));
    });
}

Configuration belt_bottom(const ReductionBundle& b, const Configuration& x) {
    if (b.target != "fullshift") throw Error("belt projection needs a full-shift bundle");
    return map_symbols(b.particle_alpha, x, [&](Symbol s) {
        Symbol g = product_split(b.layer1, b.a2, s).first;
        return b.particle_alpha.index(std::string(1, b.layer1.name(g)[1]));
    });
}

std::string belt_marks(const ReductionBundle& b, const Configuration& x, std::int64_t lo,
                       std::int64_t hi) {
    if (b.target != "fullshift") throw Error("belt projection needs a full-shift bundle");
    std::string out;
    for (std::int64_t i = lo; i <= hi; ++i)
        out.push_back(b.layer1.name(product_split(b.layer1, b.a2, x.at(i)).first)[2]);
    return out;
}

SpeedReport speed_dichotomy_experiment(const ReductionBundle& bundle, int n) {
    if (n < 10) throw Error("speed experiment needs n >= 10");
    SpeedReport r;
    auto witness = tiles::search_local_immortality(bundle.inner, bundle.B, 1, 5, {});
    r.witness_found = witness.has_value();
    Configuration x2 =
        witness ? witness->x : Configuration::uniform(bundle.a2, 0);
    if (!witness) r.empty_c_level = find_empty_c(bundle.inner, bundle.B, 4);
    Configuration empty1 = Configuration::uniform(bundle.particle_alpha, kEmpty);
    Configuration arrow1 = empty1.with(0, kFastR);
    const bool sofic = bundle.target == "sofic";
    Configuration x = sofic ? pair_config(bundle, empty1, x2) : belt_config(bundle, empty1, x2);
    Configuration y = sofic ? pair_config(bundle, arrow1, x2) : belt_config(bundle, arrow1, x2);
    r.trace = front_speed(bundle.step, x, y, n, "right", 4);
    r.slope = r.trace.slope;
    const double tol = 0.1;
    r.classification = r.slope >= 2.0 - tol          ? "fast"
                       : r.slope <= 5.0 / 3.0 + tol ? "slow"
                                                     : "inconclusive";
    return r;
}

}  // namespace ca::reduction
