#include "ca/analysis.hpp"

#include <cmath>
#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

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

// ---------- pair graph (injectivity) ----------

// De Bruijn states are the (window-1)-words, coded mixed-radix.
struct PairGraph {
    const CellularAutomaton& f;
    int k;          // alphabet size
    std::uint64_t S;  // number of de Bruijn states
    int sw;         // state width = window-1

    std::uint64_t node(std::uint64_t u, std::uint64_t v) const { return u * S + v; }

    std::vector<Symbol> decode(std::uint64_t code) const {
        std::vector<Symbol> w(sw);
        for (int i = sw - 1; i >= 0; --i) {
            w[i] = code % k;
            code /= k;
        }
        return w;
    }

    // successors of pair node with the labels that realize them
    struct Edge {
        std::uint64_t to;
        Symbol la, lb;
    };

    void edges(std::uint64_t n, std::vector<Edge>& out) const {
        std::uint64_t u = n / S, v = n % S;
        auto wu = decode(u), wv = decode(v);
        std::vector<Symbol> xu(wu), xv(wv);
        xu.push_back(0);
        xv.push_back(0);
        std::uint64_t shift = pow_sat(k, sw - 1);
        out.clear();
        for (Symbol a = 0; a < k; ++a) {
            xu[sw] = a;
            Symbol fa = f.local(xu);
            std::uint64_t nu = (u % shift) * k + a;
            for (Symbol b = 0; b < k; ++b) {
                xv[sw] = b;
                if (f.local(xv) != fa) continue;
                std::uint64_t nv = (v % shift) * k + b;
                out.push_back({node(nu, nv), a, b});
            }
        }
    }
};

}  // namespace

DecisionResult is_injective(const CellularAutomaton& f, const AnalysisCaps& caps) {
    DecisionResult res;
    res.property = "injective";
    int k = f.alphabet().size();
    int win = f.window_size();
    if (win == 1) {
        // Symbol map: injective iff the table is a permutation.
        std::vector<int> seen(k, -1);
        for (Symbol s = 0; s < k; ++s) {
            std::vector<Symbol> w{s};
            Symbol t = f.local(w);
            if (seen[t] >= 0) {
                res.verdict = Verdict::False;
                res.detail = "symbols " + f.alphabet().name(seen[t]) + " and " +
                             f.alphabet().name(s) + " collide";
                res.collision = {Configuration::uniform(f.alphabet(), seen[t]),
                                 Configuration::uniform(f.alphabet(), s)};
                return res;
            }
            seen[t] = s;
        }
        res.verdict = Verdict::True;
        res.detail = "symbol map is a permutation";
        return res;
    }

    PairGraph g{f, k, pow_sat(k, win - 1), win - 1};
    std::uint64_t N = g.S > caps.pair_graph_nodes ? UINT64_MAX : g.S * g.S;
    if (g.S == UINT64_MAX || N > caps.pair_graph_nodes) {
        res.verdict = Verdict::Undecided;
        res.detail = "undecided: cap (pair graph too large)";
        return res;
    }

    // Iterative Tarjan SCC over the implicit pair graph. Non-injective iff
    // some non-diagonal node lies in a nontrivial SCC or has a self-loop.
    std::vector<std::int32_t> index(N, -1), low(N, 0);
    std::vector<std::uint8_t> onstack(N, 0);
    std::vector<std::uint64_t> stack;
    std::int32_t counter = 0;
    std::uint64_t bad_node = UINT64_MAX;
    std::vector<std::int32_t> scc_id(N, -1);
    std::int32_t scc_count = 0;
    std::vector<PairGraph::Edge> ebuf;

    struct Frame {
        std::uint64_t node;
        std::vector<std::uint64_t> succ;
        size_t next = 0;
    };

    for (std::uint64_t root = 0; root < N && bad_node == UINT64_MAX; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call;
        auto push_node = [&](std::uint64_t n) {
            index[n] = low[n] = counter++;
            stack.push_back(n);
            onstack[n] = 1;
            Frame fr;
            fr.node = n;
            g.edges(n, ebuf);
            fr.succ.reserve(ebuf.size());
            for (auto& e : ebuf) fr.succ.push_back(e.to);
            call.push_back(std::move(fr));
        };
        push_node(root);
        while (!call.empty()) {
            Frame& fr = call.back();
            if (fr.next < fr.succ.size()) {
                std::uint64_t m = fr.succ[fr.next++];
                if (index[m] == -1) {
                    push_node(m);
                } else if (onstack[m]) {
                    low[fr.node] = std::min(low[fr.node], index[m]);
                }
            } else {
                std::uint64_t n = fr.node;
                if (low[n] == index[n]) {
                    // pop an SCC
                    std::vector<std::uint64_t> comp;
                    for (;;) {
                        std::uint64_t m = stack.back();
                        stack.pop_back();
                        onstack[m] = 0;
                        scc_id[m] = scc_count;
                        comp.push_back(m);
                        if (m == n) break;
                    }
                    ++scc_count;
                    bool nontrivial = comp.size() > 1;
                    for (std::uint64_t m : comp) {
                        bool diag = (m / g.S) == (m % g.S);
                        if (diag) continue;
                        if (!nontrivial) {
                            // check self loop
                            g.edges(m, ebuf);
                            bool self = false;
                            for (auto& e : ebuf) self |= (e.to == m);
                            if (!self) continue;
                        }
                        bad_node = m;
                        break;
                    }
                }
                call.pop_back();
                if (!call.empty())
                    low[call.back().node] = std::min(low[call.back().node], low[n]);
                if (bad_node != UINT64_MAX) break;
            }
        }
    }

    if (bad_node == UINT64_MAX) {
        res.verdict = Verdict::True;
        res.detail = "pair graph has no off-diagonal cycle";
        return res;
    }

    // Recover a cycle through bad_node restricted to its SCC; its edge labels
    // give two distinct periodic configurations with equal images.
    std::int32_t comp = scc_id[bad_node];
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::pair<Symbol, Symbol>>> parent;
    std::deque<std::uint64_t> q{bad_node};
    std::unordered_set<std::uint64_t> seen{bad_node};
    std::uint64_t closing_from = UINT64_MAX;
    std::pair<Symbol, Symbol> closing_lab{0, 0};
    while (!q.empty() && closing_from == UINT64_MAX) {
        std::uint64_t n = q.front();
        q.pop_front();
        g.edges(n, ebuf);
        for (auto& e : ebuf) {
            if (scc_id[e.to] != comp) continue;
            if (e.to == bad_node) {
                closing_from = n;
                closing_lab = {e.la, e.lb};
                break;
            }
            if (seen.insert(e.to).second) {
                parent[e.to] = {n, {e.la, e.lb}};
                q.push_back(e.to);
            }
        }
    }
    std::vector<Symbol> wa, wb;
    wa.push_back(closing_lab.first);
    wb.push_back(closing_lab.second);
    for (std::uint64_t n = closing_from; n != bad_node;) {
        auto& [pn, lab] = parent.at(n);
        wa.push_back(lab.first);
        wb.push_back(lab.second);
        n = pn;
    }
    std::reverse(wa.begin(), wa.end());
    std::reverse(wb.begin(), wb.end());
    Configuration xa(f.alphabet(), wa, {}, wa);
    Configuration xb(f.alphabet(), wb, {}, wb);
    res.verdict = Verdict::False;
    res.detail = "two period-" + std::to_string(wa.size()) +
                 " configurations share an image";
    res.collision = {xa, xb};
    return res;
}

// ---------- subset automaton (surjectivity) ----------

DecisionResult is_surjective(const CellularAutomaton& f, const AnalysisCaps& caps) {
    DecisionResult res;
    res.property = "surjective";
    int k = f.alphabet().size();
    int win = f.window_size();
    if (win == 1) {
        std::vector<char> hit(k, 0);
        for (Symbol s = 0; s < k; ++s) {
            std::vector<Symbol> w{s};
            hit[f.local(w)] = 1;
        }
        for (Symbol t = 0; t < k; ++t) {
            if (!hit[t]) {
                res.verdict = Verdict::False;
                res.detail = "symbol " + f.alphabet().name(t) + " has no preimage";
                res.orphan = std::vector<Symbol>{t};
                return res;
            }
        }
        res.verdict = Verdict::True;
        res.detail = "symbol map is onto";
        return res;
    }

    std::uint64_t S = pow_sat(k, win - 1);
    if (S > 4096) {
        res.verdict = Verdict::Undecided;
        res.detail = "undecided: cap (state set too large for subset search)";
        return res;
    }
    int Si = (int)S;
    std::uint64_t shift = pow_sat(k, win - 2);

    // Precompute transitions: state u, extension a -> (next state, output).
    std::vector<std::vector<std::pair<int, Symbol>>> trans(Si);
    {
        std::vector<Symbol> w(win);
        for (int u = 0; u < Si; ++u) {
            int code = u;
            for (int i = win - 2; i >= 0; --i) {
                w[i] = code % k;
                code /= k;
            }
            trans[u].reserve(k);
            for (Symbol a = 0; a < k; ++a) {
                w[win - 1] = a;
                int nu = (int)((u % shift) * k + a);
                trans[u].push_back({nu, f.local(w)});
            }
        }
    }

    using Bits = std::vector<std::uint64_t>;
    size_t words = (Si + 63) / 64;
    auto test = [&](const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1; };
    auto set = [&](Bits& b, int i) { b[i >> 6] |= 1ull << (i & 63); };

    Bits full(words, 0);
    for (int i = 0; i < Si; ++i) set(full, i);

    struct BitsHash {
        size_t operator()(const Bits& b) const {
            size_t h = 1469598103934665603ull;
            for (auto w : b) h = (h ^ w) * 1099511628211ull;
            return h;
        }
    };
    std::unordered_map<Bits, std::pair<Bits, std::pair<Symbol, bool>>, BitsHash> parent;
    // parent[state] = {previous state, {symbol consumed, has_parent}}
    std::deque<Bits> q;
    q.push_back(full);
    parent[full] = {full, {0, false}};
    Bits empty(words, 0);

    while (!q.empty()) {
        Bits cur = q.front();
        q.pop_front();
        for (Symbol c = 0; c < k; ++c) {
            Bits nxt(words, 0);
            for (int u = 0; u < Si; ++u) {
                if (!test(cur, u)) continue;
                for (auto& [nu, out] : trans[u])
                    if (out == c) set(nxt, nu);
            }
            if (parent.count(nxt)) continue;
            parent[nxt] = {cur, {c, true}};
            if (nxt == empty) {
                // Reconstruct the orphan word.
                std::vector<Symbol> orphan;
                Bits b = nxt;
                for (;;) {
                    auto& [prev, lab] = parent.at(b);
                    if (!lab.second) break;
                    orphan.push_back(lab.first);
                    b = prev;
                }
                std::reverse(orphan.begin(), orphan.end());
                res.verdict = Verdict::False;
                res.detail = "orphan word of length " + std::to_string(orphan.size());
                res.orphan = orphan;
                return res;
            }
            if (parent.size() > caps.subset_states) {
                res.verdict = Verdict::Undecided;
                res.detail = "undecided: cap (subset automaton too large)";
                return res;
            }
            q.push_back(nxt);
        }
    }
    res.verdict = Verdict::True;
    res.detail = "every word has a preimage (empty subset unreachable)";
    return res;
}

std::uint64_t count_preimages(const CellularAutomaton& f, std::span<const Symbol> w) {
    int k = f.alphabet().size();
    int win = f.window_size();
    if (win == 1) {
        std::uint64_t n = 1;
        for (Symbol c : w) {
            std::uint64_t cnt = 0;
            for (Symbol s = 0; s < k; ++s) {
                std::vector<Symbol> v{s};
                cnt += f.local(v) == c;
            }
            n *= cnt;
        }
        return n;
    }
    std::uint64_t S = pow_sat(k, win - 1);
    std::uint64_t shift = pow_sat(k, win - 2);
    std::vector<std::uint64_t> count(S, 1);
    std::vector<Symbol> buf(win);
    for (Symbol c : w) {
        std::vector<std::uint64_t> next(S, 0);
        for (std::uint64_t u = 0; u < S; ++u) {
            if (!count[u]) continue;
            std::uint64_t code = u;
            for (int i = win - 2; i >= 0; --i) {
                buf[i] = code % k;
                code /= k;
            }
            for (Symbol a = 0; a < k; ++a) {
                buf[win - 1] = a;
                if (f.local(buf) == c) next[(u % shift) * k + a] += count[u];
            }
        }
        count = std::move(next);
    }
    return std::accumulate(count.begin(), count.end(), std::uint64_t{0});
}

// ---------- inverse ----------

CellularAutomaton inverse(const CellularAutomaton& f, int radius_cap) {
    int k = f.alphabet().size();
    int m = f.memory(), a = f.anticipation();
    int win = f.window_size();
    for (int width = 1; width <= 2 * radius_cap + 1; ++width) {
        for (int mem = -radius_cap; mem + width - 1 <= radius_cap; ++mem) {
            // Candidate inverse g with memory `mem`, window `width`. Sound iff
            // the image window determines the preimage cell at index idx.
            int idx = -mem - m;
            int in_len = width - 1 + win;
            if (idx < 0 || idx >= in_len) continue;
            std::uint64_t total = pow_sat(k, in_len);
            if (total > 50'000'000) throw CapExceeded("inverse: search space too large");
            std::vector<Symbol> table(pow_sat(k, width), -1);
            std::vector<Symbol> u(in_len, 0);
            bool ok = true;
            for (std::uint64_t c = 0; c < total && ok; ++c) {
                std::vector<Symbol> y = f.apply_word(u);
                std::uint64_t code = 0;
                for (Symbol s : y) code = code * k + s;
                if (table[code] == -1)
                    table[code] = u[idx];
                else if (table[code] != u[idx])
                    ok = false;
                for (int i = in_len - 1; i >= 0; --i) {
                    if (++u[i] < k) break;
                    u[i] = 0;
                }
            }
            if (!ok) continue;
            for (auto& s : table)
                if (s == -1) s = 0;  // unreachable image windows
            return CellularAutomaton(f.alphabet(), mem, mem + width - 1, std::move(table));
        }
    }
    throw Error("no inverse rule within radius cap (CA not reversible, or cap too small)");
}

// ---------- finite-time exponents ----------

namespace {

struct LeftLambdaJob {
    const CellularAutomaton& f;
    const Configuration& x;
    int n;
    const AnalysisCaps& caps;

    // Does some y agreeing with x on (-inf, s] disagree with x's orbit on
    // [.., 0] within n steps?
    bool counterexample(int s, LyapMethod method) const {
        int m = f.memory(), a = f.anticipation();
        std::int64_t u0 = (std::int64_t)s + 1 - (std::int64_t)n * (a - m);
        std::int64_t v0 = (std::int64_t)n * a;
        if (v0 <= s) return false;  // no free cells can matter
        int nf = (int)(v0 - s);     // free cells at positions [s+1, v0]
        int seg = (int)(v0 - u0 + 1);

        std::vector<Symbol> base = x.window(u0, v0);
        // Reference orbit rows over the shrinking exact trapezoid.
        std::vector<std::vector<Symbol>> ref(n + 1);
        ref[0] = base;
        for (int i = 1; i <= n; ++i) ref[i] = f.apply_word(ref[i - 1]);

        int k = f.alphabet().size();

        auto mismatch = [&](const std::vector<Symbol>& row, int i) {
            // row i exact on [u0 - i*m, v0 - i*a]; compare on [s+1-i*a, 0].
            std::int64_t lo = std::max<std::int64_t>(s + 1 - (std::int64_t)i * a,
                                                     u0 - (std::int64_t)i * m);
            std::int64_t hi = std::min<std::int64_t>(0, v0 - (std::int64_t)i * a);
            std::int64_t row_base = u0 - (std::int64_t)i * m;
            for (std::int64_t j = lo; j <= hi; ++j)
                if (row[j - row_base] != ref[i][j - row_base]) return true;
            return false;
        };

        int fo = seg - nf;  // first free index

        // Quick pass before any cap applies: single-cell perturbations,
        // outermost cell first. These witness most real propagation, so the
        // exhaustive phase below only pays for the genuinely hard cases.
        {
            std::vector<Symbol> y;
            for (int j = nf - 1; j >= 0; --j) {
                for (int off = 1; off < k; ++off) {
                    y = base;
                    y[fo + j] = (base[fo + j] + off) % k;
                    for (int t = 1; t <= n; ++t) {
                        y = f.apply_word(y);
                        if (mismatch(y, t)) return true;
                    }
                }
            }
        }

        double combos = std::pow((double)k, nf);
        if (combos > (double)caps.enumeration)
            throw CapExceeded("lambda: window enumeration cap");

        // Perturbation odometer: offsets from x's own values, leftmost free
        // cell (closest to the boundary) varying fastest.
        std::vector<int> d(nf, 0);
        auto advance = [&]() {
            for (int j = 0; j < nf; ++j) {
                if (++d[j] < k) return true;
                d[j] = 0;
            }
            return false;
        };
        auto assemble = [&](std::vector<Symbol>& y) {
            y = base;
            for (int j = 0; j < nf; ++j) y[fo + j] = (base[fo + j] + d[j]) % k;
        };

        if (method == LyapMethod::Enumerate) {
            std::uint64_t tried = 0;
            std::vector<Symbol> y;
            while (advance()) {
                if (++tried > caps.enumeration) throw CapExceeded("lambda: enumeration cap");
                assemble(y);
                std::vector<Symbol> row = y;
                for (int t = 1; t <= n; ++t) {
                    row = f.apply_word(row);
                    if (mismatch(row, t)) return true;
                }
            }
            return false;
        }

        // Set-valued propagation: carry the deduplicated set of level rows.
        std::set<std::vector<Symbol>> rows;
        {
            std::vector<Symbol> y = base;
            rows.insert(y);
            while (advance()) {
                assemble(y);
                rows.insert(y);
            }
        }
        for (int t = 1; t <= n; ++t) {
            std::set<std::vector<Symbol>> next;
            for (const auto& r : rows) {
                std::vector<Symbol> img = f.apply_word(r);
                if (mismatch(img, t)) return true;
                next.insert(std::move(img));
            }
            rows = std::move(next);
        }
        return false;
    }
};

int lambda_left_value(const CellularAutomaton& f, const Configuration& x, int n,
                      LyapMethod method, const AnalysisCaps& caps) {
    if (f.anticipation() <= 0) return 0;
    LeftLambdaJob job{f, x, n, caps};
    int smax = n * f.anticipation();
    for (int s = 0; s <= smax; ++s)
        if (!job.counterexample(s, method)) return s;
    return smax;  // unreachable: s = smax always passes
}

}  // namespace

ExponentReport lambda_finite(const CellularAutomaton& f, const Configuration& x, int n,
                             std::string_view direction, LyapMethod method,
                             const AnalysisCaps& caps) {
    if (n < 1) throw Error("horizon must be positive");
    ExponentReport rep;
    rep.direction = direction;
    rep.n = n;
    rep.method = method == LyapMethod::Enumerate ? "enumerate" : "propagate";
    if (direction != "left" && direction != "right") throw Error("direction: left|right");
    try {
        if (direction == "left")
            rep.lambda = lambda_left_value(f, x, n, method, caps);
        else
            rep.lambda = lambda_left_value(mirror(f), mirror(x), n, method, caps);
    } catch (const CapExceeded& e) {
        rep.undecided = true;
        rep.note = std::string("undecided: ") + e.what();
    }
    return rep;
}

ExponentReport lambda_bar_finite(const CellularAutomaton& f, const Configuration& x, int n,
                                 std::string_view direction, LyapMethod method,
                                 const AnalysisCaps& caps) {
    if (n < 1) throw Error("horizon must be positive");
    if (direction == "right") {
        ExponentReport rep = lambda_bar_finite(mirror(f), mirror(x), n, "left", method, caps);
        rep.direction = "right";
        return rep;
    }
    int m = f.memory(), a = f.anticipation();
    // The left exponent of sigma^k(x) reads x only on the translated window
    // [k - n(a-m), k + n*a]; beyond the center +/- one period it repeats.
    std::int64_t L = (std::int64_t)x.left_period().size();
    std::int64_t R = (std::int64_t)x.right_period().size();
    std::int64_t klo = x.center_start() - (std::int64_t)n * std::max(a, 0) - L;
    std::int64_t khi = x.center_end() + (std::int64_t)n * (a - m) + R;
    ExponentReport best;
    best.direction = "left";
    best.n = n;
    best.method = "enumerate/translates";
    best.lambda = 0;
    for (std::int64_t k = klo; k <= khi; ++k) {
        ExponentReport r = lambda_finite(f, x.shifted(k), n, "left", method, caps);
        if (r.undecided) return r;
        best.lambda = std::max(best.lambda, r.lambda);
    }
    return best;
}

ExponentReport max_lambda_finite(const CellularAutomaton& f, int n, std::string_view direction,
                                 const AnalysisCaps& caps) {
    if (n < 1) throw Error("horizon must be positive");
    ExponentReport rep;
    rep.direction = direction;
    rep.n = n;
    rep.method = "joint enumeration";
    if (direction == "right") {
        rep = max_lambda_finite(mirror(f), n, "left", caps);
        rep.direction = "right";
        return rep;
    }
    int m = f.memory(), a = f.anticipation();
    if (a <= 0) {
        rep.lambda = 0;
        rep.note = "one-sided: no leftward dependence";
        return rep;
    }
    int k = f.alphabet().size();
    try {
        for (int s = n * a; s >= 1; --s) {
            std::int64_t u0 = (std::int64_t)s - (std::int64_t)n * (a - m);
            std::int64_t v0 = (std::int64_t)n * a;
            int seg = (int)(v0 - u0 + 1);
            int nf = (int)(v0 - s + 1);  // y free on [s, v0]
            double combos = std::pow((double)k, seg) * std::pow((double)k, nf);
            if (combos > (double)caps.enumeration)
                throw CapExceeded("max_lambda: joint enumeration cap");
            std::vector<Symbol> xw(seg, 0);
            int fo = seg - nf;
            bool found = false;
            std::uint64_t tried = 0;
            bool more_x = true;
            while (more_x && !found) {
                // orbit rows for x
                std::vector<std::vector<Symbol>> ref(n + 1);
                ref[0] = xw;
                for (int i = 1; i <= n; ++i) ref[i] = f.apply_word(ref[i - 1]);
                // y differs from x only on the free suffix [fo, seg)
                std::vector<int> d(nf, 0);
                auto advance = [&]() {
                    for (int j = 0; j < nf; ++j) {
                        if (++d[j] < k) return true;
                        d[j] = 0;
                    }
                    return false;
                };
                while (advance() && !found) {
                    if (++tried > caps.enumeration)
                        throw CapExceeded("max_lambda: enumeration cap");
                    std::vector<Symbol> row = xw;
                    for (int j = 0; j < nf; ++j) row[fo + j] = (xw[fo + j] + d[j]) % k;
                    for (int t = 1; t <= n && !found; ++t) {
                        row = f.apply_word(row);
                        std::int64_t lo = std::max<std::int64_t>(
                            s - (std::int64_t)t * a, u0 - (std::int64_t)t * m);
                        std::int64_t hi = std::min<std::int64_t>(0, v0 - (std::int64_t)t * a);
                        std::int64_t base = u0 - (std::int64_t)t * m;
                        for (std::int64_t j = lo; j <= hi; ++j)
                            if (row[j - base] != ref[t][j - base]) {
                                found = true;
                                break;
                            }
                    }
                }
                int i = seg - 1;
                for (; i >= 0; --i) {
                    if (++xw[i] >= k)
                        xw[i] = 0;
                    else
                        break;
                }
                more_x = i >= 0;
            }
            if (found) {
                rep.lambda = s;
                return rep;
            }
        }
        rep.lambda = 0;
    } catch (const CapExceeded& e) {
        rep.undecided = true;
        rep.note = std::string("undecided: ") + e.what();
    }
    return rep;
}

// ---------- front speed ----------

FrontTrace front_speed(const Stepper& stepf, const Configuration& x, const Configuration& y,
                       int n, std::string_view direction, int max_speed) {
    if (x == y) throw Error("front_speed: configurations identical");
    bool right = direction == "right";
    if (!right && direction != "left") throw Error("direction: left|right");

    auto extremal = [&](const Configuration& a, const Configuration& b,
                        std::int64_t reach) -> std::int64_t {
        std::int64_t lcl = std::lcm((std::int64_t)a.left_period().size(),
                                    (std::int64_t)b.left_period().size());
        std::int64_t lcr = std::lcm((std::int64_t)a.right_period().size(),
                                    (std::int64_t)b.right_period().size());
        std::int64_t lo = std::min(a.center_start(), b.center_start()) - lcl - reach;
        std::int64_t hi = std::max(a.center_end(), b.center_end()) + lcr + reach;
        if (right) {
            for (std::int64_t i = hi; i >= lo; --i)
                if (a.at(i) != b.at(i)) return i;
        } else {
            for (std::int64_t i = lo; i <= hi; ++i)
                if (a.at(i) != b.at(i)) return i;
        }
        throw Error("front_speed: orbits merged");
    };

    FrontTrace tr;
    Configuration cx = x, cy = y;
    for (int t = 0; t <= n; ++t) {
        tr.positions.push_back(extremal(cx, cy, (std::int64_t)(t + 1) * max_speed));
        if (t < n) {
            cx = stepf(cx);
            cy = stepf(cy);
        }
    }
    // Least-squares slope over the last half of the trace.
    size_t from = tr.positions.size() / 2;
    size_t cnt = tr.positions.size() - from;
    double mt = 0, mp = 0;
    for (size_t i = from; i < tr.positions.size(); ++i) {
        mt += (double)i;
        mp += (double)tr.positions[i];
    }
    mt /= cnt;
    mp /= cnt;
    double num = 0, den = 0;
    for (size_t i = from; i < tr.positions.size(); ++i) {
        num += ((double)i - mt) * ((double)tr.positions[i] - mp);
        den += ((double)i - mt) * ((double)i - mt);
    }
    double slope = den > 0 ? num / den : 0.0;
    tr.slope = right ? slope : -slope;
    return tr;
}

FrontTrace front_speed(const CellularAutomaton& f, const Configuration& x,
                       const Configuration& y, int n, std::string_view direction) {
    int ms = std::max({std::abs(f.memory()), std::abs(f.anticipation()), 1});
    return front_speed([&](const Configuration& c) { return step(f, c); }, x, y, n, direction,
                       ms);
}

}  // namespace ca
