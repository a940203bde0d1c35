#include "ca/tiles.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ca::tiles {

std::vector<std::string> TileSet::colors() const {
    std::set<std::string> cs(declared_colors.begin(), declared_colors.end());
    for (const auto& t : tiles) {
        cs.insert(t.n);
        cs.insert(t.e);
        cs.insert(t.s);
        cs.insert(t.w);
    }
    return {cs.begin(), cs.end()};
}

int TileSet::find(const std::string& id) const {
    for (int i = 0; i < (int)tiles.size(); ++i)
        if (tiles[i].id == id) return i;
    return -1;
}

DeterminismFlags check_determinism(const TileSet& ts) {
    DeterminismFlags fl;
    fl.ne = fl.sw = true;
    std::map<std::pair<std::string, std::string>, const WangTile*> ne, sw;
    for (const auto& t : ts.tiles) {
        auto [it1, fresh1] = ne.emplace(std::make_pair(t.n, t.e), &t);
        if (!fresh1 && fl.ne) {
            fl.ne = false;
            fl.ne_violation = {it1->second->id, t.id};
        }
        auto [it2, fresh2] = sw.emplace(std::make_pair(t.s, t.w), &t);
        if (!fresh2 && fl.sw) {
            fl.sw = false;
            fl.sw_violation = {it2->second->id, t.id};
        }
    }
    fl.two_way = fl.ne && fl.sw;
    return fl;
}

TileSet complete(const TileSet& ts) {
    DeterminismFlags fl = check_determinism(ts);
    if (!fl.two_way) throw Error("tile set is not 2-way deterministic");
    std::vector<std::string> C = ts.colors();
    std::set<std::pair<std::string, std::string>> ne_used, sw_used;
    for (const auto& t : ts.tiles) {
        ne_used.insert({t.n, t.e});
        sw_used.insert({t.s, t.w});
    }
    std::vector<std::pair<std::string, std::string>> X, Y;  // lexicographic
    for (const auto& a : C)
        for (const auto& b : C) {
            if (!ne_used.count({a, b})) X.push_back({a, b});
            if (!sw_used.count({a, b})) Y.push_back({a, b});
        }
    TileSet out = ts;
    for (size_t i = 0; i < X.size(); ++i) {
        WangTile t;
        t.id = "+" + X[i].first + ":" + X[i].second;
        t.n = X[i].first;
        t.e = X[i].second;
        t.s = Y[i].first;
        t.w = Y[i].second;
        out.tiles.push_back(std::move(t));
    }
    return out;
}

CellularAutomaton ca_from_tileset(const TileSet& ts) {
    DeterminismFlags fl = check_determinism(ts);
    if (!fl.two_way) throw Error("tile set is not 2-way deterministic");
    std::vector<std::string> C = ts.colors();
    std::map<std::pair<std::string, std::string>, int> ne;
    for (int i = 0; i < (int)ts.tiles.size(); ++i)
        ne[{ts.tiles[i].n, ts.tiles[i].e}] = i;
    if (ne.size() != C.size() * C.size())
        throw Error("tile set is not complete");
    std::vector<std::string> names;
    for (const auto& t : ts.tiles) names.push_back(t.id);
    Alphabet alpha(names);
    int k = alpha.size();
    std::vector<Symbol> table(k * k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            auto it = ne.find({ts.tiles[a].s, ts.tiles[b].w});
            if (it == ne.end()) throw Error("tile set is not complete");
            table[a * k + b] = it->second;
        }
    return CellularAutomaton(std::move(alpha), 0, 1, std::move(table));
}

PatchReport check_valid_patch(const TileSet& ts, const Patch& patch) {
    PatchReport rep;
    auto tile = [&](const std::string& id) -> const WangTile& {
        int i = ts.find(id);
        if (i < 0) throw Error("unknown tile id: " + id);
        return ts.tiles[i];
    };
    for (size_t r = 0; r < patch.grid.size(); ++r) {
        for (size_t c = 0; c < patch.grid[r].size(); ++c) {
            const WangTile& t = tile(patch.grid[r][c]);
            if (c + 1 < patch.grid[r].size()) {
                const WangTile& right = tile(patch.grid[r][c + 1]);
                if (t.e != right.w) {
                    rep.valid = false;
                    rep.violation = "E/W mismatch between (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") and (" + std::to_string(r) + "," +
                                    std::to_string(c + 1) + ")";
                    return rep;
                }
            }
            if (r + 1 < patch.grid.size() && c < patch.grid[r + 1].size()) {
                const WangTile& below = tile(patch.grid[r + 1][c]);
                if (t.s != below.n) {
                    rep.valid = false;
                    rep.violation = "S/N mismatch between (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") and (" + std::to_string(r + 1) +
                                    "," + std::to_string(c) + ")";
                    return rep;
                }
            }
        }
    }
    return rep;
}

TileSet random_complete_tileset(int n_colors, std::mt19937_64& rng) {
    if (n_colors < 1) throw Error("need at least one color");
    std::vector<std::string> C;
    for (int i = 0; i < n_colors; ++i) C.push_back("c" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& a : C)
        for (const auto& b : C) pairs.push_back({a, b});
    std::vector<size_t> perm(pairs.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    TileSet ts;
    ts.declared_colors = C;
    for (size_t i = 0; i < pairs.size(); ++i) {
        WangTile t;
        t.id = "t" + std::to_string(i);
        t.n = pairs[i].first;
        t.e = pairs[i].second;
        t.s = pairs[perm[i]].first;
        t.w = pairs[perm[i]].second;
        ts.tiles.push_back(std::move(t));
    }
    return ts;
}

namespace {

// One synchronous step of f on the length-L periodic word w.
std::vector<Symbol> periodic_step(const CellularAutomaton& f, const std::vector<Symbol>& w) {
    int L = (int)w.size();
    int m = f.memory(), a = f.anticipation();
    std::vector<Symbol> out(L), win(f.window_size());
    for (int i = 0; i < L; ++i) {
        for (int j = m; j <= a; ++j) win[j - m] = w[((i + j) % L + L) % L];
        out[i] = f.local(win);
    }
    return out;
}

}  // namespace

std::optional<ImmortalityWitness> search_local_immortality(const CellularAutomaton& f,
                                                           const std::vector<bool>& B, int p,
                                                           int q, const ImmortalityCaps& caps) {
    if (p < 0 || q < 1) throw Error("invalid immortality parameters");
    if ((int)B.size() != f.alphabet().size()) throw Error("B has wrong size");
    int k = f.alphabet().size();
    std::uint64_t tried = 0;
    for (int L = 1; L <= caps.period_cap; ++L) {
        std::vector<Symbol> w(L, 0);
        for (;;) {
            if (++tried > caps.candidates) return std::nullopt;
            // Follow the orbit, looking for a return to w itself.
            std::vector<std::vector<Symbol>> orbit{w};
            int T = 0;
            std::set<std::vector<Symbol>> seen{w};
            for (int t = 1; t <= caps.time_cap; ++t) {
                std::vector<Symbol> nxt = periodic_step(f, orbit.back());
                if (nxt == w) {
                    T = t;
                    break;
                }
                if (!seen.insert(nxt).second) break;  // entered a cycle not through w
                orbit.push_back(std::move(nxt));
            }
            if (T > 0) {
                // Diagonal condition along the cycle; (iq mod T, ip mod L)
                // has period dividing T*L in i, which also covers i < 0.
                bool ok = true;
                for (int i = 0; i < T * L && ok; ++i)
                    for (int j = 0; j <= q; ++j) {
                        int t = (int)(((std::int64_t)i * q + j) % T);
                        int pos = (int)(((std::int64_t)i * p) % L);
                        if (!B[orbit[t][pos]]) {
                            ok = false;
                            break;
                        }
                    }
                if (ok) {
                    ImmortalityWitness wit{Configuration(f.alphabet(), w, {}, w), L, T};
                    return wit;
                }
            }
            // next word
            int i = L - 1;
            for (; i >= 0; --i) {
                if (++w[i] < k) break;
                w[i] = 0;
            }
            if (i < 0) break;
        }
    }
    return std::nullopt;
}

bool verify_local_immortality(const CellularAutomaton& f, const std::vector<bool>& B,
                              const ImmortalityWitness& w, int p, int q, int cycles) {
    int horizon = w.temporal_period * cycles;
    SpaceTimeDiagram d = iterate(f, w.x, horizon);
    for (int i = 0;; ++i) {
        if ((std::int64_t)i * q > horizon) break;
        for (int j = 0; j <= q; ++j) {
            std::int64_t t = (std::int64_t)i * q + j;
            if (t > horizon) break;
            if (!B[d.rows[t].at((std::int64_t)i * p)]) return false;
        }
    }
    return true;
}

}  // namespace ca::tiles
