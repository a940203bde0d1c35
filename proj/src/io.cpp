#include "ca/io.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <vector>

namespace ca::io {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw Error("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        out.push_back(t);
    }
    return out;
}

std::uint64_t window_count(int k, int width) {
    std::uint64_t n = 1;
    for (int i = 0; i < width; ++i) n *= (std::uint64_t)k;
    return n;
}

}  // namespace

CellularAutomaton parse_rule_file(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool header = false;
    std::optional<Alphabet> alpha;
    std::optional<int> memory, anticipation;
    std::optional<Symbol> deflt;
    struct RuleLine {
        int lineno;
        std::vector<std::string> lhs;
        std::string rhs;
    };
    std::vector<RuleLine> rules;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = tokens(line);
        if (t.empty()) continue;
        if (!header) {
            if (t.size() != 2 || t[0] != "ca" || t[1] != "v1") fail(lineno, "expected header \"ca v1\"");
            header = true;
            continue;
        }
        if (t[0] == "alphabet") {
            if (t.size() < 2) fail(lineno, "alphabet needs at least one symbol");
            alpha.emplace(std::vector<std::string>(t.begin() + 1, t.end()));
        } else if (t[0] == "memory" || t[0] == "anticipation") {
            if (t.size() != 2) fail(lineno, t[0] + " needs one integer");
            int v = 0;
            try {
                v = std::stoi(t[1]);
            } catch (...) {
                fail(lineno, "bad integer \"" + t[1] + "\"");
            }
            (t[0] == "memory" ? memory : anticipation) = v;
        } else if (t[0] == "default") {
            if (t.size() != 2) fail(lineno, "default needs one symbol");
            if (!alpha) fail(lineno, "default before alphabet");
            if (!alpha->contains(t[1])) fail(lineno, "unknown symbol \"" + t[1] + "\"");
            deflt = alpha->index(t[1]);
        } else {
            // rule line "<w1> ... <wk> -> <s>"
            auto arrow = std::find(t.begin(), t.end(), "->");
            if (arrow == t.end()) fail(lineno, "unrecognized line");
            if (arrow + 2 != t.end()) fail(lineno, "rule needs exactly one output symbol");
            rules.push_back({lineno, std::vector<std::string>(t.begin(), arrow), *(arrow + 1)});
        }
    }
    if (!header) throw Error("empty rule file (missing \"ca v1\" header)");
    if (!alpha) throw Error("rule file has no alphabet line");
    if (!memory || !anticipation) throw Error("rule file needs memory and anticipation lines");
    if (*memory > *anticipation) throw Error("memory exceeds anticipation");
    const int width = *anticipation - *memory + 1;
    const int k = alpha->size();
    const std::uint64_t total = window_count(k, width);
    if (total > kDefaultTableCap) throw Error("rule table too large");
    std::vector<Symbol> table(total, -1);
    for (const auto& r : rules) {
        if ((int)r.lhs.size() != width)
            fail(r.lineno, "rule has " + std::to_string(r.lhs.size()) + " symbols, expected " +
                               std::to_string(width));
        std::uint64_t code = 0;
        for (const auto& s : r.lhs) {
            if (!alpha->contains(s)) fail(r.lineno, "unknown symbol \"" + s + "\"");
            code = code * k + alpha->index(s);
        }
        if (!alpha->contains(r.rhs)) fail(r.lineno, "unknown symbol \"" + r.rhs + "\"");
        table[code] = alpha->index(r.rhs);
    }
    for (auto& v : table) {
        if (v >= 0) continue;
        if (!deflt) throw Error("rule table incomplete and no default given");
        v = *deflt;
    }
    return CellularAutomaton(*alpha, *memory, *anticipation, std::move(table));
}

CellularAutomaton parse_rule_file_text(const std::string& text) {
    std::istringstream in(text);
    return parse_rule_file(in);
}

std::string serialize(const CellularAutomaton& f) {
    const CellularAutomaton t = f.materialized();
    const Alphabet& a = t.alphabet();
    const int k = a.size();
    const int width = t.window_size();
    std::ostringstream out;
    out << "ca v1\nalphabet";
    for (Symbol s = 0; s < k; ++s) out << ' ' << a.name(s);
    out << "\nmemory " << t.memory() << "\nanticipation " << t.anticipation() << '\n';
    std::vector<Symbol> w(width, 0);
    const auto& table = t.table();
    for (std::size_t code = 0; code < table.size(); ++code) {
        std::size_t c = code;
        for (int i = width - 1; i >= 0; --i) {
            w[i] = (Symbol)(c % k);
            c /= k;
        }
        for (int i = 0; i < width; ++i) out << a.name(w[i]) << ' ';
        out << "-> " << a.name(table[code]) << '\n';
    }
    return out.str();
}

tiles::TileSet parse_tile_file(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool header = false;
    tiles::TileSet ts;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = tokens(line);
        if (t.empty()) continue;
        if (!header) {
            if (t.size() != 2 || t[0] != "tiles" || t[1] != "v1")
                fail(lineno, "expected header \"tiles v1\"");
            header = true;
            continue;
        }
        if (t[0] == "colors") {
            ts.declared_colors.assign(t.begin() + 1, t.end());
        } else if (t[0] == "tile") {
            if (t.size() != 6) fail(lineno, "tile line needs: tile <id> <N> <E> <S> <W>");
            if (ts.find(t[1]) >= 0) fail(lineno, "duplicate tile id \"" + t[1] + "\"");
            ts.tiles.push_back({t[1], t[2], t[3], t[4], t[5]});
        } else {
            fail(lineno, "unrecognized line");
        }
    }
    if (!header) throw Error("empty tile file (missing \"tiles v1\" header)");
    return ts;
}

tiles::TileSet parse_tile_file_text(const std::string& text) {
    std::istringstream in(text);
    return parse_tile_file(in);
}

std::string serialize(const tiles::TileSet& ts) {
    std::ostringstream out;
    out << "tiles v1\n";
    if (!ts.declared_colors.empty()) {
        out << "colors";
        for (const auto& c : ts.declared_colors) out << ' ' << c;
        out << '\n';
    }
    for (const auto& t : ts.tiles)
        out << "tile " << t.id << ' ' << t.n << ' ' << t.e << ' ' << t.s << ' ' << t.w << '\n';
    return out.str();
}

Configuration parse_config_spec(const Alphabet& alpha, const std::string& spec) {
    const auto b1 = spec.find('|');
    const auto b2 = spec.rfind('|');
    if (b1 == std::string::npos || b1 == b2)
        throw Error("config spec must look like LEFT|CENTER|RIGHT");
    const std::string l = spec.substr(0, b1);
    const std::string c = spec.substr(b1 + 1, b2 - b1 - 1);
    const std::string r = spec.substr(b2 + 1);
    if (l.empty() || r.empty()) throw Error("config spec needs nonempty background periods");
    return Configuration(alpha, alpha.word(l), c.empty() ? std::vector<Symbol>{} : alpha.word(c),
                         alpha.word(r));
}

}  // namespace ca::io
