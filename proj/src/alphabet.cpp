#include "ca/alphabet.hpp"

#include <sstream>

namespace ca {

Alphabet::Alphabet(std::vector<std::string> symbols) : names_(std::move(symbols)) {
    if (names_.empty()) throw Error("alphabet must be nonempty");
    for (int i = 0; i < (int)names_.size(); ++i) {
        if (names_[i].empty()) throw Error("empty symbol name");
        auto [it, fresh] = index_.emplace(names_[i], i);
        if (!fresh) throw Error("duplicate symbol name: " + names_[i]);
    }
}

Symbol Alphabet::index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error("unknown symbol: '" + name + "'");
    return it->second;
}

bool Alphabet::single_char() const {
    for (const auto& n : names_)
        if (n.size() != 1) return false;
    return true;
}

std::vector<Symbol> Alphabet::word(const std::string& text) const {
    std::vector<Symbol> out;
    if (text.empty()) return out;
    if (single_char() && text.find(',') == std::string::npos) {
        for (char c : text) out.push_back(index(std::string(1, c)));
        return out;
    }
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(index(part));
    return out;
}

std::string Alphabet::format(std::span<const Symbol> w) const {
    std::string out;
    bool compact = single_char();
    for (size_t i = 0; i < w.size(); ++i) {
        if (!compact && i) out += ',';
        out += name(w[i]);
    }
    return out;
}

Alphabet Alphabet::digits(int n) {
    if (n < 1) throw Error("digits alphabet needs n >= 1");
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return Alphabet(std::move(names));
}

}  // namespace ca
