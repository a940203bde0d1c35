#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ca {

// Symbols are stored as dense indices into an Alphabet.
using Symbol = int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an enumeration or table would exceed a configured resource cap.
// Callers that promise "undecided, never wrong" catch this and report so.
struct CapExceeded : Error {
    using Error::Error;
};

class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> symbols);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(Symbol s) const { return names_.at(s); }
    Symbol index(const std::string& name) const;
    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    // True iff every symbol name is a single character; enables the compact
    // word syntax in config-specs and test literals.
    bool single_char() const;

    std::vector<Symbol> word(const std::string& text) const;
    std::string format(std::span<const Symbol> w) const;

    bool operator==(const Alphabet& o) const { return names_ == o.names_; }
    bool operator!=(const Alphabet& o) const { return !(*this == o); }

    // {"0", "1", ..., "n-1"}
    static Alphabet digits(int n);

private:
    std::vector<std::string> names_;
    std::map<std::string, Symbol> index_;
};

}  // namespace ca
