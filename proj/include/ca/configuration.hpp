#pragma once

#include <cstdint>
#include <vector>

#include "ca/alphabet.hpp"

namespace ca {

// A bi-infinite sequence: left_period repeating toward -inf, a finite center
// word, right_period repeating toward +inf. The center occupies positions
// [center_start, center_start + |center|); constructors default the start to
// position 0. Background phases are anchored at the center's two ends:
// at(center_start - 1 - k) = left_period[L-1 - (k mod L)] and
// at(center_end + 1 + k) = right_period[k mod R] for k >= 0,
// where center_end = center_start + |center| - 1.
class Configuration {
public:
    Configuration(Alphabet alpha, std::vector<Symbol> left_period,
                  std::vector<Symbol> center, std::vector<Symbol> right_period,
                  std::int64_t center_start = 0);

    // Uniform background b^Z.
    static Configuration uniform(Alphabet alpha, Symbol b);

    const Alphabet& alphabet() const { return alpha_; }
    const std::vector<Symbol>& left_period() const { return left_; }
    const std::vector<Symbol>& center() const { return center_; }
    const std::vector<Symbol>& right_period() const { return right_; }
    std::int64_t center_start() const { return start_; }
    std::int64_t center_end() const { return start_ + (std::int64_t)center_.size() - 1; }

    Symbol at(std::int64_t i) const;
    std::vector<Symbol> window(std::int64_t lo, std::int64_t hi) const;  // inclusive

    // Rewrite a single position, growing the center if needed.
    Configuration with(std::int64_t i, Symbol s) const;

    // The translate sigma^k: result.at(i) = this->at(i + k).
    Configuration shifted(std::int64_t k) const;

    // Absorb center cells that repeat the adjacent background and minimize
    // background periods. Equality is unaffected; keeps windows small.
    Configuration normalized() const;

    bool operator==(const Configuration& o) const;
    bool operator!=(const Configuration& o) const { return !(*this == o); }

private:
    Alphabet alpha_;
    std::vector<Symbol> left_, center_, right_;
    std::int64_t start_;
};

}  // namespace ca
