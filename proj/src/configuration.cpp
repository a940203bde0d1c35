#include "ca/configuration.hpp"

#include <algorithm>
#include <numeric>

namespace ca {

namespace {

std::int64_t floormod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Smallest p such that w is a repetition of its length-p factor.
int min_period(const std::vector<Symbol>& w) {
    int n = (int)w.size();
    for (int p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (int i = p; i < n && ok; ++i) ok = (w[i] == w[i - p]);
        if (ok) return p;
    }
    return n;
}

}  // namespace

Configuration::Configuration(Alphabet alpha, std::vector<Symbol> left_period,
                             std::vector<Symbol> center, std::vector<Symbol> right_period,
                             std::int64_t center_start)
    : alpha_(std::move(alpha)),
      left_(std::move(left_period)),
      center_(std::move(center)),
      right_(std::move(right_period)),
      start_(center_start) {
    if (left_.empty() || right_.empty()) throw Error("background periods must be nonempty");
    auto check = [&](const std::vector<Symbol>& w) {
        for (Symbol s : w)
            if (s < 0 || s >= alpha_.size()) throw Error("symbol out of range");
    };
    check(left_);
    check(center_);
    check(right_);
}

Configuration Configuration::uniform(Alphabet alpha, Symbol b) {
    return Configuration(std::move(alpha), {b}, {}, {b});
}

Symbol Configuration::at(std::int64_t i) const {
    if (i >= start_) {
        std::int64_t k = i - start_;
        if (k < (std::int64_t)center_.size()) return center_[k];
        k -= (std::int64_t)center_.size();
        return right_[floormod(k, (std::int64_t)right_.size())];
    }
    std::int64_t k = start_ - 1 - i;
    std::int64_t L = (std::int64_t)left_.size();
    return left_[L - 1 - floormod(k, L)];
}

std::vector<Symbol> Configuration::window(std::int64_t lo, std::int64_t hi) const {
    std::vector<Symbol> out;
    out.reserve(hi >= lo ? hi - lo + 1 : 0);
    for (std::int64_t i = lo; i <= hi; ++i) out.push_back(at(i));
    return out;
}

Configuration Configuration::with(std::int64_t i, Symbol s) const {
    std::int64_t lo = std::min(i, start_);
    std::int64_t hi = std::max(i, center_end());
    std::vector<Symbol> c = window(lo, hi);
    c[i - lo] = s;
    // Re-anchor the backgrounds for the grown center.
    std::int64_t dl = start_ - lo;
    std::int64_t dr = hi - center_end();
    std::int64_t L = (std::int64_t)left_.size(), R = (std::int64_t)right_.size();
    std::vector<Symbol> l(L), r(R);
    for (std::int64_t j = 0; j < L; ++j) l[j] = left_[floormod(j - dl, L)];
    for (std::int64_t j = 0; j < R; ++j) r[j] = right_[floormod(j + dr, R)];
    return Configuration(alpha_, std::move(l), std::move(c), std::move(r), lo);
}

Configuration Configuration::shifted(std::int64_t k) const {
    return Configuration(alpha_, left_, center_, right_, start_ - k);
}

Configuration Configuration::normalized() const {
    int lp = min_period(left_), rp = min_period(right_);
    std::vector<Symbol> l(left_.end() - lp, left_.end());
    std::vector<Symbol> r(right_.begin(), right_.begin() + rp);
    std::vector<Symbol> c = center_;
    std::int64_t s = start_;
    // Trim center cells that continue the adjacent background pattern.
    while (!c.empty() && c.back() == r.back()) {
        Symbol last = r.back();
        r.pop_back();
        r.insert(r.begin(), last);
        c.pop_back();
    }
    while (!c.empty() && c.front() == l.front()) {
        Symbol first = l.front();
        l.erase(l.begin());
        l.push_back(first);
        s += 1;
        c.erase(c.begin());
    }
    return Configuration(alpha_, std::move(l), std::move(c), std::move(r), s);
}

bool Configuration::operator==(const Configuration& o) const {
    if (alpha_ != o.alpha_) return false;
    std::int64_t ll = std::lcm((std::int64_t)left_.size(), (std::int64_t)o.left_.size());
    std::int64_t rl = std::lcm((std::int64_t)right_.size(), (std::int64_t)o.right_.size());
    std::int64_t lo = std::min(start_, o.start_) - ll;
    std::int64_t hi = std::max(center_end(), o.center_end()) + rl;
    for (std::int64_t i = lo; i <= hi; ++i)
        if (at(i) != o.at(i)) return false;
    return true;
}

}  // namespace ca
