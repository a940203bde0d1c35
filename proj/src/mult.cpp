#include "ca/mult.hpp"

#include <cmath>
#include <algorithm>
#include <sstream>

namespace ca::mult {

namespace {

mpz_class zpow(int b, int e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

std::vector<Symbol> word_of_code(std::uint64_t code, int base, int len) {
    std::vector<Symbol> w(len);
    for (int i = len - 1; i >= 0; --i) {
        w[i] = (Symbol)(code % base);
        code /= base;
    }
    return w;
}

}  // namespace

CellularAutomaton make_mult_ca(int p, int n) {
    if (p < 2) throw Error("multiplier must be >= 2");
    if (n < 2 || n % p != 0) throw Error("multiplier must divide the base");
    int q = n / p;
    std::vector<Symbol> table(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a * n + b] = (a % q) * p + (b / q);
    return CellularAutomaton(Alphabet::digits(n), 0, 1, std::move(table));
}

Configuration config_of(const mpq_class& xi, int base) {
    if (xi < 0) throw Error("config_of: negative value");
    mpq_class v = xi;
    v.canonicalize();
    // The denominator must divide base^j for some j (terminating expansion).
    mpz_class den = v.get_den();
    int j = 0;
    while (den != 1) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), mpz_class(base).get_mpz_t());
        if (g == 1) throw Error("config_of: expansion does not terminate in this base");
        den /= g;
        ++j;
    }
    mpz_class N = v.get_num() * zpow(base, j) / v.get_den();
    Alphabet alpha = Alphabet::digits(base);
    if (N == 0) return Configuration::uniform(alpha, 0);
    std::vector<Symbol> digits;  // least significant first
    mpz_class rest = N;
    while (rest > 0) {
        mpz_class r = rest % base;
        digits.push_back((Symbol)r.get_si());
        rest /= base;
    }
    // Digit of weight base^t sits at position j - t.
    std::vector<Symbol> center(digits.rbegin(), digits.rend());
    std::int64_t start = (std::int64_t)j - ((std::int64_t)digits.size() - 1);
    return Configuration(alpha, {0}, std::move(center), {0}, start);
}

mpq_class real_of(const Configuration& x, int base) {
    for (Symbol s : x.left_period())
        if (s != 0) throw Error("real_of: nonzero left background");
    for (Symbol s : x.right_period())
        if (s != 0) throw Error("real_of: nonzero right background");
    mpq_class v = 0;
    for (std::int64_t i = x.center_start(); i <= x.center_end(); ++i) {
        Symbol d = x.at(i);
        if (d == 0) continue;
        if (i <= 0)
            v += mpq_class(d * zpow(base, (int)-i));
        else
            v += mpq_class(d) / mpq_class(zpow(base, (int)i));
    }
    v.canonicalize();
    return v;
}

mpz_class integ(std::span<const Symbol> w, int base) {
    if (w.empty()) throw Error("integ: empty word");
    mpz_class v = 0;
    for (Symbol s : w) v = v * base + s;
    return v;
}

std::string DigitLemmaReport::summary() const {
    std::ostringstream os;
    os << "p=" << p << " q=" << q << " k=" << k << " t=" << t << ": " << pairs_checked
       << " words checked, counterexamples: " << counterexamples
       << ", odometer: " << (odometer_ok ? "ok" : "violated");
    return os.str();
}

DigitLemmaReport check_digit_lemmas(int p, int q, int k, int t, std::uint64_t cap) {
    if (t < 1) throw Error("step count must be positive");
    if (k < 2 || k < t + 1) throw Error("word length must be >= max(2, t+1)");
    int base = p * q;
    double total = std::pow((double)base, k);
    if (total > (double)cap) throw CapExceeded("digit lemma check: word space too large");
    std::uint64_t count = (std::uint64_t)total;
    CellularAutomaton ca = make_mult_ca(p, base);

    mpz_class qt = zpow(q, t), qt1 = zpow(q, t - 1);
    mpz_class modk = zpow(base, k), modk1 = zpow(base, k - 1), modkt = zpow(base, k - t);

    auto one_step = [&](const std::vector<Symbol>& w) { return ca.apply_word(w); };
    auto t_steps = [&](std::vector<Symbol> w) {
        for (int i = 0; i < t; ++i) w = ca.apply_word(w);
        return w;
    };

    DigitLemmaReport rep{p, q, k, t, count, 0, true};
    for (std::uint64_t m = 0; m < count; ++m) {
        std::vector<Symbol> w1 = word_of_code(m, base, k);
        mpz_class m2z = (mpz_class((long)m) + qt) % modk;
        std::uint64_t m2c = (std::uint64_t)m2z.get_ui();
        std::vector<Symbol> w2 = word_of_code(m2c, base, k);
        mpz_class i1 = mpz_class((long)m);

        std::vector<Symbol> s1 = one_step(w1), s2 = one_step(w2);
        std::vector<Symbol> f1 = t_steps(w1), f2 = t_steps(w2);
        mpz_class is1 = integ(s1, base), is2 = integ(s2, base);
        mpz_class if1 = integ(f1, base), if2 = integ(f2, base);

        if (i1 < qt && !(is1 < qt1)) ++rep.counterexamples;
        if ((is2 - is1 - qt1) % modk1 != 0) ++rep.counterexamples;
        if (i1 < qt && if1 != 0) ++rep.counterexamples;
        if ((if2 - if1 - 1) % modkt != 0) ++rep.counterexamples;
        // Odometer picture: the t-step image of the m-th word (lex order)
        // is the base-pq expansion of floor(m / q^t) mod (pq)^(k-t).
        if (if1 != (i1 / qt) % modkt) rep.odometer_ok = false;
    }
    return rep;
}

WitnessReport witness_pair(int p, int q, int n) {
    if (n < 1) throw Error("horizon must be positive");
    if (p < 2 || q < 2) throw Error("p, q must be > 1");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), mpz_class(p).get_mpz_t(), mpz_class(q).get_mpz_t());
    if (g != 1) throw Error("p, q must be coprime");
    int base = p * q;
    mpz_class qn = zpow(q, n);
    WitnessReport rep{config_of(mpq_class(qn - 1), base), config_of(mpq_class(qn), base),
                      false, false, {}};

    std::int64_t lo = std::min(rep.x.center_start(), rep.y.center_start()) - 2;
    std::int64_t hi = std::max(rep.x.center_end(), rep.y.center_end()) + 2;
    rep.differ_only_at_origin = true;
    for (std::int64_t i = lo; i <= hi; ++i) {
        bool same = rep.x.at(i) == rep.y.at(i);
        if (i == 0 ? same : !same) rep.differ_only_at_origin = false;
    }

    CellularAutomaton ca = make_mult_ca(p, base);
    Configuration cx = rep.x, cy = rep.y;
    rep.diverges_every_step = true;
    for (int i = 0; i <= n; ++i) {
        Symbol a = cx.at(-i), b = cy.at(-i);
        rep.trace.push_back({a, b});
        if (a == b) rep.diverges_every_step = false;
        if (i < n) {
            cx = step(ca, cx);
            cy = step(ca, cy);
        }
    }
    if (!rep.differ_only_at_origin || !rep.diverges_every_step)
        throw Error("witness divergence check failed (internal error)");
    return rep;
}

namespace {

// First symbols of the iterated images: trace[t] = rule^t(w)[0], t = 0..n.
std::vector<Symbol> first_symbol_trace(const CellularAutomaton& ca, std::vector<Symbol> w,
                                       int n) {
    std::vector<Symbol> tr;
    tr.reserve(n + 1);
    tr.push_back(w[0]);
    for (int t = 1; t <= n; ++t) {
        w = ca.apply_word(w);
        tr.push_back(w[0]);
    }
    return tr;
}

bool interval_has_multiple(const mpz_class& lo, const mpz_class& hi, const mpz_class& m) {
    // open interval (lo, hi)
    return (hi - 1) / m >= lo / m + 1;
}

}  // namespace

int lambda_minus_word(int p, int q, int n, std::span<const Symbol> w, int route) {
    if (n < 1) throw Error("horizon must be positive");
    if ((int)w.size() != n + 1) throw Error("word length must be n+1");
    int base = p * q;

    if (route == 2) {
        // Largest i whose prefix interval contains a multiple of q^n:
        // J(u)_n = (integ(u) (pq)^{n+1-i}, (integ(u)+1) (pq)^{n+1-i}).
        mpz_class qn = zpow(q, n);
        for (int i = n; i >= 0; --i) {
            mpz_class u = i == 0 ? mpz_class(0) : integ(w.subspan(0, i), base);
            mpz_class scale = zpow(base, n + 1 - i);
            if (interval_has_multiple(u * scale, (u + 1) * scale, qn)) return i;
        }
        return 0;
    }

    CellularAutomaton ca = make_mult_ca(p, base);
    std::vector<Symbol> own = first_symbol_trace(ca, {w.begin(), w.end()}, n);
    for (int i = n; i >= 0; --i) {
        int sfx = n + 1 - i;
        std::uint64_t total = 1;
        for (int j = 0; j < sfx; ++j) total *= base;
        std::vector<Symbol> cand(w.begin(), w.end());
        bool member = false;
        for (std::uint64_t c = 0; c < total && !member; ++c) {
            std::vector<Symbol> v = word_of_code(c, base, sfx);
            std::copy(v.begin(), v.end(), cand.begin() + i);
            std::vector<Symbol> tr = first_symbol_trace(ca, cand, n);
            for (int t = i; t <= n; ++t)
                if (tr[t] != own[t]) {
                    member = true;
                    break;
                }
        }
        if (member) return i;
    }
    return 0;
}

AvgBreakdown partition_sizes_bruteforce(int p, int q, int n, std::uint64_t cap) {
    if (n < 1) throw Error("horizon must be positive");
    int base = p * q;
    double totald = std::pow((double)base, n + 1);
    if (totald > (double)cap) throw CapExceeded("partition brute force: word space too large");
    std::uint64_t total = (std::uint64_t)totald;
    CellularAutomaton ca = make_mult_ca(p, base);

    // Digit traces of every word, in lexicographic order (prefix groups are
    // contiguous, so per-level membership is a streaming scan). Flat layout:
    // trace of word c occupies [c*(n+1), (c+1)*(n+1)).
    int tw = n + 1;
    std::vector<Symbol> traces((size_t)total * tw);
    for (std::uint64_t c = 0; c < total; ++c) {
        std::vector<Symbol> tr = first_symbol_trace(ca, word_of_code(c, base, n + 1), n);
        std::copy(tr.begin(), tr.end(), traces.begin() + (size_t)c * tw);
    }

    // member[i] over prefix codes: some two suffixes disagree on trace
    // positions [i, n]. Level i has base^i prefixes, each owning a contiguous
    // run of base^{n+1-i} words.
    std::vector<std::vector<char>> member(n + 1);
    for (int i = 0; i <= n; ++i) {
        std::uint64_t prefixes = 1;
        for (int j = 0; j < i; ++j) prefixes *= base;
        std::uint64_t run = total / prefixes;
        member[i].assign(prefixes, 0);
        for (std::uint64_t u = 0; u < prefixes; ++u) {
            const Symbol* ref = &traces[(size_t)(u * run) * tw];
            for (std::uint64_t c = u * run + 1; c < (u + 1) * run; ++c) {
                const Symbol* tr = &traces[(size_t)c * tw];
                bool diff = false;
                for (int t = i; t <= n; ++t)
                    if (tr[t] != ref[t]) {
                        diff = true;
                        break;
                    }
                if (diff) {
                    member[i][u] = 1;
                    break;
                }
            }
        }
    }

    AvgBreakdown br;
    br.p = p;
    br.q = q;
    br.n = n;
    br.P.assign(n + 1, 0);
    br.d.assign(n + 1, 0);
    for (int i = 0; i <= n; ++i)
        for (char m : member[i]) br.d[i] += m;
    // lambda of word = max level whose prefix is a member; count per level.
    std::vector<std::uint64_t> powv(n + 2, 1);
    for (int i = 1; i <= n + 1; ++i) powv[i] = powv[i - 1] * base;
    for (std::uint64_t c = 0; c < total; ++c) {
        int lam = 0;
        for (int i = n; i >= 1; --i)
            if (member[i][c / powv[n + 1 - i]]) {
                lam = i;
                break;
            }
        br.P[lam] += 1;
    }
    mpz_class weighted = 0;
    for (int i = 0; i <= n; ++i) weighted += i * br.P[i];
    br.I = mpq_class(weighted, zpow(base, n + 1));
    br.I.canonicalize();
    br.normalized = br.I / n;
    br.normalized.canonicalize();
    br.kappa = kappa_exact(p, q, n);
    br.log_base_p = std::log((double)p) / std::log((double)base);
    return br;
}

int kappa_exact(int p, int q, int n) {
    // Largest integer kappa with (pq)^(n+1-kappa) > q^n.
    mpz_class qn = zpow(q, n);
    int base = p * q;
    for (int kappa = n + 1; kappa >= 0; --kappa) {
        if (n + 1 - kappa < 0) continue;
        if (zpow(base, n + 1 - kappa) > qn) return kappa;
    }
    throw Error("kappa: no valid value (unreachable)");
}

mpz_class d_closed_form(int p, int q, int n, int i) {
    if (i < 0 || i > n) throw Error("d_closed_form: index out of range");
    int base = p * q;
    mpz_class lhs = zpow(base, n + 1 - i), rhs = zpow(q, n);
    if (lhs == rhs) throw Error("d_closed_form: boundary case");
    if (lhs > rhs) return zpow(base, i);
    return mpz_class(base) * zpow(p, n) - mpz_class(q) * zpow(p, i);
}

AvgBreakdown avg_exponent_closed(int p, int q, int n) {
    if (n < 1) throw Error("horizon must be positive");
    if (p < 2 || q < 2) throw Error("p, q must be > 1");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), mpz_class(p).get_mpz_t(), mpz_class(q).get_mpz_t());
    if (g != 1) throw Error("p, q must be coprime");
    int base = p * q;
    AvgBreakdown br;
    br.p = p;
    br.q = q;
    br.n = n;
    br.kappa = kappa_exact(p, q, n);
    br.d.assign(n + 1, 0);
    br.P.assign(n + 1, 0);
    std::vector<mpz_class> pn(n + 2, 0);  // |p_n(i)|, with sentinel 0 at n+1
    for (int i = 0; i <= n; ++i) {
        br.d[i] = d_closed_form(p, q, n, i);
        pn[i] = zpow(base, n + 1 - i) * br.d[i];
    }
    for (int i = 0; i <= n; ++i) br.P[i] = pn[i] - pn[i + 1];
    mpz_class sum = br.kappa * pn[br.kappa];
    for (int i = br.kappa + 1; i <= n; ++i) sum += pn[i];
    br.I = mpq_class(sum, zpow(base, n + 1));
    br.I.canonicalize();
    br.normalized = br.I / n;
    br.normalized.canonicalize();
    br.log_base_p = std::log((double)p) / std::log((double)base);
    return br;
}

}  // namespace ca::mult
