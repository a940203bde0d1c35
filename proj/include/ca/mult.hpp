#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "ca/analysis.hpp"
#include "ca/automaton.hpp"

namespace ca::mult {

// Radius-1/2 CA over {0..n-1} multiplying base-n expansions by p (p | n):
// with q = n/p and digits a = a1*q + a0, b = b1*q + b0 (a0,b0 < q, a1,b1 < p)
// the local rule is (a, b) -> a0*p + b1.
CellularAutomaton make_mult_ca(int p, int n);

// Digit expansion of a nonnegative rational with terminating base-n
// expansion: result[i] = digit of weight n^-i, zero backgrounds.
Configuration config_of(const mpq_class& xi, int base);

// Exact value of a configuration with zero left background and terminating
// fractional part.
mpq_class real_of(const Configuration& x, int base);

// Integer with word w as its base-b representation (w[0] most significant).
mpz_class integ(std::span<const Symbol> w, int base);

struct DigitLemmaReport {
    int p = 0, q = 0, k = 0, t = 0;
    std::uint64_t pairs_checked = 0;
    std::uint64_t counterexamples = 0;
    bool odometer_ok = false;  // image under t steps increments once per q^t words
    std::string summary() const;
};

// Exhaustively verifies, over all base-pq words of length k:
//  (1) integ(w) < q^t implies integ(rule^t(w)) = 0          (k >= t+1)
//  (2) integ(w2) = integ(w1) + q^t mod (pq)^k implies
//      integ(rule^t(w2)) = integ(rule^t(w1)) + 1 mod (pq)^(k-t)
// plus the odometer picture: in lexicographic order the t-step image
// increments exactly once every q^t words.
DigitLemmaReport check_digit_lemmas(int p, int q, int k, int t,
                                    std::uint64_t cap = 10'000'000);

struct WitnessReport {
    Configuration x, y;           // config(q^n - 1), config(q^n)
    bool differ_only_at_origin = false;
    bool diverges_every_step = false;  // orbit images differ at position -i, 0<=i<=n
    std::vector<std::pair<Symbol, Symbol>> trace;  // per-step pair at position -i
};

WitnessReport witness_pair(int p, int q, int n);

// The common finite-horizon left perturbation radius of all configurations
// in cyl(w, 0), |w| = n+1: max{ i : some suffix change of w beyond i flips
// the first image symbol within steps i..n }. route = 1 enumerates suffix
// pairs; route = 2 uses the open-interval divisibility characterization.
int lambda_minus_word(int p, int q, int n, std::span<const Symbol> w, int route = 1);

struct AvgBreakdown {
    int p = 0, q = 0, n = 0;
    std::vector<mpz_class> P;  // |P_n(i)|, i = 0..n
    std::vector<mpz_class> d;  // |d_n(i)|
    int kappa = 0;
    mpq_class I;               // exact I_n
    mpq_class normalized;      // I_n / n
    double log_base_p = 0.0;   // log_pq(p), display only
};

// Brute force over all (pq)^(n+1) words via lambda_minus_word.
AvgBreakdown partition_sizes_bruteforce(int p, int q, int n,
                                        std::uint64_t cap = 20'000'000);

// |d_n(i)| in closed form: (pq)^i when (pq)^(n+1-i) > q^n, else
// (pq)p^n - q p^i; exact integer comparison, boundary guarded.
mpz_class d_closed_form(int p, int q, int n, int i);

// Exact I_n from the closed forms and kappa (largest integer with
// (pq)^(n+1-kappa) > q^n).
AvgBreakdown avg_exponent_closed(int p, int q, int n);

int kappa_exact(int p, int q, int n);

}  // namespace ca::mult
