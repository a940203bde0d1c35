#include <doctest.h>

#include <random>

#include "ca/io.hpp"
#include "ca/mult.hpp"

using namespace ca;

namespace {

// Frozen 36-entry rule table for the base-6 multiply-by-3 automaton,
// row-major in (a, b): entry = (a mod 2)*3 + floor(b / 2).
const int kMul36Table[36] = {
    0, 0, 1, 1, 2, 2,  // a = 0
    3, 3, 4, 4, 5, 5,  // a = 1
    0, 0, 1, 1, 2, 2,  // a = 2
    3, 3, 4, 4, 5, 5,  // a = 3
    0, 0, 1, 1, 2, 2,  // a = 4
    3, 3, 4, 4, 5, 5,  // a = 5
};

}  // namespace

TEST_CASE("base-6 multiply-by-3 table matches the frozen reference") {
    auto f = mult::make_mult_ca(3, 6);
    CHECK(f.radius_half());
    REQUIRE(f.table().size() == 36);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) CHECK(f.table()[a * 6 + b] == kMul36Table[a * 6 + b]);
}

TEST_CASE("rejects factors that do not divide the base") {
    CHECK_THROWS_AS(mult::make_mult_ca(4, 6), Error);
    CHECK_NOTHROW(mult::make_mult_ca(2, 6));
    CHECK_NOTHROW(mult::make_mult_ca(2, 4));
}

TEST_CASE("digit expansion round-trips exact rationals") {
    mpq_class xi(17, 36);  // terminating base-6 expansion
    Configuration x = mult::config_of(xi, 6);
    CHECK(mult::real_of(x, 6) == xi);
    CHECK(mult::real_of(mult::config_of(mpq_class(0), 6), 6) == 0);
    CHECK(mult::real_of(mult::config_of(mpq_class(6), 6), 6) == 6);
    // Integer part sits at nonpositive weights: digit of weight 6^0 at 0.
    Configuration y = mult::config_of(mpq_class(10), 6);  // "14" base 6
    CHECK(y.at(-1) == 1);
    CHECK(y.at(0) == 4);
}

TEST_CASE("one step multiplies the represented real") {
    std::mt19937_64 rng(2024);
    for (int p : {2, 3}) {
        auto f = mult::make_mult_ca(p, 6);
        for (int i = 0; i < 100; ++i) {
            int j = (int)(rng() % 9);
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 6, j);
            mpz_class num = rng() % (den * 36);
            mpq_class xi(num, den);
            xi.canonicalize();
            Configuration x = mult::config_of(xi, 6);
            CHECK(mult::real_of(step(f, x), 6) == p * xi);
        }
    }
}

TEST_CASE("word-to-integer helper") {
    std::vector<Symbol> v{1, 4, 3};
    CHECK(mult::integ(v, 6) == 1 * 36 + 4 * 6 + 3);
    std::vector<Symbol> z{0, 0};
    CHECK(mult::integ(z, 6) == 0);
}

TEST_CASE("digit carry lemmas hold exhaustively for small sizes") {
    for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 2}}) {
        for (int k = 2; k <= 3; ++k) {
            for (int t = 1; t < k; ++t) {
                auto r = mult::check_digit_lemmas(p, q, k, t);
                CHECK(r.counterexamples == 0);
                CHECK(r.odometer_ok);
                CHECK(r.pairs_checked > 0);
            }
        }
    }
}

TEST_CASE("adjacent-integer witness pair diverges every step") {
    for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 2}}) {
        for (int n : {3, 6}) {
            auto w = mult::witness_pair(p, q, n);
            CHECK(w.differ_only_at_origin);
            CHECK(w.diverges_every_step);
            REQUIRE((int)w.trace.size() == n + 1);
            for (auto [a, b] : w.trace) CHECK(a != b);
        }
    }
}

TEST_CASE("suffix perturbation radius routes agree") {
    const int p = 2, q = 3, n = 3;
    const Alphabet a = Alphabet::digits(p * q);
    for (std::uint64_t code = 0; code < 200; ++code) {
        std::vector<Symbol> w(n + 1);
        std::uint64_t c = code * 7919 % 1296;
        for (int i = n; i >= 0; --i) {
            w[i] = (Symbol)(c % 6);
            c /= 6;
        }
        CHECK(mult::lambda_minus_word(p, q, n, w, 1) == mult::lambda_minus_word(p, q, n, w, 2));
    }
}

TEST_CASE("average exponent: brute force equals closed form") {
    for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 2}}) {
        for (int n = 1; n <= 4; ++n) {
            auto bf = mult::partition_sizes_bruteforce(p, q, n);
            auto cf = mult::avg_exponent_closed(p, q, n);
            CHECK(bf.kappa == cf.kappa);
            CHECK(bf.I == cf.I);
            REQUIRE(bf.d.size() == cf.d.size());
            for (size_t i = 0; i < bf.d.size(); ++i) CHECK(bf.d[i] == cf.d[i]);
            for (size_t i = 0; i < bf.d.size(); ++i)
                CHECK(cf.d[i] == mult::d_closed_form(p, q, n, (int)i));
        }
    }
    auto two = mult::partition_sizes_bruteforce(2, 3, 2);
    CHECK(two.I == mpq_class(4, 3));
}

TEST_CASE("kappa threshold") {
    // kappa = largest i with (pq)^(n+1-i) > q^n.
    CHECK(mult::kappa_exact(2, 3, 2) == 1);
    for (int n = 1; n <= 10; ++n) {
        int k = mult::kappa_exact(2, 3, n);
        mpz_class lhs, rhs;
        mpz_ui_pow_ui(lhs.get_mpz_t(), 6, n + 1 - k);
        mpz_ui_pow_ui(rhs.get_mpz_t(), 3, n);
        CHECK(lhs > rhs);
        mpz_ui_pow_ui(lhs.get_mpz_t(), 6, n - k);
        CHECK(lhs <= rhs);
    }
}

TEST_CASE("normalized average approaches the expected constant") {
    auto r = mult::avg_exponent_closed(2, 3, 40);
    double v = r.normalized.get_d();
    CHECK(v == doctest::Approx(r.log_base_p).epsilon(0.2));
    CHECK(std::abs(v - 0.386853) < 3.0 / 40);
}
