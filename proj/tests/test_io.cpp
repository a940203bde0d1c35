#include <doctest.h>

#include <random>

#include "ca/io.hpp"
#include "ca/mult.hpp"

using namespace ca;

TEST_CASE("rule file round-trip") {
    auto f = mult::make_mult_ca(3, 6);
    std::string text = io::serialize(f);
    auto g = io::parse_rule_file_text(text);
    CHECK(g.alphabet() == f.alphabet());
    CHECK(g.memory() == f.memory());
    CHECK(g.anticipation() == f.anticipation());
    CHECK(g.table() == f.table());
    CHECK(io::serialize(g) == text);
}

TEST_CASE("rule file defaults and errors") {
    auto f = io::parse_rule_file_text(
        "ca v1\n"
        "# a comment\n"
        "alphabet 0 1\n"
        "memory 0\n"
        "anticipation 1\n"
        "default 0\n"
        "1 1 -> 1\n");
    CHECK(f.local(std::vector<Symbol>{0, 1}) == 0);
    CHECK(f.local(std::vector<Symbol>{1, 1}) == 1);

    auto expect_error = [](const std::string& text, const std::string& fragment) {
        try {
            io::parse_rule_file_text(text);
            FAIL_CHECK("expected parse error for: " << text);
        } catch (const Error& e) {
            INFO(e.what());
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    expect_error("nonsense\n", "line 1");
    expect_error("ca v1\nalphabet 0 1\nmemory 0\nanticipation 1\n0 0 -> 2\n", "line 5");
    expect_error("ca v1\nalphabet 0 1\nmemory 0\nanticipation 1\n0 -> 0\n", "line 5");
    expect_error("ca v1\nalphabet 0 1\nmemory 2\nanticipation 1\n", "memory");
    expect_error("ca v1\nalphabet 0 1\nmemory 0\nanticipation 1\n0 0 -> 0\n", "incomplete");
}

TEST_CASE("negative memory round-trips") {
    auto f = io::parse_rule_file_text(
        "ca v1\nalphabet a b\nmemory -1\nanticipation 0\ndefault a\nb b -> b\n");
    CHECK(f.memory() == -1);
    auto g = io::parse_rule_file_text(io::serialize(f));
    CHECK(g.table() == f.table());
    CHECK(g.memory() == -1);
}

TEST_CASE("tile file round-trip and errors") {
    tiles::TileSet ts;
    ts.declared_colors = {"a", "b"};
    ts.tiles.push_back({"t0", "a", "b", "a", "b"});
    ts.tiles.push_back({"t1", "b", "a", "b", "a"});
    std::string text = io::serialize(ts);
    auto back = io::parse_tile_file_text(text);
    REQUIRE(back.tiles.size() == 2);
    CHECK(back.declared_colors == ts.declared_colors);
    CHECK(back.tiles[1].id == "t1");
    CHECK(back.tiles[1].w == "a");
    CHECK(io::serialize(back) == text);

    CHECK_THROWS_AS(io::parse_tile_file_text("tiles v1\ntile t a b\n"), Error);
    CHECK_THROWS_AS(
        io::parse_tile_file_text("tiles v1\ntile t a a a a\ntile t b b b b\n"), Error);
}

TEST_CASE("config specs") {
    Alphabet a = Alphabet::digits(6);
    Configuration x = io::parse_config_spec(a, "0|123|45");
    CHECK(x.at(0) == 1);
    CHECK(x.at(2) == 3);
    CHECK(x.at(3) == 4);
    CHECK(x.at(4) == 5);
    CHECK(x.at(5) == 4);
    CHECK(x.at(-7) == 0);

    Configuration empty_center = io::parse_config_spec(a, "1||2");
    CHECK(empty_center.at(-1) == 1);
    CHECK(empty_center.at(0) == 2);

    CHECK_THROWS_AS(io::parse_config_spec(a, "no-bars"), Error);
    CHECK_THROWS_AS(io::parse_config_spec(a, "|123|"), Error);
    CHECK_THROWS_AS(io::parse_config_spec(a, "0|9|0"), Error);
}
