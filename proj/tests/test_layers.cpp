#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "ballean/cache.hpp"
#include "ballean/layers.hpp"
#include "oracles.hpp"

using namespace ballean;

namespace {
const GroupSpec kZ2{{}, 2};
const GroupSpec kZ{{}, 0};

const SequenceSpec kBasis{.kind = SequenceSpec::Kind::basis};
const SequenceSpec kPow2{.kind = SequenceSpec::Kind::geometric, .coeff = 1, .ratio = 2};

Element e(coord_t i) { return canonicalize(kZ2, {{i, 1}}); }
Element zint(coeff_t v) { return canonicalize(kZ, {{0, v}}); }

std::set<Element> universe_set(const SumsetLayers& L) {
    std::set<Element> out;
    for (int d = 0; d <= L.nmax(); ++d)
        out.insert(L.shell(d).begin(), L.shell(d).end());
    return out;
}
}  // namespace

TEST_CASE("layer sizes on the order-2 basis window") {
    auto L = SumsetLayers::build(kZ2, kBasis, {8, 4});
    CHECK(L.growth_profile() == std::vector<std::size_t>{1, 9, 37, 93, 163});
    for (int n = 0; n <= 4; ++n)
        CHECK(L.growth_profile()[static_cast<std::size_t>(n)] == oracles::binom_ball_size(8, n));
}

TEST_CASE("layers on the doubling window") {
    SECTION("depth 0") {
        auto L = SumsetLayers::build(kZ, kPow2, {4, 0});
        CHECK(L.growth_profile() == std::vector<std::size_t>{1});
        CHECK(L.shell(0) == std::vector<Element>{Element{}});
    }
    SECTION("depth 1 ball is the alphabet") {
        auto L = SumsetLayers::build(kZ, kPow2, {4, 1});
        std::set<Element> ball = universe_set(L);
        std::set<Element> expected;
        for (coeff_t v : {0, 1, -1, 2, -2, 4, -4, 8, -8}) expected.insert(zint(v));
        CHECK(ball == expected);
        CHECK(L.size() == 9);
    }
    SECTION("depth 2 against the enumeration oracle") {
        auto L = SumsetLayers::build(kZ, kPow2, {4, 2});
        auto balls = oracles::oracle_balls(kZ, oracles::oracle_alphabet(kZ, kPow2, 4), 2);
        CHECK(L.growth_profile() == std::vector<std::size_t>{1, 9, 25});
        CHECK(universe_set(L) == balls[2]);
    }
}

TEST_CASE("layer contents match the full enumeration oracle") {
    struct Config {
        GroupSpec spec;
        SequenceSpec seq;
        Window window;
    };
    for (const auto& [spec, seq, window] : {Config{kZ2, kBasis, {6, 3}}, Config{kZ, kPow2, {4, 3}}}) {
        auto L = SumsetLayers::build(spec, seq, window);
        auto balls = oracles::oracle_balls(spec, oracles::oracle_alphabet(spec, seq, window.generators),
                                           window.nmax);
        for (int d = 0; d <= window.nmax; ++d) {
            std::set<Element> ball_d;
            for (int k = 0; k <= d; ++k) ball_d.insert(L.shell(k).begin(), L.shell(k).end());
            REQUIRE(ball_d == balls[static_cast<std::size_t>(d)]);
        }
    }
}

TEST_CASE("word length agrees with breadth-first graph distance") {
    struct Config {
        GroupSpec spec;
        SequenceSpec seq;
        Window window;
    };
    for (const auto& [spec, seq, window] : {Config{kZ2, kBasis, {6, 4}}, Config{kZ, kPow2, {4, 4}}}) {
        auto L = SumsetLayers::build(spec, seq, window);
        auto alphabet = oracles::oracle_alphabet(spec, seq, window.generators);
        auto dist = oracles::oracle_bfs_dist(spec, alphabet, universe_set(L));
        for (const auto& [element, d] : dist)
            if (d <= window.nmax) REQUIRE(L.word_length(element) == d);
        for (int d = 0; d <= window.nmax; ++d)
            for (const Element& x : L.shell(d)) REQUIRE(dist.at(x) == d);
    }
}

TEST_CASE("word length examples") {
    auto L2 = SumsetLayers::build(kZ2, kBasis, {8, 4});
    CHECK(L2.word_length(canonicalize(kZ2, {{0, 1}, {3, 1}, {5, 1}})) == 3);
    CHECK(L2.word_length(Element{}) == 0);
    CHECK_FALSE(L2.word_length(canonicalize(kZ2, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}})));

    auto LZ = SumsetLayers::build(kZ, kPow2, {4, 3});
    CHECK(LZ.word_length(zint(7)) == 2);  // 7 = 8 - 1 beats 1 + 2 + 4
    CHECK(LZ.word_length(zint(11)) == 3);  // 11 = 8 + 2 + 1
}

TEST_CASE("dist examples and metric properties") {
    auto L2 = SumsetLayers::build(kZ2, kBasis, {8, 4});
    CHECK(L2.dist(e(0), e(0)) == 0);
    CHECK(L2.dist(e(0), e(1)) == 2);

    auto LZ = SumsetLayers::build(kZ, kPow2, {4, 3});
    CHECK(LZ.dist(zint(5), zint(4)) == 1);

    std::mt19937_64 rng(41);
    std::vector<Element> sample;
    for (int i = 0; i < 30; ++i)
        sample.push_back(oracles::random_element(kZ2, rng, 7, 1, 4));
    for (const Element& x : sample)
        for (const Element& y : sample) {
            auto dxy = L2.dist(x, y);
            REQUIRE(dxy == L2.dist(y, x));
            if (x == y) REQUIRE(dxy == 0);
            for (const Element& z : sample) {
                auto dxz = L2.dist(x, z);
                auto dzy = L2.dist(z, y);
                if (dxy && dxz && dzy) REQUIRE(*dxy <= *dxz + *dzy);
            }
        }
}

TEST_CASE("decompose returns shortest words") {
    auto L2 = SumsetLayers::build(kZ2, kBasis, {8, 4});
    auto letters = L2.decompose(add(kZ2, e(2), e(5)));
    CHECK(std::multiset<Element>(letters.begin(), letters.end()) ==
          std::multiset<Element>{e(2), e(5)});
    CHECK(L2.decompose(Element{}).empty());

    auto LZ = SumsetLayers::build(kZ, kPow2, {4, 3});
    // 3 has two shortest words, 1 + 2 and 4 - 1; the canonical back-pointer
    // rule (minimal predecessor, then generator) picks the latter.
    auto word = LZ.decompose(zint(3));
    CHECK(word.size() == 2);
    CHECK(std::multiset<Element>(word.begin(), word.end()) ==
          std::multiset<Element>{zint(-1), zint(4)});

    SECTION("every in-window element decomposes into word_length letters from A") {
        std::set<Element> alphabet(LZ.alphabet().begin(), LZ.alphabet().end());
        for (int d = 0; d <= LZ.nmax(); ++d)
            for (const Element& x : LZ.shell(d)) {
                auto w = LZ.decompose(x);
                REQUIRE(w.size() == static_cast<std::size_t>(d));
                Element sum;
                for (const Element& letter : w) {
                    REQUIRE(alphabet.count(letter) == 1);
                    sum = add(kZ, sum, letter);
                }
                REQUIRE(sum == x);
            }
    }
    SECTION("outside the window") {
        CHECK_THROWS_AS(LZ.decompose(zint(1000)), window_exhausted);
    }
}

TEST_CASE("sumset algebra invariants") {
    auto L = SumsetLayers::build(kZ2, kBasis, {8, 4});

    SECTION("L_i + L_j inside L_{i+j}") {
        std::mt19937_64 rng(99);
        for (int iter = 0; iter < 300; ++iter) {
            int i = static_cast<int>(rng() % 3);
            int j = static_cast<int>(rng() % static_cast<unsigned>(4 - i + 1));
            const auto& shell_i = L.shell(i);
            const auto& shell_j = L.shell(j);
            const Element& x = shell_i[rng() % shell_i.size()];
            const Element& y = shell_j[rng() % shell_j.size()];
            REQUIRE(L.contains(add(kZ2, x, y), i + j));
        }
    }
    SECTION("exact symmetry of every layer") {
        for (int d = 0; d <= 4; ++d) {
            std::set<Element> shell(L.shell(d).begin(), L.shell(d).end());
            for (const Element& x : shell) REQUIRE(shell.count(neg(kZ2, x)) == 1);
        }
    }
    SECTION("more generators never lengthen a word") {
        auto wide = SumsetLayers::build(kZ2, kBasis, {12, 4});
        for (int d = 0; d <= 4; ++d)
            for (const Element& x : L.shell(d)) {
                auto w = wide.word_length(x);
                REQUIRE(w);
                REQUIRE(*w <= d);
            }
    }
}

TEST_CASE("zero and duplicate sequence terms collapse inside the alphabet") {
    SequenceSpec messy{.kind = SequenceSpec::Kind::table,
                       .table = {zint(1), Element{}, zint(1), zint(-1), zint(2)}};
    auto L = SumsetLayers::build(kZ, messy, {5, 2});
    CHECK(L.alphabet().size() == 5);  // {0, 1, -1, 2, -2}
    CHECK(L.alphabet()[0].is_zero());
    auto plain = SumsetLayers::build(
        kZ, SequenceSpec{.kind = SequenceSpec::Kind::table, .table = {zint(1), zint(2)}}, {2, 2});
    CHECK(universe_set(L) == universe_set(plain));
}

TEST_CASE("build is deterministic and schedule independent") {
    auto serial = SumsetLayers::build(kZ2, kBasis, {10, 5}, {.threads = 1});
    auto parallel = SumsetLayers::build(kZ2, kBasis, {10, 5}, {.threads = 4});
    auto again = SumsetLayers::build(kZ2, kBasis, {10, 5}, {.threads = 3});
    CHECK(LayersCodec::serialize(serial) == LayersCodec::serialize(parallel));
    CHECK(LayersCodec::serialize(serial) == LayersCodec::serialize(again));
    CHECK(serial == parallel);
}

TEST_CASE("cardinality cap reports the depth reached") {
    try {
        SumsetLayers::build(kZ2, kBasis, {10, 5}, {.cap = 60});
        FAIL("expected layer_cap_exceeded");
    } catch (const layer_cap_exceeded& err) {
        CHECK(err.depth_reached == 2);  // |L_2| = 56 fits the cap of 60, |L_3| = 176 does not
    }
}

TEST_CASE("covering number brackets") {
    auto L = SumsetLayers::build(kZ2, kBasis, {12, 4});
    CHECK(L.covering_number(0).lower == 1);
    CHECK(L.covering_number(0).upper == 1);
    CHECK(L.covering_number(1).lower == 1);
    CHECK(L.covering_number(1).upper == 1);

    auto LZ = SumsetLayers::build(kZ, kPow2, {4, 2});
    CHECK(LZ.covering_number(1).lower == 1);
    CHECK(LZ.covering_number(1).upper == 1);

    auto c2 = L.covering_number(2);
    auto c3 = L.covering_number(3);
    CHECK(c3.lower > c2.lower);
    for (int n = 0; n <= 4; ++n) {
        auto bounds = L.covering_number(n);
        REQUIRE(bounds.lower <= bounds.upper);
    }
}

TEST_CASE("window text round trip") {
    Window w{10, 7};
    CHECK(Window::from_string(w.to_string()) == w);
    CHECK_THROWS_AS(Window::from_string("N=x;nmax=2"), std::invalid_argument);
}
