#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "ballean/cache.hpp"

using namespace ballean;

namespace {
const GroupSpec kZ2{{}, 2};
const GroupSpec kZ{{}, 0};
const SequenceSpec kBasis{.kind = SequenceSpec::Kind::basis};
const SequenceSpec kPow2{.kind = SequenceSpec::Kind::geometric, .coeff = 1, .ratio = 2};

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ballean-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};
}  // namespace

TEST_CASE("layer serialization round trips byte for byte") {
    SequenceSpec table{.kind = SequenceSpec::Kind::table,
                       .table = {canonicalize(kZ, {{0, 1}}), canonicalize(kZ, {{0, -3}, {2, 5}})}};
    for (const auto& [spec, seq, window] :
         {std::tuple{kZ2, kBasis, Window{6, 3}}, std::tuple{kZ, kPow2, Window{4, 2}},
          std::tuple{kZ, table, Window{2, 2}}}) {
        auto built = SumsetLayers::build(spec, seq, window);
        std::string text = LayersCodec::serialize(built);
        auto parsed = LayersCodec::parse(text);
        CHECK(parsed == built);
        CHECK(LayersCodec::serialize(parsed) == text);
    }
}

TEST_CASE("malformed layer files are rejected") {
    auto built = SumsetLayers::build(kZ2, kBasis, {4, 2});
    std::string good = LayersCodec::serialize(built);

    CHECK_THROWS_AS(LayersCodec::parse("ballean-layers 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(LayersCodec::parse(good.substr(0, good.size() / 2)), std::invalid_argument);

    std::string tampered = good;
    tampered.replace(tampered.find("elements "), 10, "elements 9");
    CHECK_THROWS_AS(LayersCodec::parse(tampered), std::invalid_argument);
}

TEST_CASE("cache hits are byte-identical to a fresh build") {
    TempDir dir;
    Window window{8, 4};

    auto first = build_cached(kZ2, kBasis, window, {}, dir.path);
    std::filesystem::path file = dir.path / (cache_key(kZ2, kBasis, window) + ".layers");
    REQUIRE(std::filesystem::exists(file));

    std::ifstream in(file, std::ios::binary);
    std::string on_disk((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto fresh = SumsetLayers::build(kZ2, kBasis, window);
    CHECK(on_disk == LayersCodec::serialize(fresh));

    auto second = build_cached(kZ2, kBasis, window, {}, dir.path);
    CHECK(LayersCodec::serialize(second) == LayersCodec::serialize(fresh));
    CHECK(second == first);
}

TEST_CASE("a corrupt cache entry falls back to a fresh build") {
    TempDir dir;
    Window window{5, 3};
    std::filesystem::path file = dir.path / (cache_key(kZ, kPow2, window) + ".layers");
    {
        std::ofstream out(file);
        out << "garbage\n";
    }
    auto L = build_cached(kZ, kPow2, window, {}, dir.path);
    CHECK(L == SumsetLayers::build(kZ, kPow2, window));
}

TEST_CASE("cache keys separate configurations") {
    CHECK(cache_key(kZ2, kBasis, {8, 4}) != cache_key(kZ2, kBasis, {8, 5}));
    CHECK(cache_key(kZ2, kBasis, {8, 4}) != cache_key(kZ, kBasis, {8, 4}));
    CHECK(cache_key(kZ, kPow2, {8, 4}) != cache_key(kZ, kBasis, {8, 4}));
    CHECK(cache_key(kZ2, kBasis, {8, 4}) == cache_key(kZ2, kBasis, {8, 4}));
}
