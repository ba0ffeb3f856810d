#include <catch2/catch_amalgamated.hpp>

#include "ballean/sequence.hpp"

using namespace ballean;

namespace {
const GroupSpec kZ2{{}, 2};
const GroupSpec kZ{{}, 0};

Element zint(coeff_t v) { return canonicalize(kZ, {{0, v}}); }
}  // namespace

TEST_CASE("term families") {
    SequenceSpec basis{.kind = SequenceSpec::Kind::basis};
    CHECK(seq_term(kZ2, basis, 4) == canonicalize(kZ2, {{4, 1}}));

    SequenceSpec alt{.kind = SequenceSpec::Kind::alternating_geometric, .coeff = 1, .ratio = 2};
    CHECK(seq_term(kZ, alt, 0) == zint(1));
    CHECK(seq_term(kZ, alt, 1) == zint(-2));
    CHECK(seq_term(kZ, alt, 3) == zint(-8));

    SequenceSpec geo{.kind = SequenceSpec::Kind::geometric, .coeff = 1, .ratio = 3};
    CHECK(seq_term(kZ, geo, 2) == zint(9));

    SequenceSpec fact{.kind = SequenceSpec::Kind::factorial, .coeff = 1};
    CHECK(seq_term(kZ, fact, 0) == zint(1));
    CHECK(seq_term(kZ, fact, 4) == zint(24));

    SequenceSpec table{.kind = SequenceSpec::Kind::table,
                       .table = {zint(7), Element{}, zint(-1)}};
    CHECK(seq_term(kZ, table, 0) == zint(7));
    CHECK(seq_term(kZ, table, 1).is_zero());
}

TEST_CASE("table exhaustion is its own error") {
    SequenceSpec table{.kind = SequenceSpec::Kind::table, .table = {zint(1)}};
    CHECK_THROWS_AS(seq_term(kZ, table, 1), table_exhausted);
}

TEST_CASE("terms overflowing 64 bits are an error, not a wrap") {
    SequenceSpec geo{.kind = SequenceSpec::Kind::geometric, .coeff = 1, .ratio = 2};
    CHECK_THROWS_AS(seq_term(kZ, geo, 64), std::overflow_error);
}

TEST_CASE("seq_term is pure") {
    SequenceSpec geo{.kind = SequenceSpec::Kind::geometric, .coeff = 3, .ratio = -2};
    for (std::size_t n = 0; n < 10; ++n) CHECK(seq_term(kZ, geo, n) == seq_term(kZ, geo, n));
}

TEST_CASE("nontriviality on a window") {
    SequenceSpec basis{.kind = SequenceSpec::Kind::basis};
    auto report = check_nontrivial(kZ2, basis, 10);
    CHECK(report.zero_terms == 0);
    CHECK(report.nontrivial_on_window);

    SequenceSpec table{.kind = SequenceSpec::Kind::table,
                       .table = {canonicalize(kZ2, {{0, 1}}), Element{}, Element{}}};
    report = check_nontrivial(kZ2, table, 3);
    CHECK(report.zero_terms == 2);
    CHECK_FALSE(report.nontrivial_on_window);

    SequenceSpec alt{.kind = SequenceSpec::Kind::alternating_geometric, .coeff = 1, .ratio = 2};
    report = check_nontrivial(kZ, alt, 6);
    CHECK(report.zero_terms == 0);
    CHECK(report.nontrivial_on_window);
}

TEST_CASE("sequence spec round trips through text") {
    SequenceSpec geo{.kind = SequenceSpec::Kind::geometric, .coeff = 2, .ratio = -3, .coord = 1};
    CHECK(SequenceSpec::from_string(kZ, geo.to_string()) == geo);

    SequenceSpec basis{.kind = SequenceSpec::Kind::basis};
    CHECK(SequenceSpec::from_string(kZ2, basis.to_string()) == basis);

    SequenceSpec table{.kind = SequenceSpec::Kind::table,
                       .table = {zint(3), zint(-9), canonicalize(kZ, {{2, 5}})}};
    CHECK(SequenceSpec::from_string(kZ, table.to_string()) == table);
}
