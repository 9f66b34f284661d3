#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "property_suites.hpp"

using namespace qdissect;

TEST_CASE("ring laws hold on random series") {
    CHECK(props::ring_laws(1000) == 0);
}

TEST_CASE("invert round-trips against mul") {
    CHECK(props::invert_round_trip(1000) == 0);
}

TEST_CASE("extraction is linear") {
    CHECK(props::extraction_linearity(1000) == 0);
}

TEST_CASE("interleaving the extractions rebuilds the series") {
    CHECK(props::interleave_round_trip(1000) == 0);
}

TEST_CASE("reduction commutes with the ring operations and extraction") {
    CHECK(props::reduce_commutation(1000) == 0);
}
