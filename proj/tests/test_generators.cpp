#include "doctest.h"

#include "fbp/generators.hpp"

using namespace fbp;

namespace {

void check_family(const FamilyInstance& inst, long n, long m, int sides, Variant variant) {
    CHECK(inst.graph.vertex_count() == n);
    CHECK(inst.graph.edge_count() == m);
    CHECK(inst.expected_edges == m);
    REQUIRE(inst.drawing.has_value());
    CHECK(inst.drawing->sides == sides);
    CHECK(inst.drawing->variant == variant);
    auto rep = validate(*inst.drawing);
    for (const auto& v : rep.violations) CAPTURE(v.rule + ": " + v.message);
    CHECK(rep.valid);
    CHECK(m <= density_bound(sides, variant, n));
}

}  // namespace

TEST_CASE("onesided general family") {
    CHECK_THROWS(gen_onesided_general(0));
    check_family(gen_onesided_general(1), 8, 26, 1, Variant::General);
    check_family(gen_onesided_general(7), 26, 104, 1, Variant::General);
    for (int k = 2; k <= 6; ++k) {
        long n = 5 + 3L * k;
        check_family(gen_onesided_general(k), n, (13 * n - 26) / 3, 1, Variant::General);
    }
}

TEST_CASE("onesided outer family") {
    check_family(gen_onesided_outer(1), 5, 9, 1, Variant::Outer);
    check_family(gen_onesided_outer(2), 8, 17, 1, Variant::Outer);
    for (int q = 3; q <= 8; ++q) {
        long n = 3L * q + 2;
        check_family(gen_onesided_outer(q), n, (8 * n - 13) / 3, 1, Variant::Outer);
    }
    // Base-only check for q=3: 11 vertices, 13 edges, 3 internal pentagons
    // (tested indirectly: n=11 instance has 13 + 4*3 = 25 edges).
    CHECK(gen_onesided_outer(3).graph.edge_count() == 25);
}

TEST_CASE("bn family") {
    check_family(gen_bn(1), 5, 6, 1, Variant::TwoLayer);
    check_family(gen_bn(3), 11, 16, 1, Variant::TwoLayer);
    check_family(gen_bn(10), 32, 51, 1, Variant::TwoLayer);
}

TEST_CASE("waterlily family") {
    CHECK_THROWS(gen_waterlily(8));
    check_family(gen_waterlily(9), 9, 27, 2, Variant::Outer);
    check_family(gen_waterlily(12), 12, 39, 2, Variant::Outer);
    check_family(gen_waterlily(17), 17, 4 * 17 - 9, 2, Variant::Outer);
    auto inst = gen_waterlily(9);
    CHECK(inst.drawing->crossings.size() == 9);
    CHECK(inst.drawing->bundles.size() == 18);
}

TEST_CASE("double waterlily family") {
    check_family(gen_double_waterlily(9), 9, 36, 2, Variant::General);
    check_family(gen_double_waterlily(12), 12, 54, 2, Variant::General);
    check_family(gen_double_waterlily(16), 16, 6 * 16 - 18, 2, Variant::General);
}

TEST_CASE("layered lily family") {
    CHECK_THROWS(gen_layered_lily(9));
    CHECK_THROWS(gen_layered_lily(11));
    check_family(gen_layered_lily(10), 10, 16, 2, Variant::TwoLayer);
    check_family(gen_layered_lily(16), 16, 28, 2, Variant::TwoLayer);
    auto inst = gen_layered_lily(12);
    long sum = 0;
    for (VertexId v = 0; v < inst.graph.vertex_count(); ++v) sum += inst.graph.degree(v);
    CHECK(sum == 2 * (2 * 12 - 4));
}

TEST_CASE("d12") {
    auto inst = gen_d12();
    CHECK(inst.graph.vertex_count() == 20);
    CHECK(inst.graph.edge_count() == 90);
    CHECK_FALSE(inst.drawing.has_value());
    for (VertexId v = 0; v < 20; ++v) CHECK(inst.graph.degree(v) == 9);
}
