#include "doctest.h"

#include "fbp/drawing.hpp"
#include "fbp/generators.hpp"

using namespace fbp;

namespace {

// K4 drawn with the outer 3-cycle planar and the two diagonals (1,3), (2,4)
// realized by crossing singleton bundles.
BundledDrawing k4_crossing_drawing() {
    BundledDrawing d;
    for (int i = 1; i <= 4; ++i) d.graph.add_vertex(std::to_string(i));
    for (int i = 0; i < 4; ++i) d.graph.add_edge(i, (i + 1) % 4);
    d.graph.add_edge(0, 2);
    d.graph.add_edge(1, 3);
    Edge e02 = d.graph.norm(0, 2), e13 = d.graph.norm(1, 3);
    Bundle b1{"b1", 0, {e02}};
    Bundle b2{"b2", 1, {e13}};
    d.bundles = {b1, b2};
    d.attachments[e02].first = 0;
    d.attachments[e13].first = 1;
    d.crossings.emplace_back(0, 1);
    auto mid = [&](int u, int v) { return ArcRef{ArcRef::Mid, -1, 0, d.graph.norm(u, v)}; };
    auto trunk = [&](int b, int s) { return ArcRef{ArcRef::Trunk, b, s, {-1, -1}}; };
    // Square 1,2,3,4 clockwise; bundles dive inside and cross at the center.
    d.embedding[NodeRef{NodeRef::Vertex, 0, -1}] = {mid(0, 1), trunk(0, 0), mid(0, 3)};
    d.embedding[NodeRef{NodeRef::Vertex, 1, -1}] = {mid(0, 1), mid(1, 2), trunk(1, 0)};
    d.embedding[NodeRef{NodeRef::Vertex, 2, -1}] = {mid(2, 3), mid(0, 2), mid(1, 2)};
    d.embedding[NodeRef{NodeRef::Vertex, 3, -1}] = {mid(0, 3), mid(1, 3), mid(2, 3)};
    d.embedding[NodeRef{NodeRef::Crossing, 0, 1}] = {trunk(0, 0), trunk(1, 0), trunk(0, 1),
                                                     trunk(1, 1)};
    d.embedding[NodeRef{NodeRef::Terminal, 0, -1}] = {trunk(0, 1), mid(0, 2)};
    d.embedding[NodeRef{NodeRef::Terminal, 1, -1}] = {trunk(1, 1), mid(1, 3)};
    d.variant = Variant::Outer;
    d.sides = 1;
    return d;
}

BundledDrawing c5_drawing() {
    BundledDrawing d;
    for (int i = 1; i <= 5; ++i) d.graph.add_vertex(std::to_string(i));
    for (int i = 0; i < 5; ++i) d.graph.add_edge(i, (i + 1) % 5);
    auto mid = [&](int u, int v) { return ArcRef{ArcRef::Mid, -1, 0, d.graph.norm(u, v)}; };
    for (int i = 0; i < 5; ++i)
        d.embedding[NodeRef{NodeRef::Vertex, i, -1}] = {mid(i, (i + 4) % 5), mid(i, (i + 1) % 5)};
    d.variant = Variant::Outer;
    d.sides = 1;
    return d;
}

}  // namespace

TEST_CASE("planarize counts") {
    auto k4 = k4_crossing_drawing();
    Planarization p = planarize(k4);
    CHECK(p.node_count() == 7);   // 4 + 2 + 1
    CHECK(p.arc_count() == 10);   // 2*2 + 6

    auto c5 = c5_drawing();
    Planarization pc = planarize(c5);
    CHECK(pc.node_count() == 5);
    CHECK(pc.arc_count() == 5);
}

TEST_CASE("face tracing") {
    auto c5 = c5_drawing();
    auto fs = trace_faces(planarize(c5));
    CHECK(fs.faces.size() == 2);

    auto k4 = k4_crossing_drawing();
    auto fk = trace_faces(planarize(k4));
    CHECK(fk.faces.size() == 5);  // V-E+F = 2: 7-10+5

    // Pentagonal base at k=1: n=8, m=10, all 4 faces of length 5.
    auto base = pentagonal_base(1);
    CHECK(base.graph.vertex_count() == 8);
    CHECK(base.graph.edge_count() == 10);
    auto fb = trace_faces(planarize(base));
    CHECK(fb.faces.size() == 4);
    for (const auto& f : fb.faces) CHECK(f.size() == 5);
}

TEST_CASE("validate accepts the K4 drawing and rejects rule breaches") {
    auto d = k4_crossing_drawing();
    auto rep = validate(d);
    CHECK(rep.valid);

    // V3: one bundle in two crossing pairs.
    auto d3 = d;
    d3.crossings.emplace_back(0, 1);
    auto rep3 = validate(d3);
    CHECK_FALSE(rep3.valid);
    CHECK(rep3.violations.front().rule == "V3");

    // V2: an edge bundled at both endpoints fails the 1-sided check.
    auto d2 = d;
    Edge e02 = d2.graph.norm(0, 2);
    d2.bundles.push_back(Bundle{"b3", 2, {e02}});
    d2.attachments[e02].second = 2;
    d2.sides = 1;
    auto rep2 = validate(d2);
    CHECK_FALSE(rep2.valid);
    bool has_v2 = false;
    for (const auto& v : rep2.violations) has_v2 |= (v.rule == "V2");
    CHECK(has_v2);

    // V4: crossing bundles sharing their anchor.
    auto d4 = d;
    d4.bundles[1].anchor = 0;
    auto rep4 = validate(d4);
    CHECK_FALSE(rep4.valid);
}

TEST_CASE("drawing json round trip") {
    auto d = k4_crossing_drawing();
    std::string j = drawing_to_json(d);
    BundledDrawing e = drawing_from_json(j);
    CHECK(drawing_to_json(e) == j);
    CHECK(validate(e).valid);
    CHECK(e.sides == 1);
    CHECK(e.variant == Variant::Outer);
}
