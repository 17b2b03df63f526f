#include "fbp/drawing.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace fbp {

using nlohmann::json;

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::General: return "general";
        case Variant::Outer: return "outer";
        case Variant::TwoLayer: return "twolayer";
    }
    return "general";
}

Variant variant_from_name(const std::string& s) {
    if (s == "general") return Variant::General;
    if (s == "outer") return Variant::Outer;
    if (s == "twolayer") return Variant::TwoLayer;
    throw drawing_error("unknown variant '" + s + "'");
}

int BundledDrawing::bundle_index(const std::string& id) const {
    for (size_t i = 0; i < bundles.size(); ++i)
        if (bundles[i].id == id) return static_cast<int>(i);
    return -1;
}

int BundledDrawing::attachment_at(Edge e, VertexId v) const {
    auto it = attachments.find(e);
    if (it == attachments.end()) return -1;
    if (v == e.first) return it->second.first.value_or(-1);
    if (v == e.second) return it->second.second.value_or(-1);
    return -1;
}

bool BundledDrawing::bundle_crossed(int b) const {
    for (auto [x, y] : crossings)
        if (x == b || y == b) return true;
    return false;
}

std::string BundledDrawing::node_key(const NodeRef& n) const {
    switch (n.kind) {
        case NodeRef::Vertex: return "v:" + graph.name(n.a);
        case NodeRef::Terminal: return "t:" + bundles[n.a].id;
        case NodeRef::Crossing: {
            const std::string &p = bundles[n.a].id, &q = bundles[n.b].id;
            return "x:" + (p < q ? p + "|" + q : q + "|" + p);
        }
    }
    return "?";
}

std::string BundledDrawing::arc_key(const ArcRef& a) const {
    if (a.kind == ArcRef::Trunk)
        return "trunk:" + bundles[a.bundle].id + ":" + std::to_string(a.seg);
    return "mid:" + graph.name(a.edge.first) + "-" + graph.name(a.edge.second);
}

namespace {

// The node where edge e ends at endpoint v: the terminal of the attaching
// bundle, or the vertex itself.
NodeRef end_node(const BundledDrawing& d, Edge e, VertexId v) {
    int b = d.attachment_at(e, v);
    if (b >= 0) return NodeRef{NodeRef::Terminal, b, -1};
    return NodeRef{NodeRef::Vertex, v, -1};
}

NodeRef crossing_node(const BundledDrawing& d, int b1, int b2) {
    if (d.bundles[b1].id > d.bundles[b2].id) std::swap(b1, b2);
    return NodeRef{NodeRef::Crossing, b1, b2};
}

}  // namespace

Planarization planarize(const BundledDrawing& d) {
    Planarization p;
    auto add_node = [&](const NodeRef& n) {
        auto it = p.node_index.find(n);
        if (it != p.node_index.end()) return it->second;
        int id = static_cast<int>(p.nodes.size());
        p.nodes.push_back(n);
        p.node_index[n] = id;
        return id;
    };

    for (VertexId v = 0; v < d.graph.vertex_count(); ++v)
        add_node(NodeRef{NodeRef::Vertex, v, -1});
    for (size_t b = 0; b < d.bundles.size(); ++b)
        add_node(NodeRef{NodeRef::Terminal, static_cast<int>(b), -1});

    std::vector<int> crossing_of(d.bundles.size(), -1);
    for (size_t i = 0; i < d.crossings.size(); ++i) {
        auto [b1, b2] = d.crossings[i];
        if (b1 < 0 || b2 < 0 || b1 >= static_cast<int>(d.bundles.size()) ||
            b2 >= static_cast<int>(d.bundles.size()))
            throw drawing_error("crossing references an unknown bundle");
        add_node(crossing_node(d, b1, b2));
        crossing_of[b1] = static_cast<int>(i);
        crossing_of[b2] = static_cast<int>(i);
    }

    std::map<ArcRef, int> arc_index;
    auto add_arc = [&](const ArcRef& r, NodeRef from, NodeRef to) {
        auto fi = p.node_index.find(from);
        auto ti = p.node_index.find(to);
        if (fi == p.node_index.end() || ti == p.node_index.end())
            throw drawing_error("arc endpoint missing from planarization");
        int id = static_cast<int>(p.arcs.size());
        p.arcs.push_back({r, fi->second, ti->second});
        arc_index[r] = id;
        return id;
    };

    for (size_t b = 0; b < d.bundles.size(); ++b) {
        const Bundle& bu = d.bundles[b];
        if (bu.anchor < 0 || bu.anchor >= d.graph.vertex_count())
            throw drawing_error("bundle '" + bu.id + "' has no anchor");
        NodeRef anchor{NodeRef::Vertex, bu.anchor, -1};
        NodeRef term{NodeRef::Terminal, static_cast<int>(b), -1};
        if (crossing_of[b] >= 0) {
            auto [b1, b2] = d.crossings[crossing_of[b]];
            NodeRef x = crossing_node(d, b1, b2);
            add_arc(ArcRef{ArcRef::Trunk, static_cast<int>(b), 0, {-1, -1}}, anchor, x);
            add_arc(ArcRef{ArcRef::Trunk, static_cast<int>(b), 1, {-1, -1}}, x, term);
        } else {
            add_arc(ArcRef{ArcRef::Trunk, static_cast<int>(b), 0, {-1, -1}}, anchor, term);
        }
    }
    for (auto [u, v] : d.graph.edges()) {
        Edge e{u, v};
        add_arc(ArcRef{ArcRef::Mid, -1, 0, e}, end_node(d, e, u), end_node(d, e, v));
    }

    // Rotations: resolve the drawing's clockwise arc lists into darts.
    p.rotation.assign(p.nodes.size(), {});
    std::vector<int> seen(p.arcs.size(), 0);
    for (const auto& [node, arcs] : d.embedding) {
        auto ni = p.node_index.find(node);
        if (ni == p.node_index.end())
            throw drawing_error("embedding lists unknown node");
        for (const ArcRef& r : arcs) {
            auto ai = arc_index.find(r);
            if (ai == arc_index.end())
                throw drawing_error("embedding lists unknown arc at node");
            const auto& arc = p.arcs[ai->second];
            int dart;
            if (arc.from == ni->second)
                dart = 2 * ai->second;
            else if (arc.to == ni->second)
                dart = 2 * ai->second + 1;
            else
                throw drawing_error("embedding lists non-incident arc at node");
            p.rotation[ni->second].push_back(dart);
            ++seen[ai->second];
        }
    }
    for (size_t a = 0; a < p.arcs.size(); ++a)
        if (seen[a] != 2)
            throw drawing_error("arc missing from a rotation");
    for (int n = 0; n < p.node_count(); ++n) {
        std::set<int> uniq(p.rotation[n].begin(), p.rotation[n].end());
        if (uniq.size() != p.rotation[n].size())
            throw drawing_error("rotation repeats an arc");
    }

    // Connectivity of the skeleton.
    if (!p.nodes.empty()) {
        std::vector<bool> vis(p.nodes.size(), false);
        std::vector<int> stack{0};
        vis[0] = true;
        size_t reached = 1;
        while (!stack.empty()) {
            int n = stack.back();
            stack.pop_back();
            for (int dart : p.rotation[n]) {
                const auto& arc = p.arcs[dart / 2];
                int other = (dart % 2 == 0) ? arc.to : arc.from;
                if (!vis[other]) {
                    vis[other] = true;
                    ++reached;
                    stack.push_back(other);
                }
            }
        }
        if (reached != p.nodes.size())
            throw drawing_error("planarization is disconnected");
    }
    return p;
}

FaceSet trace_faces(const Planarization& p) {
    int darts = 2 * p.arc_count();
    // pos_in_rotation[d] = index of dart d in the rotation of its tail node.
    std::vector<int> pos(darts, -1), tail(darts, -1);
    for (int n = 0; n < p.node_count(); ++n)
        for (size_t i = 0; i < p.rotation[n].size(); ++i) {
            pos[p.rotation[n][i]] = static_cast<int>(i);
            tail[p.rotation[n][i]] = n;
        }
    FaceSet fs;
    fs.face_of_dart.assign(darts, -1);
    for (int start = 0; start < darts; ++start) {
        if (fs.face_of_dart[start] >= 0) continue;
        std::vector<int> face;
        int dart = start;
        do {
            fs.face_of_dart[dart] = static_cast<int>(fs.faces.size());
            face.push_back(dart);
            int twin = dart ^ 1;
            int at = tail[twin];
            const auto& rot = p.rotation[at];
            int next = rot[(pos[twin] + 1) % rot.size()];
            dart = next;
        } while (dart != start);
        fs.faces.push_back(std::move(face));
    }
    long v = p.node_count(), e = p.arc_count(), f = static_cast<long>(fs.faces.size());
    if (v - e + f != 2)
        throw drawing_error("embedding not planar: V-E+F = " + std::to_string(v - e + f) +
                            ", genus defect " + std::to_string((2 - (v - e + f)) / 2));
    return fs;
}

std::string face_id(const BundledDrawing& d, const Planarization& p,
                    const std::vector<int>& face) {
    std::string best;
    for (int dart : face) {
        std::string side = d.arc_key(p.arcs[dart / 2].ref) + (dart % 2 == 0 ? ">" : "<");
        if (best.empty() || side < best) best = side;
    }
    return best;
}

namespace {

void check_structure(const BundledDrawing& d, ValidationReport& rep) {
    auto add = [&](const std::string& rule, const std::string& msg,
                   std::vector<std::string> ids = {}) {
        rep.violations.push_back({rule, msg, std::move(ids)});
    };
    std::set<std::string> ids;
    for (const auto& b : d.bundles) {
        if (!ids.insert(b.id).second) add("V1", "duplicate bundle id", {b.id});
        if (b.anchor < 0 || b.anchor >= d.graph.vertex_count()) {
            add("V1", "bundle anchor is not a vertex", {b.id});
            continue;
        }
        if (b.edges_in_order.empty())
            add("V1", "bundle is empty", {b.id});
        if (static_cast<int>(b.edges_in_order.size()) > d.graph.degree(b.anchor))
            add("V1", "bundle larger than its anchor degree", {b.id});
        std::set<Edge> seen;
        for (Edge e : b.edges_in_order) {
            if (e.first != b.anchor && e.second != b.anchor)
                add("V1", "bundled edge not incident to anchor",
                    {b.id, d.graph.edge_key(e.first, e.second)});
            if (!d.graph.has_edge(e.first, e.second))
                add("V1", "bundled edge not in graph", {b.id});
            if (!seen.insert(e).second) add("V1", "bundle repeats an edge", {b.id});
        }
    }
    // Attachment <-> membership consistency.
    for (const auto& [e, at] : d.attachments) {
        if (!d.graph.has_edge(e.first, e.second)) {
            add("V1", "attachment for a non-edge");
            continue;
        }
        for (int side = 0; side < 2; ++side) {
            auto bopt = side == 0 ? at.first : at.second;
            if (!bopt) continue;
            int b = *bopt;
            if (b < 0 || b >= static_cast<int>(d.bundles.size())) {
                add("V1", "attachment names unknown bundle", {d.graph.edge_key(e.first, e.second)});
                continue;
            }
            VertexId v = side == 0 ? e.first : e.second;
            if (d.bundles[b].anchor != v)
                add("V1", "attachment bundle not anchored at that endpoint",
                    {d.bundles[b].id, d.graph.edge_key(e.first, e.second)});
            auto& eo = d.bundles[b].edges_in_order;
            if (std::find(eo.begin(), eo.end(), e) == eo.end())
                add("V1", "attachment to a bundle that does not list the edge",
                    {d.bundles[b].id, d.graph.edge_key(e.first, e.second)});
        }
    }
    for (size_t b = 0; b < d.bundles.size(); ++b)
        for (Edge e : d.bundles[b].edges_in_order) {
            if (d.attachment_at(e, d.bundles[b].anchor) != static_cast<int>(b))
                add("V1", "bundled edge without matching attachment",
                    {d.bundles[b].id, d.graph.edge_key(e.first, e.second)});
        }
    for (auto [b1, b2] : d.crossings) {
        if (b1 < 0 || b2 < 0 || b1 >= static_cast<int>(d.bundles.size()) ||
            b2 >= static_cast<int>(d.bundles.size())) {
            add("V1", "crossing references unknown bundle");
            continue;
        }
        if (b1 == b2) add("V1", "bundle crossing itself", {d.bundles[b1].id});
    }
}

}  // namespace

ValidationReport validate(const BundledDrawing& d) {
    ValidationReport rep;
    check_structure(d, rep);
    if (!rep.violations.empty()) {
        rep.valid = false;
        return rep;
    }
    auto add = [&](const std::string& rule, const std::string& msg,
                   std::vector<std::string> ids = {}) {
        rep.violations.push_back({rule, msg, std::move(ids)});
    };

    // V2: in the 1-sided model each edge has only one fan-bundle.
    if (d.sides == 1) {
        for (const auto& [e, at] : d.attachments)
            if (at.first && at.second)
                add("V2", "edge bundled at both endpoints in the 1-sided model",
                    {d.graph.edge_key(e.first, e.second)});
    }

    // V3: each fan-bundle crosses at most one other fan-bundle.
    {
        std::vector<int> uses(d.bundles.size(), 0);
        for (auto [b1, b2] : d.crossings) {
            ++uses[b1];
            ++uses[b2];
        }
        for (size_t b = 0; b < d.bundles.size(); ++b)
            if (uses[b] > 1)
                add("V3", "bundle takes part in more than one crossing", {d.bundles[b].id});
    }

    // V4: almost simple - no two bundles of the same vertex cross.
    for (auto [b1, b2] : d.crossings)
        if (d.bundles[b1].anchor == d.bundles[b2].anchor)
            add("V4", "crossing bundles share their anchor",
                {d.bundles[b1].id, d.bundles[b2].id});

    if (!rep.violations.empty()) {
        rep.valid = false;
        return rep;
    }

    // V5: the planarization embeds in the plane; this is what makes the
    // unbundled parts crossing-free.
    Planarization p;
    FaceSet fs;
    try {
        p = planarize(d);
        fs = trace_faces(p);
    } catch (const drawing_error& e) {
        add("V5", e.what());
        rep.valid = false;
        return rep;
    }

    // V6: variant-specific checks.
    if (d.variant == Variant::Outer || d.variant == Variant::TwoLayer) {
        int all_vertex_face = -1;
        auto face_has_all = [&](const std::vector<int>& face) {
            std::set<int> verts;
            for (int dart : face) {
                const auto& arc = p.arcs[dart / 2];
                int tailnode = (dart % 2 == 0) ? arc.from : arc.to;
                if (p.nodes[tailnode].kind == NodeRef::Vertex) verts.insert(p.nodes[tailnode].a);
            }
            return static_cast<int>(verts.size()) == d.graph.vertex_count();
        };
        if (d.outer_face) {
            for (size_t f = 0; f < fs.faces.size(); ++f)
                if (face_id(d, p, fs.faces[f]) == *d.outer_face) {
                    all_vertex_face = static_cast<int>(f);
                    break;
                }
            if (all_vertex_face < 0)
                add("V6", "outerFace names no traced face", {*d.outer_face});
            else if (!face_has_all(fs.faces[all_vertex_face]))
                add("V6", "outer face is not incident to every vertex", {*d.outer_face});
        } else {
            for (size_t f = 0; f < fs.faces.size() && all_vertex_face < 0; ++f)
                if (face_has_all(fs.faces[f])) all_vertex_face = static_cast<int>(f);
            if (all_vertex_face < 0)
                add("V6", "no face is incident to every vertex");
        }
        if (d.variant == Variant::TwoLayer && all_vertex_face >= 0) {
            std::string why;
            if (!layers_consistent(d.graph, &why)) {
                add("V6", "twolayer variant needs a bipartition: " + why);
            } else {
                // Walk the real vertices around the face; the layer sequence
                // must be two contiguous blocks.
                std::vector<int> seq;
                std::set<int> seen;
                for (int dart : fs.faces[all_vertex_face]) {
                    const auto& arc = p.arcs[dart / 2];
                    int tailnode = (dart % 2 == 0) ? arc.from : arc.to;
                    if (p.nodes[tailnode].kind == NodeRef::Vertex &&
                        seen.insert(p.nodes[tailnode].a).second)
                        seq.push_back(d.graph.layer(p.nodes[tailnode].a));
                }
                int switches = 0;
                for (size_t i = 0; i < seq.size(); ++i)
                    if (seq[i] != seq[(i + 1) % seq.size()]) ++switches;
                if (switches > 2)
                    add("V6", "layers are not two contiguous blocks along the outer face");
            }
        }
    }

    rep.valid = rep.violations.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// JSON serialization

std::string drawing_to_json(const BundledDrawing& d) {
    json j;
    j["variant"] = variant_name(d.variant);
    j["sides"] = d.sides;
    json vg;
    json verts = json::array();
    for (VertexId v = 0; v < d.graph.vertex_count(); ++v) verts.push_back(d.graph.name(v));
    vg["vertices"] = verts;
    json edges = json::array();
    for (auto [u, v] : d.graph.edges())
        edges.push_back(json::array({d.graph.name(u), d.graph.name(v)}));
    vg["edges"] = edges;
    if (d.graph.has_layers()) {
        json layers;
        for (VertexId v = 0; v < d.graph.vertex_count(); ++v)
            if (d.graph.layer(v) >= 0) layers[d.graph.name(v)] = d.graph.layer(v);
        vg["layers"] = layers;
    }
    j["graph"] = vg;

    json bundles = json::array();
    for (const auto& b : d.bundles) {
        json jb;
        jb["id"] = b.id;
        jb["anchor"] = d.graph.name(b.anchor);
        json be = json::array();
        for (Edge e : b.edges_in_order)
            be.push_back(d.graph.edge_key(e.first, e.second));
        jb["edges"] = be;
        bundles.push_back(jb);
    }
    j["bundles"] = bundles;

    json at;
    for (const auto& [e, a] : d.attachments) {
        json ja;
        ja["first"] = a.first ? json(d.bundles[*a.first].id) : json(nullptr);
        ja["second"] = a.second ? json(d.bundles[*a.second].id) : json(nullptr);
        at[d.graph.edge_key(e.first, e.second)] = ja;
    }
    j["attachments"] = at;

    json cr = json::array();
    for (auto [b1, b2] : d.crossings) {
        std::string p = d.bundles[b1].id, q = d.bundles[b2].id;
        if (q < p) std::swap(p, q);
        cr.push_back(json::array({p, q}));
    }
    j["crossings"] = cr;

    json emb;
    for (const auto& [node, arcs] : d.embedding) {
        json list = json::array();
        for (const auto& a : arcs) list.push_back(d.arc_key(a));
        emb[d.node_key(node)] = list;
    }
    j["embedding"] = emb;
    if (d.outer_face) j["outerFace"] = *d.outer_face;
    return j.dump(2) + "\n";
}

namespace {

NodeRef parse_node_key(const BundledDrawing& d, const std::string& key) {
    if (key.rfind("v:", 0) == 0)
        return NodeRef{NodeRef::Vertex, d.graph.vertex(key.substr(2)), -1};
    if (key.rfind("t:", 0) == 0) {
        int b = d.bundle_index(key.substr(2));
        if (b < 0) throw drawing_error("node key names unknown bundle: " + key);
        return NodeRef{NodeRef::Terminal, b, -1};
    }
    if (key.rfind("x:", 0) == 0) {
        auto bar = key.find('|', 2);
        if (bar == std::string::npos) throw drawing_error("bad crossing node key: " + key);
        int b1 = d.bundle_index(key.substr(2, bar - 2));
        int b2 = d.bundle_index(key.substr(bar + 1));
        if (b1 < 0 || b2 < 0) throw drawing_error("crossing node key names unknown bundle: " + key);
        if (d.bundles[b1].id > d.bundles[b2].id) std::swap(b1, b2);
        return NodeRef{NodeRef::Crossing, b1, b2};
    }
    throw drawing_error("bad node key: " + key);
}

ArcRef parse_arc_key(const BundledDrawing& d, const std::string& key) {
    if (key.rfind("trunk:", 0) == 0) {
        auto colon = key.rfind(':');
        if (colon == 5) throw drawing_error("bad trunk arc key: " + key);
        int b = d.bundle_index(key.substr(6, colon - 6));
        if (b < 0) throw drawing_error("trunk key names unknown bundle: " + key);
        int seg = std::stoi(key.substr(colon + 1));
        return ArcRef{ArcRef::Trunk, b, seg, {-1, -1}};
    }
    if (key.rfind("mid:", 0) == 0) {
        auto dash = key.find('-', 4);
        if (dash == std::string::npos) throw drawing_error("bad mid arc key: " + key);
        VertexId u = d.graph.vertex(key.substr(4, dash - 4));
        VertexId v = d.graph.vertex(key.substr(dash + 1));
        return ArcRef{ArcRef::Mid, -1, 0, d.graph.norm(u, v)};
    }
    throw drawing_error("bad arc key: " + key);
}

Edge parse_edge_key(const Graph& g, const std::string& key) {
    auto dash = key.find('-');
    if (dash == std::string::npos) throw drawing_error("bad edge key: " + key);
    return g.norm(g.vertex(key.substr(0, dash)), g.vertex(key.substr(dash + 1)));
}

}  // namespace

BundledDrawing drawing_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw drawing_error(std::string("bad drawing JSON: ") + e.what());
    }
    BundledDrawing d;
    try {
        d.variant = variant_from_name(j.at("variant").get<std::string>());
        d.sides = j.at("sides").get<int>();
        if (d.sides != 1 && d.sides != 2) throw drawing_error("sides must be 1 or 2");
        const json& vg = j.at("graph");
        for (const auto& v : vg.at("vertices")) d.graph.add_vertex(v.get<std::string>());
        if (vg.contains("layers"))
            for (auto it = vg["layers"].begin(); it != vg["layers"].end(); ++it)
                d.graph.set_layer(d.graph.vertex(it.key()), it.value().get<int>());
        for (const auto& e : vg.at("edges"))
            d.graph.add_edge(d.graph.vertex(e.at(0).get<std::string>()),
                             d.graph.vertex(e.at(1).get<std::string>()));

        for (const auto& jb : j.at("bundles")) {
            Bundle b;
            b.id = jb.at("id").get<std::string>();
            b.anchor = d.graph.vertex(jb.at("anchor").get<std::string>());
            for (const auto& ek : jb.at("edges"))
                b.edges_in_order.push_back(parse_edge_key(d.graph, ek.get<std::string>()));
            d.bundles.push_back(std::move(b));
        }
        if (j.contains("attachments"))
            for (auto it = j["attachments"].begin(); it != j["attachments"].end(); ++it) {
                Edge e = parse_edge_key(d.graph, it.key());
                Attachment a;
                const json& ja = it.value();
                if (ja.contains("first") && !ja["first"].is_null()) {
                    int b = d.bundle_index(ja["first"].get<std::string>());
                    if (b < 0) throw drawing_error("attachment names unknown bundle");
                    a.first = b;
                }
                if (ja.contains("second") && !ja["second"].is_null()) {
                    int b = d.bundle_index(ja["second"].get<std::string>());
                    if (b < 0) throw drawing_error("attachment names unknown bundle");
                    a.second = b;
                }
                d.attachments[e] = a;
            }
        if (j.contains("crossings"))
            for (const auto& c : j["crossings"]) {
                int b1 = d.bundle_index(c.at(0).get<std::string>());
                int b2 = d.bundle_index(c.at(1).get<std::string>());
                if (b1 < 0 || b2 < 0) throw drawing_error("crossing names unknown bundle");
                d.crossings.emplace_back(b1, b2);
            }
        if (j.contains("embedding"))
            for (auto it = j["embedding"].begin(); it != j["embedding"].end(); ++it) {
                NodeRef n = parse_node_key(d, it.key());
                std::vector<ArcRef> arcs;
                for (const auto& ak : it.value())
                    arcs.push_back(parse_arc_key(d, ak.get<std::string>()));
                d.embedding[n] = std::move(arcs);
            }
        if (j.contains("outerFace") && !j["outerFace"].is_null())
            d.outer_face = j["outerFace"].get<std::string>();
    } catch (const json::exception& e) {
        throw drawing_error(std::string("bad drawing JSON: ") + e.what());
    } catch (const parse_error& e) {
        throw drawing_error(std::string("bad drawing JSON: ") + e.what());
    }
    return d;
}

}  // namespace fbp
