#include "fbp/generators.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <sstream>

namespace fbp {

namespace {
inline std::pair<int, int> mmp(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }
}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::OnesidedGeneral: return "onesided-general";
        case Family::OnesidedOuter: return "onesided-outer";
        case Family::Bn: return "bn";
        case Family::Waterlily: return "waterlily";
        case Family::DoubleWaterlily: return "double-waterlily";
        case Family::LayeredLily: return "layered-lily";
        case Family::D12: return "d12";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
    for (Family f : {Family::OnesidedGeneral, Family::OnesidedOuter, Family::Bn,
                     Family::Waterlily, Family::DoubleWaterlily, Family::LayeredLily,
                     Family::D12})
        if (family_name(f) == s) return f;
    return std::nullopt;
}

long density_bound(int sides, Variant variant, long n) {
    if (sides == 1) {
        switch (variant) {
            case Variant::TwoLayer: return (5 * n - 7) / 3;
            case Variant::Outer: return (8 * n - 13) / 3;
            case Variant::General: return (13 * n - 26) / 3;
        }
    }
    switch (variant) {
        case Variant::TwoLayer: return 3 * n - 7;
        case Variant::Outer: return 4 * n - 9;
        case Variant::General: return (43 * n - 78) / 5;
    }
    return 0;
}

namespace {

// ---------------------------------------------------------------------------
// Rotation items used while assembling embeddings.

struct Item {
    enum Kind { MidArc, TrunkArc } kind;
    Edge e{-1, -1};
    int bundle = -1;
    int seg = 0;
};

Item mid_item(Edge e) { return Item{Item::MidArc, e, -1, 0}; }
Item trunk_item(int bundle, int seg) { return Item{Item::TrunkArc, {-1, -1}, bundle, seg}; }

ArcRef item_arc(const Item& it) {
    if (it.kind == Item::MidArc) return ArcRef{ArcRef::Mid, -1, 0, it.e};
    return ArcRef{ArcRef::Trunk, it.bundle, it.seg, {-1, -1}};
}

void set_rotation(BundledDrawing& d, NodeRef n, const std::vector<Item>& items) {
    std::vector<ArcRef> arcs;
    arcs.reserve(items.size());
    for (const auto& it : items) arcs.push_back(item_arc(it));
    d.embedding[n] = std::move(arcs);
}

void set_attach(BundledDrawing& d, Edge e, VertexId v, int bundle) {
    auto& at = d.attachments[e];
    if (v == e.first)
        at.first = bundle;
    else
        at.second = bundle;
}

int add_bundle(BundledDrawing& d, const std::string& id, VertexId anchor,
               std::vector<Edge> edges) {
    Bundle b;
    b.id = id;
    b.anchor = anchor;
    b.edges_in_order = std::move(edges);
    d.bundles.push_back(std::move(b));
    int idx = static_cast<int>(d.bundles.size()) - 1;
    for (Edge e : d.bundles[idx].edges_in_order) set_attach(d, e, anchor, idx);
    return idx;
}

// Attaches the all-vertex face id as the drawing's outer face hint.
void set_outer_hint(BundledDrawing& d) {
    Planarization p = planarize(d);
    FaceSet fs = trace_faces(p);
    for (const auto& face : fs.faces) {
        std::set<int> verts;
        for (int dart : face) {
            const auto& arc = p.arcs[dart / 2];
            int tail = (dart % 2 == 0) ? arc.from : arc.to;
            if (p.nodes[tail].kind == NodeRef::Vertex) verts.insert(p.nodes[tail].a);
        }
        if (static_cast<int>(verts.size()) == d.graph.vertex_count()) {
            d.outer_face = face_id(d, p, face);
            return;
        }
    }
    throw drawing_error("no all-vertex face for outer hint");
}

void check_instance(FamilyInstance& inst) {
    if (inst.graph.edge_count() != inst.expected_edges)
        throw drawing_error(family_name(inst.family) + ": built " +
                            std::to_string(inst.graph.edge_count()) + " edges, expected " +
                            std::to_string(inst.expected_edges));
    if (inst.drawing) {
        ValidationReport rep = validate(*inst.drawing);
        if (!rep.valid) {
            std::string msg = family_name(inst.family) + ": drawing invalid:";
            for (const auto& v : rep.violations) msg += " [" + v.rule + "] " + v.message + ";";
            throw drawing_error(msg);
        }
    }
}

// ---------------------------------------------------------------------------
// Plain embedded graphs (neighbor rotations) used for planar bases.

struct RotGraph {
    int n = 0;
    std::vector<std::vector<int>> rot;     // clockwise neighbor lists
    std::set<std::pair<int, int>> edges;   // normalized

    int add_vertex() {
        rot.emplace_back();
        return n++;
    }
    void add_edge_at(int u, int pos_u, int v, int pos_v) {
        rot[u].insert(rot[u].begin() + pos_u, v);
        rot[v].insert(rot[v].begin() + pos_v, u);
        edges.insert(mmp(u, v));
    }
    void append_edge(int u, int v) {
        rot[u].push_back(v);
        rot[v].push_back(u);
        edges.insert(mmp(u, v));
    }
    int pos_of(int u, int v) const {
        for (size_t i = 0; i < rot[u].size(); ++i)
            if (rot[u][i] == v) return static_cast<int>(i);
        throw drawing_error("pos_of: missing neighbor");
    }
    // Faces as vertex cycles (tails of darts), traced with successor-of-twin.
    std::vector<std::vector<int>> faces() const {
        std::map<std::pair<int, int>, int> pos;
        for (int v = 0; v < n; ++v)
            for (size_t i = 0; i < rot[v].size(); ++i) pos[{v, rot[v][i]}] = static_cast<int>(i);
        std::set<std::pair<int, int>> done;
        std::vector<std::vector<int>> out;
        for (int v = 0; v < n; ++v)
            for (int w : rot[v]) {
                if (done.count({v, w})) continue;
                std::vector<int> cycle;
                int a = v, b = w;
                do {
                    done.insert({a, b});
                    cycle.push_back(a);
                    int p = pos[{b, a}];
                    int c = rot[b][(p + 1) % rot[b].size()];
                    a = b;
                    b = c;
                } while (!(a == v && b == w));
                out.push_back(std::move(cycle));
            }
        return out;
    }
};

// Splits pentagonal face y1..y5 (trace order) into three pentagons by the
// paths y1-a-b-y3 and a-c-y4.
void split_pentagon(RotGraph& g, const std::vector<int>& f) {
    int y1 = f[0], y2 = f[1], y3 = f[2], y4 = f[3], y5 = f[4];
    int a = g.add_vertex(), b = g.add_vertex(), c = g.add_vertex();
    auto insert_between = [&](int v, int after, int before, int nb) {
        int p = g.pos_of(v, after);
        int deg = static_cast<int>(g.rot[v].size());
        if (g.rot[v][(p + 1) % deg] != before)
            throw drawing_error("split corner is not a face corner");
        g.rot[v].insert(g.rot[v].begin() + p + 1, nb);
    };
    insert_between(y1, y5, y2, a);
    insert_between(y3, y2, y4, b);
    insert_between(y4, y3, y5, c);
    g.rot[a] = {y1, c, b};
    g.rot[b] = {a, y3};
    g.rot[c] = {a, y4};
    g.edges.insert(mmp(y1, a));
    g.edges.insert(mmp(a, b));
    g.edges.insert(mmp(b, y3));
    g.edges.insert(mmp(a, c));
    g.edges.insert(mmp(c, y4));
}

RotGraph pentagon_base_rot(int k) {
    RotGraph g;
    for (int i = 0; i < 5; ++i) g.add_vertex();
    // C5 drawn as a cycle: rotation [prev, next] everywhere.
    for (int i = 0; i < 5; ++i) g.rot[i] = {(i + 4) % 5, (i + 1) % 5};
    for (int i = 0; i < 5; ++i) g.edges.insert(mmp(i, (i + 1) % 5));
    for (int s = 0; s < k; ++s) {
        auto faces = g.faces();
        // Deterministic choice: first traced pentagon.
        split_pentagon(g, faces.front());
        for (const auto& f : g.faces())
            if (f.size() != 5) throw drawing_error("pentagon split produced a non-pentagon");
    }
    return g;
}

BundledDrawing rot_to_drawing(const RotGraph& g) {
    BundledDrawing d;
    for (int v = 0; v < g.n; ++v) d.graph.add_vertex(std::to_string(v + 1));
    for (auto [u, v] : g.edges) d.graph.add_edge(u, v);
    for (int v = 0; v < g.n; ++v) {
        std::vector<Item> items;
        for (int w : g.rot[v]) items.push_back(mid_item(d.graph.norm(v, w)));
        set_rotation(d, NodeRef{NodeRef::Vertex, v, -1}, items);
    }
    return d;
}

// ---------------------------------------------------------------------------
// The four-diagonal gadget placed inside a pentagonal face (the K5-minus-edge
// pattern): bundles at two consecutive face vertices, crossing once, omitting
// the chord between the other pair.

struct PentagonGadgetPlan {
    std::vector<int> w;  // face cycle rotated so the omitted chord is (w3,w5)
};

void apply_pentagon_gadget(BundledDrawing& d, std::vector<std::vector<Item>>& vrot,
                           const std::vector<int>& w, int face_index) {
    int w1 = w[0], w2 = w[1], w3 = w[2], w4 = w[3], w5 = w[4];
    Edge e13 = d.graph.norm(w1, w3), e14 = d.graph.norm(w1, w4);
    Edge e24 = d.graph.norm(w2, w4), e25 = d.graph.norm(w2, w5);
    d.graph.add_edge(e13.first, e13.second);
    d.graph.add_edge(e14.first, e14.second);
    d.graph.add_edge(e24.first, e24.second);
    d.graph.add_edge(e25.first, e25.second);
    std::string tag = std::to_string(face_index);
    int b1 = add_bundle(d, "f" + tag + "a", w1, {e14, e13});
    int b2 = add_bundle(d, "f" + tag + "b", w2, {e25, e24});
    d.crossings.emplace_back(b1, b2);

    auto insert_corner = [&](int v, int after, int before, std::vector<Item> items) {
        auto& rot = vrot[v];
        Edge ea = d.graph.norm(v, after);
        int p = -1;
        for (size_t i = 0; i < rot.size(); ++i)
            if (rot[i].kind == Item::MidArc && rot[i].e == ea) p = static_cast<int>(i);
        if (p < 0) throw drawing_error("gadget corner edge missing");
        Edge eb = d.graph.norm(v, before);
        const Item& next = rot[(p + 1) % rot.size()];
        if (!(next.kind == Item::MidArc && next.e == eb))
            throw drawing_error("gadget corner is not a face corner");
        rot.insert(rot.begin() + p + 1, items.begin(), items.end());
    };
    insert_corner(w1, w5, w2, {trunk_item(b1, 0)});
    insert_corner(w2, w1, w3, {trunk_item(b2, 0)});
    insert_corner(w3, w2, w4, {mid_item(e13)});
    insert_corner(w4, w3, w5, {mid_item(e14), mid_item(e24)});
    insert_corner(w5, w4, w1, {mid_item(e25)});

    set_rotation(d, NodeRef{NodeRef::Crossing, std::min(b1, b2), std::max(b1, b2)},
                 {trunk_item(b1, 0), trunk_item(b2, 1), trunk_item(b1, 1), trunk_item(b2, 0)});
    set_rotation(d, NodeRef{NodeRef::Terminal, b1, -1},
                 {trunk_item(b1, 1), mid_item(e14), mid_item(e13)});
    set_rotation(d, NodeRef{NodeRef::Terminal, b2, -1},
                 {trunk_item(b2, 1), mid_item(e25), mid_item(e24)});
}

// Rotates face cycle z so that the omitted chord pair sits at (w3,w5).
std::vector<int> rotate_for_omission(const std::vector<int>& z, std::pair<int, int> omit) {
    for (int i = 0; i < 5; ++i) {
        int a = z[i], b = z[(i + 2) % 5];
        if (mmp(a, b) == omit) {
            std::vector<int> w(5);
            for (int j = 0; j < 5; ++j) w[j] = z[(i + 3 + j) % 5];
            return w;
        }
    }
    throw drawing_error("omitted pair is not a chord of the face");
}

std::vector<std::pair<int, int>> face_chords(const std::vector<int>& z) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < 5; ++i) out.push_back(mmp(z[i], z[(i + 2) % 5]));
    return out;
}

// Chooses one omitted chord per face so that no chord is added twice. The
// conflicts live on the degree-2 vertices of the base; each conflict pair of
// faces shares exactly one candidate chord, and for k >= 1 every conflict
// component has at most one cycle, so an assignment always exists.
std::vector<std::pair<int, int>> assign_omissions(const RotGraph& base,
                                                  const std::vector<std::vector<int>>& faces) {
    int nf = static_cast<int>(faces.size());
    struct Conflict {
        int f1, f2;
        std::pair<int, int> chord;
    };
    std::vector<Conflict> conflicts;
    for (int v = 0; v < base.n; ++v) {
        if (base.rot[v].size() != 2) continue;
        int x = base.rot[v][0], y = base.rot[v][1];
        std::vector<int> at;
        for (int f = 0; f < nf; ++f)
            if (std::find(faces[f].begin(), faces[f].end(), v) != faces[f].end())
                at.push_back(f);
        if (at.size() != 2) throw drawing_error("degree-2 vertex not on exactly two faces");
        conflicts.push_back({at[0], at[1], mmp(x, y)});
    }
    std::vector<std::vector<int>> inc(nf);
    for (size_t c = 0; c < conflicts.size(); ++c) {
        inc[conflicts[c].f1].push_back(static_cast<int>(c));
        inc[conflicts[c].f2].push_back(static_cast<int>(c));
    }
    std::vector<int> owner(conflicts.size(), -1);   // face omitting this chord
    std::vector<bool> face_used(nf, false);
    // Kahn-style leaf stripping: a leaf conflict is assigned to its leaf face.
    std::vector<int> degree(nf, 0);
    std::vector<bool> gone(conflicts.size(), false);
    for (int f = 0; f < nf; ++f) degree[f] = static_cast<int>(inc[f].size());
    bool progress = true;
    size_t remaining = conflicts.size();
    while (remaining > 0 && progress) {
        progress = false;
        for (int f = 0; f < nf; ++f) {
            if (degree[f] != 1 || face_used[f]) continue;
            for (int c : inc[f])
                if (!gone[c]) {
                    owner[c] = f;
                    face_used[f] = true;
                    gone[c] = true;
                    --remaining;
                    --degree[conflicts[c].f1];
                    --degree[conflicts[c].f2];
                    progress = true;
                    break;
                }
        }
    }
    // Leftover conflicts form disjoint cycles of unused faces; orient them.
    for (size_t c0 = 0; c0 < conflicts.size(); ++c0) {
        if (gone[c0]) continue;
        int f = conflicts[c0].f1;
        int c = static_cast<int>(c0);
        while (!gone[c]) {
            gone[c] = true;
            int other = conflicts[c].f1 == f ? conflicts[c].f2 : conflicts[c].f1;
            if (face_used[f]) throw drawing_error("conflict assignment failed");
            owner[c] = f;
            face_used[f] = true;
            f = other;
            int next = -1;
            for (int cc : inc[f])
                if (!gone[cc]) next = cc;
            if (next < 0) break;
            c = next;
        }
    }
    std::vector<std::pair<int, int>> omit(nf, {-1, -1});
    for (size_t c = 0; c < conflicts.size(); ++c) {
        if (owner[c] < 0) throw drawing_error("uncovered chord conflict");
        omit[owner[c]] = conflicts[c].chord;
    }
    for (int f = 0; f < nf; ++f) {
        if (omit[f].first >= 0) continue;
        std::set<std::pair<int, int>> mine;
        for (int c : inc[f]) mine.insert(conflicts[c].chord);
        for (auto ch : face_chords(faces[f]))
            if (!mine.count(ch)) {
                omit[f] = ch;
                break;
            }
        if (omit[f].first < 0) throw drawing_error("no free chord to omit");
    }
    return omit;
}

FamilyInstance finish_pentagon_family(Family fam, RotGraph base,
                                      const std::vector<int>& gadget_faces,
                                      const std::vector<std::vector<int>>& faces,
                                      const std::vector<std::pair<int, int>>& omit,
                                      Variant variant, long expected) {
    BundledDrawing d = rot_to_drawing(base);
    std::vector<std::vector<Item>> vrot(base.n);
    for (int v = 0; v < base.n; ++v)
        for (int w : base.rot[v]) vrot[v].push_back(mid_item(d.graph.norm(v, w)));

    std::set<std::pair<int, int>> added;
    for (int f : gadget_faces) {
        auto w = rotate_for_omission(faces[f], omit[f]);
        for (auto ch : face_chords(w))
            if (ch != omit[f]) {
                if (base.edges.count(ch) || !added.insert(ch).second)
                    throw drawing_error("duplicate diagonal in pentagon family");
            }
        apply_pentagon_gadget(d, vrot, w, f);
    }
    for (int v = 0; v < base.n; ++v) set_rotation(d, NodeRef{NodeRef::Vertex, v, -1}, vrot[v]);
    d.variant = variant;
    d.sides = 1;

    FamilyInstance inst;
    inst.family = fam;
    inst.expected_edges = expected;
    if (variant == Variant::Outer) set_outer_hint(d);
    inst.graph = d.graph;
    inst.drawing = std::move(d);
    check_instance(inst);
    return inst;
}

}  // namespace

BundledDrawing pentagonal_base(int k) {
    if (k < 0) throw drawing_error("pentagonal base needs k >= 0");
    return rot_to_drawing(pentagon_base_rot(k));
}

FamilyInstance gen_onesided_general(int k) {
    // k = 0 would need 13 edges on 5 vertices, beyond the 10 of K5; the
    // incremental family is simple only from k = 1 on.
    if (k < 1)
        throw drawing_error("onesided-general needs k >= 1 (no simple 5-vertex graph has 13 edges)");
    RotGraph base = pentagon_base_rot(k);
    auto faces = base.faces();
    long n = base.n;
    std::vector<int> all(faces.size());
    std::iota(all.begin(), all.end(), 0);
    auto omit = assign_omissions(base, faces);
    FamilyInstance inst = finish_pentagon_family(Family::OnesidedGeneral, base, all, faces, omit,
                                                 Variant::General, (13 * n - 26) / 3);
    inst.parameters = {{"k", k}, {"n", n}};
    return inst;
}

FamilyInstance gen_onesided_outer(int q) {
    if (q < 1) throw drawing_error("onesided-outer needs q >= 1");
    // Chain of q pentagons, consecutive ones sharing a vertical edge.
    RotGraph g;
    // Pentagon j has top-left L, bottom-left L', apex t, top-right R,
    // bottom-right R'; (R,R') is shared with pentagon j+1.
    int L = g.add_vertex(), Lp = g.add_vertex();
    std::vector<int> tops{L}, bots{Lp}, apexes;
    for (int j = 0; j < q; ++j) {
        int t = g.add_vertex(), R = g.add_vertex(), Rp = g.add_vertex();
        apexes.push_back(t);
        tops.push_back(R);
        bots.push_back(Rp);
        g.edges.insert(mmp(tops[j], t));
        g.edges.insert(mmp(t, R));
        g.edges.insert(mmp(R, Rp));
        g.edges.insert(mmp(Rp, bots[j]));
        if (j == 0) g.edges.insert(mmp(L, Lp));
    }
    for (int j = 0; j <= q; ++j) {
        int T = tops[j], B = bots[j];
        std::vector<int> rt, rb;
        if (j < q) rt.push_back(apexes[j]);           // up-right
        rt.push_back(B);                              // down
        if (j > 0) rt.push_back(apexes[j - 1]);       // up-left
        g.rot[T] = rt;
        rb.push_back(T);                              // up
        if (j < q) rb.push_back(bots[j + 1]);         // right
        if (j > 0) rb.push_back(bots[j - 1]);         // left
        g.rot[B] = rb;
    }
    for (int j = 0; j < q; ++j) g.rot[apexes[j]] = {tops[j + 1], tops[j]};

    auto faces = g.faces();
    std::vector<int> internal;
    for (size_t f = 0; f < faces.size(); ++f)
        if (faces[f].size() == 5) internal.push_back(static_cast<int>(f));
    if (q == 1) internal.resize(1);  // C5: both traced faces are pentagons
    if (static_cast<int>(internal.size()) != q)
        throw drawing_error("pentagon chain face count mismatch");

    long n = g.n;
    std::vector<std::pair<int, int>> omit(faces.size(), {-1, -1});
    std::set<std::pair<int, int>> taken;
    for (int f : internal) {
        // Adjacent internal pentagons share one edge only, so chords never
        // collide; omit the chord between the two shared-edge midpoints.
        for (auto ch : face_chords(faces[f]))
            if (!taken.count(ch)) omit[f] = ch;
        // keep the last candidate; any unused chord works
        taken.insert(face_chords(faces[f]).begin(), face_chords(faces[f]).end());
    }
    FamilyInstance inst = finish_pentagon_family(Family::OnesidedOuter, g, internal, faces, omit,
                                                 Variant::Outer, (8 * n - 13) / 3);
    inst.parameters = {{"q", q}, {"n", n}};
    return inst;
}

FamilyInstance gen_bn(int k) {
    if (k < 1) throw drawing_error("bn needs k >= 1");
    BundledDrawing d;
    int n = 3 * k + 2;
    for (int i = 1; i <= n; ++i) d.graph.add_vertex(std::to_string(i));
    auto P = [&](int j) { return j - 1; };             // poles 1..k+1
    auto r = [&](int i) { return k + 1 + i - 1; };     // rungs 1..2k+1
    for (int j = 1; j <= k + 1; ++j) d.graph.set_layer(P(j), 0);
    for (int i = 1; i <= 2 * k + 1; ++i) d.graph.set_layer(r(i), 1);

    for (int j = 1; j <= k + 1; ++j) d.graph.add_edge(P(j), r(2 * j - 1));
    std::vector<int> BR(k + 2, -1), BL(k + 2, -1);
    for (int j = 1; j <= k; ++j) {
        Edge e1 = d.graph.norm(P(j), r(2 * j + 1)), e2 = d.graph.norm(P(j), r(2 * j));
        d.graph.add_edge(e1.first, e1.second);
        d.graph.add_edge(e2.first, e2.second);
        BR[j] = add_bundle(d, "R" + std::to_string(j), P(j), {e1, e2});
        Edge f1 = d.graph.norm(P(j + 1), r(2 * j)), f2 = d.graph.norm(P(j + 1), r(2 * j - 1));
        d.graph.add_edge(f1.first, f1.second);
        d.graph.add_edge(f2.first, f2.second);
        BL[j + 1] = add_bundle(d, "L" + std::to_string(j + 1), P(j + 1), {f1, f2});
        d.crossings.emplace_back(BR[j], BL[j + 1]);
    }
    auto mid = [&](int u, int v) { return mid_item(d.graph.norm(u, v)); };
    for (int j = 1; j <= k + 1; ++j) {
        std::vector<Item> rot;
        if (j <= k) rot.push_back(trunk_item(BR[j], 0));
        rot.push_back(mid(P(j), r(2 * j - 1)));
        if (j >= 2) rot.push_back(trunk_item(BL[j], 0));
        set_rotation(d, NodeRef{NodeRef::Vertex, P(j), -1}, rot);
    }
    for (int j = 1; j <= k; ++j) {
        set_rotation(d, NodeRef{NodeRef::Crossing, std::min(BR[j], BL[j + 1]),
                                std::max(BR[j], BL[j + 1])},
                     {trunk_item(BR[j], 0), trunk_item(BL[j + 1], 0), trunk_item(BR[j], 1),
                      trunk_item(BL[j + 1], 1)});
        set_rotation(d, NodeRef{NodeRef::Terminal, BR[j], -1},
                     {trunk_item(BR[j], 1), mid(P(j), r(2 * j + 1)), mid(P(j), r(2 * j))});
        set_rotation(d, NodeRef{NodeRef::Terminal, BL[j + 1], -1},
                     {trunk_item(BL[j + 1], 1), mid(P(j + 1), r(2 * j)),
                      mid(P(j + 1), r(2 * j - 1))});
    }
    for (int i = 1; i <= 2 * k + 1; ++i) {
        std::vector<Item> rot;
        if (i % 2 == 0) {
            int j = i / 2;
            rot = {mid(P(j + 1), r(i)), mid(P(j), r(i))};
        } else {
            int j = (i + 1) / 2;  // rung r(2j-1)
            if (j > 1) rot.push_back(mid(P(j - 1), r(i)));
            rot.push_back(mid(P(j), r(i)));
            if (j <= k) rot.push_back(mid(P(j + 1), r(i)));
        }
        set_rotation(d, NodeRef{NodeRef::Vertex, r(i), -1}, rot);
    }
    d.variant = Variant::TwoLayer;
    d.sides = 1;
    set_outer_hint(d);

    FamilyInstance inst;
    inst.family = Family::Bn;
    inst.parameters = {{"k", k}, {"n", n}};
    inst.expected_edges = 5L * k + 1;
    inst.graph = d.graph;
    inst.drawing = std::move(d);
    check_instance(inst);
    return inst;
}

namespace {

// ---------------------------------------------------------------------------
// Water lily machinery. Terminals of a flower drawing form a 2n-ring; the
// zigzag triangulation of each terminal arc is found by peeling with chord
// safety checks (cycle distance >= 3 and globally unused vertex pairs).

struct LilyHalf {
    std::vector<int> right, left;  // bundle index per cycle position, -1 absent
};

struct ArcPeel {
    const std::vector<int>* positions;  // ring positions of the arc terminals
    std::function<bool(int, int)> chord_ok;
    std::function<void(int, int, bool)> chord_mark;  // add/remove
    std::vector<std::pair<int, int>> chords;         // arc-index pairs
    long budget = 2'000'000;

    bool peel(int lo, int hi, int quads) {
        if (--budget < 0) return false;
        int cnt = hi - lo + 1;
        if (cnt == 3) return quads == 0;
        if (cnt == 4 && quads == 1) return true;
        auto attempt = [&](int a, int b, int q) {
            if (!chord_ok(a, b)) return false;
            chord_mark(a, b, true);
            chords.emplace_back(a, b);
            bool ok = (a == lo) ? peel(lo, b, q) : peel(a, hi, q);
            if (!ok) {
                chords.pop_back();
                chord_mark(a, b, false);
            }
            return ok;
        };
        if (cnt > 3 && attempt(lo, hi - 1, quads)) return true;
        if (cnt > 3 && attempt(lo + 1, hi, quads)) return true;
        if (cnt > 4 && quads > 0 && attempt(lo, hi - 2, quads - 1)) return true;
        if (cnt > 4 && quads > 0 && attempt(lo + 2, hi, quads - 1)) return true;
        return false;
    }
};

// Builds one lily (bundles, terminals, crossings, H edges, rotations) for the
// given cyclic vertex order. mirror reverses every produced rotation, which
// realizes the same structure on the other side of the circle.
LilyHalf build_lily_half(BundledDrawing& d, const std::vector<VertexId>& cyc,
                         const std::string& prefix, bool with_ring,
                         const std::vector<int>& shared,
                         std::set<std::pair<VertexId, VertexId>>& used, bool mirror) {
    int n = static_cast<int>(cyc.size());
    int ring = 2 * n;
    auto cyc_index_of = [&](int pos) {
        return pos % 2 == 0 ? (pos / 2 + 1) % n : pos / 2;
    };
    auto vertex_of = [&](int pos) { return cyc[cyc_index_of(pos)]; };

    // H edges as ring-position pairs.
    std::vector<std::pair<int, int>> hpos;
    auto vpair = [&](int p, int q) {
        VertexId a = vertex_of(p), b = vertex_of(q);
        return d.graph.norm(a, b);
    };
    if (with_ring)
        for (int p = 0; p < ring; ++p) {
            hpos.emplace_back(p, (p + 1) % ring);
            used.insert(vpair(p, (p + 1) % ring));
        }

    // Arcs between consecutive shared right-terminals.
    for (int j = 0; j < 3; ++j) {
        int a = shared[j], b = shared[(j + 1) % 3];
        std::vector<int> pos;
        int pstart = 2 * a + 1, pend = 2 * b + 1;
        for (int p = pstart;; p = (p + 1) % ring) {
            pos.push_back(p);
            if (p == pend) break;
        }
        auto chord_pair = [&](int i1, int i2) { return vpair(pos[i1], pos[i2]); };
        auto dist_ok = [&](int i1, int i2) {
            int x = cyc_index_of(pos[i1]), y = cyc_index_of(pos[i2]);
            int dd = std::abs(x - y);
            dd = std::min(dd, n - dd);
            return dd >= 3 && dd <= n - 3;
        };
        ArcPeel peel;
        peel.positions = &pos;
        peel.chord_ok = [&](int i1, int i2) {
            return dist_ok(i1, i2) && !used.count(chord_pair(i1, i2));
        };
        peel.chord_mark = [&](int i1, int i2, bool add) {
            if (add)
                used.insert(chord_pair(i1, i2));
            else
                used.erase(chord_pair(i1, i2));
        };
        int len = static_cast<int>(pos.size());
        // closure chord
        if (!peel.chord_ok(0, len - 1)) throw drawing_error("lily closure chord blocked");
        peel.chord_mark(0, len - 1, true);
        peel.chords.emplace_back(0, len - 1);
        if (!peel.peel(0, len - 1, 2)) throw drawing_error("lily arc triangulation failed");
        for (auto [i1, i2] : peel.chords) hpos.emplace_back(pos[i1], pos[i2]);
    }

    // Graph edges and per-position H incidences.
    std::vector<std::vector<int>> inc(ring);  // neighbor ring positions
    for (auto [p, q] : hpos) {
        Edge e = vpair(p, q);
        d.graph.add_edge(e.first, e.second);
        inc[p].push_back(q);
        inc[q].push_back(p);
    }

    // Bundles for every terminal that carries at least one H edge.
    LilyHalf half;
    half.right.assign(n, -1);
    half.left.assign(n, -1);
    std::vector<int> bundle_at(ring, -1);
    for (int p = 0; p < ring; ++p) {
        if (inc[p].empty()) continue;
        int ci = cyc_index_of(p);
        bool is_right = (p % 2 == 1);
        std::string id = prefix + (is_right ? "R" : "L") + d.graph.name(cyc[ci]);
        // cw order at the terminal: neighbors by ascending clockwise distance
        std::vector<int> nb = inc[p];
        std::sort(nb.begin(), nb.end(),
                  [&](int a, int b) { return (a - p + ring) % ring < (b - p + ring) % ring; });
        std::vector<Edge> edges;
        for (int q : nb) edges.push_back(vpair(p, q));
        int b = add_bundle(d, id, cyc[ci], edges);
        bundle_at[p] = b;
        if (is_right)
            half.right[ci] = b;
        else
            half.left[ci] = b;
        inc[p] = nb;
    }
    // Other-end attachments are set by add_bundle of the other terminal.

    // Crossings: right bundle of v_i with left bundle of v_{i+1}.
    std::vector<bool> crossed(ring, false);
    for (int i = 0; i < n; ++i) {
        int pr = 2 * i + 1, pl = 2 * i;  // t^R_i and t^L_{i+1} share gap i
        int br = bundle_at[pr], bl = bundle_at[pl];
        if (br >= 0 && bl >= 0) {
            d.crossings.emplace_back(br, bl);
            crossed[pr] = crossed[pl] = true;
            std::vector<Item> xr{trunk_item(br, 0), trunk_item(bl, 0), trunk_item(br, 1),
                                 trunk_item(bl, 1)};
            if (mirror) std::reverse(xr.begin() + 1, xr.end());
            set_rotation(d, NodeRef{NodeRef::Crossing, std::min(br, bl), std::max(br, bl)}, xr);
        }
    }
    for (int p = 0; p < ring; ++p) {
        if (bundle_at[p] < 0) continue;
        std::vector<Item> rot{trunk_item(bundle_at[p], crossed[p] ? 1 : 0)};
        for (int q : inc[p]) rot.push_back(mid_item(vpair(p, q)));
        if (mirror) std::reverse(rot.begin() + 1, rot.end());
        set_rotation(d, NodeRef{NodeRef::Terminal, bundle_at[p], -1}, rot);
    }
    return half;
}

std::vector<int> lily_shared(int n) { return {0, n / 3, 2 * (n / 3)}; }

}  // namespace

FamilyInstance gen_waterlily(int n) {
    if (n < 9) throw drawing_error("waterlily needs n >= 9");
    BundledDrawing d;
    for (int i = 1; i <= n; ++i) d.graph.add_vertex(std::to_string(i));
    std::vector<VertexId> cyc(n);
    std::iota(cyc.begin(), cyc.end(), 0);
    std::set<std::pair<VertexId, VertexId>> used;
    LilyHalf half = build_lily_half(d, cyc, "", true, lily_shared(n), used, false);
    for (int i = 0; i < n; ++i)
        set_rotation(d, NodeRef{NodeRef::Vertex, cyc[i], -1},
                     {trunk_item(half.right[i], 0), trunk_item(half.left[i], 0)});
    d.variant = Variant::Outer;
    d.sides = 2;
    set_outer_hint(d);

    FamilyInstance inst;
    inst.family = Family::Waterlily;
    inst.parameters = {{"n", n}};
    inst.expected_edges = 4L * n - 9;
    inst.graph = d.graph;
    inst.drawing = std::move(d);
    check_instance(inst);
    return inst;
}

FamilyInstance gen_double_waterlily(int n) {
    if (n < 9) throw drawing_error("double-waterlily needs n >= 9");
    BundledDrawing d;
    for (int i = 1; i <= n; ++i) d.graph.add_vertex(std::to_string(i));
    std::vector<VertexId> cyc(n);
    std::iota(cyc.begin(), cyc.end(), 0);
    std::set<std::pair<VertexId, VertexId>> used;
    LilyHalf inner = build_lily_half(d, cyc, "", true, lily_shared(n), used, false);

    // Second copy outside the circle: same construction on the reversed cycle,
    // with every rotation mirrored. Its shared terminals are placed near the
    // middles of the inner arcs so the zigzags stay edge-disjoint.
    std::vector<VertexId> rev(cyc.rbegin(), cyc.rend());
    auto inner_shared = lily_shared(n);
    std::vector<int> outer_shared;
    for (int j = 0; j < 3; ++j) {
        int a = inner_shared[j], b = inner_shared[(j + 1) % 3];
        int width = (b - a + n) % n;
        int vmid = (a + width / 2) % n;
        outer_shared.push_back((n - vmid) % n);  // index of that vertex in rev
    }
    std::sort(outer_shared.begin(), outer_shared.end());
    LilyHalf outer = build_lily_half(d, rev, "o", false, outer_shared, used, true);

    for (int i = 0; i < n; ++i) {
        int ri = (n - i) % n;  // index of cyc[i] in rev
        std::vector<Item> rot;
        if (outer.left[ri] >= 0) rot.push_back(trunk_item(outer.left[ri], 0));
        rot.push_back(trunk_item(inner.right[i], 0));
        rot.push_back(trunk_item(inner.left[i], 0));
        if (outer.right[ri] >= 0) rot.push_back(trunk_item(outer.right[ri], 0));
        set_rotation(d, NodeRef{NodeRef::Vertex, cyc[i], -1}, rot);
    }
    d.variant = Variant::General;
    d.sides = 2;

    FamilyInstance inst;
    inst.family = Family::DoubleWaterlily;
    inst.parameters = {{"n", n}};
    inst.expected_edges = 6L * n - 18;
    inst.graph = d.graph;
    inst.drawing = std::move(d);
    check_instance(inst);
    return inst;
}

namespace {

// ---------------------------------------------------------------------------
// Layered lily: a 2-layer, 2-sided chain. Each vertex splits its edges into a
// left and a right bundle; adjacent bundles cross above/below the terminal
// rows, and the unbundled middles form a monotone staircase between the rows.
// The staircase is found by a small search over column run lengths.

struct StairPlan {
    std::vector<int> lo, hi;  // per column (1-based), rows covered
    int diag = 0;             // column after which the +1 jump happens
};

// u owner of top terminal position k (1-based, s = 2p-1 positions):
// A_1 = left terminal of u_1; A_{2i} = left of u_{i+1}; A_{2i+1} = right of u_i.
int owner_of(int k) { return k == 1 ? 1 : (k % 2 == 0 ? k / 2 + 1 : k / 2); }

bool stair_search(int p, StairPlan& out) {
    int s = 2 * p - 1, t = s;
    // Column runs: r1 = r3 = 1, r_{2p-2} = 2, odd r_{2i+1} = 4 - r_{2i-2};
    // free choices are the even positions 2..2p-4 plus the diagonal spot.
    int frees = p - 2;  // even positions 2,4,..,2p-4
    std::vector<int> r(s + 1, 0);
    r[1] = 1;
    if (s >= 3) r[3] = 1;
    r[2 * p - 2] = 2;

    std::function<bool(int, int)> place = [&](int fi, int diag) {
        if (fi == frees) {
            for (int i = 2; i <= p - 1; ++i) {
                int even = 2 * i - 2, odd = 2 * i + 1;
                if (odd <= s) {
                    r[odd] = 4 - r[even];
                    if (r[odd] < 1) return false;
                }
            }
            // Build the path.
            StairPlan plan;
            plan.lo.assign(s + 1, 0);
            plan.hi.assign(s + 1, 0);
            plan.diag = diag;
            plan.lo[1] = 1;
            for (int k = 1; k <= s; ++k) {
                plan.hi[k] = plan.lo[k] + r[k] - 1;
                if (k < s) plan.lo[k + 1] = plan.hi[k] + (k == diag ? 1 : 0);
            }
            if (plan.hi[s] != t) return false;
            // Row runs and w-degree targets (mirror of the u targets).
            std::vector<int> rb(t + 1, 0);
            for (int k = 1; k <= s; ++k)
                for (int l = plan.lo[k]; l <= plan.hi[k]; ++l) ++rb[l];
            auto wdeg = [&](int j) {
                if (j == 1) return rb[1] + (t >= 3 ? rb[3] : 0);
                if (j == p) return rb[2 * p - 2];
                return rb[2 * j - 2] + rb[2 * j + 1];
            };
            if (wdeg(1) != 2 || wdeg(p) != 2) return false;
            for (int j = 2; j <= p - 1; ++j)
                if (wdeg(j) != 4) return false;
            // No duplicate vertex pairs.
            std::set<std::pair<int, int>> pairs;
            for (int k = 1; k <= s; ++k)
                for (int l = plan.lo[k]; l <= plan.hi[k]; ++l)
                    if (!pairs.insert({owner_of(k), owner_of(l)}).second) return false;
            out = plan;
            return true;
        }
        for (int v = 1; v <= 3; ++v) {
            r[2 * (fi + 2) - 2] = v;
            if (place(fi + 1, diag)) return true;
        }
        return false;
    };
    for (int diag = 1; diag < s; ++diag)
        if (place(0, diag)) return true;
    return false;
}

}  // namespace

FamilyInstance gen_layered_lily(int n) {
    if (n < 10 || n % 2 != 0)
        throw drawing_error("layered-lily needs even n >= 10 (chain residue)");
    int p = n / 2, q = n / 2;
    StairPlan plan;
    if (!stair_search(p, plan)) throw drawing_error("layered-lily staircase search failed");
    int s = 2 * p - 1, t = 2 * q - 1;

    BundledDrawing d;
    for (int i = 1; i <= n; ++i) d.graph.add_vertex(std::to_string(i));
    auto U = [&](int i) { return i - 1; };
    auto W = [&](int j) { return p + j - 1; };
    for (int i = 1; i <= p; ++i) d.graph.set_layer(U(i), 0);
    for (int j = 1; j <= q; ++j) d.graph.set_layer(W(j), 1);

    // mids: terminal position pairs (k, l).
    std::vector<std::pair<int, int>> mids;
    for (int k = 1; k <= s; ++k)
        for (int l = plan.lo[k]; l <= plan.hi[k]; ++l) {
            mids.emplace_back(k, l);
            d.graph.add_edge(U(owner_of(k)), W(owner_of(l)));
        }

    // Bundles: top position k belongs to u_{owner}; left/right via parity.
    std::vector<std::vector<int>> top_mids(s + 1), bot_mids(t + 1);
    for (size_t mi = 0; mi < mids.size(); ++mi) {
        top_mids[mids[mi].first].push_back(static_cast<int>(mi));
        bot_mids[mids[mi].second].push_back(static_cast<int>(mi));
    }
    auto mid_edge = [&](int mi) {
        return d.graph.norm(U(owner_of(mids[mi].first)), W(owner_of(mids[mi].second)));
    };
    std::vector<int> topb(s + 1, -1), botb(t + 1, -1);
    for (int k = 1; k <= s; ++k) {
        bool is_left = (k == 1) || (k % 2 == 0);
        std::string id = "u" + std::to_string(owner_of(k)) + (is_left ? "L" : "R");
        std::vector<int> order = top_mids[k];
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return mids[a].second > mids[b].second; });
        std::vector<Edge> edges;
        for (int mi : order) edges.push_back(mid_edge(mi));
        topb[k] = add_bundle(d, id, U(owner_of(k)), edges);
        top_mids[k] = order;
    }
    for (int l = 1; l <= t; ++l) {
        bool is_left = (l == 1) || (l % 2 == 0);
        std::string id = "w" + std::to_string(owner_of(l)) + (is_left ? "L" : "R");
        std::vector<int> order = bot_mids[l];
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return mids[a].first < mids[b].first; });
        std::vector<Edge> edges;
        for (int mi : order) edges.push_back(mid_edge(mi));
        botb[l] = add_bundle(d, id, W(owner_of(l)), edges);
        bot_mids[l] = order;
    }

    // Crossings: gap i of the top row pairs right(u_i) = pos 2i+1 with
    // left(u_{i+1}) = pos 2i; same below.
    std::vector<bool> top_crossed(s + 1, false), bot_crossed(t + 1, false);
    for (int i = 1; i <= p - 1; ++i) {
        int pr = 2 * i + 1, pl = 2 * i;
        d.crossings.emplace_back(topb[pr], topb[pl]);
        top_crossed[pr] = top_crossed[pl] = true;
        set_rotation(d, NodeRef{NodeRef::Crossing, std::min(topb[pr], topb[pl]),
                                std::max(topb[pr], topb[pl])},
                     {trunk_item(topb[pr], 0), trunk_item(topb[pl], 0), trunk_item(topb[pr], 1),
                      trunk_item(topb[pl], 1)});
    }
    for (int j = 1; j <= q - 1; ++j) {
        int pr = 2 * j + 1, pl = 2 * j;
        d.crossings.emplace_back(botb[pr], botb[pl]);
        bot_crossed[pr] = bot_crossed[pl] = true;
        set_rotation(d, NodeRef{NodeRef::Crossing, std::min(botb[pr], botb[pl]),
                                std::max(botb[pr], botb[pl])},
                     {trunk_item(botb[pl], 1), trunk_item(botb[pr], 1), trunk_item(botb[pl], 0),
                      trunk_item(botb[pr], 0)});
    }
    for (int k = 1; k <= s; ++k) {
        std::vector<Item> rot{trunk_item(topb[k], top_crossed[k] ? 1 : 0)};
        for (int mi : top_mids[k]) rot.push_back(mid_item(mid_edge(mi)));
        set_rotation(d, NodeRef{NodeRef::Terminal, topb[k], -1}, rot);
    }
    for (int l = 1; l <= t; ++l) {
        std::vector<Item> rot{trunk_item(botb[l], bot_crossed[l] ? 1 : 0)};
        for (int mi : bot_mids[l]) rot.push_back(mid_item(mid_edge(mi)));
        set_rotation(d, NodeRef{NodeRef::Terminal, botb[l], -1}, rot);
    }
    for (int i = 1; i <= p; ++i) {
        std::vector<Item> rot;
        if (i <= p - 1) rot.push_back(trunk_item(topb[2 * i + 1], 0));  // right
        rot.push_back(trunk_item(topb[i == 1 ? 1 : 2 * i - 2], 0));     // left
        set_rotation(d, NodeRef{NodeRef::Vertex, U(i), -1}, rot);
    }
    for (int j = 1; j <= q; ++j) {
        std::vector<Item> rot;
        rot.push_back(trunk_item(botb[j == 1 ? 1 : 2 * j - 2], 0));     // left
        if (j <= q - 1) rot.push_back(trunk_item(botb[2 * j + 1], 0));  // right
        set_rotation(d, NodeRef{NodeRef::Vertex, W(j), -1}, rot);
    }
    d.variant = Variant::TwoLayer;
    d.sides = 2;
    set_outer_hint(d);

    FamilyInstance inst;
    inst.family = Family::LayeredLily;
    inst.parameters = {{"n", n}};
    inst.expected_edges = 2L * n - 4;
    inst.graph = d.graph;
    inst.drawing = std::move(d);
    check_instance(inst);

    // Degree profile: all 4 except deficiency 8 split over degree-2/3 vertices.
    int a2 = 0, a3 = 0;
    for (VertexId v = 0; v < inst.graph.vertex_count(); ++v) {
        int deg = inst.graph.degree(v);
        if (deg == 2) ++a2;
        else if (deg == 3) ++a3;
        else if (deg != 4) throw drawing_error("layered-lily degree out of range");
    }
    if (2 * a2 + a3 != 8) throw drawing_error("layered-lily degree deficiency mismatch");
    return inst;
}

FamilyInstance gen_d12() {
    // Dodecahedron as the generalized Petersen graph GP(10,2), with a
    // pentagram added in each of its 12 pentagonal faces.
    Graph g;
    for (int i = 1; i <= 20; ++i) g.add_vertex(std::to_string(i));
    auto u = [&](int i) { return (i % 10 + 10) % 10; };
    auto v = [&](int i) { return 10 + (i % 10 + 10) % 10; };
    for (int i = 0; i < 10; ++i) {
        g.add_edge(u(i), u(i + 1));
        g.add_edge(u(i), v(i));
        g.add_edge(v(i), v(i + 2));
    }
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < 10; ++i) faces.push_back({u(i), u(i + 1), u(i + 2), v(i + 2), v(i)});
    faces.push_back({v(0), v(2), v(4), v(6), v(8)});
    faces.push_back({v(1), v(3), v(5), v(7), v(9)});
    std::set<std::pair<int, int>> chords;
    for (const auto& f : faces)
        for (int i = 0; i < 5; ++i) {
            auto ch = mmp(f[i], f[(i + 2) % 5]);
            if (!chords.insert(ch).second) throw drawing_error("d12 pentagram chord repeated");
            g.add_edge(ch.first, ch.second);
        }
    FamilyInstance inst;
    inst.family = Family::D12;
    inst.expected_edges = 90;
    inst.graph = std::move(g);
    check_instance(inst);
    return inst;
}

}  // namespace fbp
