#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fbp/graph.hpp"

namespace fbp {

using Edge = std::pair<VertexId, VertexId>;  // normalized: first < second

struct drawing_error : std::runtime_error {
    explicit drawing_error(const std::string& what) : std::runtime_error(what) {}
};

enum class Variant { General, Outer, TwoLayer };
std::string variant_name(Variant v);
Variant variant_from_name(const std::string& s);

// A fan-bundle: edges sharing the anchor, merged from the anchor up to the
// terminal where they separate. edges_in_order is the clockwise order at the
// terminal.
struct Bundle {
    std::string id;
    VertexId anchor = -1;
    std::vector<Edge> edges_in_order;
};

// Node of the planarization skeleton.
struct NodeRef {
    enum Kind { Vertex = 0, Terminal = 1, Crossing = 2 } kind = Vertex;
    int a = -1;  // vertex id | bundle index | smaller bundle index
    int b = -1;  // crossing only: larger bundle index (by id string)
    auto operator<=>(const NodeRef&) const = default;
};

// Arc of the planarization: a bundle trunk segment or the unbundled middle
// part of an edge.
struct ArcRef {
    enum Kind { Trunk = 0, Mid = 1 } kind = Mid;
    int bundle = -1;  // trunk only
    int seg = 0;      // trunk only: 0 = anchor side, 1 = terminal side
    Edge edge{-1, -1};
    auto operator<=>(const ArcRef&) const = default;
};

struct Attachment {
    std::optional<int> first;   // bundle index at the smaller-index endpoint
    std::optional<int> second;  // bundle index at the larger-index endpoint
};

struct BundledDrawing {
    Graph graph;
    std::vector<Bundle> bundles;
    std::map<Edge, Attachment> attachments;
    std::vector<std::pair<int, int>> crossings;  // bundle index pairs
    std::map<NodeRef, std::vector<ArcRef>> embedding;  // clockwise rotations
    std::optional<std::string> outer_face;  // face id, see face_id()
    Variant variant = Variant::General;
    int sides = 1;

    int bundle_index(const std::string& id) const;
    // Bundle containing edge e at endpoint v, or -1.
    int attachment_at(Edge e, VertexId v) const;
    bool bundle_crossed(int b) const;
    std::string node_key(const NodeRef& n) const;
    std::string arc_key(const ArcRef& a) const;
};

struct Planarization {
    struct Arc {
        ArcRef ref;
        int from = -1, to = -1;  // node indices
    };
    std::vector<NodeRef> nodes;
    std::map<NodeRef, int> node_index;
    std::vector<Arc> arcs;
    // rotation[n] = clockwise list of darts leaving node n; dart d = 2*arc+dir
    // where dir 0 runs from->to.
    std::vector<std::vector<int>> rotation;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int arc_count() const { return static_cast<int>(arcs.size()); }
};

// Each face is the cyclic list of darts along its boundary.
struct FaceSet {
    std::vector<std::vector<int>> faces;
    std::vector<int> face_of_dart;
};

struct Violation {
    std::string rule;     // V1..V6
    std::string message;
    std::vector<std::string> ids;
};

struct ValidationReport {
    bool valid = true;
    std::vector<Violation> violations;
};

// Builds the planarization skeleton; throws drawing_error on dangling
// references, incoherent rotations, or a disconnected skeleton.
Planarization planarize(const BundledDrawing& d);

// Walks every directed arc side once; throws drawing_error if the embedding
// fails the Euler check V - E + F = 2.
FaceSet trace_faces(const Planarization& p);

// All model checks V1..V6; violations are data, never exceptions.
ValidationReport validate(const BundledDrawing& d);

// Face identity: lexicographically smallest directed arc side on the face.
std::string face_id(const BundledDrawing& d, const Planarization& p,
                    const std::vector<int>& face);

std::string drawing_to_json(const BundledDrawing& d);
BundledDrawing drawing_from_json(const std::string& text);

}  // namespace fbp
