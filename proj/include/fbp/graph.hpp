#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fbp {

// Thrown on malformed input files and violated construction invariants.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

using VertexId = int;  // dense index into Graph::name

// Simple undirected graph with stable string vertex tokens and an optional
// two-layer assignment. Immutable after construction in practice; the
// mutating helpers are for builders.
class Graph {
public:
    Graph() = default;

    VertexId add_vertex(const std::string& token);
    VertexId ensure_vertex(const std::string& token);
    bool has_vertex(const std::string& token) const { return index_.count(token) != 0; }
    VertexId vertex(const std::string& token) const;

    // Throws parse_error on self-loops, duplicate edges, and (when layers are
    // set) edges inside one layer.
    void add_edge(VertexId u, VertexId v);
    bool has_edge(VertexId u, VertexId v) const;

    void set_layer(VertexId v, int layer);

    int vertex_count() const { return static_cast<int>(names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::string& name(VertexId v) const { return names_[v]; }
    const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
    int degree(VertexId v) const { return static_cast<int>(adj_[v].size()); }
    const std::set<std::pair<VertexId, VertexId>>& edges() const { return edges_; }

    bool has_layers() const { return !layer_.empty(); }
    int layer(VertexId v) const;  // -1 when unassigned

    // Canonical key "u-v" with the endpoint of smaller index first.
    std::pair<VertexId, VertexId> norm(VertexId u, VertexId v) const;
    std::string edge_key(VertexId u, VertexId v) const;

    bool same_graph(const Graph& other) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, VertexId> index_;
    std::vector<std::vector<VertexId>> adj_;
    std::set<std::pair<VertexId, VertexId>> edges_;
    std::vector<int> layer_;
};

// Cyclic order of incident edges per vertex. Edges are stored as normalized
// endpoint pairs.
struct RotationSystem {
    std::map<VertexId, std::vector<std::pair<VertexId, VertexId>>> order_at;

    // Every incident edge of v appears exactly once in order_at[v].
    bool valid_for(const Graph& g, std::string* why = nullptr) const;
};

// Line-oriented graph file format:
//   # comment
//   p <n> <m>
//   l <v> <0|1>
//   e <u> <v>
Graph load_graph(const std::string& text);
std::string save_graph(const Graph& g);

// Rotation file: one line per vertex, "r <v> <u1-w1> <u2-w2> ...".
RotationSystem load_rotation(const std::string& text, const Graph& g);
std::string save_rotation(const RotationSystem& r, const Graph& g);

// 0 = disconnected or trivial, 1 = connected, 2 = biconnected,
// 3 = triconnected or better. Pair-removal check, oracle-grade only.
int connectivity_level(const Graph& g);

struct DegreeProfile {
    std::vector<int> sorted_degrees;
    std::vector<VertexId> over_three;  // degree > 3
    std::vector<VertexId> over_four;   // degree > 4
};
DegreeProfile degree_profile(const Graph& g);

bool is_connected(const Graph& g);
bool is_biconnected(const Graph& g);
// Checks layer assignment is total and every edge crosses layers.
bool layers_consistent(const Graph& g, std::string* why = nullptr);

}  // namespace fbp
