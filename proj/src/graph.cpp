#include "fbp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <sstream>

namespace fbp {

VertexId Graph::add_vertex(const std::string& token) {
    if (index_.count(token))
        throw parse_error("duplicate vertex token '" + token + "'");
    VertexId id = static_cast<VertexId>(names_.size());
    names_.push_back(token);
    index_[token] = id;
    adj_.emplace_back();
    layer_.resize(names_.size(), -1);
    return id;
}

VertexId Graph::ensure_vertex(const std::string& token) {
    auto it = index_.find(token);
    if (it != index_.end()) return it->second;
    return add_vertex(token);
}

VertexId Graph::vertex(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end())
        throw parse_error("unknown vertex token '" + token + "'");
    return it->second;
}

std::pair<VertexId, VertexId> Graph::norm(VertexId u, VertexId v) const {
    return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}

std::string Graph::edge_key(VertexId u, VertexId v) const {
    auto [a, b] = norm(u, v);
    return names_[a] + "-" + names_[b];
}

void Graph::add_edge(VertexId u, VertexId v) {
    if (u == v)
        throw parse_error("self-loop at vertex '" + names_[u] + "'");
    auto e = norm(u, v);
    if (edges_.count(e))
        throw parse_error("duplicate edge '" + edge_key(u, v) + "'");
    if (layer_[u] >= 0 && layer_[v] >= 0 && layer_[u] == layer_[v])
        throw parse_error("edge '" + edge_key(u, v) + "' joins two layer-" +
                          std::to_string(layer_[u]) + " vertices");
    edges_.insert(e);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    return edges_.count(norm(u, v)) != 0;
}

void Graph::set_layer(VertexId v, int layer) {
    if (layer != 0 && layer != 1)
        throw parse_error("layer of '" + names_[v] + "' must be 0 or 1");
    layer_[v] = layer;
}

int Graph::layer(VertexId v) const { return layer_.empty() ? -1 : layer_[v]; }

bool Graph::same_graph(const Graph& other) const {
    if (vertex_count() != other.vertex_count() || edge_count() != other.edge_count())
        return false;
    for (VertexId v = 0; v < vertex_count(); ++v)
        if (!other.has_vertex(names_[v])) return false;
    for (auto [u, v] : edges_) {
        VertexId ou = other.vertex(names_[u]), ov = other.vertex(names_[v]);
        if (!other.has_edge(ou, ov)) return false;
    }
    return true;
}

bool RotationSystem::valid_for(const Graph& g, std::string* why) const {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto it = order_at.find(v);
        size_t have = it == order_at.end() ? 0 : it->second.size();
        if (static_cast<int>(have) != g.degree(v)) {
            if (why)
                *why = "vertex '" + g.name(v) + "' lists " + std::to_string(have) +
                       " edges, degree is " + std::to_string(g.degree(v));
            return false;
        }
        if (it == order_at.end()) continue;
        std::set<std::pair<VertexId, VertexId>> seen;
        for (auto e : it->second) {
            auto n = g.norm(e.first, e.second);
            if (n.first != v && n.second != v) {
                if (why) *why = "vertex '" + g.name(v) + "' lists a non-incident edge";
                return false;
            }
            if (!g.has_edge(n.first, n.second)) {
                if (why) *why = "vertex '" + g.name(v) + "' lists a missing edge";
                return false;
            }
            if (!seen.insert(n).second) {
                if (why) *why = "vertex '" + g.name(v) + "' repeats an edge";
                return false;
            }
        }
    }
    return true;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

long parse_int(const std::string& tok, int lineno, const char* what) {
    long value = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw parse_error("line " + std::to_string(lineno) + ": bad " + what + " '" + tok + "'");
    return value;
}

}  // namespace

Graph load_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    long n = 0, m = 0;
    struct Pending {
        char kind;
        std::string a, b;
        int lineno;
    };
    std::vector<Pending> items;
    std::vector<std::string> order;  // first-use order of tokens
    std::set<std::string> seen;
    bool all_numeric = true;
    auto note = [&](const std::string& tok) {
        if (!seen.insert(tok).second) return;
        order.push_back(tok);
        for (char c : tok)
            if (!isdigit(static_cast<unsigned char>(c))) all_numeric = false;
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "p") {
            if (have_header || toks.size() != 3)
                throw parse_error("line " + std::to_string(lineno) + ": bad header");
            n = parse_int(toks[1], lineno, "vertex count");
            m = parse_int(toks[2], lineno, "edge count");
            if (n < 0 || m < 0)
                throw parse_error("line " + std::to_string(lineno) + ": negative count");
            have_header = true;
        } else if (toks[0] == "l") {
            if (toks.size() != 3)
                throw parse_error("line " + std::to_string(lineno) + ": bad layer line");
            note(toks[1]);
            items.push_back({'l', toks[1], toks[2], lineno});
        } else if (toks[0] == "e") {
            if (toks.size() != 3)
                throw parse_error("line " + std::to_string(lineno) + ": bad edge line");
            note(toks[1]);
            note(toks[2]);
            items.push_back({'e', toks[1], toks[2], lineno});
        } else {
            throw parse_error("line " + std::to_string(lineno) + ": unknown record '" + toks[0] + "'");
        }
    }
    if (!have_header) throw parse_error("missing 'p <n> <m>' header");

    Graph g;
    // When every mentioned token is an integer in [1, n], use the natural
    // order 1..n (covers isolated vertices); otherwise register by first use.
    bool natural = all_numeric;
    if (natural) {
        for (const auto& tok : order) {
            long v = 0;
            auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec != std::errc() || v < 1 || v > n) {
                natural = false;
                break;
            }
        }
    }
    if (natural) {
        for (long i = 1; i <= n; ++i) g.add_vertex(std::to_string(i));
    } else {
        if (static_cast<long>(order.size()) != n)
            throw parse_error("header declares " + std::to_string(n) + " vertices, found " +
                              std::to_string(order.size()) + " distinct tokens");
        for (const auto& tok : order) g.add_vertex(tok);
    }

    try {
        for (const auto& it : items)
            if (it.kind == 'l')
                g.set_layer(g.vertex(it.a), static_cast<int>(parse_int(it.b, it.lineno, "layer")));
        for (const auto& it : items)
            if (it.kind == 'e') g.add_edge(g.vertex(it.a), g.vertex(it.b));
    } catch (const parse_error& e) {
        throw parse_error(std::string(e.what()));
    }
    if (g.edge_count() != m)
        throw parse_error("header declares " + std::to_string(m) + " edges, found " +
                          std::to_string(g.edge_count()));
    return g;
}

std::string save_graph(const Graph& g) {
    std::ostringstream out;
    out << "p " << g.vertex_count() << " " << g.edge_count() << "\n";
    if (g.has_layers()) {
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (g.layer(v) >= 0) out << "l " << g.name(v) << " " << g.layer(v) << "\n";
    }
    for (auto [u, v] : g.edges()) out << "e " << g.name(u) << " " << g.name(v) << "\n";
    return out.str();
}

RotationSystem load_rotation(const std::string& text, const Graph& g) {
    RotationSystem r;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] != "r" || toks.size() < 2)
            throw parse_error("line " + std::to_string(lineno) + ": bad rotation line");
        VertexId v = g.vertex(toks[1]);
        std::vector<std::pair<VertexId, VertexId>> cyc;
        for (size_t i = 2; i < toks.size(); ++i) {
            auto dash = toks[i].find('-');
            if (dash == std::string::npos)
                throw parse_error("line " + std::to_string(lineno) + ": bad edge token '" + toks[i] + "'");
            VertexId a = g.vertex(toks[i].substr(0, dash));
            VertexId b = g.vertex(toks[i].substr(dash + 1));
            cyc.push_back(g.norm(a, b));
        }
        if (r.order_at.count(v))
            throw parse_error("line " + std::to_string(lineno) + ": repeated vertex '" + toks[1] + "'");
        r.order_at[v] = cyc;
    }
    std::string why;
    if (!r.valid_for(g, &why)) throw parse_error("invalid rotation system: " + why);
    return r;
}

std::string save_rotation(const RotationSystem& r, const Graph& g) {
    std::ostringstream out;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto it = r.order_at.find(v);
        if (it == r.order_at.end()) continue;
        out << "r " << g.name(v);
        for (auto e : it->second) out << " " << g.edge_key(e.first, e.second);
        out << "\n";
    }
    return out.str();
}

namespace {

int count_components(const Graph& g, const std::vector<bool>& removed) {
    int n = g.vertex_count();
    std::vector<bool> vis(n, false);
    int comps = 0;
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
        if (removed[s] || vis[s]) continue;
        ++comps;
        stack.push_back(s);
        vis[s] = true;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId w : g.neighbors(v))
                if (!removed[w] && !vis[w]) {
                    vis[w] = true;
                    stack.push_back(w);
                }
        }
    }
    return comps;
}

}  // namespace

bool is_connected(const Graph& g) {
    if (g.vertex_count() == 0) return false;
    std::vector<bool> removed(g.vertex_count(), false);
    return count_components(g, removed) == 1;
}

bool is_biconnected(const Graph& g) {
    int n = g.vertex_count();
    if (n < 3) return false;
    if (!is_connected(g)) return false;
    std::vector<bool> removed(n, false);
    for (VertexId v = 0; v < n; ++v) {
        removed[v] = true;
        if (count_components(g, removed) != 1) return false;
        removed[v] = false;
    }
    return true;
}

int connectivity_level(const Graph& g) {
    int n = g.vertex_count();
    if (n <= 1) return 0;
    if (!is_connected(g)) return 0;
    if (n == 2) return 1;
    std::vector<bool> removed(n, false);
    for (VertexId v = 0; v < n; ++v) {
        removed[v] = true;
        if (count_components(g, removed) != 1) return 1;
        removed[v] = false;
    }
    if (n == 3) return 2;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) {
            removed[u] = removed[v] = true;
            if (count_components(g, removed) != 1) {
                removed[u] = removed[v] = false;
                return 2;
            }
            removed[u] = removed[v] = false;
        }
    return 3;
}

DegreeProfile degree_profile(const Graph& g) {
    DegreeProfile p;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        int d = g.degree(v);
        p.sorted_degrees.push_back(d);
        if (d > 3) p.over_three.push_back(v);
        if (d > 4) p.over_four.push_back(v);
    }
    std::sort(p.sorted_degrees.begin(), p.sorted_degrees.end());
    return p;
}

bool layers_consistent(const Graph& g, std::string* why) {
    if (!g.has_layers()) {
        if (why) *why = "graph has no layer assignment";
        return false;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.layer(v) < 0) {
            if (why) *why = "vertex '" + g.name(v) + "' has no layer";
            return false;
        }
    for (auto [u, v] : g.edges())
        if (g.layer(u) == g.layer(v)) {
            if (why) *why = "edge '" + g.edge_key(u, v) + "' stays inside one layer";
            return false;
        }
    return true;
}

}  // namespace fbp
