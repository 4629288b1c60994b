// Copyright 2026 The graphdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRAPHDYN_GRAPH_HPP
#define GRAPHDYN_GRAPH_HPP

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <type_traits>

#include "graphdyn/universe.hpp"

namespace graphdyn {

/// A labelled port graph over some universe, packed into a fixed-size value.
///
///  - `vertex_mask` holds the (finite) vertex set as a bit per VertexId.
///  - `label[v]` is the label index of v, or kNone where the partial
///    labelling is undefined (or v is absent).
///  - `partner[s]` is the slot paired with slot s = v*ports + p, or kNone if
///    the slot is free. An edge is an unordered pair of distinct slots, so
///    `partner` is a fixed-point-free symmetric involution on the used slots.
///
/// A slot is used by at most one edge, which bounds every vertex degree by
/// the port count. Slots of absent vertices are kNone and absent vertices are
/// unlabelled, so equal graphs have equal object bytes: equality is defaulted
/// and hashing reads the raw representation.
struct Graph {
    uint32_t vertex_mask = 0;
    std::array<int8_t, kMaxVertices> label;
    std::array<int8_t, kMaxSlots> partner;

    Graph() {
        label.fill(kNone);
        partner.fill(kNone);
    }

    bool operator==(const Graph &) const = default;

    bool has_vertex(VertexId v) const {
        return (vertex_mask >> v) & 1u;
    }
    bool is_empty() const {
        return vertex_mask == 0;
    }
    void add_vertex(VertexId v) {
        vertex_mask |= 1u << v;
    }
};

static_assert(std::has_unique_object_representations_v<Graph>,
              "Graph must be byte-comparable for hashing and equality");

struct GraphHash {
    size_t operator()(const Graph &g) const {
        const auto *p = reinterpret_cast<const unsigned char *>(&g);
        uint64_t h = 1469598103934665603ull;
        for (size_t i = 0; i < sizeof(Graph); i++) {
            h ^= p[i];
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

inline int popcount32(uint32_t m) {
    return __builtin_popcount(m);
}

/// Range over the set bits of a vertex mask: `for (VertexId v : vertices_of(m))`.
struct BitRange {
    uint32_t mask;
    struct Iter {
        uint32_t m;
        VertexId operator*() const {
            return __builtin_ctz(m);
        }
        Iter &operator++() {
            m &= m - 1;
            return *this;
        }
        bool operator!=(const Iter &o) const {
            return m != o.m;
        }
    };
    Iter begin() const {
        return {mask};
    }
    Iter end() const {
        return {0};
    }
};

inline BitRange vertices_of(uint32_t mask) {
    return {mask};
}

inline void set_label(Graph &g, VertexId v, LabelId l) {
    g.label[v] = static_cast<int8_t>(l);
}

/// Adds the edge {a:pa, b:pb}. Both slots must be free and distinct.
inline void connect(const Universe &u, Graph &g, VertexId a, PortId pa, VertexId b, PortId pb) {
    int32_t s = u.slot(a, pa);
    int32_t t = u.slot(b, pb);
    if (s == t) {
        fail(ErrorCode::MalformedInput, "an edge cannot pair a slot with itself");
    }
    if (g.partner[s] != kNone || g.partner[t] != kNone) {
        fail(ErrorCode::MalformedInput, "slot already used by another edge");
    }
    g.add_vertex(a);
    g.add_vertex(b);
    g.partner[s] = static_cast<int8_t>(t);
    g.partner[t] = static_cast<int8_t>(s);
}

inline int degree(const Universe &u, const Graph &g, VertexId v) {
    int d = 0;
    for (PortId p = 0; p < u.ports; p++) {
        d += g.partner[u.slot(v, p)] != kNone;
    }
    return d;
}

/// Structural well-formedness of a graph relative to its universe: labels and
/// edges only at present vertices, in-range ids, and `partner` a symmetric
/// fixed-point-free involution.
inline void check_graph(const Universe &u, const Graph &g) {
    if (g.vertex_mask & ~u.full_vertex_mask()) {
        fail(ErrorCode::MalformedInput, "vertex outside the universe");
    }
    for (VertexId v = 0; v < kMaxVertices; v++) {
        bool present = v < u.vertex_count() && g.has_vertex(v);
        if (!present && g.label[v] != kNone) {
            fail(ErrorCode::MalformedInput, "label on an absent vertex");
        }
        if (g.label[v] != kNone && g.label[v] >= u.label_count()) {
            fail(ErrorCode::MalformedInput, "label index out of range");
        }
    }
    for (int32_t s = 0; s < kMaxSlots; s++) {
        int32_t t = g.partner[s];
        if (t == kNone) {
            continue;
        }
        if (s >= u.slot_count() || t >= u.slot_count() || t < 0) {
            fail(ErrorCode::MalformedInput, "slot index out of range");
        }
        if (t == s) {
            fail(ErrorCode::MalformedInput, "edge pairs a slot with itself");
        }
        if (g.partner[t] != s) {
            fail(ErrorCode::MalformedInput, "edge table is not symmetric");
        }
        if (!g.has_vertex(u.slot_vertex(s))) {
            fail(ErrorCode::MalformedInput, "edge endpoint vertex is absent");
        }
    }
}

/// Two graphs are consistent when, over shared vertices, labels agree where
/// both are defined and any slot used by both graphs points at the same far
/// slot. Consistency is the precondition of union_graphs.
inline bool consistent(const Universe &u, const Graph &a, const Graph &b) {
    uint32_t shared = a.vertex_mask & b.vertex_mask;
    for (VertexId v : vertices_of(shared)) {
        if (a.label[v] != kNone && b.label[v] != kNone && a.label[v] != b.label[v]) {
            return false;
        }
        for (PortId p = 0; p < u.ports; p++) {
            int32_t s = u.slot(v, p);
            if (a.partner[s] != kNone && b.partner[s] != kNone && a.partner[s] != b.partner[s]) {
                return false;
            }
        }
    }
    return true;
}

/// Union of consistent graphs: vertices, edges and defined labels of both.
inline Graph union_graphs(const Universe &u, const Graph &a, const Graph &b) {
    if (!consistent(u, a, b)) {
        fail(ErrorCode::InconsistentOperands, "union of inconsistent graphs");
    }
    Graph r;
    r.vertex_mask = a.vertex_mask | b.vertex_mask;
    for (VertexId v = 0; v < u.vertex_count(); v++) {
        r.label[v] = a.label[v] != kNone ? a.label[v] : b.label[v];
    }
    for (int32_t s = 0; s < u.slot_count(); s++) {
        r.partner[s] = a.partner[s] != kNone ? a.partner[s] : b.partner[s];
    }
    return r;
}

/// Vertices reachable from `seed` in at most `radius` edge steps within g.
/// Seed vertices absent from g are dropped first.
inline uint32_t disk_vertices(const Universe &u, const Graph &g, uint32_t seed, int radius) {
    uint32_t cur = seed & g.vertex_mask;
    for (int step = 0; step < radius && cur != 0; step++) {
        uint32_t nxt = cur;
        for (VertexId v : vertices_of(cur)) {
            for (PortId p = 0; p < u.ports; p++) {
                int32_t t = g.partner[u.slot(v, p)];
                if (t != kNone) {
                    nxt |= 1u << u.slot_vertex(t);
                }
            }
        }
        if (nxt == cur) {
            break;
        }
        cur = nxt;
    }
    return cur;
}

/// Radius-1 neighbours of `seed` in g that do not lie in `seed`.
inline uint32_t border_vertices(const Universe &u, const Graph &g, uint32_t seed) {
    return disk_vertices(u, g, seed, 1) & ~seed;
}

/// Subgraph induced by `region` and its border: keeps region vertices, their
/// border vertices, every edge with at least one endpoint in the region, and
/// the labels of region vertices only. Vertices of `region` absent from g are
/// ignored.
inline Graph restrict_to(const Universe &u, const Graph &g, uint32_t region) {
    uint32_t d = region & g.vertex_mask;
    Graph r;
    r.vertex_mask = disk_vertices(u, g, d, 1);  // d plus its border
    for (VertexId v : vertices_of(d)) {
        r.label[v] = g.label[v];
    }
    for (VertexId v : vertices_of(g.vertex_mask)) {
        for (PortId p = 0; p < u.ports; p++) {
            int32_t s = u.slot(v, p);
            int32_t t = g.partner[s];
            if (t != kNone && s < t) {
                bool touches = ((d >> v) & 1u) || ((d >> u.slot_vertex(t)) & 1u);
                if (touches) {
                    r.partner[s] = static_cast<int8_t>(t);
                    r.partner[t] = static_cast<int8_t>(s);
                }
            }
        }
    }
    return r;
}

/// Subgraph induced by the complement of `region`: the remaining vertices,
/// only the edges internal to them, and all their labels.
inline Graph corestrict_to(const Universe &u, const Graph &g, uint32_t region) {
    uint32_t keep = g.vertex_mask & ~region;
    Graph r;
    r.vertex_mask = keep;
    for (VertexId v : vertices_of(keep)) {
        r.label[v] = g.label[v];
        for (PortId p = 0; p < u.ports; p++) {
            int32_t s = u.slot(v, p);
            int32_t t = g.partner[s];
            if (t != kNone && ((keep >> u.slot_vertex(t)) & 1u)) {
                r.partner[s] = static_cast<int8_t>(t);
            }
        }
    }
    return r;
}

/// Deterministic total encoding of a graph. Two graphs get the same key iff
/// they are equal as labelled graphs; the empty graph's key "" is minimal
/// among keys in byte order. Format:
///   vertex list  name or name[label], ascending VertexId, comma separated
///   ";"
///   edge list    a.0-b.1 with the lower slot first, ascending slot pairs
inline std::string canonical_key(const Universe &u, const Graph &g) {
    if (g.is_empty()) {
        return "";
    }
    std::string out;
    bool first = true;
    for (VertexId v : vertices_of(g.vertex_mask)) {
        if (!first) {
            out += ',';
        }
        first = false;
        out += u.vertices[v];
        if (g.label[v] != kNone) {
            out += '[';
            out += u.labels[g.label[v]];
            out += ']';
        }
    }
    out += ';';
    first = true;
    for (int32_t s = 0; s < u.slot_count(); s++) {
        int32_t t = g.partner[s];
        if (t == kNone || t < s) {
            continue;
        }
        if (!first) {
            out += ',';
        }
        first = false;
        out += u.vertices[u.slot_vertex(s)];
        out += '.';
        out += std::to_string(u.slot_port(s));
        out += '-';
        out += u.vertices[u.slot_vertex(t)];
        out += '.';
        out += std::to_string(u.slot_port(t));
    }
    return out;
}

/// Parses the canonical_key format back into a graph (exact inverse on valid
/// keys; malformed keys fail).
inline Graph parse_key(const Universe &u, const std::string &key) {
    Graph g;
    if (key.empty()) {
        return g;
    }
    size_t semi = key.find(';');
    if (semi == std::string::npos) {
        fail(ErrorCode::MalformedInput, "graph key lacks ';': '" + key + "'");
    }
    auto parse_vertex = [&](const std::string &tok) {
        size_t br = tok.find('[');
        std::string name = tok.substr(0, br);
        VertexId v = u.vertex_id(name);
        if (g.has_vertex(v)) {
            fail(ErrorCode::MalformedInput, "duplicate vertex in key: '" + name + "'");
        }
        g.add_vertex(v);
        if (br != std::string::npos) {
            if (tok.back() != ']') {
                fail(ErrorCode::MalformedInput, "unterminated label in key: '" + tok + "'");
            }
            set_label(g, v, u.label_id(tok.substr(br + 1, tok.size() - br - 2)));
        }
    };
    auto parse_slot = [&](const std::string &tok) -> std::pair<VertexId, PortId> {
        size_t dot = tok.rfind('.');
        if (dot == std::string::npos || dot + 1 >= tok.size()) {
            fail(ErrorCode::MalformedInput, "bad slot '" + tok + "'");
        }
        VertexId v = u.vertex_id(tok.substr(0, dot));
        int port = 0;
        try {
            port = std::stoi(tok.substr(dot + 1));
        } catch (const std::exception &) {
            fail(ErrorCode::MalformedInput, "bad port in slot '" + tok + "'");
        }
        if (port < 0 || port >= u.ports) {
            fail(ErrorCode::MalformedInput, "port out of range in slot '" + tok + "'");
        }
        return {v, port};
    };
    auto for_each_token = [](const std::string &s, auto &&fn) {
        size_t pos = 0;
        while (pos < s.size()) {
            size_t comma = s.find(',', pos);
            if (comma == std::string::npos) {
                comma = s.size();
            }
            fn(s.substr(pos, comma - pos));
            pos = comma + 1;
        }
    };
    for_each_token(key.substr(0, semi), parse_vertex);
    for_each_token(key.substr(semi + 1), [&](const std::string &tok) {
        size_t dash = tok.find('-');
        if (dash == std::string::npos) {
            fail(ErrorCode::MalformedInput, "bad edge '" + tok + "'");
        }
        auto [av, ap] = parse_slot(tok.substr(0, dash));
        auto [bv, bp] = parse_slot(tok.substr(dash + 1));
        if (!g.has_vertex(av) || !g.has_vertex(bv)) {
            fail(ErrorCode::MalformedInput, "edge endpoint not in vertex list: '" + tok + "'");
        }
        connect(u, g, av, ap, bv, bp);
    });
    return g;
}

}  // namespace graphdyn

#endif
