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

#ifndef GRAPHDYN_MARKS_HPP
#define GRAPHDYN_MARKS_HPP

#include "graphdyn/graph.hpp"

namespace graphdyn {

// Graphs over a marked universe carry one mark bit per vertex, stored
// redundantly: in the second component of the vertex's label and on the
// opposite port of every edge incident to the vertex. A graph is a valid
// marked graph when all copies of each vertex's bit agree.
//
// A vertex with an undefined label carries no label bit; its mark is the
// common bit on the opposite ports of its edges, and an isolated unlabelled
// vertex counts as unmarked.

/// The mark bits visible "from" vertex v: the far-slot bits of its edges
/// (both slots of a self-loop are far slots of v). Returns a 2-bit set:
/// bit 0 set if some far slot is unmarked, bit 1 if some is marked.
inline int far_mark_set(const Universe &u, const Graph &g, VertexId v) {
    int seen = 0;
    for (PortId p = 0; p < u.ports; p++) {
        int32_t t = g.partner[u.slot(v, p)];
        if (t != kNone) {
            seen |= 1 << u.slot_mark(t);
        }
    }
    return seen;
}

/// Effective mark of a present vertex in a valid marked graph.
inline int vertex_mark(const Universe &u, const Graph &g, VertexId v) {
    if (g.label[v] != kNone) {
        return u.label_mark(g.label[v]);
    }
    return far_mark_set(u, g, v) == 2 ? 1 : 0;
}

/// Whether g satisfies the mark-consistency rule of the marked graph space.
inline bool is_valid_marked(const Universe &u, const Graph &g) {
    for (VertexId v : vertices_of(g.vertex_mask)) {
        int seen = far_mark_set(u, g, v);
        if (seen == 3) {
            return false;  // conflicting far bits
        }
        if (g.label[v] != kNone && seen != 0 && seen != (1 << u.label_mark(g.label[v]))) {
            return false;  // label bit disagrees with far bits
        }
    }
    return true;
}

/// Mask of the marked vertices of a valid marked graph.
inline uint32_t marked_vertices(const Universe &u, const Graph &g) {
    uint32_t m = 0;
    for (VertexId v : vertices_of(g.vertex_mask)) {
        if (vertex_mark(u, g, v)) {
            m |= 1u << v;
        }
    }
    return m;
}

inline bool is_all_unmarked(const Universe &u, const Graph &g) {
    for (VertexId v : vertices_of(g.vertex_mask)) {
        if (g.label[v] != kNone && u.label_mark(g.label[v])) {
            return false;
        }
        for (PortId p = 0; p < u.ports; p++) {
            if (g.partner[u.slot(v, p)] != kNone && u.port_mark(p)) {
                return false;
            }
        }
    }
    return true;
}

/// Every present vertex carries mark 1 (labelled marked, or unlabelled with
/// marked far ports). Isolated unlabelled vertices count as unmarked, so a
/// graph containing one is never fully marked.
inline bool is_fully_marked(const Universe &u, const Graph &g) {
    for (VertexId v : vertices_of(g.vertex_mask)) {
        if (vertex_mark(u, g, v) != 1) {
            return false;
        }
    }
    return true;
}

/// The mark operation at vertex v: toggles the bit of v's label, of the far
/// slot of every edge from v, and of both slots of every self-loop at v —
/// unless some toggled far slot is already occupied in g, in which case the
/// graph is returned unchanged (port conflict clause). Graphs without v are
/// also fixed. mu_graph is an involution on valid marked graphs.
inline Graph mu_graph(const Universe &u, const Graph &g, VertexId v) {
    if (!g.has_vertex(v)) {
        return g;
    }
    // Conflict scan: every slot reachable as the far end of an edge at v must
    // have its toggled twin free.
    for (PortId p = 0; p < u.ports; p++) {
        int32_t t = g.partner[u.slot(v, p)];
        if (t != kNone && g.partner[u.slot_toggled(t)] != kNone) {
            return g;
        }
    }
    Graph r = g;
    if (r.label[v] != kNone) {
        r.label[v] = static_cast<int8_t>(u.label_toggled(r.label[v]));
    }
    // Collect v's edges once, then rewire. Loops toggle both ends.
    for (PortId p = 0; p < u.ports; p++) {
        int32_t s = u.slot(v, p);
        int32_t t = g.partner[s];
        if (t == kNone || (u.slot_vertex(t) == v && t < s)) {
            continue;  // each loop handled at its lower slot
        }
        r.partner[s] = kNone;
        r.partner[t] = kNone;
        int32_t s2 = u.slot_vertex(t) == v ? u.slot_toggled(s) : s;
        int32_t t2 = u.slot_toggled(t);
        r.partner[s2] = static_cast<int8_t>(t2);
        r.partner[t2] = static_cast<int8_t>(s2);
    }
    return r;
}

/// Applies mu_graph for every vertex in `mask`, in ascending VertexId order.
/// The mark operations commute, so the order does not affect the result.
inline Graph mu_graph_set(const Universe &u, const Graph &g, uint32_t mask) {
    Graph r = g;
    for (VertexId v : vertices_of(mask)) {
        r = mu_graph(u, r, v);
    }
    return r;
}

/// Reinterprets a base-universe graph in the marked universe with all marks
/// zero. Labels keep their indices; edges are re-indexed to the wider slot
/// table.
inline Graph to_marked(const Universe &base, const Universe &marked, const Graph &g) {
    Graph r;
    r.vertex_mask = g.vertex_mask;
    r.label = g.label;
    for (int32_t s = 0; s < base.slot_count(); s++) {
        int32_t t = g.partner[s];
        if (t != kNone && s < t) {
            int32_t s2 = marked.slot(base.slot_vertex(s), base.slot_port(s));
            int32_t t2 = marked.slot(base.slot_vertex(t), base.slot_port(t));
            r.partner[s2] = static_cast<int8_t>(t2);
            r.partner[t2] = static_cast<int8_t>(s2);
        }
    }
    return r;
}

/// Inverse of to_marked. The graph must be all-unmarked.
inline Graph to_base(const Universe &marked, const Universe &base, const Graph &g) {
    if (!is_all_unmarked(marked, g)) {
        fail(ErrorCode::MalformedInput, "graph carries marks: " + canonical_key(marked, g));
    }
    Graph r;
    r.vertex_mask = g.vertex_mask;
    r.label = g.label;
    for (int32_t s = 0; s < marked.slot_count(); s++) {
        int32_t t = g.partner[s];
        if (t != kNone && s < t) {
            int32_t s2 = base.slot(marked.slot_vertex(s), marked.slot_port(s));
            int32_t t2 = base.slot(marked.slot_vertex(t), marked.slot_port(t));
            r.partner[s2] = static_cast<int8_t>(t2);
            r.partner[t2] = static_cast<int8_t>(s2);
        }
    }
    return r;
}

}  // namespace graphdyn

#endif
