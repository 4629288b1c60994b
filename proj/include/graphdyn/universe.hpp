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

#ifndef GRAPHDYN_UNIVERSE_HPP
#define GRAPHDYN_UNIVERSE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphdyn/errors.hpp"

namespace graphdyn {

// Compile-time bounds of the packed graph representation. Desk-scale sectors
// stay far below these; the limits exist so a graph fits in a fixed-size,
// memcmp-comparable value.
inline constexpr int kMaxVertices = 8;
inline constexpr int kMaxPorts = 8;
inline constexpr int kMaxSlots = kMaxVertices * kMaxPorts;

using VertexId = int32_t;  // index into Universe::vertices
using LabelId = int32_t;   // index into Universe::labels
using PortId = int32_t;    // 0 .. Universe::ports-1

inline constexpr int8_t kNone = -1;  // absent label / free slot

/// Alphabet sizes of the universe a marked universe was derived from.
struct MarkedBase {
    int32_t labels = 0;
    int32_t ports = 0;
    bool operator==(const MarkedBase &) const = default;
};

/// A finite universe (V0, Sigma, pi): named vertices, a label alphabet, and a
/// fixed port count per vertex. Every graph, state and operator is interpreted
/// relative to one universe. Universes are immutable after validation.
///
/// A universe produced by make_marked() doubles both alphabets with a mark
/// bit: label (x,b) has index x + b*base.labels, port (i,b) has index
/// i + b*base.ports. Unmarked labels and ports therefore keep their base
/// indices and names.
struct Universe {
    std::vector<std::string> vertices;
    std::vector<std::string> labels;
    int32_t ports = 0;
    std::optional<MarkedBase> marked_base;

    bool operator==(const Universe &) const = default;

    int32_t vertex_count() const {
        return static_cast<int32_t>(vertices.size());
    }
    int32_t label_count() const {
        return static_cast<int32_t>(labels.size());
    }
    int32_t slot_count() const {
        return vertex_count() * ports;
    }
    int32_t slot(VertexId v, PortId p) const {
        return v * ports + p;
    }
    VertexId slot_vertex(int32_t s) const {
        return s / ports;
    }
    PortId slot_port(int32_t s) const {
        return s % ports;
    }
    uint32_t full_vertex_mask() const {
        return (vertex_count() == 32) ? ~0u : ((1u << vertex_count()) - 1u);
    }

    bool is_marked() const {
        return marked_base.has_value();
    }
    int label_mark(LabelId l) const {
        return l >= marked_base->labels ? 1 : 0;
    }
    LabelId label_toggled(LabelId l) const {
        return label_mark(l) ? l - marked_base->labels : l + marked_base->labels;
    }
    int port_mark(PortId p) const {
        return p >= marked_base->ports ? 1 : 0;
    }
    PortId port_toggled(PortId p) const {
        return port_mark(p) ? p - marked_base->ports : p + marked_base->ports;
    }
    int slot_mark(int32_t s) const {
        return port_mark(slot_port(s));
    }
    int32_t slot_toggled(int32_t s) const {
        return slot(slot_vertex(s), port_toggled(slot_port(s)));
    }

    std::optional<VertexId> find_vertex(const std::string &name) const {
        auto it = std::find(vertices.begin(), vertices.end(), name);
        if (it == vertices.end()) {
            return std::nullopt;
        }
        return static_cast<VertexId>(it - vertices.begin());
    }
    VertexId vertex_id(const std::string &name) const {
        auto v = find_vertex(name);
        if (!v) {
            fail(ErrorCode::MalformedInput, "unknown vertex '" + name + "'");
        }
        return *v;
    }
    std::optional<LabelId> find_label(const std::string &name) const {
        auto it = std::find(labels.begin(), labels.end(), name);
        if (it == labels.end()) {
            return std::nullopt;
        }
        return static_cast<LabelId>(it - labels.begin());
    }
    LabelId label_id(const std::string &name) const {
        auto l = find_label(name);
        if (!l) {
            fail(ErrorCode::MalformedInput, "unknown label '" + name + "'");
        }
        return *l;
    }

    /// Checks naming rules and size limits. Vertex names are restricted to
    /// [A-Za-z0-9_]+ and labels to [A-Za-z0-9_*]+ so that canonical keys
    /// parse unambiguously ('*' is reserved for derived marked labels).
    void validate() const {
        auto check_name = [](const std::string &s, const char *what, bool allow_star) {
            if (s.empty()) {
                fail(ErrorCode::MalformedInput, std::string(what) + " name is empty");
            }
            for (char c : s) {
                bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                          c == '_' || (allow_star && c == '*');
                if (!ok) {
                    fail(ErrorCode::MalformedInput,
                         std::string(what) + " name '" + s + "' has a disallowed character");
                }
            }
        };
        if (vertices.empty() || vertex_count() > kMaxVertices) {
            fail(ErrorCode::MalformedInput,
                 "vertex count must be in 1.." + std::to_string(kMaxVertices));
        }
        if (ports < 1 || ports > kMaxPorts) {
            fail(ErrorCode::MalformedInput, "port count must be in 1.." + std::to_string(kMaxPorts));
        }
        if (labels.empty() || label_count() > 126) {
            fail(ErrorCode::MalformedInput, "label alphabet must be non-empty and fit an int8");
        }
        for (const auto &n : vertices) {
            check_name(n, "vertex", false);
        }
        for (const auto &n : labels) {
            check_name(n, "label", true);
        }
        auto unique_check = [](std::vector<std::string> v, const char *what) {
            std::sort(v.begin(), v.end());
            if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
                fail(ErrorCode::MalformedInput, std::string("duplicate ") + what + " name");
            }
        };
        unique_check(vertices, "vertex");
        unique_check(labels, "label");
        if (marked_base) {
            if (marked_base->labels * 2 != label_count() || marked_base->ports * 2 != ports) {
                fail(ErrorCode::MalformedInput, "marked universe alphabets are not doubled");
            }
            for (int32_t i = 0; i < marked_base->labels; i++) {
                if (labels[i + marked_base->labels] != labels[i] + "*") {
                    fail(ErrorCode::MalformedInput, "marked label names must be base names plus '*'");
                }
            }
        }
    }
};

/// Doubles the label and port alphabets of `base` with a mark bit. The name
/// of a marked label is the base name with '*' appended; marked ports occupy
/// indices base.ports .. 2*base.ports-1.
inline Universe make_marked(const Universe &base) {
    if (base.is_marked()) {
        fail(ErrorCode::MalformedInput, "universe is already marked");
    }
    Universe m;
    m.vertices = base.vertices;
    m.labels = base.labels;
    for (const auto &l : base.labels) {
        m.labels.push_back(l + "*");
    }
    m.ports = base.ports * 2;
    m.marked_base = MarkedBase{base.label_count(), base.ports};
    m.validate();
    return m;
}

/// Recovers the base universe a marked universe was derived from.
inline Universe unmarked_base(const Universe &marked) {
    if (!marked.is_marked()) {
        fail(ErrorCode::MalformedInput, "universe is not marked");
    }
    Universe b;
    b.vertices = marked.vertices;
    b.labels.assign(marked.labels.begin(), marked.labels.begin() + marked.marked_base->labels);
    b.ports = marked.marked_base->ports;
    b.validate();
    return b;
}

}  // namespace graphdyn

#endif
