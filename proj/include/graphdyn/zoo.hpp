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

#ifndef GRAPHDYN_ZOO_HPP
#define GRAPHDYN_ZOO_HPP

#include <cmath>
#include <functional>

#include "graphdyn/state.hpp"

namespace graphdyn {

using LabelMatrix = std::vector<std::vector<Complex>>;

inline bool matrix_is_unitary(const LabelMatrix &w, double eps) {
    size_t n = w.size();
    for (const auto &row : w) {
        if (row.size() != n) {
            return false;
        }
    }
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            Complex dot = 0;
            for (size_t k = 0; k < n; k++) {
                dot += std::conj(w[k][i]) * w[k][j];
            }
            if (std::abs(dot - (i == j ? Complex(1, 0) : Complex(0, 0))) > eps) {
                return false;
            }
        }
    }
    return true;
}

/// Applies a |labels| x |labels| unitary to the label of `site`. Graphs in
/// which the site is absent or unlabelled are fixed, so partial labellings
/// stay partial. 0-localized upon the site.
inline LinearOp<SectorBasis> build_label_unitary(const SectorBasis &basis, const LabelMatrix &w,
                                                 VertexId site, double eps = 1e-9) {
    const Universe &u = basis.universe();
    if (static_cast<int32_t>(w.size()) != u.label_count() || !matrix_is_unitary(w, eps)) {
        fail(ErrorCode::NonUnitaryParameter, "label gate needs a unitary |labels|^2 matrix");
    }
    LinearOp<SectorBasis> op(basis);
    for (int32_t c = 0; c < basis.size(); c++) {
        const Graph &g = basis.graph(c);
        if (!g.has_vertex(site) || g.label[site] == kNone) {
            op.add_entry(c, c, Complex(1, 0));
            continue;
        }
        LabelId x = g.label[site];
        for (LabelId y = 0; y < u.label_count(); y++) {
            if (std::abs(w[y][x]) <= kPruneEps) {
                continue;
            }
            Graph img = g;
            set_label(img, site, y);
            op.add_entry(basis.index_of(img), c, w[y][x]);
        }
    }
    op.finalize();
    return op;
}

/// When the site's label reads "1" and its ports 0 and 1 are both free (or
/// joined by a self-loop), toggles that self-loop; everything else is fixed.
/// A basis permutation and an involution.
inline LinearOp<SectorBasis> build_controlled_toggle(const SectorBasis &basis, VertexId site) {
    const Universe &u = basis.universe();
    if (u.ports < 2) {
        fail(ErrorCode::MalformedInput, "controlled toggle needs at least two ports");
    }
    LabelId on = u.label_id("1");
    std::vector<int32_t> image(basis.size());
    for (int32_t c = 0; c < basis.size(); c++) {
        const Graph &g = basis.graph(c);
        image[c] = c;
        if (!g.has_vertex(site) || g.label[site] != on) {
            continue;
        }
        int32_t s0 = u.slot(site, 0);
        int32_t s1 = u.slot(site, 1);
        Graph img = g;
        if (g.partner[s0] == kNone && g.partner[s1] == kNone) {
            img.partner[s0] = static_cast<int8_t>(s1);
            img.partner[s1] = static_cast<int8_t>(s0);
        } else if (g.partner[s0] == s1) {
            img.partner[s0] = kNone;
            img.partner[s1] = kNone;
        } else {
            continue;  // ports engaged elsewhere; acting would break the slot invariant
        }
        image[c] = basis.index_of(img);
    }
    return LinearOp<SectorBasis>::permutation(basis, image);
}

/// Swaps the labels across the edge {site:port_here, v:port_there} whenever
/// that edge exists and both endpoint labels are defined. An involution,
/// 1-localized upon the site.
inline LinearOp<SectorBasis> build_neighbor_swap(const SectorBasis &basis, VertexId site,
                                                 PortId port_here, PortId port_there) {
    const Universe &u = basis.universe();
    std::vector<int32_t> image(basis.size());
    for (int32_t c = 0; c < basis.size(); c++) {
        const Graph &g = basis.graph(c);
        image[c] = c;
        if (!g.has_vertex(site)) {
            continue;
        }
        int32_t t = g.partner[u.slot(site, port_here)];
        if (t == kNone || u.slot_port(t) != port_there) {
            continue;
        }
        VertexId v = u.slot_vertex(t);
        if (g.label[site] == kNone || g.label[v] == kNone) {
            continue;
        }
        Graph img = g;
        img.label[site] = g.label[v];
        img.label[v] = g.label[site];
        image[c] = basis.index_of(img);
    }
    return LinearOp<SectorBasis>::permutation(basis, image);
}

/// On graphs whose edge set is exactly the directed cycle v0.0-v1.1,
/// v1.0-v2.1, ..., rotates all cycle labels one step along the orientation;
/// every other graph is fixed. The structure condition is global, so the
/// operator is a stress case: it passes the causality check only while the
/// shipped sector keeps the cycle's diameter small.
inline LinearOp<SectorBasis> build_cycle_shift(const SectorBasis &basis,
                                               const std::vector<VertexId> &cycle) {
    const Universe &u = basis.universe();
    if (cycle.size() < 2 || u.ports < 2) {
        fail(ErrorCode::MalformedInput, "cycle shift needs two ports and at least two vertices");
    }
    Graph pattern;
    for (size_t i = 0; i < cycle.size(); i++) {
        VertexId from = cycle[i];
        VertexId to = cycle[(i + 1) % cycle.size()];
        connect(u, pattern, from, 0, to, 1);
    }
    std::vector<int32_t> image(basis.size());
    for (int32_t c = 0; c < basis.size(); c++) {
        const Graph &g = basis.graph(c);
        image[c] = c;
        if (g.partner != pattern.partner) {
            continue;
        }
        Graph img = g;
        for (size_t i = 0; i < cycle.size(); i++) {
            img.label[cycle[(i + 1) % cycle.size()]] = g.label[cycle[i]];
        }
        image[c] = basis.index_of(img);
    }
    return LinearOp<SectorBasis>::permutation(basis, image);
}

/// Descriptor for one gate of a circuit.
struct GateDescriptor {
    enum class Kind {
        LabelUnitary,
        ControlledSelfloopToggle,
        NeighborLabelSwap,
        CycleShift,
        CustomFile,
    };
    Kind kind = Kind::LabelUnitary;
    std::string site;                // vertex name (all vertices for CycleShift)
    LabelMatrix matrix;              // LabelUnitary
    PortId port_here = 0;            // NeighborLabelSwap
    PortId port_there = 0;           // NeighborLabelSwap
    std::vector<std::string> cycle;  // CycleShift
    std::string path;                // CustomFile; resolved by the CLI layer
};

using CustomGateLoader = std::function<LinearOp<SectorBasis>(const SectorBasis &, const std::string &)>;

inline LinearOp<SectorBasis> build_gate(const SectorBasis &basis, const GateDescriptor &d,
                                        const CustomGateLoader &load_custom = {}) {
    const Universe &u = basis.universe();
    switch (d.kind) {
        case GateDescriptor::Kind::LabelUnitary:
            return build_label_unitary(basis, d.matrix, u.vertex_id(d.site));
        case GateDescriptor::Kind::ControlledSelfloopToggle:
            return build_controlled_toggle(basis, u.vertex_id(d.site));
        case GateDescriptor::Kind::NeighborLabelSwap:
            return build_neighbor_swap(basis, u.vertex_id(d.site), d.port_here, d.port_there);
        case GateDescriptor::Kind::CycleShift: {
            std::vector<VertexId> ids;
            for (const auto &name : d.cycle) {
                ids.push_back(u.vertex_id(name));
            }
            return build_cycle_shift(basis, ids);
        }
        case GateDescriptor::Kind::CustomFile:
            if (!load_custom) {
                fail(ErrorCode::MalformedInput, "no loader for custom gate file '" + d.path + "'");
            }
            return load_custom(basis, d.path);
    }
    fail(ErrorCode::MalformedInput, "unknown gate kind");
}

/// Product of the listed gates, applied in list order (the first gate acts
/// first).
inline LinearOp<SectorBasis> build_circuit(const SectorBasis &basis,
                                           const std::vector<GateDescriptor> &gates,
                                           const CustomGateLoader &load_custom = {}) {
    LinearOp<SectorBasis> acc = LinearOp<SectorBasis>::identity(basis);
    for (const auto &d : gates) {
        acc = compose(build_gate(basis, d, load_custom), acc);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Named operators shipped with the project, each over a fixed sector, with
// the certificate values its manifest promises. The expected numbers are
// reproduced by the checkers in the test suites.

struct ZooEntry {
    std::string name;
    std::string description;
    Universe universe;
    std::function<LinearOp<SectorBasis>(const SectorBasis &)> build;
    bool causal = true;            // jointflip is the deliberate counterexample
    int cert_m = 1;                // certificate radii when causal
    int cert_n = 1;
    std::string site;              // distinguished vertex for locality claims
    int site_radius = 0;           // measured min_local_radius at `site`
};

inline Universe default_universe() {
    return Universe{{"a", "b"}, {"0", "1"}, 2, std::nullopt};
}

inline Universe triangle_universe() {
    return Universe{{"a", "b", "c"}, {"x"}, 2, std::nullopt};
}

inline LabelMatrix pauli_x_matrix() {
    return {{Complex(0, 0), Complex(1, 0)}, {Complex(1, 0), Complex(0, 0)}};
}

inline LabelMatrix hadamard_matrix() {
    double s = 1.0 / std::sqrt(2.0);
    return {{Complex(s, 0), Complex(s, 0)}, {Complex(s, 0), Complex(-s, 0)}};
}

/// Swaps the two fully-labelled edgeless configurations |a[0],b[0]> and
/// |a[1],b[1]> and fixes everything else: a unitary, vertex-preserving
/// operator that correlates two disconnected vertices, hence not causal.
inline LinearOp<SectorBasis> build_joint_flip(const SectorBasis &basis) {
    std::vector<int32_t> image(basis.size());
    for (int32_t i = 0; i < basis.size(); i++) {
        image[i] = i;
    }
    int32_t zz = basis.index_of_key("a[0],b[0];");
    int32_t oo = basis.index_of_key("a[1],b[1];");
    image[zz] = oo;
    image[oo] = zz;
    return LinearOp<SectorBasis>::permutation(basis, image);
}

inline const std::vector<ZooEntry> &zoo_entries() {
    static const std::vector<ZooEntry> entries = [] {
        std::vector<ZooEntry> z;
        Universe def = default_universe();
        z.push_back({"identity", "identity on the default two-vertex sector", def,
                     [](const SectorBasis &b) { return LinearOp<SectorBasis>::identity(b); }, true, 1,
                     1, "a", 0});
        z.push_back({"label_x_a", "bit flip of a's label", def,
                     [](const SectorBasis &b) {
                         return build_label_unitary(b, pauli_x_matrix(), b.universe().vertex_id("a"));
                     },
                     true, 1, 1, "a", 0});
        z.push_back({"hadamard_a", "Hadamard on a's label", def,
                     [](const SectorBasis &b) {
                         return build_label_unitary(b, hadamard_matrix(), b.universe().vertex_id("a"));
                     },
                     true, 1, 1, "a", 0});
        z.push_back({"toggle_a", "self-loop toggle at a controlled on label 1", def,
                     [](const SectorBasis &b) {
                         return build_controlled_toggle(b, b.universe().vertex_id("a"));
                     },
                     true, 1, 1, "a", 0});
        z.push_back({"swap_ab", "label swap across the edge a.0-b.0", def,
                     [](const SectorBasis &b) {
                         return build_neighbor_swap(b, b.universe().vertex_id("a"), 0, 0);
                     },
                     true, 1, 1, "a", 1});
        z.push_back({"toggle_circuit", "Hadamard at a, then the controlled self-loop toggle at a",
                     def,
                     [](const SectorBasis &b) {
                         GateDescriptor h{GateDescriptor::Kind::LabelUnitary, "a", hadamard_matrix(),
                                          0, 0, {}, ""};
                         GateDescriptor t{GateDescriptor::Kind::ControlledSelfloopToggle, "a", {}, 0,
                                          0, {}, ""};
                         return build_circuit(b, {h, t});
                     },
                     true, 1, 1, "a", 0});
        z.push_back({"commuting_pair", "self-loop toggle at a times bit flip at b", def,
                     [](const SectorBasis &b) {
                         GateDescriptor t{GateDescriptor::Kind::ControlledSelfloopToggle, "a", {}, 0,
                                          0, {}, ""};
                         GateDescriptor x{GateDescriptor::Kind::LabelUnitary, "b", pauli_x_matrix(),
                                          0, 0, {}, ""};
                         return build_circuit(b, {t, x});
                     },
                     true, 1, 2, "a", 0});
        z.push_back({"cycle3", "label rotation on the fixed 3-cycle", triangle_universe(),
                     [](const SectorBasis &b) {
                         const Universe &u = b.universe();
                         return build_cycle_shift(
                             b, {u.vertex_id("a"), u.vertex_id("b"), u.vertex_id("c")});
                     },
                     true, 1, 1, "a", 2});
        z.push_back({"jointflip", "correlated flip of two disconnected labels (not causal)", def,
                     build_joint_flip, false, 0, 0, "a", 0});
        return z;
    }();
    return entries;
}

inline const ZooEntry &zoo_entry(const std::string &name) {
    for (const auto &e : zoo_entries()) {
        if (e.name == name) {
            return e;
        }
    }
    fail(ErrorCode::MalformedInput, "no zoo operator named '" + name + "'");
}

}  // namespace graphdyn

#endif
