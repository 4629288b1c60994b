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

#ifndef GRAPHDYN_MARKING_HPP
#define GRAPHDYN_MARKING_HPP

#include "graphdyn/op.hpp"

namespace graphdyn {

/// The mark operator at v over a marked sector basis: the linear extension
/// of mu_graph, a basis permutation and hence unitary. It is an involution,
/// 1-localized upon v, and commutes with every other mark operator; the test
/// suites check all of that exhaustively.
inline LinearOp<SectorBasis> mu(const SectorBasis &marked, VertexId v) {
    const Universe &u = marked.universe();
    if (!u.is_marked()) {
        fail(ErrorCode::MalformedInput, "mark operator needs a marked sector");
    }
    std::vector<int32_t> image(marked.size());
    for (int32_t i = 0; i < marked.size(); i++) {
        image[i] = marked.index_of(mu_graph(u, marked.graph(i), v));
    }
    return LinearOp<SectorBasis>::permutation(marked, image);
}

/// Product of the mark operators over a vertex set, composed in ascending
/// VertexId order. The factors commute, so the order is immaterial.
inline LinearOp<SectorBasis> mu_product(const SectorBasis &marked, uint32_t vertex_set) {
    const Universe &u = marked.universe();
    if (!u.is_marked()) {
        fail(ErrorCode::MalformedInput, "mark operator needs a marked sector");
    }
    std::vector<int32_t> image(marked.size());
    for (int32_t i = 0; i < marked.size(); i++) {
        image[i] = marked.index_of(mu_graph_set(u, marked.graph(i), vertex_set));
    }
    return LinearOp<SectorBasis>::permutation(marked, image);
}

/// Image of a marked graph under the embedding that splits off its marked
/// part: (corestriction to the unmarked vertices, unmarking of the
/// restriction to the marked vertices).
struct GatePair {
    Graph rest;          // base-universe graph on the unmarked vertices
    Graph lifted;        // marked-universe graph holding the split-off part
    uint32_t marked_set; // the marked vertices of the antecedent
};

/// phi: G |-> (corestrict(G, M), mu_M restrict(G, M)) with M the marked
/// vertices of G. Injective on valid marked graphs; see phi_inv.
inline GatePair phi(const Universe &marked, const Universe &base, const Graph &g) {
    if (!is_valid_marked(marked, g)) {
        fail(ErrorCode::MalformedInput, "phi needs a valid marked graph: " + canonical_key(marked, g));
    }
    uint32_t m = marked_vertices(marked, g);
    GatePair out;
    out.marked_set = m;
    out.rest = to_base(marked, base, corestrict_to(marked, g, m));
    out.lifted = mu_graph_set(marked, restrict_to(marked, g, m), m);
    return out;
}

/// Recovers the antecedent of a pair (X, H) as X u mu_M H with
/// M = V(H) \ V(X), or nothing when the pair lies outside phi's range. The
/// recovery is validated by applying phi again: pairs in the range are
/// exactly the fixed points of the round trip.
inline std::optional<Graph> phi_inv(const Universe &marked, const Universe &base, const Graph &x,
                                    const Graph &h) {
    uint32_t m = h.vertex_mask & ~x.vertex_mask;
    Graph xm = to_marked(base, marked, x);
    Graph hm = mu_graph_set(marked, h, m);
    if (!consistent(marked, xm, hm)) {
        return std::nullopt;
    }
    Graph g = union_graphs(marked, xm, hm);
    if (!is_valid_marked(marked, g)) {
        return std::nullopt;
    }
    GatePair round = phi(marked, base, g);
    if (!(round.rest == x) || !(round.lifted == h)) {
        return std::nullopt;
    }
    return g;
}

}  // namespace graphdyn

#endif
