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

#ifndef GRAPHDYN_DECOMPOSE_HPP
#define GRAPHDYN_DECOMPOSE_HPP

#include "graphdyn/causality.hpp"
#include "graphdyn/extension.hpp"

namespace graphdyn {

/// The local update at u: conjugation of the mark operator by the marked
/// extension, K_u = U'^dagger mu_u U'. The gates commute pairwise and are
/// localized around their vertex; their product together with the mark
/// operators reconstructs U on unmarked graphs.
inline LinearOp<SectorBasis> gate(VertexId u, const LinearOp<SectorBasis> &uprime) {
    return compose(compose(adjoint(uprime), mu(uprime.basis(), u)), uprime);
}

struct GateReport {
    VertexId vertex = 0;
    std::optional<int> radius;     // measured minimal localization radius at its vertex
    double unitarity_residual = 0; // max |K'K - I| entry
};

struct DecompositionReport {
    bool ok = false;
    std::string failure;                     // set when !ok
    CausalityResult certificate;             // for U at m=1 on its own sector
    ExtensionCheck extension;
    std::vector<GateReport> gates;
    double commutator_max = 0;               // max entry of [K_u, K_v] over all pairs
    double order_residual = 0;               // product in reverse order vs canonical
    double reconstruction_max = 0;           // max entry of (prod mu)(prod K) - U on unmarked columns
    bool reconstruction_unitary = false;
    int32_t marked_dim = 0;
};

struct Decomposition {
    DecompositionReport report;
    LinearOp<SectorBasis> extension;              // U' on the marked sector
    std::vector<LinearOp<SectorBasis>> gates;     // K_u in ascending vertex order
    LinearOp<SectorBasis> reconstruction;         // (prod mu)(prod K)
};

struct DecomposeParams {
    double eps = 1e-9;
    int n_max = 4;      // search bound for the causality certificate
    int r_max = 4;      // search bound for gate localization radii
    uint64_t cap = 200000;
};

/// Builds and verifies the circuit form of a vertex-preserving causal
/// unitary: finds a causality certificate, constructs the marked extension
/// and the gates K_u, measures their localization radii and commutators, and
/// checks the reconstruction identity on every unmarked basis vector.
inline Decomposition decompose_and_verify(const LinearOp<SectorBasis> &u, const SectorBasis &marked,
                                          const DecomposeParams &params = {}) {
    const SectorBasis &base = u.basis();
    require_marked_over(marked, base);
    Decomposition out{{}, LinearOp<SectorBasis>(marked), {}, LinearOp<SectorBasis>(marked)};
    DecompositionReport &rep = out.report;
    rep.marked_dim = marked.size();

    if (!is_unitary(u, params.eps)) {
        rep.failure = "operator is not unitary on its sector";
        return out;
    }
    if (!is_vertex_preserving(u)) {
        rep.failure = "operator is not vertex preserving";
        return out;
    }
    rep.certificate = find_radius(u, 1, params.n_max, params.eps);
    if (!rep.certificate.ok) {
        rep.failure = "no causality certificate at m=1 up to n_max";
        return out;
    }

    out.extension = marked_extension(u, marked);
    rep.extension = verify_extension(out.extension, u, params.eps);

    int nv = base.vertex_count();
    for (VertexId v = 0; v < nv; v++) {
        out.gates.push_back(gate(v, out.extension));
        GateReport gr;
        gr.vertex = v;
        gr.radius = min_local_radius(out.gates.back(), v, params.r_max, params.eps);
        LinearOp<SectorBasis> gram = compose(adjoint(out.gates.back()), out.gates.back());
        gr.unitarity_residual = distance_to_identity(gram);
        rep.gates.push_back(gr);
    }
    for (size_t i = 0; i < out.gates.size(); i++) {
        for (size_t j = i + 1; j < out.gates.size(); j++) {
            LinearOp<SectorBasis> ab = compose(out.gates[i], out.gates[j]);
            LinearOp<SectorBasis> ba = compose(out.gates[j], out.gates[i]);
            rep.commutator_max = std::max(rep.commutator_max, max_entry_diff(ab, ba));
        }
    }

    // (prod mu)(prod K) in canonical vertex order, and the reversed order as
    // an order-independence check.
    LinearOp<SectorBasis> mu_all = mu_product(marked, base.universe().full_vertex_mask());
    LinearOp<SectorBasis> k_all = LinearOp<SectorBasis>::identity(marked);
    LinearOp<SectorBasis> k_all_rev = k_all;
    for (int v = 0; v < nv; v++) {
        k_all = compose(k_all, out.gates[v]);
        k_all_rev = compose(out.gates[nv - 1 - v], k_all_rev);
    }
    rep.order_residual = max_entry_diff(k_all, k_all_rev);
    out.reconstruction = compose(mu_all, k_all);
    rep.reconstruction_unitary = is_unitary(out.reconstruction, params.eps);

    auto embed = unmarked_embedding(base, marked);
    for (int32_t bi = 0; bi < base.size(); bi++) {
        std::vector<std::pair<int32_t, Complex>> want;
        for (const auto &[row, amp] : u.col(bi)) {
            want.push_back({embed[row], amp});
        }
        std::sort(want.begin(), want.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
        const auto &got = out.reconstruction.col(embed[bi]);
        size_t i = 0, j = 0;
        while (i < want.size() || j < got.size()) {
            double d;
            if (j >= got.size() || (i < want.size() && want[i].first < got[j].first)) {
                d = std::abs(want[i++].second);
            } else if (i >= want.size() || got[j].first < want[i].first) {
                d = std::abs(got[j++].second);
            } else {
                d = std::abs(want[i++].second - got[j++].second);
            }
            rep.reconstruction_max = std::max(rep.reconstruction_max, d);
        }
    }

    bool gates_ok = true;
    for (const auto &gr : rep.gates) {
        gates_ok = gates_ok && gr.radius.has_value() && gr.unitarity_residual <= params.eps;
    }
    rep.ok = gates_ok && rep.extension.unitary && rep.extension.vertex_preserving &&
             rep.extension.unmarked_residual <= params.eps &&
             rep.extension.marked_residual <= params.eps && rep.commutator_max <= params.eps &&
             rep.order_residual <= params.eps && rep.reconstruction_max <= params.eps &&
             rep.reconstruction_unitary;
    if (!rep.ok && rep.failure.empty()) {
        rep.failure = "a verification residual exceeded the tolerance";
    }
    return out;
}

/// The inverse of a causal unitary is itself causal: searches a certificate
/// for the adjoint at the same observation radius.
template <class Basis>
CausalityResult check_inverse_causal(const LinearOp<Basis> &u, int m, int n_max, double eps) {
    return find_radius(adjoint(u), m, n_max, eps);
}

}  // namespace graphdyn

#endif
