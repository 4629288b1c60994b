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

#ifndef GRAPHDYN_EXTENSION_HPP
#define GRAPHDYN_EXTENSION_HPP

#include "graphdyn/marking.hpp"

namespace graphdyn {

inline void require_marked_over(const SectorBasis &marked, const SectorBasis &base) {
    const Universe &mu = marked.universe();
    if (!mu.is_marked() || unmarked_base(mu) != base.universe()) {
        fail(ErrorCode::BasisMismatch, "marked sector does not extend the operator's sector");
    }
}

/// base index -> marked index of the same graph with all marks zero.
inline std::vector<int32_t> unmarked_embedding(const SectorBasis &base, const SectorBasis &marked) {
    require_marked_over(marked, base);
    std::vector<int32_t> map(base.size());
    for (int32_t i = 0; i < base.size(); i++) {
        map[i] = marked.index_of(to_marked(base.universe(), marked.universe(), base.graph(i)));
    }
    return map;
}

/// Extends a vertex-preserving causal unitary to the marked sector: each
/// marked basis graph is split by phi into (unmarked part X, split-off part
/// H), U acts on X alone, and phi maps the result back. Images must stay in
/// phi's range; a miss means U was not vertex preserving and raises a
/// stability violation naming the basis element.
///
/// The result acts as U on all-unmarked graphs and as the identity on fully
/// marked ones; verify_extension measures both properties.
inline LinearOp<SectorBasis> marked_extension(const LinearOp<SectorBasis> &u,
                                              const SectorBasis &marked) {
    const SectorBasis &base = u.basis();
    require_marked_over(marked, base);
    const Universe &bu = base.universe();
    const Universe &muv = marked.universe();
    LinearOp<SectorBasis> out(marked);
    for (int32_t gi = 0; gi < marked.size(); gi++) {
        GatePair split = phi(muv, bu, marked.graph(gi));
        int32_t x = base.index_of(split.rest);
        for (const auto &[i, amp] : u.col(x)) {
            auto back = phi_inv(muv, bu, base.graph(i), split.lifted);
            if (!back) {
                fail(ErrorCode::StabilityViolation,
                     "image of basis element '" + marked.key(gi) + "' left the embedded subspace");
            }
            out.add_entry(marked.index_of(*back), gi, amp);
        }
    }
    out.finalize();
    return out;
}

struct ExtensionCheck {
    double unmarked_residual = 0;  // U' vs U on all-unmarked basis graphs
    double marked_residual = 0;    // U' vs identity on fully marked ones
    bool unitary = false;
    bool vertex_preserving = false;
};

/// Entrywise comparison of the extension against its defining properties.
inline ExtensionCheck verify_extension(const LinearOp<SectorBasis> &uprime,
                                       const LinearOp<SectorBasis> &u, double eps) {
    const SectorBasis &marked = uprime.basis();
    const SectorBasis &base = u.basis();
    auto embed = unmarked_embedding(base, marked);
    ExtensionCheck res;
    for (int32_t bi = 0; bi < base.size(); bi++) {
        // Columns must match through the embedding.
        const auto &want = u.col(bi);
        const auto &got = uprime.col(embed[bi]);
        std::vector<std::pair<int32_t, Complex>> mapped;
        mapped.reserve(want.size());
        for (const auto &[row, amp] : want) {
            mapped.push_back({embed[row], amp});
        }
        std::sort(mapped.begin(), mapped.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
        size_t i = 0, j = 0;
        while (i < mapped.size() || j < got.size()) {
            double d;
            if (j >= got.size() || (i < mapped.size() && mapped[i].first < got[j].first)) {
                d = std::abs(mapped[i++].second);
            } else if (i >= mapped.size() || got[j].first < mapped[i].first) {
                d = std::abs(got[j++].second);
            } else {
                d = std::abs(mapped[i++].second - got[j++].second);
            }
            res.unmarked_residual = std::max(res.unmarked_residual, d);
        }
    }
    const Universe &muv = marked.universe();
    for (int32_t gi = 0; gi < marked.size(); gi++) {
        if (!is_fully_marked(muv, marked.graph(gi))) {
            continue;
        }
        res.marked_residual =
            std::max(res.marked_residual, std::abs(uprime.entry(gi, gi) - Complex(1, 0)));
        for (const auto &[row, amp] : uprime.col(gi)) {
            if (row != gi) {
                res.marked_residual = std::max(res.marked_residual, std::abs(amp));
            }
        }
    }
    res.unitary = is_unitary(uprime, eps);
    res.vertex_preserving = is_vertex_preserving(uprime);
    return res;
}

}  // namespace graphdyn

#endif
