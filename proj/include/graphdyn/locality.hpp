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

#ifndef GRAPHDYN_LOCALITY_HPP
#define GRAPHDYN_LOCALITY_HPP

#include <optional>

#include "graphdyn/op.hpp"

namespace graphdyn {

/// First violating basis pair (G input, H output) in canonical order.
struct PairWitness {
    int32_t g = -1;
    int32_t h = -1;
    double residual = 0;
};

struct LocalityResult {
    bool ok = false;
    VertexId v = 0;
    int radius = 0;
    int64_t pairs_checked = 0;
    double max_residual = 0;
    std::optional<PairWitness> witness;
};

/// Exhaustively decides whether A is r-localized upon v: for every basis
/// pair (G, H), <H|A|G> must equal <H_D|A|G_D><H̄_D|Ḡ_D> with D the union of
/// both radius-r disks of v. Scans pairs in canonical order and stops at the
/// first violation.
template <class Basis>
LocalityResult is_localized(const LinearOp<Basis> &a, VertexId v, int radius, double eps) {
    const Basis &basis = a.basis();
    auto disks = basis.disk_ref(v, radius);
    LocalityResult res;
    res.v = v;
    res.radius = radius;
    int32_t n = basis.size();
    for (int32_t g = 0; g < n; g++) {
        const auto &col = a.col(g);
        size_t ci = 0;  // walks the sorted column alongside h
        for (int32_t h = 0; h < n; h++) {
            while (ci < col.size() && col[ci].first < h) {
                ci++;
            }
            Complex lhs = (ci < col.size() && col[ci].first == h) ? col[ci].second : Complex(0, 0);
            res.pairs_checked++;
            DyadImage img = basis.ptrace_dyad_with(disks, g, h);
            double residual;
            if (img.zero) {
                residual = std::abs(lhs);
            } else if (img.ket == g && img.bra == h) {
                continue;  // whole pair inside the disk; identity holds trivially
            } else {
                residual = std::abs(lhs - a.entry(img.bra, img.ket));
            }
            if (residual > res.max_residual) {
                res.max_residual = residual;
            }
            if (residual > eps) {
                res.witness = PairWitness{g, h, residual};
                return res;
            }
        }
    }
    res.ok = true;
    return res;
}

/// Smallest r <= r_max at which A is r-localized upon v, if any.
template <class Basis>
std::optional<int> min_local_radius(const LinearOp<Basis> &a, VertexId v, int r_max, double eps) {
    for (int r = 0; r <= r_max; r++) {
        if (is_localized(a, v, r, eps).ok) {
            return r;
        }
    }
    return std::nullopt;
}

/// The dual reading of r-localization: Tr(A rho) = Tr(A rho^r_v) for every
/// basis dyad rho = |G><H|. Callers establish is_localized first; this
/// checks the trace identity itself.
template <class Basis>
LocalityResult dual_localization_check(const LinearOp<Basis> &a, VertexId v, int radius, double eps) {
    const Basis &basis = a.basis();
    auto disks = basis.disk_ref(v, radius);
    LocalityResult res;
    res.v = v;
    res.radius = radius;
    int32_t n = basis.size();
    for (int32_t g = 0; g < n; g++) {
        const auto &col = a.col(g);
        size_t ci = 0;
        for (int32_t h = 0; h < n; h++) {
            while (ci < col.size() && col[ci].first < h) {
                ci++;
            }
            // Tr(A |G><H|) = <H|A|G>
            Complex lhs = (ci < col.size() && col[ci].first == h) ? col[ci].second : Complex(0, 0);
            res.pairs_checked++;
            DyadImage img = basis.ptrace_dyad_with(disks, g, h);
            double residual;
            if (img.zero) {
                residual = std::abs(lhs);
            } else if (img.ket == g && img.bra == h) {
                continue;
            } else {
                residual = std::abs(lhs - a.entry(img.bra, img.ket));
            }
            if (residual > res.max_residual) {
                res.max_residual = residual;
            }
            if (residual > eps) {
                res.witness = PairWitness{g, h, residual};
                return res;
            }
        }
    }
    res.ok = true;
    return res;
}

}  // namespace graphdyn

#endif
