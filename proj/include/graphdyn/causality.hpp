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

#ifndef GRAPHDYN_CAUSALITY_HPP
#define GRAPHDYN_CAUSALITY_HPP

#include "graphdyn/locality.hpp"

namespace graphdyn {

/// First violating (G, H, v) triple in canonical order.
struct CausalityWitness {
    int32_t g = -1;
    int32_t h = -1;
    VertexId v = 0;
    double residual = 0;
};

struct CausalityResult {
    bool ok = false;
    int m = 0;
    int n = 0;
    int64_t dyads_checked = 0;
    double max_residual = 0;
    std::optional<CausalityWitness> witness;
};

namespace detail {

/// Tiny accumulation map keyed by (ket, bra); supports stay below a few
/// dozen entries in the sweeps, so linear probing wins over hashing.
struct DyadAccumulator {
    struct Term {
        int32_t ket;
        int32_t bra;
        Complex amp;
    };
    std::vector<Term> terms;

    void clear() {
        terms.clear();
    }
    void add(int32_t ket, int32_t bra, Complex amp) {
        for (auto &t : terms) {
            if (t.ket == ket && t.bra == bra) {
                t.amp += amp;
                return;
            }
        }
        terms.push_back({ket, bra, amp});
    }
    double max_abs() const {
        double m = 0;
        for (const auto &t : terms) {
            m = std::max(m, std::abs(t.amp));
        }
        return m;
    }
};

}  // namespace detail

/// Exhaustively verifies the causality identity at radii (m, n):
/// ptrace_m(U rho U') = ptrace_m(U ptrace_n(rho) U') for every basis dyad
/// rho = |G><H| and every vertex v. Both sides are linear in rho, so dyad
/// coverage extends to every state; the randomized corroboration of that
/// reduction lives in the test suite. The caller guarantees U is unitary.
template <class Basis>
CausalityResult is_causal(const LinearOp<Basis> &u, int m, int n, double eps) {
    const Basis &basis = u.basis();
    CausalityResult res;
    res.m = m;
    res.n = n;
    int32_t dim = basis.size();
    int nv = basis.vertex_count();
    std::vector<decltype(basis.disk_ref(0, 0))> disks_m, disks_n;
    for (VertexId v = 0; v < nv; v++) {
        disks_m.push_back(basis.disk_ref(v, m));
        disks_n.push_back(basis.disk_ref(v, n));
    }
    detail::DyadAccumulator acc;
    for (int32_t g = 0; g < dim; g++) {
        const auto &ug = u.col(g);
        for (int32_t h = 0; h < dim; h++) {
            const auto &uh = u.col(h);
            for (VertexId v = 0; v < nv; v++) {
                res.dyads_checked++;
                acc.clear();
                // ptrace_m(U |G><H| U')
                for (const auto &[i, a] : ug) {
                    for (const auto &[j, b] : uh) {
                        DyadImage img = basis.ptrace_dyad_with(disks_m[v], i, j);
                        if (!img.zero) {
                            acc.add(img.ket, img.bra, a * std::conj(b));
                        }
                    }
                }
                // minus ptrace_m(U ptrace_n(|G><H|) U')
                DyadImage inner = basis.ptrace_dyad_with(disks_n[v], g, h);
                if (!inner.zero) {
                    for (const auto &[i, a] : u.col(inner.ket)) {
                        for (const auto &[j, b] : u.col(inner.bra)) {
                            DyadImage img = basis.ptrace_dyad_with(disks_m[v], i, j);
                            if (!img.zero) {
                                acc.add(img.ket, img.bra, -a * std::conj(b));
                            }
                        }
                    }
                }
                double residual = acc.max_abs();
                if (residual > res.max_residual) {
                    res.max_residual = residual;
                }
                if (residual > eps) {
                    res.witness = CausalityWitness{g, h, v, residual};
                    return res;
                }
            }
        }
    }
    res.ok = true;
    return res;
}

/// Smallest n <= n_max for which is_causal(u, m, n) holds. Returns the
/// result of the successful check, or the last failure when none succeeds.
template <class Basis>
CausalityResult find_radius(const LinearOp<Basis> &u, int m, int n_max, double eps) {
    CausalityResult last;
    for (int n = 0; n <= n_max; n++) {
        last = is_causal(u, m, n, eps);
        if (last.ok) {
            return last;
        }
    }
    return last;
}

/// Heisenberg-picture causality: with a certificate at (m, n) and A
/// m-localized upon v, conjugation U' A U must be n-localized upon v.
template <class Basis>
LocalityResult dual_causality_check(const LinearOp<Basis> &u, const LinearOp<Basis> &a, VertexId v,
                                    int n, double eps) {
    LinearOp<Basis> conjugated = compose(compose(adjoint(u), a), u);
    return is_localized(conjugated, v, n, eps);
}

struct OneCausalResult {
    bool one_causal = false;       // the m=1 identity holds at some n
    int n = 0;                     // radius at which it holds
    bool full = false;             // full causality followed for every m <= m_max
    std::vector<CausalityResult> per_m;
};

/// Checks the single-radius causality criterion (the m=1 identity at radius
/// n), then corroborates that full causality follows for every m <= m_max.
template <class Basis>
OneCausalResult check_one_causal(const LinearOp<Basis> &u, int n, int m_max, int n_max, double eps) {
    OneCausalResult res;
    CausalityResult base = is_causal(u, 1, n, eps);
    res.one_causal = base.ok;
    res.n = n;
    if (!base.ok) {
        return res;
    }
    res.full = true;
    for (int m = 0; m <= m_max; m++) {
        res.per_m.push_back(find_radius(u, m, n_max, eps));
        if (!res.per_m.back().ok) {
            res.full = false;
        }
    }
    return res;
}

}  // namespace graphdyn

#endif
