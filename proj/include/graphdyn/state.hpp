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

#ifndef GRAPHDYN_STATE_HPP
#define GRAPHDYN_STATE_HPP

#include "graphdyn/op.hpp"

namespace graphdyn {

/// Sparse vector over a sector basis. Physical states are unit vectors;
/// intermediate vectors may have any norm, so normalization is checked by
/// callers, not enforced here.
class StateVector {
  public:
    using Entry = std::pair<int32_t, Complex>;

    explicit StateVector(const SectorBasis &basis) : basis_(&basis) {}

    static StateVector basis_state(const SectorBasis &basis, int32_t index) {
        StateVector s(basis);
        s.amps_.push_back({index, Complex(1, 0)});
        return s;
    }

    const SectorBasis &basis() const {
        return *basis_;
    }
    const std::vector<Entry> &entries() const {
        return amps_;
    }

    void add(int32_t index, Complex amp) {
        amps_.push_back({index, amp});
    }

    void finalize() {
        std::sort(amps_.begin(), amps_.end(),
                  [](const Entry &a, const Entry &b) { return a.first < b.first; });
        size_t out = 0;
        for (size_t i = 0; i < amps_.size();) {
            int32_t idx = amps_[i].first;
            Complex sum = 0;
            while (i < amps_.size() && amps_[i].first == idx) {
                sum += amps_[i].second;
                i++;
            }
            if (std::abs(sum) > kPruneEps) {
                amps_[out++] = {idx, sum};
            }
        }
        amps_.resize(out);
    }

    Complex amplitude(int32_t index) const {
        auto it = std::lower_bound(amps_.begin(), amps_.end(), index,
                                   [](const Entry &e, int32_t i) { return e.first < i; });
        return (it != amps_.end() && it->first == index) ? it->second : Complex(0, 0);
    }

    double squared_norm() const {
        double n = 0;
        for (const auto &[idx, amp] : amps_) {
            n += std::norm(amp);
        }
        return n;
    }

  private:
    const SectorBasis *basis_;
    std::vector<Entry> amps_;
};

inline StateVector apply(const LinearOp<SectorBasis> &op, const StateVector &psi) {
    require_same_basis(op.basis(), psi.basis());
    StateVector out(op.basis());
    for (const auto &[idx, amp] : psi.entries()) {
        for (const auto &[row, a] : op.col(idx)) {
            out.add(row, a * amp);
        }
    }
    out.finalize();
    return out;
}

inline double max_state_diff(const StateVector &a, const StateVector &b) {
    require_same_basis(a.basis(), b.basis());
    double worst = 0;
    const auto &ea = a.entries();
    const auto &eb = b.entries();
    size_t i = 0, j = 0;
    while (i < ea.size() || j < eb.size()) {
        if (j >= eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
            worst = std::max(worst, std::abs(ea[i++].second));
        } else if (i >= ea.size() || eb[j].first < ea[i].first) {
            worst = std::max(worst, std::abs(eb[j++].second));
        } else {
            worst = std::max(worst, std::abs(ea[i++].second - eb[j++].second));
        }
    }
    return worst;
}

/// Generalized tensor product: each support pair (G, H) must be consistent
/// and contributes psi(G)*phi(H) at the union graph. The first inconsistent
/// support pair, in canonical order, is reported as an error.
inline StateVector tensor(const StateVector &psi, const StateVector &phi) {
    require_same_basis(psi.basis(), phi.basis());
    const SectorBasis &b = psi.basis();
    const Universe &u = b.universe();
    StateVector out(b);
    for (const auto &[gi, ga] : psi.entries()) {
        for (const auto &[hi, ha] : phi.entries()) {
            const Graph &g = b.graph(gi);
            const Graph &h = b.graph(hi);
            if (!consistent(u, g, h)) {
                fail(ErrorCode::InconsistentSupport,
                     "support pair is inconsistent: '" + b.key(gi) + "' vs '" + b.key(hi) + "'");
            }
            out.add(b.index_of(union_graphs(u, g, h)), ga * ha);
        }
    }
    out.finalize();
    return out;
}

}  // namespace graphdyn

#endif
