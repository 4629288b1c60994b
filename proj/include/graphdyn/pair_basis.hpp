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

#ifndef GRAPHDYN_PAIR_BASIS_HPP
#define GRAPHDYN_PAIR_BASIS_HPP

#include "graphdyn/op.hpp"

namespace graphdyn {

/// Basis of ordered pairs (G, H), each component over its own copy of the
/// universe (disjoint-union semantics: no consistency is required between
/// components). Used to extend operators as U (x) I and to check that
/// causality survives the extension; the partial trace acts component-wise
/// with the same centre vertex in both copies.
class PairBasis {
  public:
    PairBasis(const SectorBasis &left, const SectorBasis &right) : left_(&left), right_(&right) {
        require_same_basis(left, right);
    }

    const SectorBasis &left() const {
        return *left_;
    }
    const SectorBasis &right() const {
        return *right_;
    }
    const Universe &universe() const {
        return left_->universe();
    }
    int32_t size() const {
        return left_->size() * right_->size();
    }
    int32_t vertex_count() const {
        return left_->vertex_count();
    }
    int32_t id(int32_t l, int32_t r) const {
        return l * right_->size() + r;
    }
    int32_t left_of(int32_t i) const {
        return i / right_->size();
    }
    int32_t right_of(int32_t i) const {
        return i % right_->size();
    }
    std::string key(int32_t i) const {
        return left_->key(left_of(i)) + "|" + right_->key(right_of(i));
    }

    struct DiskRef {
        SectorBasis::DiskRef left;
        SectorBasis::DiskRef right;
    };
    DiskRef disk_ref(VertexId v, int radius) const {
        return {left_->disk_ref(v, radius), right_->disk_ref(v, radius)};
    }

    DyadImage ptrace_dyad_with(DiskRef ref, int32_t g, int32_t h) const {
        DyadImage l = left_->ptrace_dyad_with(ref.left, left_of(g), left_of(h));
        if (l.zero) {
            return {-1, -1, true};
        }
        DyadImage r = right_->ptrace_dyad_with(ref.right, right_of(g), right_of(h));
        if (r.zero) {
            return {-1, -1, true};
        }
        return {id(l.ket, r.ket), id(l.bra, r.bra), false};
    }

    DyadImage ptrace_dyad(int32_t g, int32_t h, VertexId v, int radius) const {
        return ptrace_dyad_with(disk_ref(v, radius), g, h);
    }

  private:
    const SectorBasis *left_;
    const SectorBasis *right_;
};

/// U (x) I over the pair basis: applies U to the left component and leaves
/// the right untouched.
inline LinearOp<PairBasis> tensor_extension(const LinearOp<SectorBasis> &u, const PairBasis &pairs) {
    require_same_basis(u.basis(), pairs.left());
    LinearOp<PairBasis> out(pairs);
    for (int32_t l = 0; l < u.dim(); l++) {
        for (int32_t r = 0; r < pairs.right().size(); r++) {
            int32_t c = pairs.id(l, r);
            for (const auto &[row, amp] : u.col(l)) {
                out.add_entry(pairs.id(row, r), c, amp);
            }
        }
    }
    out.finalize();
    return out;
}

}  // namespace graphdyn

#endif
