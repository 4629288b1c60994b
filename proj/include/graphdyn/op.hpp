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

#ifndef GRAPHDYN_OP_HPP
#define GRAPHDYN_OP_HPP

#include <complex>

#include "graphdyn/sector.hpp"

namespace graphdyn {

using Complex = std::complex<double>;

// Entries whose magnitude falls below this are dropped when an operator or
// state is finalized; it sits far under the verification tolerance so only
// cancellation noise is affected.
inline constexpr double kPruneEps = 1e-14;

template <class BasisA, class BasisB>
inline void require_same_basis(const BasisA &a, const BasisB &b) {
    if (static_cast<const void *>(&a) == static_cast<const void *>(&b)) {
        return;
    }
    if (a.universe() == b.universe() && a.size() == b.size()) {
        return;  // enumeration is deterministic, so equal universes give equal bases
    }
    fail(ErrorCode::BasisMismatch, "operands are defined over different sector bases");
}

/// Sparse linear operator over one sector basis, stored column-major with
/// rows sorted inside each column. Also used for density operators; validity
/// flags (unit trace, unitarity) are checked on demand rather than enforced.
template <class Basis = SectorBasis>
class LinearOp {
  public:
    using Entry = std::pair<int32_t, Complex>;

    explicit LinearOp(const Basis &basis) : basis_(&basis), cols_(basis.size()) {}

    static LinearOp identity(const Basis &basis) {
        LinearOp op(basis);
        for (int32_t i = 0; i < basis.size(); i++) {
            op.cols_[i].push_back({i, Complex(1, 0)});
        }
        return op;
    }

    /// |ket><bra|
    static LinearOp dyad(const Basis &basis, int32_t ket, int32_t bra) {
        LinearOp op(basis);
        op.cols_[bra].push_back({ket, Complex(1, 0)});
        return op;
    }

    /// Operator mapping each basis element i to basis element image[i]; the
    /// caller promises image is a bijection (checked cheaply).
    static LinearOp permutation(const Basis &basis, const std::vector<int32_t> &image) {
        LinearOp op(basis);
        std::vector<char> hit(basis.size(), 0);
        for (int32_t i = 0; i < basis.size(); i++) {
            op.cols_[i].push_back({image[i], Complex(1, 0)});
            if (image[i] < 0 || image[i] >= basis.size() || hit[image[i]]) {
                fail(ErrorCode::MalformedInput, "permutation image is not a bijection");
            }
            hit[image[i]] = 1;
        }
        return op;
    }

    const Basis &basis() const {
        return *basis_;
    }
    int32_t dim() const {
        return static_cast<int32_t>(cols_.size());
    }
    const std::vector<Entry> &col(int32_t c) const {
        return cols_[c];
    }

    void add_entry(int32_t row, int32_t col, Complex amp) {
        cols_[col].push_back({row, amp});
    }

    /// Sorts every column by row, merges duplicates and drops negligible
    /// entries. Construction helpers call this before handing the operator out.
    void finalize() {
        for (auto &col : cols_) {
            std::sort(col.begin(), col.end(),
                      [](const Entry &a, const Entry &b) { return a.first < b.first; });
            size_t out = 0;
            for (size_t i = 0; i < col.size();) {
                int32_t row = col[i].first;
                Complex sum = 0;
                while (i < col.size() && col[i].first == row) {
                    sum += col[i].second;
                    i++;
                }
                if (std::abs(sum) > kPruneEps) {
                    col[out++] = {row, sum};
                }
            }
            col.resize(out);
        }
    }

    Complex entry(int32_t row, int32_t col) const {
        const auto &c = cols_[col];
        auto it = std::lower_bound(c.begin(), c.end(), row,
                                   [](const Entry &e, int32_t r) { return e.first < r; });
        return (it != c.end() && it->first == row) ? it->second : Complex(0, 0);
    }

    int64_t entry_count() const {
        int64_t n = 0;
        for (const auto &c : cols_) {
            n += static_cast<int64_t>(c.size());
        }
        return n;
    }

    bool operator==(const LinearOp &other) const {
        return basis_ == other.basis_ && cols_ == other.cols_;
    }

  private:
    const Basis *basis_;
    std::vector<std::vector<Entry>> cols_;
};

template <class Basis>
LinearOp<Basis> adjoint(const LinearOp<Basis> &a) {
    LinearOp<Basis> r(a.basis());
    for (int32_t c = 0; c < a.dim(); c++) {
        for (const auto &[row, amp] : a.col(c)) {
            r.add_entry(c, row, std::conj(amp));
        }
    }
    r.finalize();
    return r;
}

/// Matrix product a*b (apply b first).
template <class Basis>
LinearOp<Basis> compose(const LinearOp<Basis> &a, const LinearOp<Basis> &b) {
    require_same_basis(a.basis(), b.basis());
    LinearOp<Basis> r(a.basis());
    for (int32_t c = 0; c < b.dim(); c++) {
        for (const auto &[k, bk] : b.col(c)) {
            for (const auto &[row, ak] : a.col(k)) {
                r.add_entry(row, c, ak * bk);
            }
        }
    }
    r.finalize();
    return r;
}

template <class Basis>
LinearOp<Basis> add(const LinearOp<Basis> &a, const LinearOp<Basis> &b) {
    require_same_basis(a.basis(), b.basis());
    LinearOp<Basis> r(a.basis());
    for (int32_t c = 0; c < a.dim(); c++) {
        for (const auto &[row, amp] : a.col(c)) {
            r.add_entry(row, c, amp);
        }
        for (const auto &[row, amp] : b.col(c)) {
            r.add_entry(row, c, amp);
        }
    }
    r.finalize();
    return r;
}

template <class Basis>
LinearOp<Basis> scale(const LinearOp<Basis> &a, Complex factor) {
    LinearOp<Basis> r(a.basis());
    for (int32_t c = 0; c < a.dim(); c++) {
        for (const auto &[row, amp] : a.col(c)) {
            r.add_entry(row, c, amp * factor);
        }
    }
    r.finalize();
    return r;
}

template <class Basis>
Complex trace(const LinearOp<Basis> &a) {
    Complex t = 0;
    for (int32_t c = 0; c < a.dim(); c++) {
        t += a.entry(c, c);
    }
    return t;
}

/// Largest entrywise magnitude of a-b over the union of supports.
template <class Basis>
double max_entry_diff(const LinearOp<Basis> &a, const LinearOp<Basis> &b) {
    require_same_basis(a.basis(), b.basis());
    double worst = 0;
    for (int32_t c = 0; c < a.dim(); c++) {
        const auto &ca = a.col(c);
        const auto &cb = b.col(c);
        size_t i = 0, j = 0;
        while (i < ca.size() || j < cb.size()) {
            if (j >= cb.size() || (i < ca.size() && ca[i].first < cb[j].first)) {
                worst = std::max(worst, std::abs(ca[i].second));
                i++;
            } else if (i >= ca.size() || cb[j].first < ca[i].first) {
                worst = std::max(worst, std::abs(cb[j].second));
                j++;
            } else {
                worst = std::max(worst, std::abs(ca[i].second - cb[j].second));
                i++;
                j++;
            }
        }
    }
    return worst;
}

template <class Basis>
double distance_to_identity(const LinearOp<Basis> &a) {
    return max_entry_diff(a, LinearOp<Basis>::identity(a.basis()));
}

/// A' A = A A' = I within eps.
template <class Basis>
bool is_unitary(const LinearOp<Basis> &a, double eps) {
    LinearOp<Basis> ad = adjoint(a);
    return distance_to_identity(compose(ad, a)) <= eps && distance_to_identity(compose(a, ad)) <= eps;
}

/// Every column is supported on graphs with the column's exact vertex set.
inline bool is_vertex_preserving(const LinearOp<SectorBasis> &a, double eps = kPruneEps) {
    const SectorBasis &b = a.basis();
    for (int32_t c = 0; c < a.dim(); c++) {
        for (const auto &[row, amp] : a.col(c)) {
            if (std::abs(amp) > eps && b.vertex_mask_of(row) != b.vertex_mask_of(c)) {
                return false;
            }
        }
    }
    return true;
}

/// Linear extension of the dyad partial trace to arbitrary operators:
/// every entry rho[h,g] contributes rho[h,g] * ptrace(|g><h|, v, r).
template <class Basis>
LinearOp<Basis> ptrace(const LinearOp<Basis> &rho, VertexId v, int radius) {
    const Basis &b = rho.basis();
    auto disks = b.disk_ref(v, radius);
    LinearOp<Basis> r(b);
    for (int32_t c = 0; c < rho.dim(); c++) {
        for (const auto &[row, amp] : rho.col(c)) {
            DyadImage img = b.ptrace_dyad_with(disks, row, c);
            if (!img.zero) {
                r.add_entry(img.ket, img.bra, amp);
            }
        }
    }
    r.finalize();
    return r;
}

}  // namespace graphdyn

#endif
