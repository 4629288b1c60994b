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

#ifndef GRAPHDYN_SECTOR_HPP
#define GRAPHDYN_SECTOR_HPP

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "graphdyn/marks.hpp"

namespace graphdyn {

/// Number of partial matchings on k distinguishable slots (the involution
/// numbers I(k) = I(k-1) + (k-1)I(k-2)). Returns nullopt on uint64 overflow.
inline std::optional<uint64_t> partial_matching_count(int k) {
    uint64_t prev2 = 1, prev1 = 1;  // I(0), I(1)
    if (k <= 1) {
        return 1;
    }
    for (int i = 2; i <= k; i++) {
        uint64_t scaled;
        if (__builtin_mul_overflow(prev2, static_cast<uint64_t>(i - 1), &scaled)) {
            return std::nullopt;
        }
        uint64_t cur;
        if (__builtin_add_overflow(prev1, scaled, &cur)) {
            return std::nullopt;
        }
        prev2 = prev1;
        prev1 = cur;
    }
    return prev1;
}

/// Closed-form size of the full sector over a universe: the sum over vertex
/// subsets W of (|labels|+1)^|W| times the matchings on |W|*ports slots.
inline std::optional<uint64_t> predicted_sector_size(const Universe &u) {
    int n = u.vertex_count();
    uint64_t total = 0;
    // binomial(n, w) via Pascal row; n <= 8 so this stays tiny.
    std::vector<uint64_t> binom(n + 1, 0);
    binom[0] = 1;
    for (int i = 1; i <= n; i++) {
        for (int j = i; j >= 1; j--) {
            binom[j] += binom[j - 1];
        }
    }
    for (int w = 0; w <= n; w++) {
        uint64_t labellings = 1;
        for (int i = 0; i < w; i++) {
            if (__builtin_mul_overflow(labellings, static_cast<uint64_t>(u.label_count() + 1),
                                       &labellings)) {
                return std::nullopt;
            }
        }
        auto matchings = partial_matching_count(w * u.ports);
        if (!matchings) {
            return std::nullopt;
        }
        uint64_t term = labellings;
        if (__builtin_mul_overflow(term, *matchings, &term) ||
            __builtin_mul_overflow(term, binom[w], &term) ||
            __builtin_add_overflow(total, term, &total)) {
            return std::nullopt;
        }
    }
    return total;
}

/// Image of a basis dyad |g><h| under the generalized partial trace.
struct DyadImage {
    int32_t ket = -1;
    int32_t bra = -1;
    bool zero = true;
};

/// The canonical orthonormal basis of one finite sector: every graph over a
/// fixed universe (for marked universes: every valid marked graph), ordered
/// by canonical key. Immutable after construction; the disk-table cache is
/// internally synchronized so a basis can be shared across threads.
class SectorBasis {
  public:
    /// Enumerates the basis for a universe; marked universes get the valid
    /// marked subset, plain universes the full graph set.
    static SectorBasis enumerate(const Universe &u, uint64_t cap) {
        return u.is_marked() ? enumerate_marked(u, cap) : enumerate_all_graphs(u, cap);
    }

    /// All graphs over the universe, mark-valid or not. Fails with the
    /// predicted count when it exceeds `cap`.
    static SectorBasis enumerate_all_graphs(const Universe &u, uint64_t cap) {
        u.validate();
        auto predicted = predicted_sector_size(u);
        if (!predicted) {
            fail(ErrorCode::CapExceeded, "sector size overflows a 64-bit count");
        }
        if (*predicted > cap) {
            fail(ErrorCode::CapExceeded, "sector has " + std::to_string(*predicted) +
                                             " graphs, cap is " + std::to_string(cap));
        }
        SectorBasis b(u);
        uint32_t full = u.full_vertex_mask();
        for (uint32_t vm = 0;; vm++) {
            Graph g;
            g.vertex_mask = vm;
            for_each_labelling(u, vm, g, [&](Graph &withLabels) {
                std::vector<int32_t> slots = slots_of(u, vm);
                for_each_matching(withLabels, slots, 0, [&](const Graph &done) {
                    b.graphs_.push_back(done);
                });
            });
            if (vm == full) {
                break;
            }
        }
        if (b.graphs_.size() != *predicted) {
            fail(ErrorCode::MalformedInput, "enumeration disagrees with the size formula");
        }
        b.finalize();
        return b;
    }

    /// The valid marked graphs over a marked universe, enumerated directly:
    /// choose a mark bit per vertex, labels whose bit matches, and matchings
    /// in which a slot's bit equals the far vertex's mark. Aborts once more
    /// than `cap` graphs exist.
    static SectorBasis enumerate_marked(const Universe &u, uint64_t cap) {
        u.validate();
        if (!u.is_marked()) {
            fail(ErrorCode::MalformedInput, "enumerate_marked needs a marked universe");
        }
        SectorBasis b(u);
        b.marked_only_ = true;
        uint32_t full = u.full_vertex_mask();
        for (uint32_t vm = 0;; vm++) {
            // All mark assignments: submasks of vm.
            uint32_t marks = 0;
            while (true) {
                Graph g;
                g.vertex_mask = vm;
                for_each_marked_labelling(u, vm, marks, g, [&](Graph &withLabels) {
                    std::vector<int32_t> slots = slots_of(u, vm);
                    for_each_marked_matching(u, withLabels, marks, slots, 0, [&](const Graph &done) {
                        // A mark bit on an unlabelled isolated vertex is not
                        // representable; that assignment is counted at marks=0.
                        for (VertexId v : vertices_of(marks)) {
                            if (done.label[v] == kNone && degree(u, done, v) == 0) {
                                return;
                            }
                        }
                        if (b.graphs_.size() >= cap) {
                            fail(ErrorCode::CapExceeded,
                                 "marked sector exceeds cap of " + std::to_string(cap));
                        }
                        b.graphs_.push_back(done);
                    });
                });
                if (marks == vm) {
                    break;
                }
                marks = (marks - vm) & vm;  // next submask
            }
            if (vm == full) {
                break;
            }
        }
        b.finalize();
        return b;
    }

    const Universe &universe() const {
        return universe_;
    }
    bool marked_only() const {
        return marked_only_;
    }
    int32_t size() const {
        return static_cast<int32_t>(graphs_.size());
    }
    int32_t vertex_count() const {
        return universe_.vertex_count();
    }
    const Graph &graph(int32_t i) const {
        return graphs_[i];
    }
    const std::string &key(int32_t i) const {
        return keys_[i];
    }
    uint32_t vertex_mask_of(int32_t i) const {
        return graphs_[i].vertex_mask;
    }

    std::optional<int32_t> find(const Graph &g) const {
        auto it = index_.find(g);
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }
    int32_t index_of(const Graph &g) const {
        auto i = find(g);
        if (!i) {
            fail(ErrorCode::OutsideBasis, "graph not in sector basis: " + canonical_key(universe_, g));
        }
        return *i;
    }
    int32_t index_of_key(const std::string &k) const {
        return index_of(parse_key(universe_, k));
    }
    int32_t empty_index() const {
        return 0;  // "" is minimal in key order
    }

    /// Partition of the basis by exact vertex set.
    const std::map<uint32_t, std::vector<int32_t>> &sector_index() const {
        return sector_index_;
    }

    /// Opaque handle used by the exhaustive checkers; see ptrace_dyad_with.
    using DiskRef = const std::vector<uint32_t> *;
    DiskRef disk_ref(VertexId v, int radius) const {
        return &disk_table(v, radius);
    }
    DyadImage ptrace_dyad_with(DiskRef ref, int32_t g, int32_t h) const {
        return ptrace_dyad_with(*ref, g, h);
    }

    /// Disk masks of every basis graph around v at `radius`, built on first
    /// use. Radii are clamped at kMaxVertices, past which disks have
    /// stabilized anyway.
    const std::vector<uint32_t> &disk_table(VertexId v, int radius) const {
        int r = radius > kMaxVertices ? kMaxVertices : radius;
        auto key = std::make_pair(v, r);
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->disks.find(key);
        if (it != cache_->disks.end()) {
            return it->second;
        }
        std::vector<uint32_t> table(graphs_.size());
        for (size_t i = 0; i < graphs_.size(); i++) {
            table[i] = disk_vertices(universe_, graphs_[i], 1u << v, r);
        }
        return cache_->disks.emplace(key, std::move(table)).first->second;
    }

    /// Generalized partial trace of the dyad |g><h| at (v, radius): with D
    /// the union of both radius-r disks of v, the image is
    /// |restrict(g,D)><restrict(h,D)| when the corestrictions to D agree and
    /// zero otherwise.
    DyadImage ptrace_dyad(int32_t g, int32_t h, VertexId v, int radius) const {
        const auto &disks = disk_table(v, radius);
        return ptrace_dyad_with(disks, g, h);
    }

    /// Same as ptrace_dyad with the disk table fetched once by the caller.
    /// This sits in the innermost loop of the exhaustive checkers, so the
    /// common zero outcomes are decided by word-sized compares before any
    /// graph is materialized.
    DyadImage ptrace_dyad_with(const std::vector<uint32_t> &disks, int32_t g, int32_t h) const {
        uint32_t region = disks[g] | disks[h];
        const Graph &G = graphs_[g];
        const Graph &H = graphs_[h];
        uint32_t out_g = G.vertex_mask & ~region;
        uint32_t out_h = H.vertex_mask & ~region;
        if ((out_g | out_h) == 0) {
            return {g, h, false};  // whole graphs inside the disk
        }
        if (out_g != out_h) {
            return {-1, -1, true};  // corestriction vertex sets differ
        }
        if ((label_words_[g] ^ label_words_[h]) & spread_bytes(out_g)) {
            return {-1, -1, true};  // a label outside the disk differs
        }
        Graph cg = corestrict_to(universe_, G, region);
        Graph ch = corestrict_to(universe_, H, region);
        if (!(cg == ch)) {
            return {-1, -1, true};
        }
        int32_t kg = index_of(restrict_to(universe_, G, region));
        int32_t kh = h == g ? kg : index_of(restrict_to(universe_, H, region));
        return {kg, kh, false};
    }

    /// Expands bit i of an 8-bit mask into byte i being 0xFF.
    static uint64_t spread_bytes(uint32_t mask8) {
        static const std::array<uint64_t, 256> table = [] {
            std::array<uint64_t, 256> t{};
            for (int i = 0; i < 256; i++) {
                for (int b = 0; b < 8; b++) {
                    if ((i >> b) & 1) {
                        t[i] |= 0xffull << (8 * b);
                    }
                }
            }
            return t;
        }();
        return table[mask8 & 0xffu];
    }

    SectorBasis(const SectorBasis &) = delete;
    SectorBasis &operator=(const SectorBasis &) = delete;
    SectorBasis(SectorBasis &&) = default;
    SectorBasis &operator=(SectorBasis &&) = default;

  private:
    explicit SectorBasis(const Universe &u) : universe_(u), cache_(std::make_unique<DiskCache>()) {}

    struct DiskCache {
        std::mutex mutex;
        std::map<std::pair<VertexId, int>, std::vector<uint32_t>> disks;
    };

    static std::vector<int32_t> slots_of(const Universe &u, uint32_t vm) {
        std::vector<int32_t> slots;
        for (VertexId v : vertices_of(vm)) {
            for (PortId p = 0; p < u.ports; p++) {
                slots.push_back(u.slot(v, p));
            }
        }
        return slots;
    }

    template <typename Fn>
    static void for_each_labelling(const Universe &u, uint32_t vm, Graph &g, Fn &&fn) {
        std::vector<VertexId> verts;
        for (VertexId v : vertices_of(vm)) {
            verts.push_back(v);
        }
        label_rec(u, verts, 0, g, fn);
    }

    template <typename Fn>
    static void label_rec(const Universe &u, const std::vector<VertexId> &verts, size_t i, Graph &g,
                          Fn &&fn) {
        if (i == verts.size()) {
            fn(g);
            return;
        }
        for (LabelId l = kNone; l < u.label_count(); l++) {
            g.label[verts[i]] = static_cast<int8_t>(l);
            label_rec(u, verts, i + 1, g, fn);
        }
        g.label[verts[i]] = kNone;
    }

    template <typename Fn>
    static void for_each_marked_labelling(const Universe &u, uint32_t vm, uint32_t marks, Graph &g,
                                          Fn &&fn) {
        std::vector<VertexId> verts;
        for (VertexId v : vertices_of(vm)) {
            verts.push_back(v);
        }
        marked_label_rec(u, verts, marks, 0, g, fn);
    }

    template <typename Fn>
    static void marked_label_rec(const Universe &u, const std::vector<VertexId> &verts,
                                 uint32_t marks, size_t i, Graph &g, Fn &&fn) {
        if (i == verts.size()) {
            fn(g);
            return;
        }
        VertexId v = verts[i];
        int bit = (marks >> v) & 1u;
        int32_t base = u.marked_base->labels;
        g.label[v] = kNone;
        marked_label_rec(u, verts, marks, i + 1, g, fn);
        for (LabelId l = 0; l < base; l++) {
            g.label[v] = static_cast<int8_t>(l + bit * base);
            marked_label_rec(u, verts, marks, i + 1, g, fn);
        }
        g.label[v] = kNone;
    }

    template <typename Fn>
    static void for_each_matching(Graph &g, const std::vector<int32_t> &slots, size_t i, Fn &&fn) {
        while (i < slots.size() && g.partner[slots[i]] != kNone) {
            i++;
        }
        if (i == slots.size()) {
            fn(g);
            return;
        }
        int32_t s = slots[i];
        // Leave s free.
        for_each_matching(g, slots, i + 1, fn);
        // Or pair it with any later free slot.
        for (size_t j = i + 1; j < slots.size(); j++) {
            int32_t t = slots[j];
            if (g.partner[t] != kNone) {
                continue;
            }
            g.partner[s] = static_cast<int8_t>(t);
            g.partner[t] = static_cast<int8_t>(s);
            for_each_matching(g, slots, i + 1, fn);
            g.partner[s] = kNone;
            g.partner[t] = kNone;
        }
    }

    template <typename Fn>
    static void for_each_marked_matching(const Universe &u, Graph &g, uint32_t marks,
                                         const std::vector<int32_t> &slots, size_t i, Fn &&fn) {
        while (i < slots.size() && g.partner[slots[i]] != kNone) {
            i++;
        }
        if (i == slots.size()) {
            fn(g);
            return;
        }
        int32_t s = slots[i];
        for_each_marked_matching(u, g, marks, slots, i + 1, fn);
        VertexId sv = u.slot_vertex(s);
        int sbit = u.slot_mark(s);
        for (size_t j = i + 1; j < slots.size(); j++) {
            int32_t t = slots[j];
            if (g.partner[t] != kNone) {
                continue;
            }
            VertexId tv = u.slot_vertex(t);
            // A slot's bit must equal the mark of the vertex at the far end.
            if (sbit != static_cast<int>((marks >> tv) & 1u) ||
                u.slot_mark(t) != static_cast<int>((marks >> sv) & 1u)) {
                continue;
            }
            g.partner[s] = static_cast<int8_t>(t);
            g.partner[t] = static_cast<int8_t>(s);
            for_each_marked_matching(u, g, marks, slots, i + 1, fn);
            g.partner[s] = kNone;
            g.partner[t] = kNone;
        }
    }

    void finalize() {
        keys_.reserve(graphs_.size());
        std::vector<std::pair<std::string, Graph>> keyed;
        keyed.reserve(graphs_.size());
        for (const Graph &g : graphs_) {
            keyed.emplace_back(canonical_key(universe_, g), g);
        }
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
        graphs_.clear();
        index_.reserve(keyed.size() * 2);
        for (size_t i = 0; i < keyed.size(); i++) {
            if (i > 0 && keyed[i].first == keyed[i - 1].first) {
                fail(ErrorCode::MalformedInput, "duplicate graph in enumeration: " + keyed[i].first);
            }
            graphs_.push_back(keyed[i].second);
            keys_.push_back(keyed[i].first);
            index_.emplace(keyed[i].second, static_cast<int32_t>(i));
            sector_index_[keyed[i].second.vertex_mask].push_back(static_cast<int32_t>(i));
            uint64_t w = 0;
            std::memcpy(&w, keyed[i].second.label.data(), sizeof(w));
            label_words_.push_back(w);
        }
    }

    Universe universe_;
    bool marked_only_ = false;
    std::vector<Graph> graphs_;
    std::vector<std::string> keys_;
    std::vector<uint64_t> label_words_;  // label bytes of each graph, for fast rejects
    std::unordered_map<Graph, int32_t, GraphHash> index_;
    std::map<uint32_t, std::vector<int32_t>> sector_index_;
    std::unique_ptr<DiskCache> cache_;
};

}  // namespace graphdyn

#endif
