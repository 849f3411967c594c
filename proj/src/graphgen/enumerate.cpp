#include <string>

#include "bitgraph.hpp"
#include "rrg/error.hpp"

namespace rrg::graphgen {
namespace {

using detail::BitGraph;
using detail::bit;
using detail::low_bits;
using detail::Mask;
using detail::RowCodes;

// Orderly generation over the row-by-row adjacency code of canonical.cpp.
//
// Rows are completed in order. After row k is fixed, the adjacency of every
// vertex to positions 0..k is known, which gives three necessary conditions
// for the partial matrix to extend to a canonical (maximal) one:
//   * the unfinished vertices are sorted by decreasing adjacency to 0..k,
//     so a new row may only take a prefix of each block of equal vertices;
//   * vertex k+1 has a neighbour among 0..k (otherwise the maximal form of
//     the completion is disconnected);
//   * no ordering of vertices that starts with the finished rows produces a
//     larger code prefix.
class Orderly {
public:
    Orderly(std::size_t n, std::size_t z, const EnumerationBudget& budget) : n_(n), z_(z), budget_(budget) {
        g_.n = n;
    }

    EnumerationResult run() {
        fill_row(0);
        EnumerationResult result;
        result.n = n_;
        result.z = z_;
        result.count = found_.size();
        result.graphs = std::move(found_);
        result.search_nodes = nodes_;
        return result;
    }

private:
    struct Block {
        std::size_t first, size;
    };

    void fill_row(std::size_t k) {
        if (++nodes_ > budget_.max_search_nodes) {
            throw ResourceError("enumeration exceeded max_search_nodes=" + std::to_string(budget_.max_search_nodes));
        }
        const std::size_t need = z_ - degree(k);
        std::vector<Block> blocks;
        const Mask known = low_bits(k);
        for (std::size_t j = k + 1; j < n_;) {
            std::size_t e = j + 1;
            while (e < n_ && (g_.adj[e] & known) == (g_.adj[j] & known)) ++e;
            if (degree(j) < z_) blocks.push_back({j, e - j});
            j = e;
        }
        choose(k, blocks, 0, need);
    }

    void choose(std::size_t k, const std::vector<Block>& blocks, std::size_t b, std::size_t need) {
        if (need == 0) {
            row_complete(k);
            return;
        }
        if (b == blocks.size()) return;
        const auto [first, size] = blocks[b];
        const std::size_t most = size < need ? size : need;
        // Taking more from an earlier block gives a larger row, so larger
        // counts are explored first; the order does not affect the result set.
        for (std::size_t c = most + 1; c-- > 0;) {
            for (std::size_t t = 0; t < c; ++t) link(k, first + t);
            choose(k, blocks, b + 1, need - c);
            for (std::size_t t = 0; t < c; ++t) unlink(k, first + t);
        }
    }

    void row_complete(std::size_t k) {
        if (k + 1 < n_ && (g_.adj[k + 1] & low_bits(k + 1)) == 0) return;
        if (!residual_feasible(k)) return;
        if (!partial_maximal(k)) return;
        if (k + 1 == n_) {
            emit();
            return;
        }
        fill_row(k + 1);
    }

    bool residual_feasible(std::size_t k) const {
        std::size_t open = 0, total = 0, largest = 0;
        for (std::size_t j = k + 1; j < n_; ++j) {
            const std::size_t r = z_ - degree(j);
            if (r > 0) ++open;
            total += r;
            largest = r > largest ? r : largest;
        }
        return total % 2 == 0 && (largest == 0 || largest <= open - 1);
    }

    bool partial_maximal(std::size_t k) {
        last_ = k + 1 < n_ ? k + 1 : k;
        for (std::size_t p = 0; p <= last_; ++p) target_[p] = g_.adj[p] & low_bits(p);
        for (std::size_t p = 0; p <= last_; ++p) target_[p] = reverse_low(target_[p], p);
        filled_ = k + 1;
        return !find_larger(0, 0);
    }

    // Adjacency row of p stored with vertex q at bit q; the code wants vertex 0
    // in the most significant of the p bits.
    static Mask reverse_low(Mask row, std::size_t p) {
        Mask out = 0;
        for (std::size_t q = 0; q < p; ++q) out = (out << 1) | ((row >> q) & 1u);
        return out;
    }

    bool find_larger(std::size_t p, Mask used) {
        const std::size_t lo = p < filled_ ? 0 : filled_;
        const std::size_t hi = p < filled_ ? filled_ : n_;
        for (std::size_t v = lo; v < hi; ++v) {
            if (used & bit(v)) continue;
            const Mask row = rows_.codes[p][v];
            if (row > target_[p]) return true;
            if (row < target_[p]) continue;
            if (p == last_) continue;
            rows_.push(g_, p, v);
            if (find_larger(p + 1, used | bit(v))) return true;
        }
        return false;
    }

    void emit() {
        std::vector<std::vector<Vertex>> nb(n_);
        for (std::size_t v = 0; v < n_; ++v) {
            for (std::size_t u = 0; u < n_; ++u) {
                if (g_.adj[v] & bit(u)) nb[v].push_back(static_cast<Vertex>(u));
            }
        }
        found_.emplace_back(n_, z_, std::move(nb));
    }

    std::size_t degree(std::size_t v) const { return static_cast<std::size_t>(__builtin_popcount(g_.adj[v])); }
    void link(std::size_t a, std::size_t b) {
        g_.adj[a] |= bit(b);
        g_.adj[b] |= bit(a);
    }
    void unlink(std::size_t a, std::size_t b) {
        g_.adj[a] &= ~bit(b);
        g_.adj[b] &= ~bit(a);
    }

    std::size_t n_, z_;
    EnumerationBudget budget_;
    BitGraph g_;
    RowCodes rows_;
    std::array<Mask, 32> target_{};
    std::size_t last_ = 0, filled_ = 0;
    std::uint64_t nodes_ = 0;
    std::vector<RegularGraph> found_;
};

}  // namespace

EnumerationResult enumerate_connected_regular(std::size_t n, std::size_t z, const EnumerationBudget& budget) {
    validate(GraphSpec{n, z, 0});
    const std::size_t cap = budget.max_vertices < kMaxCanonicalOrder ? budget.max_vertices : kMaxCanonicalOrder;
    if (n > cap) {
        throw ResourceError("n=" + std::to_string(n) + " exceeds the enumeration budget max_vertices=" +
                            std::to_string(cap));
    }
    return Orderly(n, z, budget).run();
}

}  // namespace rrg::graphgen
