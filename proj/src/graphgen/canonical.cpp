#include <string>

#include "bitgraph.hpp"
#include "rrg/error.hpp"

namespace rrg::graphgen {
namespace {

using detail::BitGraph;
using detail::Mask;
using detail::RowCodes;

class MaxCodeSearch {
public:
    explicit MaxCodeSearch(const BitGraph& g) : g_(g), best_(g.n), order_(g.n), best_order_(g.n) {}

    CanonicalLabeling run() {
        if (g_.n > 0) descend(0, 0);
        return {best_order_, best_};
    }

private:
    // Branch and bound for the lexicographically largest row sequence. Any
    // prefix can be completed, so only the candidates reaching the largest
    // row at this depth are explored. valid_ counts the leading rows of
    // best_ that belong to the current incumbent.
    void descend(std::size_t p, Mask used) {
        Mask top = 0;
        bool any = false;
        for (std::size_t v = 0; v < g_.n; ++v) {
            if (used & detail::bit(v)) continue;
            if (!any || rows_.codes[p][v] > top) top = rows_.codes[p][v];
            any = true;
        }
        if (p < valid_) {
            if (top < best_[p]) return;
            if (top > best_[p]) valid_ = p;
        }
        for (std::size_t v = 0; v < g_.n; ++v) {
            if ((used & detail::bit(v)) || rows_.codes[p][v] != top) continue;
            bool improved = false;
            if (p >= valid_) {
                best_[p] = top;
                valid_ = p + 1;
                improved = true;
            } else if (top < best_[p]) {
                return;
            }
            order_[p] = static_cast<Vertex>(v);
            if (p + 1 == g_.n) {
                if (improved) best_order_ = order_;
                continue;
            }
            rows_.push(g_, p, v);
            descend(p + 1, used | detail::bit(v));
        }
    }

    const BitGraph& g_;
    RowCodes rows_;
    AdjacencyCode best_;
    std::size_t valid_ = 0;
    std::vector<Vertex> order_, best_order_;
};

void check_size(const RegularGraph& g) {
    if (g.order() > kMaxCanonicalOrder) {
        throw InvalidArgument("canonical form supports at most " + std::to_string(kMaxCanonicalOrder) +
                              " vertices, got " + std::to_string(g.order()));
    }
}

}  // namespace

AdjacencyCode adjacency_code(const RegularGraph& g) {
    check_size(g);
    const auto b = BitGraph::from(g);
    AdjacencyCode code(g.order());
    for (std::size_t p = 0; p < g.order(); ++p) {
        Mask row = 0;
        for (std::size_t q = 0; q < p; ++q) row = (row << 1) | ((b.adj[p] >> q) & 1u);
        code[p] = row;
    }
    return code;
}

CanonicalLabeling canonical_labeling(const RegularGraph& g) {
    check_size(g);
    const auto b = BitGraph::from(g);
    return MaxCodeSearch(b).run();
}

RegularGraph canonical_form(const RegularGraph& g) { return relabel(g, canonical_labeling(g).order); }

}  // namespace rrg::graphgen
