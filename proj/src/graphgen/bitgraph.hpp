#pragma once

#include <array>
#include <cstdint>

#include "rrg/graphgen.hpp"

namespace rrg::graphgen::detail {

using Mask = std::uint32_t;

constexpr Mask bit(std::size_t v) { return Mask{1} << v; }
constexpr Mask low_bits(std::size_t k) { return k >= 32 ? ~Mask{0} : (bit(k) - 1); }

/// Adjacency as one bitmask per vertex; n <= 32.
struct BitGraph {
    std::size_t n = 0;
    std::array<Mask, 32> adj{};

    static BitGraph from(const RegularGraph& g) {
        BitGraph b;
        b.n = g.order();
        for (std::size_t v = 0; v < b.n; ++v) {
            for (Vertex u : g.neighbors(v)) b.adj[v] |= bit(u);
        }
        return b;
    }
};

/// Per-depth codes: codes[p][x] = bits adj(x, order[0..p-1]), order[0] most significant.
struct RowCodes {
    std::array<std::array<Mask, 32>, 33> codes{};

    void push(const BitGraph& g, std::size_t p, std::size_t placed) {
        const auto& cur = codes[p];
        auto& next = codes[p + 1];
        for (std::size_t x = 0; x < g.n; ++x) next[x] = (cur[x] << 1) | ((g.adj[x] >> placed) & 1u);
    }
};

}  // namespace rrg::graphgen::detail
