#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace rrg::graphgen {

using Vertex = std::uint32_t;

/// Requested graph size and the seed that makes a sample reproducible.
struct GraphSpec {
    std::size_t n = 0;
    std::size_t z = 0;
    std::uint64_t seed = 0;
};

/// Throws InvalidSpec when n·z is odd, z >= n, or n or z is zero.
void validate(const GraphSpec& spec);

/// Simple undirected z-regular graph in adjacency-list form.
///
/// Construction checks every invariant (degree, no loops, no repeated
/// neighbours, symmetry) and sorts each neighbour list, so a RegularGraph
/// value is always valid.
class RegularGraph {
public:
    RegularGraph(std::size_t n, std::size_t z, std::vector<std::vector<Vertex>> neighbors);

    /// Builds from an edge list; each edge {u, v} is listed once.
    static RegularGraph from_edges(std::size_t n, std::size_t z,
                                   std::span<const std::pair<Vertex, Vertex>> edges);

    std::size_t order() const noexcept { return neighbors_.size(); }
    std::size_t degree() const noexcept { return z_; }
    std::span<const Vertex> neighbors(std::size_t v) const { return neighbors_[v]; }
    bool adjacent(std::size_t u, std::size_t v) const;

    bool operator==(const RegularGraph&) const = default;

private:
    std::size_t z_;
    std::vector<std::vector<Vertex>> neighbors_;
};

/// Number of connected components (breadth-first search).
std::size_t connected_components(const RegularGraph& g);

/// Vertex-disjoint union; the second graph's labels are shifted by a.order().
RegularGraph disjoint_union(const RegularGraph& a, const RegularGraph& b);

/// Applies a relabelling: vertex order[p] of g becomes vertex p of the result.
RegularGraph relabel(const RegularGraph& g, std::span<const Vertex> order);

// ---------------------------------------------------------------------------
// Random generation

struct GenerationReport {
    RegularGraph graph;
    /// Times the pairing phase got stuck with no suitable pair and started over.
    unsigned pairing_restarts = 0;
    /// Times a complete sample was discarded as disconnected.
    unsigned connectivity_retries = 0;
};

inline constexpr unsigned kMaxPairingRestarts = 100;
inline constexpr unsigned kMaxConnectivityRetries = 1000;

/// Steger-Wormald pairing: repeatedly joins two uniformly chosen free
/// points whose cells are distinct and not yet adjacent. A stuck pairing
/// is restarted (at most kMaxPairingRestarts times); a disconnected sample
/// is discarded and redrawn from an advanced stream.
GenerationReport generate_regular_report(const GraphSpec& spec);

RegularGraph generate_regular(const GraphSpec& spec);

// ---------------------------------------------------------------------------
// Canonical form and exhaustive enumeration (n <= 32)

/// Row p holds the adjacency of position p to positions 0..p-1, position 0
/// in the most significant of its p bits. The canonical code of a graph is
/// the lexicographic maximum of this sequence over all vertex orderings.
using AdjacencyCode = std::vector<std::uint32_t>;

struct CanonicalLabeling {
    /// order[p] is the original vertex placed at canonical position p.
    std::vector<Vertex> order;
    AdjacencyCode code;
};

inline constexpr std::size_t kMaxCanonicalOrder = 32;

AdjacencyCode adjacency_code(const RegularGraph& g);
CanonicalLabeling canonical_labeling(const RegularGraph& g);
RegularGraph canonical_form(const RegularGraph& g);

struct EnumerationBudget {
    std::size_t max_vertices = 16;
    std::uint64_t max_search_nodes = 4'000'000'000ULL;
};

struct EnumerationResult {
    std::size_t n = 0;
    std::size_t z = 0;
    /// Canonically labelled, pairwise non-isomorphic, connected.
    std::vector<RegularGraph> graphs;
    std::size_t count = 0;
    std::uint64_t search_nodes = 0;
};

/// Orderly generation of all connected z-regular graphs on n vertices:
/// rows of the adjacency matrix are filled in order and every partial
/// matrix that cannot extend to a canonical one is rejected.
EnumerationResult enumerate_connected_regular(std::size_t n, std::size_t z,
                                              const EnumerationBudget& budget = {});

// ---------------------------------------------------------------------------
// Text serialization: header "n z seed", then one line per vertex listing
// its 0-based neighbours separated by spaces.

void write_graph(std::ostream& out, const RegularGraph& g, std::uint64_t seed);

struct SerializedGraph {
    RegularGraph graph;
    std::uint64_t seed;
};

SerializedGraph read_graph(std::istream& in);

}  // namespace rrg::graphgen
