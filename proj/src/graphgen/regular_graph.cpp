#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

#include "rrg/error.hpp"
#include "rrg/graphgen.hpp"

namespace rrg::graphgen {

void validate(const GraphSpec& spec) {
    if (spec.n == 0 || spec.z == 0) throw InvalidSpec("n and z must be positive");
    if ((spec.n * spec.z) % 2 != 0) {
        throw InvalidSpec("n*z must be even (n=" + std::to_string(spec.n) + ", z=" + std::to_string(spec.z) + ")");
    }
    if (spec.z >= spec.n) {
        throw InvalidSpec("degree must be below vertex count (n=" + std::to_string(spec.n) +
                          ", z=" + std::to_string(spec.z) + ")");
    }
}

RegularGraph::RegularGraph(std::size_t n, std::size_t z, std::vector<std::vector<Vertex>> neighbors)
    : z_(z), neighbors_(std::move(neighbors)) {
    if (neighbors_.size() != n) throw InvalidArgument("neighbour table size differs from n");
    for (std::size_t v = 0; v < n; ++v) {
        auto& list = neighbors_[v];
        if (list.size() != z) {
            throw InvalidArgument("vertex " + std::to_string(v) + " has degree " + std::to_string(list.size()) +
                                  ", expected " + std::to_string(z));
        }
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
            throw InvalidArgument("repeated neighbour at vertex " + std::to_string(v));
        }
        for (Vertex u : list) {
            if (u >= n) throw InvalidArgument("neighbour index out of range");
            if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(v));
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        for (Vertex u : neighbors_[v]) {
            if (!std::binary_search(neighbors_[u].begin(), neighbors_[u].end(), static_cast<Vertex>(v))) {
                throw InvalidArgument("adjacency is not symmetric");
            }
        }
    }
}

RegularGraph RegularGraph::from_edges(std::size_t n, std::size_t z,
                                      std::span<const std::pair<Vertex, Vertex>> edges) {
    std::vector<std::vector<Vertex>> nb(n);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw InvalidArgument("edge endpoint out of range");
        nb[u].push_back(v);
        nb[v].push_back(u);
    }
    return RegularGraph(n, z, std::move(nb));
}

bool RegularGraph::adjacent(std::size_t u, std::size_t v) const {
    const auto& list = neighbors_[u];
    return std::binary_search(list.begin(), list.end(), static_cast<Vertex>(v));
}

std::size_t connected_components(const RegularGraph& g) {
    const std::size_t n = g.order();
    std::vector<char> seen(n, 0);
    std::queue<std::size_t> frontier;
    std::size_t components = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = 1;
        frontier.push(s);
        while (!frontier.empty()) {
            auto v = frontier.front();
            frontier.pop();
            for (Vertex u : g.neighbors(v)) {
                if (!seen[u]) {
                    seen[u] = 1;
                    frontier.push(u);
                }
            }
        }
    }
    return components;
}

RegularGraph disjoint_union(const RegularGraph& a, const RegularGraph& b) {
    if (a.degree() != b.degree()) throw InvalidArgument("disjoint union of graphs with different degrees");
    const auto shift = static_cast<Vertex>(a.order());
    std::vector<std::vector<Vertex>> nb;
    nb.reserve(a.order() + b.order());
    for (std::size_t v = 0; v < a.order(); ++v) nb.emplace_back(a.neighbors(v).begin(), a.neighbors(v).end());
    for (std::size_t v = 0; v < b.order(); ++v) {
        auto& list = nb.emplace_back();
        for (Vertex u : b.neighbors(v)) list.push_back(u + shift);
    }
    return RegularGraph(a.order() + b.order(), a.degree(), std::move(nb));
}

RegularGraph relabel(const RegularGraph& g, std::span<const Vertex> order) {
    const std::size_t n = g.order();
    if (order.size() != n) throw InvalidArgument("relabelling has wrong length");
    std::vector<Vertex> position(n, static_cast<Vertex>(n));
    for (std::size_t p = 0; p < n; ++p) {
        if (order[p] >= n || position[order[p]] != n) throw InvalidArgument("relabelling is not a permutation");
        position[order[p]] = static_cast<Vertex>(p);
    }
    std::vector<std::vector<Vertex>> nb(n);
    for (std::size_t p = 0; p < n; ++p) {
        for (Vertex u : g.neighbors(order[p])) nb[p].push_back(position[u]);
    }
    return RegularGraph(n, g.degree(), std::move(nb));
}

void write_graph(std::ostream& out, const RegularGraph& g, std::uint64_t seed) {
    out << g.order() << ' ' << g.degree() << ' ' << seed << '\n';
    for (std::size_t v = 0; v < g.order(); ++v) {
        bool first = true;
        for (Vertex u : g.neighbors(v)) {
            out << (first ? "" : " ") << u;
            first = false;
        }
        out << '\n';
    }
}

SerializedGraph read_graph(std::istream& in) {
    std::string line;
    while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
    }
    std::istringstream header(line);
    std::size_t n = 0, z = 0;
    std::uint64_t seed = 0;
    if (!(header >> n >> z >> seed)) throw InvalidArgument("malformed graph header: '" + line + "'");
    std::vector<std::vector<Vertex>> nb(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (!std::getline(in, line)) throw InvalidArgument("graph file truncated at vertex " + std::to_string(v));
        std::istringstream row(line);
        Vertex u;
        while (row >> u) nb[v].push_back(u);
    }
    return {RegularGraph(n, z, std::move(nb)), seed};
}

}  // namespace rrg::graphgen
