#include <algorithm>
#include <optional>
#include <string>

#include "rrg/error.hpp"
#include "rrg/graphgen.hpp"
#include "rrg/rng.hpp"

namespace rrg::graphgen {
namespace {

class Pairing {
public:
    Pairing(std::size_t n, std::size_t z) : n_(n), z_(z), nb_(n) {
        for (auto& list : nb_) list.reserve(z);
    }

    /// One pass of the pairing phase. Returns false when no suitable pair is left.
    bool run(Rng& rng) {
        for (auto& list : nb_) list.clear();
        free_.resize(n_ * z_);
        for (std::size_t p = 0; p < free_.size(); ++p) free_[p] = static_cast<Vertex>(p);

        std::size_t failures = 0;
        while (!free_.empty()) {
            const std::size_t m = free_.size();
            std::size_t i = rng.below(m);
            std::size_t j = rng.below(m - 1);
            if (j >= i) ++j;
            const Vertex u = cell(free_[i]);
            const Vertex v = cell(free_[j]);
            if (u != v && !linked(u, v)) {
                nb_[u].push_back(v);
                nb_[v].push_back(u);
                if (i < j) std::swap(i, j);
                take(i);
                take(j);
                failures = 0;
                continue;
            }
            // Rejections are cheap; only when they pile up is it worth
            // scanning for the existence of any suitable pair.
            if (++failures > 4 * m + 16) {
                if (!suitable_pair_exists()) return false;
                failures = 0;
            }
        }
        return true;
    }

    RegularGraph graph() const { return RegularGraph(n_, z_, nb_); }

private:
    Vertex cell(Vertex point) const { return static_cast<Vertex>(point / z_); }

    bool linked(Vertex u, Vertex v) const {
        const auto& list = nb_[u].size() < nb_[v].size() ? nb_[u] : nb_[v];
        const Vertex other = (&list == &nb_[u]) ? v : u;
        return std::find(list.begin(), list.end(), other) != list.end();
    }

    void take(std::size_t idx) {
        free_[idx] = free_.back();
        free_.pop_back();
    }

    bool suitable_pair_exists() const {
        std::vector<Vertex> open;
        for (Vertex p : free_) open.push_back(cell(p));
        std::sort(open.begin(), open.end());
        open.erase(std::unique(open.begin(), open.end()), open.end());
        for (std::size_t a = 0; a < open.size(); ++a) {
            for (std::size_t b = a + 1; b < open.size(); ++b) {
                if (!linked(open[a], open[b])) return true;
            }
        }
        return false;
    }

    std::size_t n_, z_;
    std::vector<std::vector<Vertex>> nb_;
    std::vector<Vertex> free_;
};

}  // namespace

GenerationReport generate_regular_report(const GraphSpec& spec) {
    validate(spec);
    if (spec.z == 1 && spec.n > 2) {
        throw InvalidSpec("a connected 1-regular graph exists only for n = 2");
    }
    Rng rng(spec.seed);
    Pairing pairing(spec.n, spec.z);
    unsigned restarts = 0;
    for (unsigned attempt = 0; attempt <= kMaxConnectivityRetries; ++attempt) {
        while (!pairing.run(rng)) {
            if (++restarts > kMaxPairingRestarts) {
                throw ResourceError("pairing phase stalled more than " + std::to_string(kMaxPairingRestarts) +
                                    " times");
            }
        }
        auto g = pairing.graph();
        if (connected_components(g) == 1) return {std::move(g), restarts, attempt};
        rng.advance_stream();
    }
    throw ResourceError("no connected sample within " + std::to_string(kMaxConnectivityRetries) +
                        " retries (n=" + std::to_string(spec.n) + ", z=" + std::to_string(spec.z) + ")");
}

RegularGraph generate_regular(const GraphSpec& spec) { return generate_regular_report(spec).graph; }

}  // namespace rrg::graphgen
