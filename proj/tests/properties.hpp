#pragma once

// Invariant checks shared by the property test binary and the acceptance run.
// Each check returns a result instead of asserting so both drivers can report it.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/graph_oracles.hpp"
#include "oracles/sphere_oracles.hpp"
#include "rrg/graphgen.hpp"
#include "rrg/harness.hpp"
#include "rrg/iprstats.hpp"
#include "rrg/rng.hpp"
#include "rrg/spectra.hpp"
#include "rrg/sphere.hpp"

namespace props {

struct Result {
    std::string name;
    bool ok = true;
    std::string detail;
};

class Check {
public:
    explicit Check(std::string name) { r_.name = std::move(name); }

    void require(bool cond, const std::string& what) {
        ++count_;
        if (!cond && r_.ok) {
            r_.ok = false;
            r_.detail = what;
        }
    }

    Result done() {
        if (r_.ok) r_.detail = std::to_string(count_) + " checks";
        return r_;
    }

private:
    Result r_;
    std::size_t count_ = 0;
};

inline std::vector<double> random_unit(std::size_t n, rrg::Rng& rng) {
    std::vector<double> x(n);
    double s = 0.0;
    for (double& v : x) {
        v = rng.normal();
        s += v * v;
    }
    for (double& v : x) v /= std::sqrt(s);
    return x;
}

inline std::string at(std::size_t n, std::size_t z, std::uint64_t seed) {
    std::ostringstream s;
    s << "(n=" << n << ", z=" << z << ", seed=" << seed << ")";
    return s.str();
}

struct Sample {
    std::size_t n, z;
};

inline const std::vector<Sample>& graph_samples() {
    static const std::vector<Sample> s{{10, 3}, {16, 3}, {50, 3}, {64, 4}, {101, 6}, {120, 7}, {200, 10}, {30, 29}};
    return s;
}

inline Result generated_graphs_are_regular() {
    Check c("generated graphs are simple, z-regular and connected");
    for (const auto& [n, z] : graph_samples()) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto g = rrg::graphgen::generate_regular({n, z, seed});
            std::vector<std::vector<unsigned>> nb(n);
            for (std::size_t v = 0; v < n; ++v) nb[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
            c.require(oracle::is_simple_regular(nb, z), "degree/simplicity " + at(n, z, seed));
            c.require(oracle::bfs_components(nb) == 1, "connectivity " + at(n, z, seed));
        }
    }
    return c.done();
}

inline Result generator_is_deterministic() {
    Check c("generator determinism");
    for (const auto& [n, z] : graph_samples()) {
        for (std::uint64_t seed : {0ULL, 7ULL, 0xFFFFFFFFFFFFULL}) {
            const auto a = rrg::graphgen::generate_regular({n, z, seed});
            const auto b = rrg::graphgen::generate_regular({n, z, seed});
            c.require(a == b, "repeat differs " + at(n, z, seed));
        }
    }
    return c.done();
}

inline Result canonical_form_is_invariant() {
    Check c("canonical form is invariant under relabelling");
    rrg::Rng rng(404);
    for (std::size_t n : {8u, 12u, 16u, 20u}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const auto g = rrg::graphgen::generate_regular({n, 3, seed});
            const auto canon = rrg::graphgen::canonical_form(g);
            for (int t = 0; t < 5; ++t) {
                std::vector<rrg::graphgen::Vertex> perm(n);
                std::iota(perm.begin(), perm.end(), 0u);
                for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
                c.require(rrg::graphgen::canonical_form(rrg::graphgen::relabel(g, perm)) == canon,
                          "relabelled canonical form differs " + at(n, 3, seed));
            }
        }
    }
    return c.done();
}

inline Result spectra_are_well_formed() {
    Check c("spectrum bounds, single zero mode, reconstruction");
    for (const auto& [n, z] : graph_samples()) {
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const auto L = rrg::spectra::laplacian(rrg::graphgen::generate_regular({n, z, seed}));
            const auto d = rrg::spectra::eigendecompose(L);
            const double tol = 1e-10;
            std::size_t zeros = 0;
            for (double e : d.eigenvalues) {
                c.require(e >= -tol && e <= 2.0 * z + tol, "eigenvalue outside [0, 2z] " + at(n, z, seed));
                zeros += std::fabs(e) < tol ? 1 : 0;
            }
            c.require(zeros == 1, "zero-mode count " + at(n, z, seed));
            c.require(d.eigenvalues[1] > tol, "no spectral gap " + at(n, z, seed));
            c.require(rrg::spectra::reconstruction_error(L, d) < 1e-8 * z, "reconstruction " + at(n, z, seed));
            c.require(rrg::spectra::orthonormality_defect(d) < 1e-10, "orthonormality " + at(n, z, seed));
            double trace = 0.0;
            for (double e : d.eigenvalues) trace += e;
            c.require(std::fabs(trace - static_cast<double>(n * z)) < 1e-8 * n * z, "trace " + at(n, z, seed));
        }
    }
    return c.done();
}

/// Largest distance of a non-zero eigenvalue outside the Kesten-McKay band; logged only.
inline double band_excursion(std::size_t n, std::size_t z, std::uint64_t seed) {
    const auto ev = rrg::spectra::eigenvalues(rrg::spectra::laplacian(rrg::graphgen::generate_regular({n, z, seed})));
    const auto [lo, hi] = rrg::spectra::kesten_mckay_band(z);
    double worst = 0.0;
    for (std::size_t k = 1; k < ev.size(); ++k) worst = std::max({worst, lo - ev[k], ev[k] - hi});
    return worst;
}

inline Result ipr_range_holds() {
    // The upper bound can fail inside a degenerate eigenspace (complete
    // graphs), so only sparse samples are used here.
    Check c("every eigenvector IPR lies in [1, n/2]");
    for (const auto& [n, z] : graph_samples()) {
        if (z + 1 == n) continue;
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const auto d = rrg::spectra::eigendecompose(
                rrg::spectra::laplacian(rrg::graphgen::generate_regular({n, z, seed})));
            for (std::size_t k = 0; k < n; ++k) {
                const double v = rrg::iprstats::ipr(d.vector(k));
                c.require(v >= 1.0 - 1e-10 && v <= n / 2.0 + 1e-10, "IPR out of range " + at(n, z, seed));
            }
        }
    }
    const auto census = rrg::graphgen::enumerate_connected_regular(10, 3);
    for (const auto& g : census.graphs) {
        const auto d = rrg::spectra::eigendecompose(rrg::spectra::laplacian(g));
        for (std::size_t k = 0; k < d.n; ++k) {
            const double v = rrg::iprstats::ipr(d.vector(k));
            c.require(v >= 1.0 - 1e-10 && v <= 5.0 + 1e-10, "IPR out of range in the n=10 census");
        }
    }
    return c.done();
}

inline Result ipr_sign_and_permutation_invariant() {
    Check c("IPR is invariant under negation and permutation");
    rrg::Rng rng(11);
    for (std::size_t n : {2u, 4u, 8u}) {
        for (int t = 0; t < 200; ++t) {
            auto x = random_unit(n, rng);
            const double base = rrg::iprstats::ipr(x);
            auto neg = x;
            for (double& v : neg) v = -v;
            c.require(rrg::iprstats::ipr(neg) == base, "negation changed the IPR");
            for (std::size_t i = n - 1; i > 0; --i) std::swap(x[i], x[rng.below(i + 1)]);
            c.require(std::fabs(rrg::iprstats::ipr(x) - base) <= 1e-15 * base, "permutation changed the IPR");
        }
    }
    for (std::size_t n : {100u, 1000u}) {
        auto x = random_unit(n, rng);
        auto neg = x;
        for (double& v : neg) v = -v;
        c.require(rrg::iprstats::ipr(neg) == rrg::iprstats::ipr(x), "negation changed the IPR at large n");
        std::reverse(x.begin(), x.end());
        const double a = rrg::iprstats::ipr(x);
        std::reverse(x.begin(), x.end());
        c.require(std::fabs(rrg::iprstats::ipr(x) - a) <= 1e-13 * a, "reversal changed the IPR at large n");
    }
    return c.done();
}

inline Result participation_identity() {
    Check c("p * IPR = 1 for unit vectors");
    rrg::Rng rng(12);
    for (std::size_t n : {1u, 2u, 3u, 10u, 100u, 1000u}) {
        for (int t = 0; t < 50; ++t) {
            const auto x = random_unit(n, rng);
            c.require(std::fabs(rrg::iprstats::participation_ratio(x) * rrg::iprstats::ipr(x) - 1.0) < 1e-12,
                      "identity fails at n=" + std::to_string(n));
        }
    }
    return c.done();
}

inline Result equal_magnitude_vectors() {
    Check c("k equal-magnitude entries give IPR n/k");
    rrg::Rng rng(13);
    for (std::size_t n : {16u, 64u, 1000u}) {
        for (std::size_t k : {2u, 4u, 8u}) {
            for (int t = 0; t < 20; ++t) {
                std::vector<double> x(n, 0.0);
                std::vector<std::size_t> idx(n);
                std::iota(idx.begin(), idx.end(), 0u);
                for (std::size_t i = n - 1; i > 0; --i) std::swap(idx[i], idx[rng.below(i + 1)]);
                for (std::size_t j = 0; j < k; ++j) x[idx[j]] = (rng.below(2) ? 1.0 : -1.0) / std::sqrt(double(k));
                const double v = rrg::iprstats::ipr(x);
                c.require(std::fabs(v - double(n) / k) < 1e-12 * n, "IPR != n/k");
                const auto m = rrg::iprstats::classify_vector(x, rrg::iprstats::kDefaultSupportTol,
                                                              rrg::iprstats::kDefaultLocalizedIprTol);
                c.require(m.support == k && m.equal_magnitude && m.localized, "classification of a k-site vector");
            }
        }
    }
    return c.done();
}

inline Result averaging_order_regression() {
    Check c("IPR histogram normalizes per graph, then averages");
    auto summary = [](std::vector<double> v) {
        rrg::iprstats::GraphIprSummary s;
        s.n = 3;
        s.z = 2;
        s.mode_iprs = std::move(v);
        return s;
    };
    const std::vector<rrg::iprstats::GraphIprSummary> two{summary({1.2, 1.3}), summary({2.5, 9.0})};
    const auto h = rrg::iprstats::ipr_histogram(two, 2, 1.0, 3.0);
    // Pooling the in-range values first would give 2/3 and 1/3.
    c.require(std::fabs(h.masses[0] - 0.5) < 1e-15, "first bin");
    c.require(std::fabs(h.masses[1] - 0.25) < 1e-15, "second bin");
    const std::vector<rrg::iprstats::GraphIprSummary> disjoint{summary({1.5, 1.5}), summary({2.5, 2.5})};
    const auto d = rrg::iprstats::ipr_histogram(disjoint, 2, 1.0, 3.0);
    c.require(d.masses[0] == 0.5 && d.masses[1] == 0.5, "disjoint single-bin graphs");
    return c.done();
}

inline Result folland_zero_rule() {
    Check c("odd exponents integrate to exactly zero");
    rrg::Rng rng(14);
    for (int t = 0; t < 300; ++t) {
        const std::size_t m = 1 + rng.below(7);
        rrg::sphere::ExponentVector a(m);
        for (auto& e : a) e = static_cast<unsigned>(rng.below(7));
        const bool odd = std::any_of(a.begin(), a.end(), [](unsigned e) { return e % 2 == 1; });
        const auto v = rrg::sphere::folland_integral(a);
        c.require(v.is_zero() == odd, "zero rule");
        c.require(rrg::sphere::sphere_average(a) == oracle::monomial_average(a), "average against the moment formula");
    }
    for (std::size_t m = 1; m <= 15; ++m) {
        rrg::sphere::ExponentVector a(m, 0);
        c.require(rrg::sphere::sphere_average(a) == 1, "normalization");
        a[m - 1] = 2;
        c.require(rrg::sphere::sphere_average(a) * m == 1, "second moment normalization");
    }
    return c.done();
}

inline Result rotation_is_orthogonal() {
    Check c("Q is orthogonal with row sums sqrt(n) delta_in");
    for (std::size_t n : {2u, 5u, 17u, 64u, 133u, 200u}) {
        const auto q = rrg::sphere::q_matrix(n);
        double worst = 0.0, rows = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double dot = 0.0;
                for (std::size_t k = 0; k < n; ++k) dot += q[i * n + k] * q[j * n + k];
                worst = std::max(worst, std::fabs(dot - (i == j ? 1.0 : 0.0)));
                row += q[i * n + j];
            }
            rows = std::max(rows, std::fabs(row - (i == n - 1 ? std::sqrt(double(n)) : 0.0)));
        }
        c.require(worst < 1e-12, "orthogonality at n=" + std::to_string(n));
        c.require(rows < 1e-12, "row sums at n=" + std::to_string(n));
    }
    return c.done();
}

inline Result subsphere_samples_valid() {
    Check c("subsphere samples sum to zero with unit norm");
    rrg::Rng rng(15);
    for (std::size_t n : {2u, 3u, 10u, 500u}) {
        for (int t = 0; t < 200; ++t) {
            const auto x = rrg::sphere::sample_subsphere(n, rng);
            double s = 0.0, q = 0.0;
            for (double v : x) {
                s += v;
                q += v * v;
            }
            c.require(std::fabs(s) < 1e-12 && std::fabs(std::sqrt(q) - 1.0) < 1e-12, "sample invariants");
        }
    }
    return c.done();
}

inline Result worker_count_independence() {
    Check c("results do not depend on the worker count");
    rrg::harness::RunConfig cfg;
    cfg.cells = {{40, 3, 6, false}, {24, 5, 5, false}, {10, 3, 0, true}};
    cfg.seed = 2718;
    std::vector<rrg::harness::OutputRecord> recs;
    for (std::size_t w : {1u, 3u, 8u}) {
        cfg.workers = w;
        recs.push_back(rrg::harness::compute_ensemble(cfg));
    }
    for (std::size_t r = 1; r < recs.size(); ++r) {
        for (std::size_t k = 0; k < cfg.cells.size(); ++k) {
            const auto& a = recs[0].cells[k];
            const auto& b = recs[r].cells[k];
            c.require(a.ok() && b.ok(), "cell failed");
            if (!a.ok() || !b.ok()) continue;
            c.require(a.graphs.size() == b.graphs.size(), "graph count");
            for (std::size_t g = 0; g < a.graphs.size() && g < b.graphs.size(); ++g) {
                c.require(a.graphs[g].seed == b.graphs[g].seed, "graph seed");
                c.require(a.graphs[g].eigenvalues == b.graphs[g].eigenvalues, "eigenvalues");
                c.require(a.graphs[g].summary.mode_iprs == b.graphs[g].summary.mode_iprs, "mode IPRs");
            }
            c.require(a.stats->mean_ipr == b.stats->mean_ipr && a.stats->mean_var == b.stats->mean_var,
                      "ensemble statistics");
        }
    }
    const auto m1 = rrg::sphere::mc_ipr_moments(30, 50000, 99, 1);
    const auto m5 = rrg::sphere::mc_ipr_moments(30, 50000, 99, 5);
    c.require(m1.mean == m5.mean && m1.variance == m5.variance && m1.mean_error == m5.mean_error,
              "Monte Carlo moments");
    const auto again = rrg::harness::compute_ensemble(cfg);
    c.require(again.cells[0].stats->mean_ipr == recs.back().cells[0].stats->mean_ipr, "repeat run");
    return c.done();
}

inline std::vector<Result (*)()> all() {
    return {generated_graphs_are_regular, generator_is_deterministic, canonical_form_is_invariant,
            spectra_are_well_formed,      ipr_range_holds,            ipr_sign_and_permutation_invariant,
            participation_identity,       equal_magnitude_vectors,    averaging_order_regression,
            folland_zero_rule,            rotation_is_orthogonal,     subsphere_samples_valid,
            worker_count_independence};
}

}  // namespace props
