// Acceptance run: one PASS/FAIL line per criterion, each with its own
// tolerance and runtime budget. `--criterion N` runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracles/q_sums.hpp"
#include "oracles/sphere_oracles.hpp"
#include "properties.hpp"
#include "rrg/graphgen.hpp"
#include "rrg/harness.hpp"
#include "rrg/iprstats.hpp"
#include "rrg/rng.hpp"
#include "rrg/spectra.hpp"
#include "rrg/sphere.hpp"

using namespace rrg;

namespace {

// Chosen once; never tuned against the outcome.
constexpr std::uint64_t kAcceptanceSeed = 20250107;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<void(Outcome&)> run;
};

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

void exact_identities(Outcome& o) {
    std::size_t checked = 0;
    for (std::size_t n = 2; n <= 100; ++n) {
        const auto mu1 = sphere::mu1_exact(n);
        o.require(sphere::ipr2_sphere_average_exact(n) - mu1 * mu1 == sphere::mu2_exact(n),
                  "identity at n=" + std::to_string(n));
        ++checked;
    }
    o.require(sphere::mu2_exact(2) == 0, "mu2(2) = 0");
    o.require(sphere::mu2_exact(3) == 0, "mu2(3) = 0");
    o.require(sphere::mu1_exact(2) == 1, "mu1(2) = 1");
    o.detail << checked << " exact identities";
}

void expansion_oracle(Outcome& o) {
    for (long n = 3; n <= 8; ++n) {
        const auto m1 = sphere::expansion_moment_exact(n, 1);
        const auto m2 = sphere::expansion_moment_exact(n, 2);
        o.require(m1 == oracle::mu1_formula(n), "first moment at n=" + std::to_string(n));
        o.require(m2 == oracle::ipr2_formula(n), "second moment at n=" + std::to_string(n));
        o.detail << "n=" << n << ": " << m1.get_str() << ", " << m2.get_str() << "; ";
    }
}

void monte_carlo(Outcome& o) {
    const std::size_t n = 100;
    const auto m = sphere::mc_ipr_moments(n, 1'000'000, kAcceptanceSeed);
    const double mu1 = sphere::nearest_double(sphere::mu1_exact(n));
    const double mu2 = sphere::nearest_double(sphere::mu2_exact(n));
    o.require(std::fabs(m.mean - mu1) < 3 * m.mean_error, "mean within 3 jackknife errors");
    o.require(std::fabs(m.variance - mu2) < 0.05 * mu2, "variance within 5%");
    o.detail.precision(7);
    o.detail << "mean " << m.mean << " +- " << m.mean_error << " vs " << mu1 << "; variance " << m.variance
             << " vs " << mu2 << " (" << 100 * (m.variance / mu2 - 1) << "%)";
}

void q_sums(Outcome& o) {
    double worst = 0.0;
    for (std::size_t n : {5u, 10u, 20u}) {
        const auto c = sphere::q_closed_form_sums(n);
        const auto b = oracle::brute_force_q_sums(n);
        for (auto [x, y] : {std::pair{c.quartic, b.quartic}, {c.two_two, b.two_two}, {c.eighth, b.eighth},
                            {c.six_two, b.six_two}, {c.mixed, b.mixed}}) {
            worst = std::max(worst, rel(x, y));
        }
    }
    o.require(worst < 1e-10, "closed forms vs brute force");
    double orth = 0.0, rows = 0.0;
    for (std::size_t n = 2; n <= 200; ++n) {
        const auto q = sphere::q_matrix(n);
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double dot = 0.0;
                for (std::size_t k = 0; k < n; ++k) dot += q[i * n + k] * q[j * n + k];
                orth = std::max(orth, std::fabs(dot - (i == j ? 1.0 : 0.0)));
                row += q[i * n + j];
            }
            rows = std::max(rows, std::fabs(row - (i == n - 1 ? std::sqrt(static_cast<double>(n)) : 0.0)));
        }
    }
    o.require(orth < 1e-12, "orthogonality");
    o.require(rows < 1e-12, "row sums");
    o.detail << "worst relative sum error " << worst << ", orthogonality " << orth << ", row sums " << rows;
}

void eigensolver_quality(Outcome& o) {
    for (auto [n, z] : {std::pair<std::size_t, std::size_t>{200, 3}, {500, 10}}) {
        for (auto method : {spectra::EigenMethod::ql, spectra::EigenMethod::divide_and_conquer}) {
            double recon = 0.0, overlap = 1.0;
            for (std::size_t g = 0; g < 20; ++g) {
                const auto L =
                    spectra::laplacian(graphgen::generate_regular({n, z, derive_seed(kAcceptanceSeed, {n, z, g})}));
                const auto d = spectra::eigendecompose(L, spectra::kDefaultEigenTolerance, method);
                recon = std::max(recon, spectra::reconstruction_error(L, d));
                std::size_t small = 0, zero = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (d.eigenvalues[k] < 1e-10) {
                        ++small;
                        zero = k;
                    }
                }
                o.require(small == 1, "exactly one eigenvalue below 1e-10");
                double dot = 0.0;
                for (double x : d.vector(zero)) dot += x / std::sqrt(static_cast<double>(n));
                overlap = std::min(overlap, std::fabs(dot));
            }
            o.require(recon < 1e-8 * z, "reconstruction");
            o.require(overlap > 1 - 1e-8, "zero-mode overlap");
            o.detail << "(" << n << "," << z << "," << spectra::eigen_method_name(method) << "): recon " << recon
                     << ", overlap 1-" << 1 - overlap << "; ";
        }
    }
}

void kesten_mckay(Outcome& o) {
    const std::size_t n = 1000, z = 4, graphs = 50;
    std::vector<std::vector<double>> spectra_list;
    for (std::size_t g = 0; g < graphs; ++g) {
        const auto graph = graphgen::generate_regular({n, z, derive_seed(kAcceptanceSeed, {n, z, g})});
        spectra_list.push_back(spectra::eigenvalues(spectra::laplacian(graph)));
    }
    const auto h = spectra::eigenvalue_histogram(spectra_list, z, 50);
    const auto km = spectra::kesten_mckay_bin_masses(h, z);
    double l1 = 0.0;
    for (std::size_t b = 0; b < h.bins(); ++b) l1 += std::fabs(h.masses[b] - km[b]);
    o.require(l1 < 0.05, "L1 distance below 0.05");
    o.detail << "L1 distance " << l1;
}

harness::OutputRecord ensemble(const std::vector<harness::Cell>& cells) {
    harness::RunConfig cfg;
    cfg.cells = cells;
    cfg.seed = kAcceptanceSeed;
    cfg.eigensolver = spectra::EigenMethod::divide_and_conquer;
    return harness::compute_ensemble(cfg);
}

void first_moment(Outcome& o) {
    const std::vector<std::size_t> sizes{200, 500, 1000, 2000};
    std::vector<harness::Cell> cells;
    for (auto n : sizes) cells.push_back({n, 10, 100, false});
    const auto rec = ensemble(cells);
    double num = 0.0, den = 0.0;
    for (const auto& c : rec.cells) {
        o.require(c.ok(), "cell n=" + std::to_string(c.cell.n) + ": " + c.error);
        if (!c.ok()) return;
        const double n = static_cast<double>(c.cell.n);
        num += c.stats->delta1 / n;
        den += 1.0 / (n * n);
        o.detail << "n=" << c.cell.n << " <p> " << c.stats->mean_ipr << " delta1 " << c.stats->delta1 << "; ";
    }
    const auto* mid = rec.find(1000, 10);
    const double target = 3.0 - 6.0 / 1001.0;
    o.require(std::fabs(mid->stats->mean_ipr - target) < 0.03, "n=1000 mean within 0.03");
    const double c = num / den;
    o.require(c >= 2.0 && c <= 7.0, "fitted c in [2, 7]");
    o.detail << "fitted c " << c;
}

void second_moment(Outcome& o) {
    const auto rec = ensemble({{1000, 50, 100, false}, {1000, 4, 100, false}});
    const double mu2 = sphere::nearest_double(sphere::mu2_exact(1000));
    const auto* dense = rec.find(1000, 50);
    const auto* sparse = rec.find(1000, 4);
    o.require(dense && sparse, "both cells succeeded");
    if (!dense || !sparse) return;
    o.require(std::fabs(dense->stats->mean_var - mu2) < 0.25 * mu2, "z=50 variance within 25%");
    o.require(sparse->stats->mean_var > mu2, "z=4 variance above mu2");
    o.detail << "mu2 " << mu2 << "; z=50 " << dense->stats->mean_var << " (delta2 " << dense->stats->delta2
             << "); z=4 " << sparse->stats->mean_var << " (delta2 " << sparse->stats->delta2 << ")";
}

void census(Outcome& o) {
    const auto rec = ensemble({{16, 3, 0, true}});
    const auto& c = rec.cells.front();
    o.require(c.ok(), "census cell: " + c.error);
    if (!c.ok()) return;
    const std::size_t count = c.graphs.size();
    o.require(count == 4060, "4060 graphs");
    double sum_ipr = 0.0, sum_var = 0.0;
    std::size_t reach8 = 0, exact_two_site = 0;
    for (const auto& g : c.graphs) {
        sum_ipr += g.summary.mean_ipr;
        sum_var += g.summary.variance;
        if (g.summary.max_ipr >= 8.0 - 1e-8) ++reach8;
        for (const auto& m : g.localized) {
            if (m.localized && m.support == 2 && m.balanced && std::fabs(m.ipr - 8.0) <= 1e-8) ++exact_two_site;
        }
    }
    const double mean_ipr = sum_ipr / count, mean_var = sum_var / count;
    const double frac = static_cast<double>(reach8) / count;
    o.require(mean_ipr >= 2.0 && mean_ipr <= 2.8, "<p> in [2.0, 2.8]");
    o.require(mean_var >= 0.4 && mean_var <= 2.2, "<var> in [0.4, 2.2]");
    o.require(frac >= 0.10 && frac <= 0.20, "fraction reaching 8 in [10%, 20%]");
    o.require(exact_two_site >= 1, "an exact two-site mode");
    o.detail << count << " graphs, <p> " << mean_ipr << ", <var> " << mean_var << ", max IPR 8 in " << reach8
             << " graphs (" << 100 * frac << "%), " << exact_two_site << " exact two-site modes";
}

void properties(Outcome& o) {
    std::size_t passed = 0;
    const auto all = props::all();
    for (auto* f : all) {
        const auto r = f();
        o.require(r.ok, r.name + ": " + r.detail);
        passed += r.ok ? 1 : 0;
    }
    o.detail << passed << "/" << all.size() << " property suites";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "exact moment identities", 1, exact_identities},
        {2, "expansion oracle agreement", 300, expansion_oracle},
        {3, "Monte Carlo agreement at n=100", 60, monte_carlo},
        {4, "closed-form Q sums and Q orthogonality", 60, q_sums},
        {5, "eigensolver quality", 120, eigensolver_quality},
        {6, "Kesten-McKay reproduction", 300, kesten_mckay},
        {7, "first-moment reproduction", 1800, first_moment},
        {8, "second-moment behaviour", 1800, second_moment},
        {9, "exhaustive n=16 z=3 census", 1800, census},
        {10, "property suites", 300, properties},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(secs < c.budget_seconds, "runtime budget " + std::to_string(c.budget_seconds) + " s");
        std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.ok ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
        all_ok = all_ok && o.ok;
    }
    return all_ok ? 0 : 1;
}
