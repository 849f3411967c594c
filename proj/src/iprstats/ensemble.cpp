#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "rrg/error.hpp"
#include "rrg/iprstats.hpp"

namespace rrg::iprstats {
namespace {

void require_homogeneous(std::span<const GraphIprSummary> summaries) {
    if (summaries.empty()) throw InvalidArgument("no graph summaries");
    for (const auto& s : summaries) {
        if (s.n != summaries.front().n || s.z != summaries.front().z) {
            throw InvalidArgument("graph summaries mix different (n, z)");
        }
    }
}

std::pair<double, double> mean_and_sample_std(std::span<const GraphIprSummary> s, double GraphIprSummary::*field) {
    double sum = 0.0;
    for (const auto& g : s) sum += g.*field;
    const double mean = sum / static_cast<double>(s.size());
    if (s.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (const auto& g : s) ss += (g.*field - mean) * (g.*field - mean);
    return {mean, std::sqrt(ss / static_cast<double>(s.size() - 1))};
}

}  // namespace

EnsembleIprStats ensemble_stats(std::span<const GraphIprSummary> summaries, double mu1, double mu2) {
    require_homogeneous(summaries);
    EnsembleIprStats e;
    e.n = summaries.front().n;
    e.z = summaries.front().z;
    e.graphs = summaries.size();
    std::tie(e.mean_ipr, e.std_ipr) = mean_and_sample_std(summaries, &GraphIprSummary::mean_ipr);
    std::tie(e.mean_var, e.std_var) = mean_and_sample_std(summaries, &GraphIprSummary::variance);
    e.delta1 = 1.0 - e.mean_ipr / mu1;
    e.delta2 = mu2 != 0.0 ? 1.0 - e.mean_var / mu2 : std::numeric_limits<double>::quiet_NaN();
    return e;
}

IprHistogram ipr_histogram(std::span<const GraphIprSummary> summaries, std::size_t bins, double lo, double hi) {
    require_homogeneous(summaries);
    if (bins == 0) throw InvalidArgument("IPR histogram needs at least one bin");
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw InvalidArgument("IPR histogram range is empty");

    IprHistogram h;
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / bins;
    h.masses.assign(bins, 0.0);
    h.graphs = summaries.size();
    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<double> counts(bins);
    for (const auto& s : summaries) {
        if (s.mode_iprs.empty()) continue;
        std::fill(counts.begin(), counts.end(), 0.0);
        for (double v : s.mode_iprs) {
            if (v < lo || v > hi) continue;
            counts[std::min(static_cast<std::size_t>((v - lo) / width), bins - 1)] += 1.0;
        }
        const double total = static_cast<double>(s.mode_iprs.size());
        for (std::size_t b = 0; b < bins; ++b) h.masses[b] += counts[b] / total;
    }
    for (double& m : h.masses) m /= static_cast<double>(summaries.size());
    return h;
}

double histogram_skewness(const IprHistogram& h) {
    double w = 0.0, m1 = 0.0;
    for (std::size_t b = 0; b < h.bins(); ++b) {
        w += h.masses[b];
        m1 += h.masses[b] * h.center(b);
    }
    if (!(w > 0.0)) throw InvalidArgument("skewness of an empty histogram");
    m1 /= w;
    double m2 = 0.0, m3 = 0.0;
    for (std::size_t b = 0; b < h.bins(); ++b) {
        const double d = h.center(b) - m1;
        m2 += h.masses[b] * d * d;
        m3 += h.masses[b] * d * d * d;
    }
    m2 /= w;
    m3 /= w;
    if (!(m2 > 0.0)) return 0.0;
    return m3 / std::pow(m2, 1.5);
}

}  // namespace rrg::iprstats
