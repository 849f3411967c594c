#include <algorithm>
#include <cmath>
#include <string>

#include "rrg/error.hpp"
#include "rrg/iprstats.hpp"

namespace rrg::iprstats {

double ipr(std::span<const double> x) {
    double s2 = 0.0, s4 = 0.0;
    for (double v : x) {
        const double q = v * v;
        s2 += q;
        s4 += q * q;
    }
    if (x.empty() || !(std::fabs(std::sqrt(s2) - 1.0) < 1e-8)) {
        throw InvalidArgument("ipr needs a unit vector, got norm " + std::to_string(std::sqrt(s2)));
    }
    return static_cast<double>(x.size()) * s4;
}

double participation_ratio(std::span<const double> x) {
    double mu1 = 0.0, mu2 = 0.0;
    for (double v : x) {
        const double q = v * v;
        mu1 += q;
        mu2 += q * q;
    }
    if (!(mu1 > 0.0)) throw InvalidArgument("participation ratio of the zero vector");
    return mu1 * mu1 / (static_cast<double>(x.size()) * mu2);
}

GraphIprSummary graph_ipr_summary(const spectra::EigenDecomposition& d) {
    const std::size_t zero = spectra::zero_mode_index(d);
    GraphIprSummary s;
    s.n = d.n;
    s.z = d.degree;
    s.zero_mode_eigenvalue = d.eigenvalues[zero];
    s.mode_iprs.reserve(d.n - 1);
    s.mode_eigenvalues.reserve(d.n - 1);
    for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
        if (k == zero) continue;
        s.mode_iprs.push_back(ipr(d.vector(k)));
        s.mode_eigenvalues.push_back(d.eigenvalues[k]);
    }
    if (s.mode_iprs.empty()) return s;
    const double m = static_cast<double>(s.mode_iprs.size());
    double sum = 0.0;
    for (double v : s.mode_iprs) sum += v;
    s.mean_ipr = sum / m;
    double ss = 0.0;
    for (double v : s.mode_iprs) ss += (v - s.mean_ipr) * (v - s.mean_ipr);
    s.variance = ss / m;
    s.max_ipr = *std::max_element(s.mode_iprs.begin(), s.mode_iprs.end());
    return s;
}

}  // namespace rrg::iprstats
