#include <cmath>
#include <string>

#include "rrg/error.hpp"
#include "rrg/iprstats.hpp"

namespace rrg::iprstats {

mpz_class localized_candidate_count(std::size_t n, std::size_t m) {
    if (m < 1 || 2 * m > n) {
        throw InvalidArgument("localized_candidate_count needs 1 <= m <= n/2, got n=" + std::to_string(n) +
                              " m=" + std::to_string(m));
    }
    mpz_class pair, rest;
    // n!/(m! m! (n−2m)!) = C(n, 2m)·C(2m, m)
    mpz_bin_uiui(pair.get_mpz_t(), n, 2 * m);
    mpz_bin_uiui(rest.get_mpz_t(), 2 * m, m);
    return pair * rest;
}

LocalizedMode classify_vector(std::span<const double> x, double support_tol, double ipr_tol) {
    LocalizedMode mode;
    std::size_t positive = 0, negative = 0;
    for (double v : x) {
        if (std::fabs(v) > support_tol) {
            ++mode.support;
            (v > 0.0 ? positive : negative) += 1;
        }
    }
    mode.ipr = ipr(x);
    if (mode.support == 0) return mode;
    const double level = 1.0 / std::sqrt(static_cast<double>(mode.support));
    mode.equal_magnitude = true;
    for (double v : x) {
        if (std::fabs(v) > support_tol && std::fabs(std::fabs(v) - level) > support_tol) {
            mode.equal_magnitude = false;
            break;
        }
    }
    mode.balanced = positive == negative;
    const double n = static_cast<double>(x.size());
    mode.localized = mode.equal_magnitude && mode.support >= 2 && 2 * mode.support <= x.size() &&
                     std::fabs(mode.ipr - n / static_cast<double>(mode.support)) <= ipr_tol;
    return mode;
}

std::size_t LocalizedModeReport::localized_count() const {
    std::size_t c = 0;
    for (const auto& m : modes) c += m.localized ? 1 : 0;
    return c;
}

LocalizedModeReport detect_localized(const spectra::EigenDecomposition& d, double support_tol, double ipr_tol) {
    LocalizedModeReport r;
    r.n = d.n;
    r.support_tol = support_tol;
    r.ipr_tol = ipr_tol;
    const std::size_t zero = spectra::zero_mode_index(d);
    for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
        if (k == zero) continue;
        LocalizedMode m = classify_vector(d.vector(k), support_tol, ipr_tol);
        if (!m.equal_magnitude || m.support >= d.n) continue;
        m.mode_index = k;
        m.eigenvalue = d.eigenvalues[k];
        r.modes.push_back(m);
    }
    for (std::size_t m = 1; 2 * m <= d.n; ++m) r.candidate_counts.emplace_back(m, localized_candidate_count(d.n, m));
    return r;
}

}  // namespace rrg::iprstats
