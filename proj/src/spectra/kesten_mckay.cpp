#include <algorithm>
#include <cmath>
#include <numbers>

#include "rrg/error.hpp"
#include "rrg/spectra.hpp"

namespace rrg::spectra {
namespace {

void require_degree(std::size_t z) {
    if (z < 2) throw InvalidArgument("Kesten-McKay law needs z >= 2");
}

template <typename F>
double simpson(F&& f, double a, double b, double fa, double fm, double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

template <typename F>
double integrate(F&& f, double a, double b, double eps) {
    if (b <= a) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), eps, 40);
}

}  // namespace

std::pair<double, double> kesten_mckay_band(std::size_t z) {
    require_degree(z);
    const double zd = static_cast<double>(z);
    const double half = 2.0 * std::sqrt(zd - 1.0);
    return {zd - half, zd + half};
}

double kesten_mckay_density(double eps, std::size_t z) {
    require_degree(z);
    const double zd = static_cast<double>(z);
    const double s = eps - zd;
    const double inside = 4.0 * (zd - 1.0) - s * s;
    if (inside <= 0.0) return 0.0;
    return zd / (2.0 * std::numbers::pi) * std::sqrt(inside) / (zd * zd - s * s);
}

double kesten_mckay_mass(double lo, double hi, std::size_t z) {
    require_degree(z);
    const double zd = static_cast<double>(z);
    const double radius = 2.0 * std::sqrt(zd - 1.0);
    // With ε = z + R sin θ the square-root edge singularity disappears:
    // ρ dε = (z / 2π) R² cos²θ / ((z − 2)² + R² cos²θ) dθ.
    auto angle = [&](double e) { return std::asin(std::clamp((e - zd) / radius, -1.0, 1.0)); };
    const double a = angle(lo), b = angle(hi);
    // z = 2 is the arcsine law, whose integrand is the constant 1/π.
    if (z == 2) return (b - a) / std::numbers::pi;
    auto integrand = [&](double t) {
        const double c = std::cos(t);
        return zd / (2.0 * std::numbers::pi) * radius * radius * c * c / ((zd - 2.0) * (zd - 2.0) + radius * radius * c * c);
    };
    return integrate(integrand, a, b, 1e-13);
}

SpectralDensityHistogram eigenvalue_histogram(std::span<const std::vector<double>> spectra, std::size_t z,
                                              std::size_t bins, std::optional<std::pair<double, double>> range) {
    if (spectra.empty()) throw InvalidArgument("eigenvalue histogram needs at least one spectrum");
    if (bins == 0) throw InvalidArgument("eigenvalue histogram needs at least one bin");
    const std::size_t n = spectra.front().size();
    if (n < 2) throw InvalidArgument("eigenvalue histogram needs n >= 2");
    const auto [lo, hi] = range ? *range : kesten_mckay_band(z);
    if (!(hi > lo)) throw InvalidArgument("eigenvalue histogram range is empty");

    SpectralDensityHistogram h;
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / bins;
    h.masses.assign(bins, 0.0);
    h.graphs = spectra.size();
    h.zero_mode_mass = 1.0 / static_cast<double>(n);

    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<double> counts(bins);
    for (const auto& eps : spectra) {
        if (eps.size() != n) throw InvalidArgument("spectra of different sizes in one histogram");
        const std::size_t zero = zero_mode_index(eps);
        std::fill(counts.begin(), counts.end(), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            if (k == zero || eps[k] < lo || eps[k] > hi) continue;
            auto b = static_cast<std::size_t>((eps[k] - lo) / width);
            counts[std::min(b, bins - 1)] += 1.0;
        }
        for (std::size_t b = 0; b < bins; ++b) h.masses[b] += counts[b] / static_cast<double>(n - 1);
    }
    for (double& m : h.masses) m /= static_cast<double>(spectra.size());
    return h;
}

SpectralDensityHistogram eigenvalue_histogram(std::span<const EigenDecomposition> decomps, std::size_t bins,
                                              std::optional<std::pair<double, double>> range) {
    if (decomps.empty()) throw InvalidArgument("eigenvalue histogram needs at least one decomposition");
    std::vector<std::vector<double>> spectra;
    spectra.reserve(decomps.size());
    for (const auto& d : decomps) {
        zero_mode_index(d);
        spectra.push_back(d.eigenvalues);
    }
    return eigenvalue_histogram(spectra, decomps.front().degree, bins, range);
}

std::vector<double> kesten_mckay_bin_masses(const SpectralDensityHistogram& h, std::size_t z) {
    std::vector<double> out(h.bins());
    for (std::size_t b = 0; b < h.bins(); ++b) out[b] = kesten_mckay_mass(h.edges[b], h.edges[b + 1], z);
    return out;
}

}  // namespace rrg::spectra
