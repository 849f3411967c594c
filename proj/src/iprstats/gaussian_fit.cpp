#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "rrg/error.hpp"
#include "rrg/iprstats.hpp"

namespace rrg::iprstats {
namespace {

struct Point {
    double x, y;
};

double model(const std::array<double, 3>& p, double x) {
    const double u = (x - p[1]) / p[2];
    return p[0] / (p[2] * std::sqrt(2.0 * std::numbers::pi)) * std::exp(-0.5 * u * u);
}

double rss(const std::vector<Point>& pts, const std::array<double, 3>& p) {
    double s = 0.0;
    for (const auto& q : pts) {
        const double r = q.y - model(p, q.x);
        s += r * r;
    }
    return s;
}

// Solves the 3x3 system a·x = b by Gaussian elimination with partial pivoting.
bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b, std::array<double, 3>& x) {
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r) {
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        }
        if (a[piv][c] == 0.0) return false;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (int r = c + 1; r < 3; ++r) {
            const double f = a[r][c] / a[c][c];
            for (int k = c; k < 3; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    for (int r = 2; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < 3; ++k) s -= a[r][k] * x[k];
        x[r] = s / a[r][r];
    }
    return true;
}

}  // namespace

GaussianFit gaussian_fit(const IprHistogram& h) {
    std::vector<Point> pts;
    std::size_t nonzero = 0;
    double mass = 0.0, m1 = 0.0;
    for (std::size_t b = 0; b < h.bins(); ++b) {
        pts.push_back({h.center(b), h.masses[b] / h.width(b)});
        if (h.masses[b] > 0.0) ++nonzero;
        mass += h.masses[b];
        m1 += h.masses[b] * h.center(b);
    }
    if (nonzero < 3) throw FitError("Gaussian fit needs at least three non-empty bins");
    m1 /= mass;
    double m2 = 0.0;
    for (std::size_t b = 0; b < h.bins(); ++b) m2 += h.masses[b] * (h.center(b) - m1) * (h.center(b) - m1);
    std::array<double, 3> p{mass, m1, std::sqrt(m2 / mass)};

    double lambda = 1e-3;
    double cur = rss(pts, p);
    for (int iter = 0; iter < 500; ++iter) {
        std::array<std::array<double, 3>, 3> jtj{};
        std::array<double, 3> jtr{};
        for (const auto& q : pts) {
            const double f = model(p, q.x);
            const double u = (q.x - p[1]) / p[2];
            const std::array<double, 3> g{f / p[0], f * u / p[2], f * (u * u - 1.0) / p[2]};
            const double r = q.y - f;
            for (int i = 0; i < 3; ++i) {
                jtr[i] += g[i] * r;
                for (int j = 0; j < 3; ++j) jtj[i][j] += g[i] * g[j];
            }
        }
        bool improved = false;
        while (lambda < 1e12) {
            auto a = jtj;
            for (int i = 0; i < 3; ++i) a[i][i] *= 1.0 + lambda;
            std::array<double, 3> step{};
            if (solve3(a, jtr, step)) {
                const std::array<double, 3> trial{p[0] + step[0], p[1] + step[1], p[2] + step[2]};
                if (trial[2] > 0.0 && trial[0] > 0.0) {
                    const double next = rss(pts, trial);
                    if (next < cur) {
                        const double gain = cur - next;
                        p = trial;
                        cur = next;
                        lambda = std::max(lambda * 0.3, 1e-12);
                        improved = true;
                        if (gain <= 1e-14 * (1.0 + cur)) iter = 500;
                        break;
                    }
                }
            }
            lambda *= 10.0;
        }
        if (!improved) break;
    }
    if (!(p[2] > 0.0) || !std::isfinite(p[1])) throw FitError("Gaussian fit did not converge");
    return {p[0], p[1], p[2], cur};
}

}  // namespace rrg::iprstats
