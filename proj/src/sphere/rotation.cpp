#include <cmath>
#include <string>

#include "rrg/error.hpp"
#include "rrg/sphere.hpp"

namespace rrg::sphere {
namespace {

void require_order(std::size_t n) {
    if (n < 2) throw InvalidArgument("rotation needs n >= 2");
}

double ipow(double x, unsigned s) {
    double r = 1.0;
    for (unsigned k = 0; k < s; ++k) r *= x;
    return r;
}

}  // namespace

double q_component(std::size_t i, std::size_t j, std::size_t n) {
    require_order(n);
    if (i < 1 || i > n || j < 1 || j > n) {
        throw InvalidArgument("Q index (" + std::to_string(i) + "," + std::to_string(j) + ") outside 1.." +
                              std::to_string(n));
    }
    const double nd = static_cast<double>(n);
    const double r = std::sqrt(nd);
    const double dij = i == j ? 1.0 : 0.0;
    const double din = i == n ? 1.0 : 0.0;
    const double dnj = j == n ? 1.0 : 0.0;
    return dij + ((1.0 - r) / (nd - 1.0) * (1.0 - din - dnj + nd * dnj * din) + din - dnj) / r;
}

std::vector<double> q_matrix_tensor(std::size_t n) {
    require_order(n);
    const double nd = static_cast<double>(n);
    const double cos_t = 1.0 / std::sqrt(nd);
    const double sin_t = std::sqrt((nd - 1.0) / nd);
    std::vector<double> v1(n, 1.0 / std::sqrt(nd)), v2(n, -1.0 / std::sqrt(nd * (nd - 1.0)));
    v2[n - 1] = (nd - 1.0) / std::sqrt(nd * (nd - 1.0));
    std::vector<double> q(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            q[i * n + j] = (i == j ? 1.0 : 0.0) + sin_t * (v2[i] * v1[j] - v1[i] * v2[j]) +
                           (cos_t - 1.0) * (v1[i] * v1[j] + v2[i] * v2[j]);
        }
    }
    return q;
}

std::vector<double> q_matrix(std::size_t n) {
    require_order(n);
    std::vector<double> q(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) q[i * n + j] = q_component(i + 1, j + 1, n);
    }
    return q;
}

QPowerCoeffs q_power_coeffs(unsigned s, std::size_t n) {
    require_order(n);
    const double x = static_cast<double>(n);
    const double r = std::sqrt(x);
    const double x32 = x * r, x2 = x * x;
    QPowerCoeffs c{s, n, 0.0, 0.0};
    switch (s) {
        case 1:
            c.alpha = -r;
            c.beta = x + r;
            break;
        case 2:
            c.alpha = x + 2 * r;
            c.beta = (x - 1) * (x + 2 * r);
            break;
        case 3:
            c.alpha = -r * (3 + 3 * r + x);
            c.beta = (x + r) * (3 - 3 * r - 2 * x + 2 * x32 + x2);
            break;
        case 4:
            c.alpha = (x + 2 * r) * (2 + 2 * r + x);
            c.beta = (x - 1) * (x + 2 * r) * (x2 + 2 * x32 - x - 2 * r + 2);
            break;
        case 6:
            c.alpha = (x + 2 * r) * (1 + r + x) * (3 + 3 * r + x);
            c.beta = (x + 2 * r) * (x - 1) * (1 - r + 2 * x32 + x2) * (3 - 3 * r - 2 * x + 2 * x32 + x2);
            break;
        case 8:
            c.alpha = (x + 2 * r) * (2 + 2 * r + x) * (2 + 4 * r + 6 * x + 4 * x32 + x2);
            c.beta = (x + 2 * r) * (x - 1) * (2 - 2 * r - x + 2 * x32 + x2) *
                     (2 - 4 * r + 2 * x + 8 * x32 - 5 * x2 - 8 * x2 * r + 2 * x2 * x + 4 * x2 * x32 + x2 * x2);
            break;
        default:
            throw InvalidArgument("q_power_coeffs supports s in {1,2,3,4,6,8}, got " + std::to_string(s));
    }
    return c;
}

QSums q_closed_form_sums(std::size_t n) {
    require_order(n);
    const double x = static_cast<double>(n);
    const double r = std::sqrt(x);
    auto p = [&](double e) { return std::pow(x, e); };
    const double pre = (r - 1.0) / (ipow(1.0 + r, 6) * x * x * x);
    QSums s;
    s.quartic = x - (29 + 30 * r + 5 * x) / ((1 + r) * (1 + r)) + 24 / r - 9 / x;
    s.two_two = (r - 1) * (3 * r + 5) * (x - 2) / (x * (r + 1) * (r + 1));
    s.eighth = pre * (49 + 7 * r - 7 * x + 119 * p(1.5) + 21 * p(2) - 133 * p(2.5) + 9 * p(3) + 111 * p(3.5) +
                      p(4) - 57 * p(4.5) - 13 * p(5) + 13 * p(5.5) + 7 * p(6) + p(6.5));
    s.six_two = pre * (x - 2) *
                (37 + 31 * r + 10 * x + 40 * p(1.5) + 29 * p(2) - 15 * p(2.5) - 14 * p(3) + 4 * p(3.5) + 5 * p(4) +
                 p(4.5));
    s.mixed = -pre * (x - 2) * (x - 3) *
              (29 + 39 * r + 4 * x - 28 * p(1.5) - 12 * p(2) + 12 * p(2.5) + 10 * p(3) + 2 * p(3.5));
    return s;
}

QSums q_direct_sums(std::size_t n) {
    const std::vector<double> q = q_matrix(n);
    auto Q = [&](std::size_t k, std::size_t i) { return q[k * n + i]; };
    const std::size_t rows = n - 1;
    QSums s;
    for (std::size_t k = 0; k < rows; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            s.quartic += ipow(Q(k, i), 4);
            s.eighth += ipow(Q(k, i), 8);
        }
        for (std::size_t l = 0; l < rows; ++l) {
            if (l == k) continue;
            for (std::size_t i = 0; i < n; ++i) {
                s.two_two += ipow(Q(k, i), 2) * ipow(Q(l, i), 2);
                s.six_two += ipow(Q(k, i), 6) * ipow(Q(l, i), 2);
            }
        }
    }
    for (std::size_t k = 0; k < rows; ++k) {
        for (std::size_t l = 0; l < rows; ++l) {
            if (l == k) continue;
            for (std::size_t m = 0; m < rows; ++m) {
                if (m == k || m == l) continue;
                for (std::size_t i = 0; i < n; ++i) {
                    const double a = ipow(Q(k, i), 3) * Q(l, i);
                    for (std::size_t j = 0; j < n; ++j) {
                        if (j == i) continue;
                        s.mixed += a * Q(k, j) * Q(l, j) * Q(m, j) * Q(m, j);
                    }
                }
            }
        }
    }
    return s;
}

}  // namespace rrg::sphere
