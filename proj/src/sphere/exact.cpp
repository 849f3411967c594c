#include <cmath>
#include <numbers>

#include "rrg/error.hpp"
#include "rrg/sphere.hpp"

namespace rrg::sphere {
namespace {

ExactSphereValue make(mpq_class q, int power) {
    q.canonicalize();
    if (q == 0) power = 0;
    return {std::move(q), power};
}

}  // namespace

double nearest_double(const mpq_class& q) {
    const double d = q.get_d();
    double best = d;
    mpq_class best_err = abs(q - mpq_class(d));
    for (double c : {std::nextafter(d, -HUGE_VAL), std::nextafter(d, HUGE_VAL)}) {
        if (!std::isfinite(c)) continue;
        mpq_class err = abs(q - mpq_class(c));
        if (err < best_err) {
            best = c;
            best_err = err;
        }
    }
    return best;
}

double ExactSphereValue::to_double() const {
    return nearest_double(rational) * std::pow(std::sqrt(std::numbers::pi), pi_half_power);
}

bool operator==(const ExactSphereValue& a, const ExactSphereValue& b) {
    return a.rational == b.rational && a.pi_half_power == b.pi_half_power;
}

ExactSphereValue operator*(const ExactSphereValue& a, const ExactSphereValue& b) {
    return make(a.rational * b.rational, a.pi_half_power + b.pi_half_power);
}

ExactSphereValue operator/(const ExactSphereValue& a, const ExactSphereValue& b) {
    if (b.is_zero()) throw InvalidArgument("division by an exact zero");
    return make(a.rational / b.rational, a.pi_half_power - b.pi_half_power);
}

ExactSphereValue gamma_half(unsigned m) {
    if (m == 0) throw InvalidArgument("Γ(0) is undefined");
    if (m % 2 == 0) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), m / 2 - 1);
        return make(mpq_class(f), 0);
    }
    // Γ(m/2) = (m−2)!! / 2^((m−1)/2) · √π
    mpz_class num = 1;
    for (unsigned k = m; k > 2; k -= 2) num *= k - 2;
    mpz_class den = 1;
    den <<= (m - 1) / 2;
    return make(mpq_class(num, den), 1);
}

}  // namespace rrg::sphere
