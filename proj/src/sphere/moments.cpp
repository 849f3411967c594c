#include "rrg/error.hpp"
#include "rrg/sphere.hpp"

namespace rrg::sphere {
namespace {

mpz_class big(std::size_t n) { return mpz_class(static_cast<unsigned long>(n)); }

mpq_class frac(const mpz_class& num, const mpz_class& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

void require_order(std::size_t n) {
    if (n < 2) throw InvalidArgument("IPR moments need n >= 2");
}

}  // namespace

mpq_class mu1_exact(std::size_t n) {
    require_order(n);
    return 3 - frac(6, big(n) + 1);
}

mpq_class ipr2_sphere_average_exact(std::size_t n) {
    require_order(n);
    const mpz_class x = big(n);
    return 9 + frac(48, x + 1) - frac(270, x + 3) + frac(210, x + 5);
}

mpq_class mu2_exact(std::size_t n) {
    require_order(n);
    const mpz_class x = big(n);
    return frac(24 * x * (x - 2) * (x - 3), (x + 5) * (x + 3) * (x + 1) * (x + 1));
}

}  // namespace rrg::sphere
