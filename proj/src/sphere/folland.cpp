#include <string>

#include "rrg/error.hpp"
#include "rrg/sphere.hpp"

namespace rrg::sphere {

ExactSphereValue folland_integral(std::span<const unsigned> a) {
    if (a.empty()) throw InvalidArgument("folland_integral needs at least one dimension");
    for (unsigned e : a) {
        if (e % 2 != 0) return {mpq_class(0), 0};
    }
    // b_j = (a_j+1)/2, so Γ(b_j) = gamma_half(a_j+1) and Σb_j = (Σ(a_j+1))/2.
    ExactSphereValue num{mpq_class(2), 0};
    unsigned total = 0;
    for (unsigned e : a) {
        num = num * gamma_half(e + 1);
        total += e + 1;
    }
    return num / gamma_half(total);
}

mpq_class sphere_average(std::span<const unsigned> a) {
    const std::vector<unsigned> zero(a.size(), 0);
    const ExactSphereValue r = folland_integral(a) / folland_integral(zero);
    if (r.pi_half_power != 0) throw NumericError("sphere average retained a power of π");
    return r.rational;
}

mpq_class gamma_half_ratio(std::size_t n, unsigned shift) {
    if (n < 2) throw InvalidArgument("gamma_half_ratio needs n >= 2");
    if (shift != 2 && shift != 4) {
        throw InvalidArgument("gamma_half_ratio supports shifts 2 and 4, got " + std::to_string(shift));
    }
    const auto m = static_cast<unsigned>(n - 1);
    const ExactSphereValue r = gamma_half(m) / gamma_half(m + 2 * shift);
    return r.rational;
}

}  // namespace rrg::sphere
