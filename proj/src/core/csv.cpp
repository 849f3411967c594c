#include "rrg/csv.hpp"

#include <cmath>
#include <cstdio>

namespace rrg {

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    // %.17g is locale-independent for the decimal point only under the C locale,
    // which is what the process uses unless a caller changes it.
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace rrg
