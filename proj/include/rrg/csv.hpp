#pragma once

#include <ostream>
#include <string>

namespace rrg {

/// Shortest round-trip-safe decimal: 17 significant digits, '.' decimal point.
std::string format_real(double x);

/// Writes values separated by ',' and terminated by '\n'.
template <typename... Ts>
void csv_row(std::ostream& out, const Ts&... values);

namespace detail {
inline void csv_put(std::ostream& out, double v) { out << format_real(v); }
inline void csv_put(std::ostream& out, const std::string& v) { out << v; }
inline void csv_put(std::ostream& out, const char* v) { out << v; }
template <typename T>
void csv_put(std::ostream& out, const T& v) { out << v; }
}  // namespace detail

template <typename... Ts>
void csv_row(std::ostream& out, const Ts&... values) {
    bool first = true;
    ((out << (first ? "" : ","), detail::csv_put(out, values), first = false), ...);
    out << '\n';
}

}  // namespace rrg
