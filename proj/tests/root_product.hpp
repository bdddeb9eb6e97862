#pragma once

#include <boost/multiprecision/cpp_complex.hpp>

#include <vector>

#include "billiard/poly.hpp"

namespace oracle {

using hp_complex = boost::multiprecision::cpp_complex_50;

// Durand-Kerner in 50 digits on c[0] + c[1] z + ... + c[n] z^n (rational coefficients).
inline std::vector<hp_complex> roots(const std::vector<hp_complex>& c) {
    int n = static_cast<int>(c.size()) - 1;
    std::vector<hp_complex> z(n);
    hp_complex seed(0.4, 0.9), p(1);
    for (int i = 0; i < n; ++i, p *= seed) z[i] = p;
    for (int it = 0; it < 5000; ++it) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            hp_complex v = 0, d = 1;
            for (int k = n; k >= 0; --k) v = v * z[i] + c[k];
            for (int j = 0; j < n; ++j)
                if (j != i) d *= z[i] - z[j];
            hp_complex step = v / c[n] / d;
            z[i] -= step;
            moved = std::max(moved, abs(step).convert_to<double>());
        }
        if (moved < 1e-40) break;
    }
    return z;
}

// Res(a, b) = lc(a)^deg b * prod b(alpha) over the roots alpha of a.
inline double resultant(const billiard::exact::UPoly& a, const billiard::exact::UPoly& b) {
    auto lift = [](const billiard::exact::UPoly& p) {
        std::vector<hp_complex> c;
        for (auto& s : p) c.emplace_back(s.to_double());
        return c;
    };
    auto ca = lift(a), cb = lift(b);
    int n = static_cast<int>(cb.size()) - 1;
    hp_complex prod = pow(ca.back(), n);
    for (auto& r : roots(ca)) {
        hp_complex v = 0;
        for (int k = n; k >= 0; --k) v = v * r + cb[k];
        prod *= v;
    }
    return real(prod).convert_to<double>();
}

}  // namespace oracle
