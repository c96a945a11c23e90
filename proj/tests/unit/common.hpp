#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "fanocav/model.hpp"

namespace testutil {

inline fanocav::PhysicalParams preset_at(double g_over_om) {
    auto p = fanocav::paper_preset();
    p.tunneling = g_over_om * p.omega_m();
    return p;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

inline double rel(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace testutil
