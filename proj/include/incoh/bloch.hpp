#pragma once

#include <cmath>

#include "incoh/complex_matrix.hpp"

namespace incoh {

/// Bloch vector of a qubit state rho = (I + x sx + y sy + z sz) / 2.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double perp() const { return std::sqrt(x * x + y * y); }
    bool is_valid(double slack = 1e-12) const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) &&
               x * x + y * y + z * z <= 1.0 + slack;
    }
};

ComplexMatrix density_from_bloch(const BlochVector& v);
BlochVector bloch_from_density(const ComplexMatrix& rho);

}  // namespace incoh
