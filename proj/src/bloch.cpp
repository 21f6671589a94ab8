#include "incoh/bloch.hpp"

#include <stdexcept>

namespace incoh {

ComplexMatrix density_from_bloch(const BlochVector& v) {
    ComplexMatrix rho(2, 2);
    rho.set(0, 0, Complex(0.5 * (1.0 + v.z), 0.0));
    rho.set(1, 1, Complex(0.5 * (1.0 - v.z), 0.0));
    rho.set(0, 1, Complex(0.5 * v.x, -0.5 * v.y));
    rho.set(1, 0, Complex(0.5 * v.x, 0.5 * v.y));
    return rho;
}

BlochVector bloch_from_density(const ComplexMatrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2)
        throw std::invalid_argument("bloch_from_density: expected a 2x2 matrix");
    BlochVector v;
    v.x = 2.0 * rho.at(0, 1).real();
    v.y = -2.0 * rho.at(0, 1).imag();
    v.z = rho.at(0, 0).real() - rho.at(1, 1).real();
    return v;
}

}  // namespace incoh
