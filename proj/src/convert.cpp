#include "incoh/convert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "incoh/reduction.hpp"

namespace incoh {

namespace {

constexpr double kRegionSlack = 1e-12;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

/// Kraus pair of the boundary channel for mixing angles (theta, phi):
///   K1 = diag(cos((theta-phi)/2), sin((theta+phi)/2)),
///   K2 = [[0, cos((theta+phi)/2)], [sin((theta-phi)/2), 0]].
std::vector<ComplexMatrix> boundary_kraus(double theta, double phi) {
    const double a1 = std::cos(0.5 * (theta - phi));
    const double a2 = std::sin(0.5 * (theta - phi));
    const double b1 = std::sin(0.5 * (theta + phi));
    const double b2 = std::cos(0.5 * (theta + phi));
    ComplexMatrix k1(2, 2), k2(2, 2);
    k1.set(0, 0, Complex(a1, 0.0));
    k1.set(1, 1, Complex(b1, 0.0));
    k2.set(0, 1, Complex(b2, 0.0));
    k2.set(1, 0, Complex(a2, 0.0));
    std::vector<ComplexMatrix> ops;
    if (frob_norm(k1) > 1e-14) ops.push_back(std::move(k1));
    if (frob_norm(k2) > 1e-14) ops.push_back(std::move(k2));
    return ops;
}

ComplexMatrix z_phase_unitary(double gamma) {
    ComplexMatrix u(2, 2);
    u.set(0, 0, Complex(1.0, 0.0));
    u.set(1, 1, std::polar(1.0, gamma));
    return u;
}

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-12))
        throw std::invalid_argument("theta must lie in [0, pi/2]");
}

}  // namespace

bool feasible(const BlochVector& r, const BlochVector& s, Regime) {
    const double r_perp2 = r.x * r.x + r.y * r.y;
    const double s_perp2 = s.x * s.x + s.y * s.y;
    if (s_perp2 > r_perp2 + kRegionSlack) return false;
    const double lhs = s.z * s.z * r_perp2;
    const double rhs = r_perp2 - (1.0 - r.z * r.z) * s_perp2;
    return lhs <= rhs + kRegionSlack;
}

std::string feasibility_report(const BlochVector& r, const BlochVector& s) {
    const double r_perp2 = r.x * r.x + r.y * r.y;
    const double s_perp2 = s.x * s.x + s.y * s.y;
    std::ostringstream msg;
    if (s_perp2 > r_perp2 + kRegionSlack) {
        msg << "transverse inequality violated: s_perp^2 = " << s_perp2 << " > r_perp^2 = "
            << r_perp2;
        return msg.str();
    }
    const double lhs = s.z * s.z * r_perp2;
    const double rhs = r_perp2 - (1.0 - r.z * r.z) * s_perp2;
    if (lhs > rhs + kRegionSlack) {
        msg << "height inequality violated: s_z^2 * r_perp^2 = " << lhs
            << " > r_perp^2 - (1 - r_z^2) * s_perp^2 = " << rhs;
        return msg.str();
    }
    return {};
}

BoundaryPoint boundary_point(const BlochVector& r, double theta) {
    check_theta(theta);
    const double st = std::sin(theta), ct = std::cos(theta);
    const double s_z = std::sqrt(ct * ct + r.z * r.z * st * st);
    return BoundaryPoint{theta, r.perp() * st, s_z};
}

Channel boundary_channel(const BlochVector& r, double theta) {
    check_theta(theta);
    if (theta > 1e-14 && r.perp() <= 1e-14)
        throw std::invalid_argument(
            "boundary_channel: transverse target unreachable from an incoherent state");
    // phi = arctan(r_z tan(theta)), written as atan2 so theta -> pi/2 is the
    // continuous limit phi -> sign(r_z) pi/2.
    const double phi = std::atan2(r.z * std::sin(theta), std::cos(theta));
    return Channel(2, boundary_kraus(theta, phi));
}

Channel construct_channel(const BlochVector& r, const BlochVector& s) {
    const std::string violation = feasibility_report(r, s);
    if (!violation.empty()) throw std::invalid_argument("construct_channel: " + violation);

    const double r_perp = r.perp();
    const double s_perp = s.perp();

    // Align r with the positive x-z plane; rotate back to the target azimuth
    // at the end. Both rotations are strictly incoherent unitaries.
    const double alpha = std::atan2(r.y, r.x);
    const double beta = std::atan2(s.y, s.x);
    const ComplexMatrix u_in = z_phase_unitary(-alpha);
    const ComplexMatrix u_out = z_phase_unitary(beta);

    const double theta = r_perp > 1e-14 ? std::asin(clamp01(s_perp / r_perp)) : 0.0;
    const double phi = std::atan2(r.z * std::sin(theta), std::cos(theta));
    const double st = std::sin(theta), ct = std::cos(theta);
    const double s_z_max = std::sqrt(ct * ct + r.z * r.z * st * st);

    // (1-p) rho + p X rho X fixes the transverse part reached on the
    // boundary and scales s_z by (1 - 2p).
    const double p = s_z_max > 1e-14 ? 0.5 * (1.0 - std::clamp(s.z / s_z_max, -1.0, 1.0)) : 0.0;

    ComplexMatrix x(2, 2);
    x.set(0, 1, Complex(1.0, 0.0));
    x.set(1, 0, Complex(1.0, 0.0));
    std::vector<std::pair<double, ComplexMatrix>> mix;
    if (1.0 - p > 1e-16) mix.emplace_back(std::sqrt(1.0 - p), ComplexMatrix::identity(2));
    if (p > 1e-16) mix.emplace_back(std::sqrt(p), x);

    std::vector<ComplexMatrix> ops;
    for (const auto& [w, m] : mix)
        for (const auto& b : boundary_kraus(theta, phi))
            ops.push_back(u_out * (Complex(w, 0.0) * m) * b * u_in);

    return reduce_qubit_sio(Channel(2, std::move(ops)), 1e-9);
}

std::vector<BoundaryPoint> region_table(const BlochVector& r, std::size_t n) {
    if (n < 2) throw std::invalid_argument("region_table: need at least 2 samples");
    std::vector<BoundaryPoint> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = (std::numbers::pi / 2) * static_cast<double>(i) /
                             static_cast<double>(n - 1);
        rows.push_back(boundary_point(r, theta));
    }
    return rows;
}

void write_region_csv(std::ostream& out, const std::vector<BoundaryPoint>& table) {
    out << "theta,s_perp,s_z_max\n";
    char buf[128];
    for (const auto& row : table) {
        std::snprintf(buf, sizeof(buf), "%.15g,%.15g,%.15g\n", row.theta, row.s_perp, row.s_z);
        out << buf;
    }
}

}  // namespace incoh
