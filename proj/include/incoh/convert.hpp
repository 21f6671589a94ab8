#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "incoh/bloch.hpp"
#include "incoh/channel.hpp"

namespace incoh {

/// The three regimes share one achievable region for single-qubit state
/// conversion; the parameter is kept so the API survives refinements.
enum class Regime { SIO, IO, MIO };

struct BoundaryPoint {
    double theta;
    double s_perp;
    double s_z;
};

/// Exact feasibility of converting the state with Bloch vector r into the
/// one with Bloch vector s. Division-free form of the region inequalities:
///   s_perp^2 <= r_perp^2
///   s_z^2 * r_perp^2 <= r_perp^2 - (1 - r_z^2) * s_perp^2
/// so r_perp = 0 degenerates to s_perp = 0 with any |s_z| <= 1. Closed
/// region: inequalities carry a 1e-12 absolute slack.
bool feasible(const BlochVector& r, const BlochVector& s, Regime regime);

/// Names the first violated inequality, or empty when feasible.
std::string feasibility_report(const BlochVector& r, const BlochVector& s);

/// Boundary of the achievable region in the positive half-plane,
/// (r_perp sin(theta), sqrt(cos^2(theta) + r_z^2 sin^2(theta))).
BoundaryPoint boundary_point(const BlochVector& r, double theta);

/// Two-operator strictly incoherent channel attaining boundary_point when
/// applied to the state with Bloch vector (r_perp, 0, r_z).
Channel boundary_channel(const BlochVector& r, double theta);

/// Strictly incoherent channel with at most 4 Kraus operators mapping r to s.
/// Throws when the pair is infeasible, naming the violated inequality.
Channel construct_channel(const BlochVector& r, const BlochVector& s);

/// n boundary samples at theta uniform in [0, pi/2].
std::vector<BoundaryPoint> region_table(const BlochVector& r, std::size_t n);

/// CSV with header theta,s_perp,s_z_max, 15 significant digits.
void write_region_csv(std::ostream& out, const std::vector<BoundaryPoint>& table);

}  // namespace incoh
