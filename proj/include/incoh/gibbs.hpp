#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "incoh/bloch.hpp"
#include "incoh/channel.hpp"

namespace incoh {

/// Inverse temperature and level splitting realizing a given excited-state
/// population p = 1/(1 + exp(-beta * gap)).
struct HamiltonianParams {
    double beta;
    double gap;  // E_1 - E_0

    double population() const;
};

/// Interpret the incoherent state diag(p, 1-p) as a thermal state of a
/// two-level Hamiltonian at inverse temperature beta. Throws for p in {0, 1}
/// (infinite-gap limit) and p = 1/2 (infinite-temperature limit).
HamiltonianParams gibbs_params(double p, double beta);

/// Upper bound on a2^2 for channels preserving the state with Bloch z
/// component t_z: min(1, (1 - t_z)/(1 + t_z)).
double a2_range(double t_z);

/// Closed interval of z components reachable from r under strictly
/// incoherent channels preserving tau(t_z).
std::pair<double, double> sz_range(const BlochVector& r, double t_z);

/// Maximal transverse radius at height s_z; always <= r_perp.
double s_perp_max(const BlochVector& r, double t_z, double s_z);

bool gibbs_feasible(const BlochVector& r, double t_z, const BlochVector& s);

/// Strictly incoherent channel preserving tau(t_z) that maps r to the
/// boundary point (s_perp_max(r, t_z, s_z), 0, s_z).
Channel gibbs_boundary_channel(const BlochVector& r, double t_z, double s_z);

/// Achievable set for fixed r and t_z: s_z interval plus transverse bound.
struct GibbsRegion {
    double s_z_lo;
    double s_z_hi;
    BlochVector r;
    double t_z;

    double s_perp_max_at(double s_z) const { return s_perp_max(r, t_z, s_z); }
};

GibbsRegion gibbs_region(const BlochVector& r, double t_z);

struct GibbsRegionRow {
    double s_z;
    double s_perp_max;
};

/// n uniform s_z samples across sz_range with the transverse bound.
std::vector<GibbsRegionRow> gibbs_region_table(const BlochVector& r, double t_z, std::size_t n);

/// CSV with header s_z,s_perp_max, 15 significant digits.
void write_gibbs_region_csv(std::ostream& out, const std::vector<GibbsRegionRow>& table);

}  // namespace incoh
