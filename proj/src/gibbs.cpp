#include "incoh/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace incoh {

namespace {

// Dedicated branches for t_z = +/-1; anything below stays on the generic
// formulas (continuity across the seam is tested).
constexpr double kEdge = 1e-15;
constexpr double kDegenerate = 1e-12;  // |t_z - r_z| below this: 1-D maximization

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void check_t_z(double t_z) {
    if (!(std::abs(t_z) <= 1.0 + 1e-12)) throw std::invalid_argument("t_z must lie in [-1, 1]");
}

template <typename F>
double golden_argmax(F f, double lo, double hi, double tol) {
    constexpr double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    const double mid = 0.5 * (a + b);
    double best = mid, fbest = f(mid);
    for (const double x : {lo, hi}) {
        const double fx = f(x);
        if (fx > fbest) { best = x; fbest = fx; }
    }
    return best;
}

struct SioParams {
    double a2_sq;
    double b1_sq;
};

/// a2^2 and |b1|^2 realizing a given boundary height s_z, per case.
SioParams boundary_params(const BlochVector& r, double t_z, double s_z) {
    if (t_z >= 1.0 - kEdge) {
        const double denom = 1.0 - r.z;
        return {0.0, denom > kEdge ? clamp01((1.0 - s_z) / denom) : 0.0};
    }
    if (t_z <= -1.0 + kEdge) {
        const double denom = 1.0 + r.z;
        return {denom > kEdge ? clamp01((r.z - s_z) / denom) : 0.0, 1.0};
    }
    if (std::abs(t_z - r.z) <= kDegenerate) {
        // The closed-form parameters are 0/0 here; s_z is pinned to r_z and
        // the transverse maximum is found by a 1-D search over a2 under the
        // fixed-point constraint.
        const double ratio = (1.0 + t_z) / (1.0 - t_z);
        auto f = [&](double a2) {
            const double a2sq = a2 * a2;
            const double b1sq = clamp01(1.0 - a2sq * ratio);
            return std::sqrt(b1sq) * std::sqrt(1.0 - a2sq) +
                   a2 * std::sqrt(1.0 - b1sq);
        };
        const double a2 = golden_argmax(f, 0.0, std::sqrt(a2_range(t_z)), 1e-12);
        return {a2 * a2, clamp01(1.0 - a2 * a2 * ratio)};
    }
    const double denom = 2.0 * (t_z - r.z);
    return {clamp01((s_z - r.z) * (1.0 - t_z) / denom),
            clamp01(1.0 - (1.0 + t_z) * (s_z - r.z) / denom)};
}

double transverse_from_params(const SioParams& p) {
    return std::sqrt(p.b1_sq) * std::sqrt(1.0 - p.a2_sq) +
           std::sqrt(p.a2_sq) * std::sqrt(1.0 - p.b1_sq);
}

}  // namespace

double HamiltonianParams::population() const {
    return 1.0 / (1.0 + std::exp(-beta * gap));
}

HamiltonianParams gibbs_params(double p, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("gibbs_params: beta must be positive");
    if (p <= 0.0 || p >= 1.0)
        throw std::domain_error("gibbs_params: infinite-gap limit (p must lie strictly in (0,1))");
    if (p == 0.5)
        throw std::domain_error("gibbs_params: infinite-temperature limit (p = 1/2 means beta -> 0)");
    return HamiltonianParams{beta, std::log(p / (1.0 - p)) / beta};
}

double a2_range(double t_z) {
    check_t_z(t_z);
    if (t_z <= 0.0) return 1.0;
    return (1.0 - t_z) / (1.0 + t_z);
}

std::pair<double, double> sz_range(const BlochVector& r, double t_z) {
    check_t_z(t_z);
    if (t_z >= 1.0 - kEdge) return {r.z, 1.0};
    if (t_z <= -1.0 + kEdge) return {-1.0, r.z};
    const double endpoint = r.z + 2.0 * ((t_z - r.z) / (1.0 - t_z)) * a2_range(t_z);
    return {std::min(r.z, endpoint), std::max(r.z, endpoint)};
}

double s_perp_max(const BlochVector& r, double t_z, double s_z) {
    const auto [lo, hi] = sz_range(r, t_z);
    if (s_z < lo - 1e-9 || s_z > hi + 1e-9)
        throw std::invalid_argument("s_perp_max: s_z outside the achievable range");
    const double s_z_cl = std::clamp(s_z, lo, hi);
    const double value = r.perp() * transverse_from_params(boundary_params(r, t_z, s_z_cl));
    return std::min(value, r.perp());
}

bool gibbs_feasible(const BlochVector& r, double t_z, const BlochVector& s) {
    const auto [lo, hi] = sz_range(r, t_z);
    if (s.z < lo - 1e-12 || s.z > hi + 1e-12) return false;
    return s.perp() <= s_perp_max(r, t_z, std::clamp(s.z, lo, hi)) + 1e-12;
}

Channel gibbs_boundary_channel(const BlochVector& r, double t_z, double s_z) {
    const auto [lo, hi] = sz_range(r, t_z);
    if (s_z < lo - 1e-9 || s_z > hi + 1e-9)
        throw std::invalid_argument("gibbs_boundary_channel: s_z outside the achievable range");
    const SioParams p = boundary_params(r, t_z, std::clamp(s_z, lo, hi));

    const double a2 = std::sqrt(p.a2_sq);
    const double b1 = std::sqrt(p.b1_sq);
    const double a1 = std::sqrt(1.0 - p.a2_sq);
    const double b2 = std::sqrt(1.0 - p.b1_sq);

    ComplexMatrix k1(2, 2), k2(2, 2);
    k1.set(0, 0, Complex(a1, 0.0));
    k1.set(1, 1, Complex(b1, 0.0));
    k2.set(0, 1, Complex(b2, 0.0));
    k2.set(1, 0, Complex(a2, 0.0));
    std::vector<ComplexMatrix> ops;
    if (frob_norm(k1) > 1e-14) ops.push_back(std::move(k1));
    if (frob_norm(k2) > 1e-14) ops.push_back(std::move(k2));
    return Channel(2, std::move(ops));
}

GibbsRegion gibbs_region(const BlochVector& r, double t_z) {
    const auto [lo, hi] = sz_range(r, t_z);
    return GibbsRegion{lo, hi, r, t_z};
}

std::vector<GibbsRegionRow> gibbs_region_table(const BlochVector& r, double t_z, std::size_t n) {
    if (n < 2) throw std::invalid_argument("gibbs_region_table: need at least 2 samples");
    const auto [lo, hi] = sz_range(r, t_z);
    std::vector<GibbsRegionRow> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s_z = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        rows.push_back({s_z, s_perp_max(r, t_z, s_z)});
    }
    return rows;
}

void write_gibbs_region_csv(std::ostream& out, const std::vector<GibbsRegionRow>& table) {
    out << "s_z,s_perp_max\n";
    char buf[96];
    for (const auto& row : table) {
        std::snprintf(buf, sizeof(buf), "%.15g,%.15g\n", row.s_z, row.s_perp_max);
        out << buf;
    }
}

}  // namespace incoh
