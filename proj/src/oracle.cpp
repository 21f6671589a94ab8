#include "incoh/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "incoh/gibbs.hpp"

namespace incoh::oracle {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// mt19937_64 with hand-rolled variate mappings; the standard library's
/// distributions are not bit-portable, these are.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }  // [0, 1)
    double uniform_pos() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    double gaussian() {
        if (cached_) {
            cached_ = false;
            return cache_;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        cache_ = radius * std::sin(angle);
        cached_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    bool cached_ = false;
    double cache_ = 0.0;
};

Channel sio_channel_from_params(const std::array<double, 3>& a, const std::array<Complex, 3>& b) {
    ComplexMatrix k1(2, 2), k2(2, 2), k3(2, 2), k4(2, 2);
    k1.set(0, 0, Complex(a[0], 0.0));
    k1.set(1, 1, b[0]);
    k2.set(0, 1, b[1]);
    k2.set(1, 0, Complex(a[1], 0.0));
    k3.set(0, 0, Complex(a[2], 0.0));
    k4.set(0, 1, b[2]);
    return Channel(2, {std::move(k1), std::move(k2), std::move(k3), std::move(k4)});
}

std::array<double, 3> unit_real_3(RandomStream& rng) {
    for (;;) {
        std::array<double, 3> v{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (n > 1e-6) {
            for (auto& x : v) x /= n;
            return v;
        }
    }
}

BlochVector apply_to_bloch(const Channel& c, const BlochVector& r) {
    return bloch_from_density(apply(c, density_from_bloch(r)));
}

// ---------------------------------------------------------------------------
// Nelder-Mead over the six real parameters (a_raw, b_raw) of the canonical
// strictly incoherent qubit family; each is normalized to its unit sphere
// inside the objective. Real parameters suffice once r and s have been
// rotated into the positive x-z plane.
// ---------------------------------------------------------------------------

using Params = std::array<double, 6>;

Channel channel_from_raw(const Params& v) {
    std::array<double, 3> a{v[0], v[1], v[2]};
    std::array<double, 3> braw{v[3], v[4], v[5]};
    const double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    const double nb = std::sqrt(braw[0] * braw[0] + braw[1] * braw[1] + braw[2] * braw[2]);
    for (auto& x : a) x /= na;
    std::array<Complex, 3> b;
    for (std::size_t i = 0; i < 3; ++i) b[i] = Complex(braw[i] / nb, 0.0);
    return sio_channel_from_params(a, b);
}

double raw_norm_floor(const Params& v) {
    const double na = std::hypot(v[0], v[1], v[2]);
    const double nb = std::hypot(v[3], v[4], v[5]);
    return std::min(na, nb);
}

template <typename F>
Params nelder_mead(F objective, Params start, int iterations) {
    constexpr int n = 6;
    std::array<Params, n + 1> simplex;
    std::array<double, n + 1> value;
    simplex[0] = start;
    for (int i = 0; i < n; ++i) {
        simplex[i + 1] = start;
        simplex[i + 1][i] += 0.15;
    }
    for (int i = 0; i <= n; ++i) value[i] = objective(simplex[i]);

    auto centroid_excluding = [&](int worst) {
        Params c{};
        for (int i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (int k = 0; k < n; ++k) c[k] += simplex[i][k];
        }
        for (int k = 0; k < n; ++k) c[k] /= n;
        return c;
    };
    auto blend = [](const Params& base, const Params& dir, double t) {
        Params out;
        for (int k = 0; k < n; ++k) out[k] = base[k] + t * (dir[k] - base[k]);
        return out;
    };

    for (int it = 0; it < iterations; ++it) {
        std::array<int, n + 1> order;
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int l, int r) { return value[l] < value[r]; });
        const int best = order[0], worst = order[n], second_worst = order[n - 1];

        const Params c = centroid_excluding(worst);
        const Params reflected = blend(c, simplex[worst], -1.0);
        const double f_reflected = objective(reflected);

        if (f_reflected < value[best]) {
            const Params expanded = blend(c, simplex[worst], -2.0);
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                simplex[worst] = expanded;
                value[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                value[worst] = f_reflected;
            }
        } else if (f_reflected < value[second_worst]) {
            simplex[worst] = reflected;
            value[worst] = f_reflected;
        } else {
            const Params contracted = blend(c, simplex[worst], 0.5);
            const double f_contracted = objective(contracted);
            if (f_contracted < value[worst]) {
                simplex[worst] = contracted;
                value[worst] = f_contracted;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    simplex[i] = blend(simplex[best], simplex[i], 0.5);
                    value[i] = objective(simplex[i]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (value[i] < value[best]) best = i;
    return simplex[best];
}

}  // namespace

std::vector<Channel> sample_sio_qubit(const SamplerConfig& cfg) {
    std::vector<Channel> out;
    out.reserve(cfg.count);
    for (std::size_t i = 0; i < cfg.count; ++i) {
        RandomStream rng(substream_seed(cfg.seed, i));
        const std::array<double, 3> a = unit_real_3(rng);
        const std::array<double, 3> mags = unit_real_3(rng);
        std::array<Complex, 3> b;
        for (std::size_t k = 0; k < 3; ++k)
            b[k] = std::polar(std::abs(mags[k]), 2.0 * std::numbers::pi * rng.uniform());
        out.push_back(sio_channel_from_params(a, b));
    }
    return out;
}

std::vector<Channel> sample_gibbs_sio_qubit(const SamplerConfig& cfg) {
    if (!cfg.t_z) throw std::invalid_argument("sample_gibbs_sio_qubit: cfg.t_z is required");
    const double t_z = *cfg.t_z;
    if (std::abs(t_z) > 1.0 + 1e-12)
        throw std::invalid_argument("sample_gibbs_sio_qubit: t_z must lie in [-1, 1]");

    std::vector<Channel> out;
    out.reserve(cfg.count);
    for (std::size_t i = 0; i < cfg.count; ++i) {
        RandomStream rng(substream_seed(cfg.seed, i));
        double a2_sq, b1_sq;
        if (1.0 - t_z <= 1e-15) {
            (void)rng.uniform();  // keep the stream layout uniform across t_z
            a2_sq = 0.0;
            b1_sq = rng.uniform();
        } else {
            a2_sq = rng.uniform() * a2_range(t_z);
            b1_sq = std::clamp(1.0 - a2_sq * (1.0 + t_z) / (1.0 - t_z), 0.0, 1.0);
        }
        // a1, a3 on the residual real sphere of radius sqrt(1 - a2^2)
        const double g1 = rng.gaussian(), g3 = rng.gaussian();
        const double ga = std::hypot(g1, g3);
        const double ra = std::sqrt(std::max(0.0, 1.0 - a2_sq));
        const std::array<double, 3> a{ga > 1e-12 ? ra * g1 / ga : ra, std::sqrt(a2_sq),
                                      ga > 1e-12 ? ra * g3 / ga : 0.0};
        // b1 has fixed magnitude and uniform phase; b2, b3 fill the residual
        // complex sphere.
        const Complex b1 = std::polar(std::sqrt(b1_sq), 2.0 * std::numbers::pi * rng.uniform());
        const double h2r = rng.gaussian(), h2i = rng.gaussian();
        const double h3r = rng.gaussian(), h3i = rng.gaussian();
        const double gb = std::sqrt(h2r * h2r + h2i * h2i + h3r * h3r + h3i * h3i);
        const double rb = std::sqrt(std::max(0.0, 1.0 - b1_sq));
        Complex b2(0.0, 0.0), b3(0.0, 0.0);
        if (gb > 1e-12) {
            b2 = Complex(rb * h2r / gb, rb * h2i / gb);
            b3 = Complex(rb * h3r / gb, rb * h3i / gb);
        } else {
            b2 = Complex(rb, 0.0);
        }
        out.push_back(sio_channel_from_params(a, {b1, b2, b3}));
    }
    return out;
}

bool brute_force_feasible(const BlochVector& r, const BlochVector& s, const SamplerConfig& cfg,
                          double tol) {
    // Rotations about z are free, so align both vectors with the positive
    // x-z plane; real channel parameters then suffice.
    const BlochVector r_aligned{r.perp(), 0.0, r.z};
    const BlochVector s_aligned{s.perp(), 0.0, s.z};

    auto objective = [&](const Params& v) -> double {
        if (raw_norm_floor(v) < 1e-9) return 1e9;
        const BlochVector out = apply_to_bloch(channel_from_raw(v), r_aligned);
        const double dx = out.x - s_aligned.x;
        const double dy = out.y - s_aligned.y;
        const double dz = out.z - s_aligned.z;
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    };

    Params best{1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
    double best_value = objective(best);
    for (std::size_t i = 0; i < cfg.count; ++i) {
        RandomStream rng(substream_seed(cfg.seed, i));
        Params v;
        for (auto& x : v) x = rng.gaussian();
        const double f = objective(v);
        if (f < best_value) {
            best_value = f;
            best = v;
        }
        if (best_value <= tol) return true;
    }

    const Params refined = nelder_mead(objective, best, 600);
    return objective(refined) <= tol;
}

std::vector<BlochVector> region_cloud(const BlochVector& r, const SamplerConfig& cfg) {
    std::vector<BlochVector> out;
    out.reserve(cfg.count);
    for (const auto& c : sample_sio_qubit(cfg)) out.push_back(apply_to_bloch(c, r));
    return out;
}

}  // namespace incoh::oracle
