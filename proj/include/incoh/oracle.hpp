#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "incoh/bloch.hpp"
#include "incoh/channel.hpp"

namespace incoh::oracle {

/// Deterministic sampling configuration. Channel i is drawn from its own
/// substream keyed by (seed, i), so results are order-stable under any
/// parallel split and identical configs give bitwise-identical output.
struct SamplerConfig {
    std::uint64_t seed = 0;
    std::size_t count = 1;
    std::optional<double> t_z;
};

/// Random single-qubit strictly incoherent channels
///   { diag(a1,b1), [[0,b2],[a2,0]], [[a3,0],[0,0]], [[0,b3],[0,0]] }
/// with a drawn uniformly from the real unit sphere (normalized Gaussians)
/// and b from the complex unit sphere (normalized Gaussian magnitudes,
/// uniform phases). Trace preservation holds by construction.
std::vector<Channel> sample_sio_qubit(const SamplerConfig& cfg);

/// Random strictly incoherent channels preserving tau(t_z): a2^2 uniform in
/// [0, a2_range(t_z)], |b1|^2 fixed by the fixed-point constraint, remaining
/// parameters uniform on the residual spheres. Requires cfg.t_z.
std::vector<Channel> sample_gibbs_sio_qubit(const SamplerConfig& cfg);

/// One-sided Monte-Carlo check that some strictly incoherent channel maps r
/// within tol (Bloch Euclidean distance) of s: cfg.count random parameter
/// draws followed by Nelder-Mead refinement of the best one. A true verdict
/// is conclusive; false is evidence only.
bool brute_force_feasible(const BlochVector& r, const BlochVector& s, const SamplerConfig& cfg,
                          double tol);

/// Bloch vectors of sampled-channel outputs on the state with vector r.
std::vector<BlochVector> region_cloud(const BlochVector& r, const SamplerConfig& cfg);

}  // namespace incoh::oracle
