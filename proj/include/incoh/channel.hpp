#pragma once

#include <cstdint>
#include <vector>

#include "incoh/complex_matrix.hpp"

namespace incoh {

/// Operator classes in the fixed reference basis. An incoherent operator has
/// at most one nonzero entry per column (K|m> ~ |n>); a strictly incoherent
/// operator additionally has at most one nonzero entry per row, so its
/// adjoint is incoherent too.
enum class OperatorClass { StrictlyIncoherent, Incoherent, General };

enum class ChannelClass { SIO, IO, MIO, General };

/// A quantum channel given by an ordered list of d x d Kraus operators.
/// Trace preservation is a separate check, not a construction invariant:
/// the reduction algorithms pass through transiently unnormalized lists.
struct Channel {
    std::size_t dim;
    std::vector<ComplexMatrix> kraus;

    Channel(std::size_t d, std::vector<ComplexMatrix> ops);
};

/// Choi state of a channel, d^2 x d^2, trace normalized to 1.
struct ChoiMatrix {
    ComplexMatrix matrix;
    std::size_t dim;
};

bool is_trace_preserving(const Channel& c, double tol);

/// Classification threshold is relative: an entry counts as zero when
/// |entry| <= tol * max_abs_entry(k). Reductions leave ~1e-14 dust on
/// algebraically zero entries, and a relative threshold is scale-free.
OperatorClass classify_operator(const ComplexMatrix& k, double tol = 1e-9);

/// Strongest applicable label. SIO/IO are judged on the given Kraus list;
/// MIO tests the deterministic channel on the basis projectors |i><i|,
/// which suffices by linearity over the diagonal cone.
ChannelClass classify_channel(const Channel& c, double tol = 1e-9);

/// Choi state with composite index (a*d + b), channel acting on the first
/// tensor factor, trace 1.
ChoiMatrix choi(const Channel& c);

/// Rank of the Choi state: the minimal number of (arbitrary) Kraus operators.
int kraus_rank(const Channel& c, double tol = 1e-10);

/// Channels are equal iff their Choi states coincide (Kraus lists related by
/// an isometry give the same Choi state).
bool channels_equal(const Channel& a, const Channel& b, double tol);

ComplexMatrix apply(const Channel& c, const ComplexMatrix& rho);

/// The d^2-operator channel K_{i,j} = d^{-1/2} |mod(j+i,d)><j|. Strictly
/// incoherent, trace preserving, and of full Choi rank d^2, witnessing that
/// d^2 Kraus operators can be necessary.
Channel permutation_lower_bound_channel(std::size_t d);

/// Upper bound on the incoherent Kraus rank: 5 for qubits, otherwise
/// min(d^4 + 1, d(d^d - 1)/(d - 1)).
std::uint64_t io_kraus_bound(std::size_t d);

/// Upper bound on the strictly incoherent Kraus rank:
/// min(d^4 + 1, sum_{k=1..d} d!/(k-1)!).
std::uint64_t sio_kraus_bound(std::size_t d);

}  // namespace incoh
