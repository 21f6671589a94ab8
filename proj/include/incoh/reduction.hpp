#pragma once

#include <vector>

#include "incoh/channel.hpp"

namespace incoh {

/// Per-column nonzero-row pattern of an incoherent operator; -1 marks an
/// all-zero column. Strictly incoherent operators additionally never repeat
/// a row index across columns.
struct Shape {
    std::vector<int> row_of_col;

    bool operator==(const Shape& other) const { return row_of_col == other.row_of_col; }
    /// First column carrying a nonzero entry, or -1 for the zero operator.
    int leading_col() const;
};

/// Unitary acting on the Kraus index; two Kraus lists related by one realize
/// the same channel. Validated to U U^dag = I within tol at construction.
class MixingUnitary {
public:
    explicit MixingUnitary(ComplexMatrix u, double tol = 1e-10);
    const ComplexMatrix& matrix() const { return u_; }
    std::size_t size() const { return u_.rows(); }

private:
    ComplexMatrix u_;
};

enum class ReductionMode { IO, SIO };

/// L_i = sum_j U_{i,j} K_j; the Kraus list is padded with zero operators up
/// to the unitary's size. Exactly-vanishing outputs are dropped.
Channel mix_kraus(const Channel& c, const MixingUnitary& u);

Shape operator_shape(const ComplexMatrix& k, double tol = 1e-9);

/// Shape-grouped elimination. Operators are processed by leading column
/// k = 1..d; whenever two operators in the same leading-column class have
/// compatible shapes (their union is still incoherent, or strictly
/// incoherent in SIO mode), a 2x2 Kraus-index rotation zeroes column k of
/// one of them, pushing it to a later class or to zero. The surviving
/// per-class counts C_k then satisfy C_k <= d^(d-k+1) (IO) respectively
/// C_k <= d!/(k-1)! (SIO). For qubits in IO mode a six-operator residue is
/// compressed to five by the canonical 3x3 mixing step.
Channel reduce_by_shape(const Channel& c, ReductionMode mode, double tol = 1e-9);

/// Canonical qubit IO form: at most 5 operators matching, in order,
///   [[a1,b1],[0,0]], [[0,0],[a2,b2]], [[a3,0],[0,b3]], [[0,b4],[a4,0]],
///   [[a5,0],[0,0]],
/// with the a_i real non-negative, sum a_i^2 = sum |b_j|^2 = 1 and
/// a1 b1 + a2 b2 = 0. Zero operators are removed.
Channel reduce_qubit_io(const Channel& c, double tol = 1e-9);

/// Canonical qubit SIO form: at most 4 operators matching, in order,
///   [[a1,0],[0,b1]], [[0,b2],[a2,0]], [[a3,0],[0,0]], [[0,b3],[0,0]],
/// with the a_i real non-negative.
Channel reduce_qubit_sio(const Channel& c, double tol = 1e-9);

}  // namespace incoh
