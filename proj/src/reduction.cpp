#include "incoh/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

namespace incoh {

namespace {

// Operators below this Frobenius norm are exact zeros left over from an
// elimination step and are dropped.
constexpr double kZeroFloor = 1e-12;

struct Pos {
    std::size_t r, c;
};

double abs2(Complex z) { return std::norm(z); }

/// Zero out entries below the relative classification threshold so that
/// structural zeros stay exact through subsequent linear combinations.
ComplexMatrix sanitized(const ComplexMatrix& op, double tol) {
    const double threshold = tol * max_abs_entry(op);
    ComplexMatrix out = op;
    for (std::size_t r = 0; r < op.rows(); ++r)
        for (std::size_t c = 0; c < op.cols(); ++c)
            if (std::abs(out.at(r, c)) <= threshold) out.set(r, c, Complex(0.0, 0.0));
    return out;
}

void drop_zero_operators(std::vector<ComplexMatrix>& ops) {
    std::erase_if(ops, [](const ComplexMatrix& k) { return frob_norm(k) <= kZeroFloor; });
}

/// Kraus-index rotation built from the pivot entries alpha (of `keep`) and
/// beta (of `other`): afterwards `other`'s pivot entry is algebraically zero
/// and `keep`'s pivot carries the combined weight sqrt(|a|^2+|b|^2).
void givens_rotate(ComplexMatrix& keep, ComplexMatrix& other, Complex alpha, Complex beta) {
    const double h = std::sqrt(abs2(alpha) + abs2(beta));
    const Complex inv(1.0 / h, 0.0);
    ComplexMatrix new_keep = inv * (std::conj(alpha) * keep + std::conj(beta) * other);
    ComplexMatrix new_other = inv * (-beta * keep + alpha * other);
    keep = std::move(new_keep);
    other = std::move(new_other);
}

bool shapes_compatible(const Shape& a, const Shape& b, ReductionMode mode) {
    const std::size_t d = a.row_of_col.size();
    std::vector<int> merged(d, -1);
    for (std::size_t c = 0; c < d; ++c) {
        const int ra = a.row_of_col[c];
        const int rb = b.row_of_col[c];
        if (ra >= 0 && rb >= 0 && ra != rb) return false;
        merged[c] = ra >= 0 ? ra : rb;
    }
    if (mode == ReductionMode::SIO) {
        std::vector<bool> used(d, false);
        for (const int r : merged) {
            if (r < 0) continue;
            if (used[r]) return false;
            used[r] = true;
        }
    }
    return true;
}

void validate_classes(const Channel& c, ReductionMode mode, double tol, const char* who) {
    for (const auto& k : c.kraus) {
        const OperatorClass cls = classify_operator(k, tol);
        if (cls == OperatorClass::General)
            throw std::invalid_argument(std::string(who) + ": operator is not incoherent");
        if (mode == ReductionMode::SIO && cls != OperatorClass::StrictlyIncoherent)
            throw std::invalid_argument(std::string(who) + ": operator is not strictly incoherent");
    }
}

// ---------------------------------------------------------------------------
// Qubit canonical forms
// ---------------------------------------------------------------------------

/// Reduce a list of operators whose nonzero entries all live at positions
/// p0/p1 to at most two operators: one carrying the p0 mass, one with p0
/// zero. This is plain QR on the Kraus index, restricted to the family.
std::vector<ComplexMatrix> family_echelon(std::vector<ComplexMatrix> fam, Pos p0, Pos p1) {
    std::size_t pivot = 0;
    for (const Pos pos : {p0, p1}) {
        if (pivot >= fam.size()) break;
        bool any = false;
        for (std::size_t j = pivot; j < fam.size(); ++j)
            if (std::abs(fam[j].at(pos.r, pos.c)) > kZeroFloor) any = true;
        if (!any) continue;
        for (std::size_t j = pivot + 1; j < fam.size(); ++j) {
            const Complex beta = fam[j].at(pos.r, pos.c);
            if (std::abs(beta) <= kZeroFloor) continue;
            givens_rotate(fam[pivot], fam[j], fam[pivot].at(pos.r, pos.c), beta);
            fam[j].set(pos.r, pos.c, Complex(0.0, 0.0));
        }
        ++pivot;
    }
    drop_zero_operators(fam);
    return fam;
}

bool pattern_within(const ComplexMatrix& op, std::initializer_list<Pos> allowed, double tol) {
    const double threshold = tol * max_abs_entry(op);
    for (std::size_t r = 0; r < op.rows(); ++r)
        for (std::size_t c = 0; c < op.cols(); ++c) {
            if (std::abs(op.at(r, c)) <= threshold) continue;
            bool ok = false;
            for (const Pos p : allowed)
                if (p.r == r && p.c == c) ok = true;
            if (!ok) return false;
        }
    return true;
}

void phase_normalize(ComplexMatrix& op, Pos primary, std::optional<Pos> fallback) {
    Complex z = op.at(primary.r, primary.c);
    if (std::abs(z) <= kZeroFloor && fallback) z = op.at(fallback->r, fallback->c);
    if (std::abs(z) <= kZeroFloor) return;
    op = (std::conj(z) / std::abs(z)) * op;
}

struct QubitFamilies {
    // echeloned family members: *_full has the b-position occupied, the
    // corner members carry only the a-position.
    std::optional<ComplexMatrix> ru_full, rl_full, d_full, a_full;
    std::vector<ComplexMatrix> c00;  // corners [[*,0],[0,0]]
    std::vector<ComplexMatrix> c10;  // corners [[0,0],[*,0]]
};

/// Split a qubit incoherent Kraus list into the four type families
/// (row-upper, row-lower, diagonal, antidiagonal), echelon each down to a
/// full member plus a corner, and pool the corners.
QubitFamilies split_and_echelon(const std::vector<ComplexMatrix>& ops, double tol) {
    std::vector<ComplexMatrix> ru, rl, dg, ad;
    for (const auto& op : ops) {
        if (pattern_within(op, {{0, 0}, {0, 1}}, tol)) ru.push_back(op);
        else if (pattern_within(op, {{1, 0}, {1, 1}}, tol)) rl.push_back(op);
        else if (pattern_within(op, {{0, 0}, {1, 1}}, tol)) dg.push_back(op);
        else if (pattern_within(op, {{0, 1}, {1, 0}}, tol)) ad.push_back(op);
        else throw std::invalid_argument("qubit reduction: operator is not incoherent");
    }

    QubitFamilies out;
    auto take = [&](std::vector<ComplexMatrix> fam, Pos b_pos, Pos a_pos,
                    std::optional<ComplexMatrix>& full, std::vector<ComplexMatrix>& corners) {
        for (auto& op : family_echelon(std::move(fam), b_pos, a_pos)) {
            if (std::abs(op.at(b_pos.r, b_pos.c)) > kZeroFloor)
                full = std::move(op);
            else
                corners.push_back(std::move(op));
        }
    };
    take(std::move(ru), {0, 1}, {0, 0}, out.ru_full, out.c00);
    take(std::move(rl), {1, 1}, {1, 0}, out.rl_full, out.c10);
    take(std::move(dg), {1, 1}, {0, 0}, out.d_full, out.c00);
    take(std::move(ad), {0, 1}, {1, 0}, out.a_full, out.c10);
    return out;
}

std::optional<ComplexMatrix> merge_corners(std::vector<ComplexMatrix> corners, Pos pos) {
    auto merged = family_echelon(std::move(corners), pos, pos);
    if (merged.empty()) return std::nullopt;
    return merged.front();
}

/// The 3x3 mixing step: combines the row-lower operator K1 = [[0,0],[a1,b1]],
/// the diagonal operator K2 = [[a2,0],[0,b2]] and the corner K3 = [[0,0],[a3,0]]
/// into a row-lower operator, a diagonal operator and a [[*,0],[0,0]] corner,
/// removing the [[0,0],[*,0]] corner from the decomposition.
struct MixedTriple {
    ComplexMatrix row_lower, diagonal, corner00;
};

std::optional<MixedTriple> corner_mixing_step(const ComplexMatrix& k1, const ComplexMatrix& k2,
                                              const ComplexMatrix& k3) {
    const Complex a1 = k1.at(1, 0), b1 = k1.at(1, 1);
    const Complex b2 = k2.at(1, 1);
    const Complex a3 = k3.at(1, 0);

    const double den_l = abs2(a1) + abs2(a3);
    const double den_mn = abs2(a3) * (abs2(b1) + abs2(b2)) + abs2(a1 * b2);
    if (den_mn <= 0.0) return std::nullopt;  // b1 = b2 = 0: nothing to mix

    const Complex l(1.0 / std::sqrt(den_l), 0.0);
    const Complex m(1.0 / std::sqrt(den_l * den_mn), 0.0);
    const Complex n(1.0 / std::sqrt(den_mn), 0.0);

    ComplexMatrix row_lower = l * (std::conj(a1) * k1 + std::conj(a3) * k3);
    ComplexMatrix diagonal =
        m * (std::conj(b1) * abs2(a3) * k1 + Complex(den_l, 0.0) * std::conj(b2) * k2 -
             std::conj(a3) * std::conj(b1) * a1 * k3);
    ComplexMatrix corner00 = n * (a3 * b2 * k1 - a3 * b1 * k2 - a1 * b2 * k3);

    // These entries vanish identically; remove the rounding residue.
    diagonal.set(1, 0, Complex(0.0, 0.0));
    corner00.set(1, 0, Complex(0.0, 0.0));
    corner00.set(1, 1, Complex(0.0, 0.0));
    return MixedTriple{std::move(row_lower), std::move(diagonal), std::move(corner00)};
}

/// Shared canonicalization core: incoherent qubit Kraus list -> at most five
/// operators in template order (row-upper, row-lower, diagonal, antidiagonal,
/// corner [[*,0],[0,0]]). Phases are not yet normalized.
std::vector<ComplexMatrix> qubit_io_core(const std::vector<ComplexMatrix>& ops, double tol) {
    QubitFamilies fam = split_and_echelon(ops, tol);

    std::optional<ComplexMatrix> c00 = merge_corners(std::move(fam.c00), {0, 0});
    std::optional<ComplexMatrix> c10 = merge_corners(std::move(fam.c10), {1, 0});

    if (c10) {
        if (!fam.rl_full && !fam.d_full) {
            // Nothing to mix against; the corner itself takes the row-lower
            // slot (row-lower template with vanishing b-entry).
            fam.rl_full = std::move(*c10);
        } else {
            const ComplexMatrix zero2(2, 2);
            const ComplexMatrix& k1 = fam.rl_full ? *fam.rl_full : zero2;
            const ComplexMatrix& k2 = fam.d_full ? *fam.d_full : zero2;
            auto mixed = corner_mixing_step(k1, k2, *c10);
            if (!mixed) throw std::logic_error("qubit reduction: degenerate mixing step");
            fam.rl_full = std::move(mixed->row_lower);
            fam.d_full = frob_norm(mixed->diagonal) > kZeroFloor
                             ? std::optional<ComplexMatrix>(std::move(mixed->diagonal))
                             : std::nullopt;
            if (frob_norm(mixed->corner00) > kZeroFloor) {
                std::vector<ComplexMatrix> pool;
                if (c00) pool.push_back(std::move(*c00));
                pool.push_back(std::move(mixed->corner00));
                c00 = merge_corners(std::move(pool), {0, 0});
            }
        }
        c10.reset();
    }

    std::vector<ComplexMatrix> out;
    for (auto* slot : {&fam.ru_full, &fam.rl_full, &fam.d_full, &fam.a_full, &c00})
        if (*slot && frob_norm(**slot) > kZeroFloor) out.push_back(std::move(**slot));
    return out;
}

ComplexMatrix conjugate_by_x(const ComplexMatrix& op) {
    ComplexMatrix out(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) out.set(1 - r, 1 - c, op.at(r, c));
    return out;
}

}  // namespace

int Shape::leading_col() const {
    for (std::size_t c = 0; c < row_of_col.size(); ++c)
        if (row_of_col[c] >= 0) return static_cast<int>(c);
    return -1;
}

MixingUnitary::MixingUnitary(ComplexMatrix u, double tol) : u_(std::move(u)) {
    if (u_.rows() != u_.cols()) throw std::invalid_argument("MixingUnitary: non-square matrix");
    if (frob_distance(matmul(dagger(u_), u_), ComplexMatrix::identity(u_.rows())) > tol)
        throw std::invalid_argument("MixingUnitary: matrix is not unitary");
}

Channel mix_kraus(const Channel& c, const MixingUnitary& u) {
    const std::size_t n = u.size();
    if (n < c.kraus.size())
        throw std::invalid_argument("mix_kraus: unitary smaller than the Kraus list");
    std::vector<ComplexMatrix> padded = c.kraus;
    while (padded.size() < n) padded.emplace_back(c.dim, c.dim);

    std::vector<ComplexMatrix> mixed;
    mixed.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ComplexMatrix li(c.dim, c.dim);
        for (std::size_t j = 0; j < n; ++j) {
            const Complex uij = u.matrix().at(i, j);
            if (uij == Complex(0.0, 0.0)) continue;
            li = li + uij * padded[j];
        }
        mixed.push_back(std::move(li));
    }
    drop_zero_operators(mixed);
    return Channel(c.dim, std::move(mixed));
}

Shape operator_shape(const ComplexMatrix& k, double tol) {
    if (classify_operator(k, tol) == OperatorClass::General)
        throw std::invalid_argument("operator_shape: operator is not incoherent");
    const double threshold = tol * max_abs_entry(k);
    Shape s;
    s.row_of_col.assign(k.cols(), -1);
    for (std::size_t c = 0; c < k.cols(); ++c)
        for (std::size_t r = 0; r < k.rows(); ++r)
            if (std::abs(k.at(r, c)) > threshold) s.row_of_col[c] = static_cast<int>(r);
    return s;
}

Channel reduce_by_shape(const Channel& c, ReductionMode mode, double tol) {
    if (!is_trace_preserving(c, std::max(tol, 1e-9)))
        throw std::invalid_argument("reduce_by_shape: channel is not trace preserving");
    validate_classes(c, mode, tol, "reduce_by_shape");

    const std::size_t d = c.dim;
    std::vector<ComplexMatrix> ops;
    ops.reserve(c.kraus.size());
    for (const auto& k : c.kraus) ops.push_back(sanitized(k, tol));
    drop_zero_operators(ops);

    // Process leading columns in ascending order; an eliminated operator only
    // ever moves to a later class, so one sweep per column suffices. Within a
    // class, candidates are visited by shape (lexicographically) and then by
    // list position, which pins down the output.
    for (std::size_t k = 0; k < d; ++k) {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<std::pair<std::size_t, Shape>> cls;
            for (std::size_t i = 0; i < ops.size(); ++i) {
                Shape s = operator_shape(ops[i], tol);
                if (s.leading_col() == static_cast<int>(k)) cls.emplace_back(i, std::move(s));
            }
            std::stable_sort(cls.begin(), cls.end(), [](const auto& a, const auto& b) {
                return a.second.row_of_col < b.second.row_of_col;
            });
            for (std::size_t p = 0; p < cls.size() && !changed; ++p) {
                for (std::size_t q = p + 1; q < cls.size() && !changed; ++q) {
                    if (!shapes_compatible(cls[p].second, cls[q].second, mode)) continue;
                    const std::size_t i = cls[p].first, j = cls[q].first;
                    const auto row = static_cast<std::size_t>(cls[p].second.row_of_col[k]);
                    givens_rotate(ops[i], ops[j], ops[i].at(row, k), ops[j].at(row, k));
                    ops[j].set(row, k, Complex(0.0, 0.0));
                    changed = true;
                }
            }
            if (changed) drop_zero_operators(ops);
        }
    }

    // A qubit IO residue of six operators (all four full types plus both
    // column-1 corners) is compressed to five with the 3x3 mixing step,
    // applied in the basis-swapped frame so the surviving corner stays in
    // the second column and the per-class counts keep their bounds.
    if (d == 2 && mode == ReductionMode::IO && ops.size() > 5) {
        std::vector<ComplexMatrix> flipped;
        flipped.reserve(ops.size());
        for (const auto& op : ops) flipped.push_back(conjugate_by_x(op));
        flipped = qubit_io_core(flipped, tol);
        ops.clear();
        for (const auto& op : flipped) ops.push_back(conjugate_by_x(op));
    }

    return Channel(d, std::move(ops));
}

Channel reduce_qubit_io(const Channel& c, double tol) {
    if (c.dim != 2) throw std::invalid_argument("reduce_qubit_io: channel is not a qubit channel");
    if (!is_trace_preserving(c, std::max(tol, 1e-9)))
        throw std::invalid_argument("reduce_qubit_io: channel is not trace preserving");
    validate_classes(c, ReductionMode::IO, tol, "reduce_qubit_io");

    std::vector<ComplexMatrix> ops;
    for (const auto& k : c.kraus) ops.push_back(sanitized(k, tol));
    drop_zero_operators(ops);

    ops = qubit_io_core(ops, tol);

    // Template a-slots: (0,0), (1,0), (0,0), (1,0), (0,0); when the a-entry
    // vanishes the b-entry fixes the phase instead.
    for (auto& op : ops) {
        if (pattern_within(op, {{0, 0}, {0, 1}}, tol) && std::abs(op.at(0, 1)) > kZeroFloor)
            phase_normalize(op, {0, 0}, Pos{0, 1});
        else if (pattern_within(op, {{1, 0}, {1, 1}}, tol))
            phase_normalize(op, {1, 0}, Pos{1, 1});
        else if (pattern_within(op, {{0, 0}, {1, 1}}, tol))
            phase_normalize(op, {0, 0}, Pos{1, 1});
        else if (pattern_within(op, {{0, 1}, {1, 0}}, tol))
            phase_normalize(op, {1, 0}, Pos{0, 1});
        else
            phase_normalize(op, {0, 0}, std::nullopt);
    }
    return Channel(2, std::move(ops));
}

Channel reduce_qubit_sio(const Channel& c, double tol) {
    if (c.dim != 2) throw std::invalid_argument("reduce_qubit_sio: channel is not a qubit channel");
    if (!is_trace_preserving(c, std::max(tol, 1e-9)))
        throw std::invalid_argument("reduce_qubit_sio: channel is not trace preserving");
    validate_classes(c, ReductionMode::SIO, tol, "reduce_qubit_sio");

    std::vector<ComplexMatrix> diag_fam, anti_fam;
    for (const auto& k : c.kraus) {
        ComplexMatrix op = sanitized(k, tol);
        if (frob_norm(op) <= kZeroFloor) continue;
        if (pattern_within(op, {{0, 0}, {1, 1}}, tol)) diag_fam.push_back(std::move(op));
        else if (pattern_within(op, {{0, 1}, {1, 0}}, tol)) anti_fam.push_back(std::move(op));
        else throw std::invalid_argument("reduce_qubit_sio: operator is not strictly incoherent");
    }

    // Each family spans two complex dimensions, so QR leaves one operator
    // with the b-slot occupied and one corner.
    diag_fam = family_echelon(std::move(diag_fam), {1, 1}, {0, 0});
    anti_fam = family_echelon(std::move(anti_fam), {1, 0}, {0, 1});

    std::vector<ComplexMatrix> out;
    auto push_slot = [&](std::vector<ComplexMatrix>& fam, Pos b_pos, bool want_full) {
        for (auto& op : fam) {
            const bool full = std::abs(op.at(b_pos.r, b_pos.c)) > kZeroFloor;
            if (full == want_full) out.push_back(op);
        }
    };
    push_slot(diag_fam, {1, 1}, true);   // [[a1,0],[0,b1]]
    push_slot(anti_fam, {1, 0}, true);   // [[0,b2],[a2,0]]
    push_slot(diag_fam, {1, 1}, false);  // [[a3,0],[0,0]]
    push_slot(anti_fam, {1, 0}, false);  // [[0,b3],[0,0]]

    for (auto& op : out) {
        if (pattern_within(op, {{0, 0}, {1, 1}}, tol))
            phase_normalize(op, {0, 0}, Pos{1, 1});
        else
            phase_normalize(op, {1, 0}, Pos{0, 1});
    }
    return Channel(2, std::move(out));
}

}  // namespace incoh
