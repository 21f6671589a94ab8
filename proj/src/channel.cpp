#include "incoh/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace incoh {

Channel::Channel(std::size_t d, std::vector<ComplexMatrix> ops) : dim(d), kraus(std::move(ops)) {
    if (d == 0) throw std::invalid_argument("Channel: dimension must be positive");
    for (const auto& k : kraus) {
        if (k.rows() != d || k.cols() != d)
            throw std::invalid_argument("Channel: Kraus operator is not dim x dim");
    }
}

bool is_trace_preserving(const Channel& c, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("is_trace_preserving: tol must be positive");
    ComplexMatrix sum(c.dim, c.dim);
    for (const auto& k : c.kraus) sum = sum + dagger(k) * k;
    return frob_distance(sum, ComplexMatrix::identity(c.dim)) <= tol;
}

OperatorClass classify_operator(const ComplexMatrix& k, double tol) {
    if (k.rows() != k.cols()) throw std::invalid_argument("classify_operator: non-square operator");
    const double threshold = tol * max_abs_entry(k);
    const std::size_t d = k.rows();
    std::vector<int> col_count(d, 0), row_count(d, 0);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            if (std::abs(k.at(r, c)) > threshold) {
                ++col_count[c];
                ++row_count[r];
            }
    bool incoherent = true, strict = true;
    for (std::size_t i = 0; i < d; ++i) {
        if (col_count[i] > 1) incoherent = false;
        if (row_count[i] > 1) strict = false;
    }
    if (!incoherent) return OperatorClass::General;
    return strict ? OperatorClass::StrictlyIncoherent : OperatorClass::Incoherent;
}

ChannelClass classify_channel(const Channel& c, double tol) {
    if (!is_trace_preserving(c, tol))
        throw std::invalid_argument("classify_channel: channel is not trace preserving");

    bool all_strict = true, all_incoherent = true;
    for (const auto& k : c.kraus) {
        switch (classify_operator(k, tol)) {
            case OperatorClass::StrictlyIncoherent: break;
            case OperatorClass::Incoherent: all_strict = false; break;
            case OperatorClass::General: all_strict = false; all_incoherent = false; break;
        }
    }
    if (all_strict) return ChannelClass::SIO;
    if (all_incoherent) return ChannelClass::IO;

    // Incoherent in, incoherent out on every basis projector.
    for (std::size_t i = 0; i < c.dim; ++i) {
        ComplexMatrix proj(c.dim, c.dim);
        proj.set(i, i, Complex(1.0, 0.0));
        const ComplexMatrix out = apply(c, proj);
        for (std::size_t r = 0; r < c.dim; ++r)
            for (std::size_t col = 0; col < c.dim; ++col)
                if (r != col && std::abs(out.at(r, col)) > tol) return ChannelClass::General;
    }
    return ChannelClass::MIO;
}

ChoiMatrix choi(const Channel& c) {
    const std::size_t d = c.dim;
    // rho = (1/d) sum_j |k_j><k_j| with |k_j> the row-major flattening of K_j;
    // entry ((a d + b), (a' d + b')) = (1/d) [K (|b><b'|) K^dag]_{a,a'}.
    ComplexMatrix m(d * d, d * d);
    for (const auto& k : c.kraus) {
        for (std::size_t i = 0; i < d * d; ++i) {
            const Complex ki = k.entries()[i];
            if (ki == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < d * d; ++j) {
                m.set(i, j, m.at(i, j) + ki * std::conj(k.entries()[j]));
            }
        }
    }
    const double inv_d = 1.0 / static_cast<double>(d);
    return ChoiMatrix{scale(Complex(inv_d, 0.0), m), d};
}

int kraus_rank(const Channel& c, double tol) {
    return numeric_rank(choi(c).matrix, tol);
}

bool channels_equal(const Channel& a, const Channel& b, double tol) {
    if (a.dim != b.dim) throw std::invalid_argument("channels_equal: dimension mismatch");
    return frob_distance(choi(a).matrix, choi(b).matrix) <= tol;
}

ComplexMatrix apply(const Channel& c, const ComplexMatrix& rho) {
    if (rho.rows() != c.dim || rho.cols() != c.dim)
        throw std::invalid_argument("apply: state dimension mismatch");
    ComplexMatrix out(c.dim, c.dim);
    for (const auto& k : c.kraus) out = out + k * rho * dagger(k);
    return out;
}

Channel permutation_lower_bound_channel(std::size_t d) {
    if (d < 2) throw std::invalid_argument("permutation_lower_bound_channel: d must be >= 2");
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<ComplexMatrix> ops;
    ops.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            ComplexMatrix k(d, d);
            k.set((j + i) % d, j, Complex(amp, 0.0));
            ops.push_back(std::move(k));
        }
    return Channel(d, std::move(ops));
}

namespace {

std::uint64_t pow4_plus_1(std::uint64_t d) {
    return d * d * d * d + 1;
}

}  // namespace

std::uint64_t io_kraus_bound(std::size_t d) {
    if (d < 2) throw std::invalid_argument("io_kraus_bound: d must be >= 2");
    if (d == 2) return 5;
    const std::uint64_t cap = pow4_plus_1(d);
    // sum_{n=1..d} d^n = d(d^d - 1)/(d - 1), accumulated with early exit
    // against the cap so the geometric terms never overflow.
    std::uint64_t sum = 0, term = 1;
    for (std::size_t n = 1; n <= d; ++n) {
        if (term > cap / d) return cap;
        term *= d;
        sum += term;
        if (sum > cap) return cap;
    }
    return sum;
}

std::uint64_t sio_kraus_bound(std::size_t d) {
    if (d < 2) throw std::invalid_argument("sio_kraus_bound: d must be >= 2");
    const std::uint64_t cap = pow4_plus_1(d);
    std::uint64_t factorial = 1;
    for (std::uint64_t i = 2; i <= d; ++i) {
        if (factorial > cap / i) return cap;  // d! alone already exceeds the cap
        factorial *= i;
    }
    // term_k = d!/(k-1)!; term_{k+1} = term_k / k.
    std::uint64_t sum = 0, term = factorial;
    for (std::uint64_t k = 1; k <= d; ++k) {
        sum += term;
        if (sum > cap) return cap;
        term /= k;
    }
    return sum;
}

}  // namespace incoh
