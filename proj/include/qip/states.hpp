// states.hpp
// Qubits and density operators: Bloch-sphere conversion, purity, projectors,
// partial trace and partial transpose over a declared bipartition.
//
// Composite-basis convention used everywhere: |kl> sits at index k*dB + l,
// the first label belonging to subsystem A.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "qip/linalg.hpp"

namespace qip {

enum class Subsystem { A, B };

struct BipartiteDims {
    std::size_t a;
    std::size_t b;
    friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

// Normalized pure state of dimension dim.
class PureState {
public:
    PureState(std::size_t dim, std::vector<Complex> amplitudes)
        : dim_(dim), amplitudes_(std::move(amplitudes)) {
        validate();
    }

    explicit PureState(std::vector<Complex> amplitudes)
        : dim_(amplitudes.size()), amplitudes_(std::move(amplitudes)) {
        validate();
    }

    std::size_t dim() const { return dim_; }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

    ComplexMatrix as_column() const { return ComplexMatrix::column(amplitudes_); }

    friend bool operator==(const PureState& x, const PureState& y) {
        return x.amplitudes_ == y.amplitudes_;
    }

private:
    void validate() const {
        if (dim_ == 0 || amplitudes_.size() != dim_) {
            throw ShapeError("state of dim " + std::to_string(dim_) + " needs " +
                             std::to_string(dim_) + " amplitudes, got " +
                             std::to_string(amplitudes_.size()));
        }
        double norm2 = 0.0;
        for (const Complex& a : amplitudes_) {
            if (!is_finite(a)) throw ValidationError("non-finite amplitude in pure state");
            norm2 += std::norm(a);
        }
        if (std::abs(norm2 - 1.0) > kDefaultTol) {
            std::ostringstream msg;
            msg << "pure state not normalized: sum |amplitude|^2 = " << norm2
                << ", expected 1 within " << kDefaultTol;
            throw ValidationError(msg.str());
        }
    }

    std::size_t dim_;
    std::vector<Complex> amplitudes_;
};

/// <x|y>.
inline Complex inner_product(const PureState& x, const PureState& y) {
    if (x.dim() != y.dim())
        throw ShapeError("inner product of states with dims " + std::to_string(x.dim()) +
                         " and " + std::to_string(y.dim()));
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < x.dim(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

/// |x> (x) |y> under the k*dB + l index convention.
inline PureState tensor_product(const PureState& x, const PureState& y) {
    std::vector<Complex> amps(x.dim() * y.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < y.dim(); ++j) amps[i * y.dim() + j] = x[i] * y[j];
    return PureState(std::move(amps));
}

/// Qubit |0> cos(theta) + |1> e^{i phi} sin(theta).
inline PureState qubit_from_angles(double theta, double phi) {
    return PureState({Complex{std::cos(theta), 0.0},
                      std::polar(std::sin(theta), phi)});
}

// Trace-1 Hermitian PSD operator, optionally carrying bipartite dims.
// Validation tolerances are fixed at 1e-9 on construction; renormalize
// before constructing if looser inputs must be admitted.
class DensityOperator {
public:
    explicit DensityOperator(ComplexMatrix matrix,
                             std::optional<BipartiteDims> dims = std::nullopt)
        : matrix_(std::move(matrix)), dims_(dims) {
        if (!matrix_.is_square())
            throw ShapeError("density operator must be square, got " + matrix_.shape_string());
        if (dims_ && dims_->a * dims_->b != matrix_.rows()) {
            throw MetadataError("dims (" + std::to_string(dims_->a) + "," +
                                std::to_string(dims_->b) + ") do not factor dimension " +
                                std::to_string(matrix_.rows()));
        }
        const double herm_dev = max_hermiticity_deviation(matrix_);
        if (herm_dev > kDefaultTol) {
            std::ostringstream msg;
            msg << "density operator not Hermitian: max deviation = " << herm_dev
                << ", expected 0 within " << kDefaultTol;
            throw ValidationError(msg.str());
        }
        const double tr = trace(matrix_).real();
        if (std::abs(tr - 1.0) > kDefaultTol) {
            std::ostringstream msg;
            msg << "density operator trace = " << tr << ", expected 1 within " << kDefaultTol;
            throw ValidationError(msg.str());
        }
        const auto psd = is_psd(matrix_, kDefaultTol);
        if (!psd.is_psd) {
            std::ostringstream msg;
            msg << "density operator not PSD: min eigenvalue = " << psd.min_eigenvalue
                << ", expected >= -" << kDefaultTol;
            throw ValidationError(msg.str());
        }
    }

    const ComplexMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.rows(); }
    const std::optional<BipartiteDims>& dims() const { return dims_; }

    /// Same operator annotated with a bipartition (dA*dB must equal dim).
    DensityOperator with_dims(std::size_t d_a, std::size_t d_b) const {
        return DensityOperator(matrix_, BipartiteDims{d_a, d_b});
    }

private:
    ComplexMatrix matrix_;
    std::optional<BipartiteDims> dims_;
};

// Point in the closed unit ball; |n| = 1 on the pure-state surface.
struct BlochVector {
    std::array<double, 3> n;

    explicit BlochVector(std::array<double, 3> v) : n(v) {
        const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (len > 1.0 + kDefaultTol) {
            std::ostringstream msg;
            msg << "Bloch vector leaves the unit ball: |n| = " << len << ", expected <= 1 within "
                << kDefaultTol;
            throw ValidationError(msg.str());
        }
    }

    double norm() const { return std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]); }
};

// Unit direction along which a spin component is measured.
struct MeasurementAxis {
    std::array<double, 3> a;

    explicit MeasurementAxis(std::array<double, 3> v) : a(v) {
        const double len = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        if (std::abs(len - 1.0) > kDefaultTol) {
            std::ostringstream msg;
            msg << "measurement axis not unit length: |a| = " << len << ", expected 1 within "
                << kDefaultTol;
            throw ValidationError(msg.str());
        }
    }
};

inline double dot(const MeasurementAxis& x, const MeasurementAxis& y) {
    return x.a[0] * y.a[0] + x.a[1] * y.a[1] + x.a[2] * y.a[2];
}

/// rho = |psi><psi|.
inline DensityOperator density_from_pure(const PureState& psi,
                                         std::optional<BipartiteDims> dims = std::nullopt) {
    const std::size_t d = psi.dim();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return DensityOperator(std::move(m), dims);
}

/// rho = (I + n . sigma) / 2.
inline DensityOperator bloch_to_density(const BlochVector& n) {
    ComplexMatrix m =
        0.5 * (ComplexMatrix::identity(2) + n.n[0] * pauli_x() + n.n[1] * pauli_y() +
               n.n[2] * pauli_z());
    return DensityOperator(std::move(m));
}

/// n_i = tr(rho sigma_i); inverts bloch_to_density on qubits.
inline BlochVector density_to_bloch(const DensityOperator& rho) {
    if (rho.dim() != 2)
        throw ShapeError("Bloch vector defined for 2x2 density operators, got " +
                         rho.matrix().shape_string());
    const ComplexMatrix& m = rho.matrix();
    return BlochVector{{trace(matmul(m, pauli_x())).real(),
                        trace(matmul(m, pauli_y())).real(),
                        trace(matmul(m, pauli_z())).real()}};
}

/// mu = 2 tr(rho^2) - 1, the squared Bloch length. Qubits only.
inline double purity(const DensityOperator& rho) {
    if (rho.dim() != 2)
        throw ShapeError("purity defined for 2x2 density operators, got " +
                         rho.matrix().shape_string());
    return 2.0 * trace(matmul(rho.matrix(), rho.matrix())).real() - 1.0;
}

/// 1 - mu.
inline double linear_entropy(const DensityOperator& rho) {
    return 1.0 - purity(rho);
}

/// Contraction of one subsystem's indices. Writing the input entries as
/// a_{klmn} = a(k*dB+l, m*dB+n):
///   keep A: out(k,m) = sum_l a_{klml}
///   keep B: out(l,n) = sum_k a_{klkn}
inline ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, std::size_t d_a,
                                          std::size_t d_b, Subsystem keep) {
    if (!m.is_square() || m.rows() != d_a * d_b)
        throw ShapeError("partial trace of " + m.shape_string() + " with dims (" +
                         std::to_string(d_a) + "," + std::to_string(d_b) + ")");
    if (keep == Subsystem::A) {
        ComplexMatrix out(d_a, d_a);
        for (std::size_t k = 0; k < d_a; ++k)
            for (std::size_t mm = 0; mm < d_a; ++mm)
                for (std::size_t l = 0; l < d_b; ++l)
                    out(k, mm) += m(k * d_b + l, mm * d_b + l);
        return out;
    }
    ComplexMatrix out(d_b, d_b);
    for (std::size_t l = 0; l < d_b; ++l)
        for (std::size_t n = 0; n < d_b; ++n)
            for (std::size_t k = 0; k < d_a; ++k)
                out(l, n) += m(k * d_b + l, k * d_b + n);
    return out;
}

/// Reduced density operator of the kept subsystem; needs dims metadata.
inline DensityOperator partial_trace(const DensityOperator& rho, Subsystem keep) {
    if (!rho.dims())
        throw MetadataError("partial trace needs bipartite dims on the density operator");
    return DensityOperator(
        partial_trace_matrix(rho.matrix(), rho.dims()->a, rho.dims()->b, keep));
}

/// Transpose of the B indices only: out(k*dB+n, m*dB+l) = in(k*dB+l, m*dB+n).
inline ComplexMatrix partial_transpose_matrix(const ComplexMatrix& m, std::size_t d_a,
                                              std::size_t d_b) {
    if (!m.is_square() || m.rows() != d_a * d_b)
        throw ShapeError("partial transpose of " + m.shape_string() + " with dims (" +
                         std::to_string(d_a) + "," + std::to_string(d_b) + ")");
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t k = 0; k < d_a; ++k)
        for (std::size_t mm = 0; mm < d_a; ++mm)
            for (std::size_t l = 0; l < d_b; ++l)
                for (std::size_t n = 0; n < d_b; ++n)
                    out(k * d_b + n, mm * d_b + l) = m(k * d_b + l, mm * d_b + n);
    return out;
}

/// Partial transpose over subsystem B. Returned as a raw matrix: it stays
/// Hermitian with unit trace but may fail PSD, which is the whole point.
inline ComplexMatrix partial_transpose(const DensityOperator& rho) {
    if (!rho.dims())
        throw MetadataError("partial transpose needs bipartite dims on the density operator");
    return partial_transpose_matrix(rho.matrix(), rho.dims()->a, rho.dims()->b);
}

/// P_k(a) = (I + (-1)^k a . sigma) / 2, the rank-1 projector onto outcome k.
inline DensityOperator projector_from_axis(const MeasurementAxis& axis, int outcome) {
    if (outcome != 0 && outcome != 1)
        throw ValidationError("projector outcome must be 0 or 1, got " + std::to_string(outcome));
    const double sign = outcome == 0 ? 1.0 : -1.0;
    ComplexMatrix m = 0.5 * (ComplexMatrix::identity(2) + (sign * axis.a[0]) * pauli_x() +
                             (sign * axis.a[1]) * pauli_y() + (sign * axis.a[2]) * pauli_z());
    return DensityOperator(std::move(m));
}

} // namespace qip
