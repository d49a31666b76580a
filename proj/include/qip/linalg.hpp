// linalg.hpp
// Dense complex linear algebra for small operators (nothing here is tuned
// beyond what 8x8 states need): products, adjoints, Kronecker products,
// cyclic-Jacobi Hermitian eigendecomposition, one-sided-Jacobi SVD, and
// PSD testing.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qip/errors.hpp"

namespace qip {

using Complex = std::complex<double>;

// Default tolerance wherever one is not explicitly passed.
inline constexpr double kDefaultTol = 1e-9;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Dense row-major complex matrix. Entries admitted from external data are
// validated finite; arithmetic on finite operands of these sizes stays finite.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {
        if (rows == 0 || cols == 0)
            throw ShapeError("matrix dimensions must be positive, got " + shape_string());
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows == 0 || cols == 0)
            throw ShapeError("matrix dimensions must be positive, got " + shape_string());
        if (entries_.size() != rows_ * cols_) {
            throw ShapeError("entry count " + std::to_string(entries_.size()) +
                             " does not match shape " + shape_string());
        }
        for (const Complex& z : entries_) {
            if (!is_finite(z))
                throw ValidationError("non-finite matrix entry admitted into " + shape_string());
        }
    }

    // Row-of-rows construction, for readable literals in code and tests.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r > 0 ? rows.begin()->size() : 0;
        std::vector<Complex> data;
        data.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c)
                throw ShapeError("ragged row in matrix literal");
            data.insert(data.end(), row.begin(), row.end());
        }
        return ComplexMatrix(r, c, std::move(data));
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex{1.0, 0.0};
        return m;
    }

    // Column vector from amplitudes.
    static ComplexMatrix column(const std::vector<Complex>& amps) {
        return ComplexMatrix(amps.size(), 1, amps);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return entries_; }

    std::string shape_string() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

// --- elementwise arithmetic ---------------------------------------------

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("cannot add " + a.shape_string() + " and " + b.shape_string());
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("cannot subtract " + b.shape_string() + " from " + a.shape_string());
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
    return out;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& a) {
    return Complex{s, 0.0} * a;
}

// --- core operations ------------------------------------------------------

/// Standard matrix product; shapes must chain.
inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul dimension mismatch: " + a.shape_string() + " * " + b.shape_string());
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul(a, b);
}

/// Conjugate transpose. Applying it twice restores the input exactly.
inline ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

/// Sum of diagonal entries.
inline Complex trace(const ComplexMatrix& a) {
    if (!a.is_square())
        throw ShapeError("trace requires a square matrix, got " + a.shape_string());
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

/// Kronecker product; block (i,j) of the result equals a(i,j)*b.
/// Composite basis ordering: index of |kl> is k*dB + l (first label = A).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const Complex aij = a(ia, ja);
            if (aij == Complex{0.0, 0.0}) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
        }
    return out;
}

inline double max_hermiticity_deviation(const ComplexMatrix& a) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            dev = std::max(dev, std::abs(a(i, j) - std::conj(a(j, i))));
    return dev;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const Complex& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("cannot compare " + a.shape_string() + " and " + b.shape_string());
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

struct HermitianEigenResult {
    std::vector<double> eigenvalues; // ascending
    ComplexMatrix eigenvectors;      // columns are the matching unit eigenvectors
};

namespace detail {

// 2x2 unitary zeroing the off-diagonal of [[app, apq], [conj(apq), aqq]]
// (app, aqq real). Returns {c, s, phase} for the rotation
//   col_p <- c*col_p - s*conj(phase)*col_q
//   col_q <- s*phase*col_p_old + c*col_q
struct JacobiRotation {
    double c;
    double s;
    Complex phase; // apq / |apq|
};

inline JacobiRotation make_jacobi_rotation(double app, double aqq, Complex apq) {
    const double mag = std::abs(apq);
    const Complex phase = apq / mag;
    const double tau = (aqq - app) / (2.0 * mag);
    const double t =
        (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                     : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    return JacobiRotation{c, t * c, phase};
}

inline double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Fill any unset columns of u (marked by needs[j]) with unit vectors
// orthogonal to the columns already present. Deterministic: each gap takes
// the standard basis vector with the largest residual after projection.
inline void complete_orthonormal_columns(ComplexMatrix& u, const std::vector<bool>& needs) {
    const std::size_t m = u.rows();
    const std::size_t k = u.cols();
    for (std::size_t j = 0; j < k; ++j) {
        if (!needs[j]) continue;
        std::vector<Complex> best(m, Complex{0.0, 0.0});
        double best_norm = -1.0;
        for (std::size_t cand = 0; cand < m; ++cand) {
            std::vector<Complex> v(m, Complex{0.0, 0.0});
            v[cand] = Complex{1.0, 0.0};
            // project out every column already in place (gaps at >= j are not yet filled)
            for (std::size_t jj = 0; jj < k; ++jj) {
                if (needs[jj] && jj >= j) continue;
                Complex overlap{0.0, 0.0};
                for (std::size_t i = 0; i < m; ++i) overlap += std::conj(u(i, jj)) * v[i];
                for (std::size_t i = 0; i < m; ++i) v[i] -= overlap * u(i, jj);
            }
            double nrm = 0.0;
            for (const Complex& z : v) nrm += std::norm(z);
            nrm = std::sqrt(nrm);
            if (nrm > best_norm) {
                best_norm = nrm;
                best = std::move(v);
            }
        }
        for (std::size_t i = 0; i < m; ++i) u(i, j) = best[i] / best_norm;
    }
}

} // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
/// `tol` bounds the admissible deviation from Hermiticity of the input;
/// iteration stops once the off-diagonal norm drops below 1e-12.
inline HermitianEigenResult hermitian_eig(const ComplexMatrix& a, double tol = kDefaultTol) {
    if (!a.is_square())
        throw ShapeError("hermitian_eig requires a square matrix, got " + a.shape_string());
    const double dev = max_hermiticity_deviation(a);
    if (dev > tol) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian: max |a_ij - conj(a_ji)| = " << dev
            << " exceeds tolerance " << tol;
        throw HermiticityError(msg.str());
    }

    const std::size_t n = a.rows();
    // Symmetrize so roundoff-level asymmetry cannot bias the iteration.
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    constexpr double kOffTol = 1e-12;
    constexpr int kMaxSweeps = 128;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (detail::off_diagonal_norm(h) < kOffTol) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex hpq = h(p, q);
                if (std::abs(hpq) < 1e-300) continue;
                const auto rot =
                    detail::make_jacobi_rotation(h(p, p).real(), h(q, q).real(), hpq);
                const Complex sp = rot.s * rot.phase;
                // H <- J^dagger H J, applied as column then row updates
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex hip = h(i, p), hiq = h(i, q);
                    h(i, p) = rot.c * hip - std::conj(sp) * hiq;
                    h(i, q) = sp * hip + rot.c * hiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex hpj = h(p, j), hqj = h(q, j);
                    h(p, j) = rot.c * hpj - sp * hqj;
                    h(q, j) = std::conj(sp) * hpj + rot.c * hqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = rot.c * vip - std::conj(sp) * viq;
                    v(i, q) = sp * vip + rot.c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return h(i, i).real() < h(j, j).real(); });

    HermitianEigenResult result;
    result.eigenvalues.resize(n);
    result.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        result.eigenvalues[j] = h(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, j) = v(i, order[j]);
    }
    return result;
}

struct SvdResult {
    ComplexMatrix u;                    // m x k, orthonormal columns
    std::vector<double> singular_values; // length k = min(m,n), descending
    ComplexMatrix v;                    // n x k, orthonormal columns
};

/// Thin SVD by one-sided Jacobi: orthogonalize the columns of a working
/// copy, accumulating the right rotations. No squaring of the input, so
/// small singular values keep full relative accuracy.
inline SvdResult svd(const ComplexMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t k = std::min(m, n);

    ComplexMatrix b = a;
    ComplexMatrix w = ComplexMatrix::identity(n);

    auto col_dot = [&](std::size_t p, std::size_t q) {
        Complex d{0.0, 0.0};
        for (std::size_t i = 0; i < m; ++i) d += std::conj(b(i, p)) * b(i, q);
        return d;
    };
    auto col_norm2 = [&](std::size_t p) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(b(i, p));
        return s;
    };

    constexpr int kMaxSweeps = 128;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double gpp = col_norm2(p);
                const double gqq = col_norm2(q);
                const Complex gpq = col_dot(p, q);
                if (std::abs(gpq) <= 1e-15 * std::sqrt(gpp * gqq) || gpp == 0.0 || gqq == 0.0)
                    continue;
                rotated = true;
                const auto rot = detail::make_jacobi_rotation(gpp, gqq, gpq);
                const Complex sp = rot.s * rot.phase;
                for (std::size_t i = 0; i < m; ++i) {
                    const Complex bip = b(i, p), biq = b(i, q);
                    b(i, p) = rot.c * bip - std::conj(sp) * biq;
                    b(i, q) = sp * bip + rot.c * biq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex wip = w(i, p), wiq = w(i, q);
                    w(i, p) = rot.c * wip - std::conj(sp) * wiq;
                    w(i, q) = sp * wip + rot.c * wiq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) norms[j] = std::sqrt(col_norm2(j));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

    SvdResult result;
    result.singular_values.resize(k);
    result.u = ComplexMatrix(m, k);
    result.v = ComplexMatrix(n, k);
    std::vector<bool> needs_fill(k, false);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = order[j];
        const double s = norms[src];
        result.singular_values[j] = s;
        for (std::size_t i = 0; i < n; ++i) result.v(i, j) = w(i, src);
        if (s > 1e-150) {
            for (std::size_t i = 0; i < m; ++i) result.u(i, j) = b(i, src) / s;
        } else {
            result.singular_values[j] = 0.0;
            needs_fill[j] = true;
        }
    }
    detail::complete_orthonormal_columns(result.u, needs_fill);
    return result;
}

struct PsdCheck {
    bool is_psd;
    double min_eigenvalue;
};

/// PSD test via the spectrum: flag is true iff the least eigenvalue is
/// >= -tol. The least eigenvalue is reported either way.
inline PsdCheck is_psd(const ComplexMatrix& a, double tol = kDefaultTol) {
    const auto eig = hermitian_eig(a, tol);
    const double min_ev = eig.eigenvalues.front();
    return PsdCheck{min_ev >= -tol, min_ev};
}

// --- standard fixtures -----------------------------------------------------

inline ComplexMatrix pauli_x() {
    return ComplexMatrix::from_rows({{Complex{0, 0}, Complex{1, 0}}, {Complex{1, 0}, Complex{0, 0}}});
}

inline ComplexMatrix pauli_y() {
    return ComplexMatrix::from_rows({{Complex{0, 0}, Complex{0, -1}}, {Complex{0, 1}, Complex{0, 0}}});
}

inline ComplexMatrix pauli_z() {
    return ComplexMatrix::from_rows({{Complex{1, 0}, Complex{0, 0}}, {Complex{0, 0}, Complex{-1, 0}}});
}

} // namespace qip
