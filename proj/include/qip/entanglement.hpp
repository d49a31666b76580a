// entanglement.hpp
// Schmidt decomposition of bipartite pure states and the positive-partial-
// transpose separability test for mixed states.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qip/linalg.hpp"
#include "qip/states.hpp"

namespace qip {

// Schmidt terms with probability s^2 below this are treated as absent.
inline constexpr double kSchmidtWeightTol = 1e-10;

// |psi> = sum_alpha sqrt(p_alpha) |alpha_A> (x) |alpha_B>; coefficients hold
// the weights p_alpha in descending order (summing to 1). basis_a / basis_b
// hold the |alpha> vectors as columns — min(dA,dB) of them, including any
// zero-weight ones, so the columns stay orthonormal bases.
struct SchmidtDecomposition {
    std::vector<double> coefficients;
    std::size_t schmidt_number;
    ComplexMatrix basis_a;
    ComplexMatrix basis_b;
};

/// SVD route: reshape the amplitudes into the dA x dB matrix M(k,l) = psi_{kl};
/// M = U diag(s) V^dagger gives p_alpha = s_alpha^2, basis_a = U, basis_b =
/// conj(V). Columns are re-phased so the first nonvanishing entry of each
/// |alpha_A> is real > 0.
inline SchmidtDecomposition schmidt(const PureState& psi, std::size_t d_a, std::size_t d_b) {
    if (d_a * d_b != psi.dim())
        throw ShapeError("Schmidt split (" + std::to_string(d_a) + "," + std::to_string(d_b) +
                         ") does not factor state dim " + std::to_string(psi.dim()));
    ComplexMatrix m(d_a, d_b);
    for (std::size_t k = 0; k < d_a; ++k)
        for (std::size_t l = 0; l < d_b; ++l) m(k, l) = psi[k * d_b + l];

    SvdResult sv = svd(m);
    const std::size_t kk = sv.singular_values.size();
    ComplexMatrix basis_a = sv.u;
    ComplexMatrix basis_b(d_b, kk);
    for (std::size_t l = 0; l < d_b; ++l)
        for (std::size_t al = 0; al < kk; ++al) basis_b(l, al) = std::conj(sv.v(l, al));

    for (std::size_t al = 0; al < kk; ++al) {
        for (std::size_t i = 0; i < d_a; ++i) {
            const double mag = std::abs(basis_a(i, al));
            if (mag <= 1e-12) continue;
            const Complex phase = basis_a(i, al) / mag;
            for (std::size_t r = 0; r < d_a; ++r) basis_a(r, al) *= std::conj(phase);
            for (std::size_t r = 0; r < d_b; ++r) basis_b(r, al) *= phase;
            break;
        }
    }

    std::vector<double> weights(kk);
    std::size_t number = 0;
    for (std::size_t al = 0; al < kk; ++al) {
        weights[al] = sv.singular_values[al] * sv.singular_values[al];
        if (weights[al] > kSchmidtWeightTol) ++number;
    }

    return SchmidtDecomposition{std::move(weights), number, std::move(basis_a),
                                std::move(basis_b)};
}

/// Entangled iff more than one Schmidt term carries weight.
inline bool is_entangled_pure(const PureState& psi, std::size_t d_a, std::size_t d_b) {
    return schmidt(psi, d_a, d_b).schmidt_number >= 2;
}

/// Qubit-A shortcut: trace out B and test whether the reduced state fell off
/// the Bloch sphere. Equivalent to the Schmidt count when d_a = 2.
inline bool is_entangled_pure_via_purity(const PureState& psi, std::size_t d_a,
                                         std::size_t d_b) {
    if (d_a != 2)
        throw UnsupportedDimensionError(
            "purity route needs a qubit on side A, got d_a = " + std::to_string(d_a));
    DensityOperator rho = density_from_pure(psi, BipartiteDims{d_a, d_b});
    const double mu = purity(partial_trace(rho, Subsystem::A));
    return mu < 1.0 - kDefaultTol;
}

struct PptCheck {
    bool is_ppt;
    double min_eigenvalue;
};

/// Spectrum test of rho^{T_B}; a negative eigenvalue certifies entanglement.
inline PptCheck ppt_check(const DensityOperator& rho, double tol = kDefaultTol) {
    const ComplexMatrix pt = partial_transpose(rho);
    const HermitianEigenResult eig = hermitian_eig(pt, tol);
    return PptCheck{eig.eigenvalues.front() >= -tol, eig.eigenvalues.front()};
}

enum class Separability { Separable, Entangled, Inconclusive };

inline std::string to_string(Separability s) {
    switch (s) {
        case Separability::Separable: return "separable";
        case Separability::Entangled: return "entangled";
        default: return "inconclusive";
    }
}

struct SeparabilityVerdict {
    Separability verdict;
    double min_pt_eigenvalue;
    BipartiteDims dims;
};

/// NPT always means entangled. PPT closes the question only in 2x2 and 2x3
/// (either order), where the criterion is necessary and sufficient; larger
/// systems admit PPT entangled states, so those come back inconclusive.
inline SeparabilityVerdict separability_decision(const DensityOperator& rho,
                                                 double tol = kDefaultTol) {
    if (!rho.dims())
        throw MetadataError("separability decision needs bipartite dims on the density operator");
    const BipartiteDims dims = *rho.dims();
    const PptCheck check = ppt_check(rho, tol);
    Separability verdict;
    if (!check.is_ppt) {
        verdict = Separability::Entangled;
    } else {
        const std::size_t lo = std::min(dims.a, dims.b);
        const std::size_t hi = std::max(dims.a, dims.b);
        const bool decisive = (lo == 2 && hi == 2) || (lo == 2 && hi == 3);
        verdict = decisive ? Separability::Separable : Separability::Inconclusive;
    }
    return SeparabilityVerdict{verdict, check.min_eigenvalue, dims};
}

} // namespace qip
