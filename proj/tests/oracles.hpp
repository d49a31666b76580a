// Independent reference implementations used only to cross-check library
// results. Each one takes a different route than the code under test.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qip/qip.hpp"

namespace qip::oracle {

/// Reduced matrix over the second qubit of a two-qubit operator, written out
/// entry by entry from the block structure: the (k,m) entry of the result is
/// the trace of the (k,m) 2x2 block.
inline ComplexMatrix trace_out_second_qubit_4x4(const ComplexMatrix& a) {
    ComplexMatrix out(2, 2);
    out(0, 0) = a(0, 0) + a(1, 1);
    out(0, 1) = a(0, 2) + a(1, 3);
    out(1, 0) = a(2, 0) + a(3, 1);
    out(1, 1) = a(2, 2) + a(3, 3);
    return out;
}

/// Closed-form eigenvalues of a 2x2 Hermitian matrix, ascending.
inline std::vector<double> eig2x2(const ComplexMatrix& a) {
    const double mean = 0.5 * (a(0, 0).real() + a(1, 1).real());
    const double half_gap = 0.5 * (a(0, 0).real() - a(1, 1).real());
    const double r = std::sqrt(half_gap * half_gap + std::norm(a(0, 1)));
    return {mean - r, mean + r};
}

/// Schmidt weights via the reduced-state spectrum: the eigenvalues of
/// rho_A = tr_B |psi><psi|, descending. Avoids the SVD route entirely.
inline std::vector<double> schmidt_weights_from_rho_a(const PureState& psi, std::size_t d_a,
                                                      std::size_t d_b) {
    const DensityOperator rho = density_from_pure(psi, BipartiteDims{d_a, d_b});
    const ComplexMatrix rho_a = partial_trace(rho, Subsystem::A).matrix();
    std::vector<double> evs = hermitian_eig(rho_a).eigenvalues;
    std::sort(evs.begin(), evs.end(), std::greater<double>());
    return evs;
}

/// Partial transpose of |phi+><phi+| written out by hand: swapping the B
/// index moves the four +1/2 coherences from the corners onto the
/// anti-diagonal of the middle block.
inline ComplexMatrix pt_of_phi_plus() {
    ComplexMatrix m(4, 4);
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    m(1, 2) = 0.5;
    m(2, 1) = 0.5;
    return m;
}

/// Minimum eigenvalue of the partially transposed Werner state
/// p |psi-><psi-| + (1-p) I/4, namely (1 - 3p)/4.
inline double werner_pt_min_eigenvalue(double p) {
    return (1.0 - 3.0 * p) / 4.0;
}

} // namespace qip::oracle
