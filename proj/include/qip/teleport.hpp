// teleport.hpp
// Single-qubit teleportation: Bell basis, three-qubit composition, Alice's
// Bell measurement, the two classical bits, Bob's Pauli correction, and the
// fidelity check. Qubit order throughout: (Alice's original, Alice's half of
// the shared pair, Bob's half), index = a1*4 + a2*2 + a3.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "qip/linalg.hpp"
#include "qip/rng.hpp"
#include "qip/states.hpp"

namespace qip {

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline std::string to_string(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return "phi+";
        case BellLabel::PhiMinus: return "phi-";
        case BellLabel::PsiPlus: return "psi+";
        default: return "psi-";
    }
}

/// Classical 2-bit code: bit 0 = phi/psi family, bit 1 = sign.
inline std::string bits_for(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return "00";
        case BellLabel::PhiMinus: return "01";
        case BellLabel::PsiPlus: return "10";
        default: return "11";
    }
}

inline BellLabel label_from_bits(const std::string& bits) {
    if (bits == "00") return BellLabel::PhiPlus;
    if (bits == "01") return BellLabel::PhiMinus;
    if (bits == "10") return BellLabel::PsiPlus;
    if (bits == "11") return BellLabel::PsiMinus;
    throw ValidationError("classical message must be 00, 01, 10 or 11, got \"" + bits + "\"");
}

struct BellState {
    BellLabel label;
    PureState state;
};

/// phi+- = (|00> +- |11>)/sqrt(2), psi+- = (|01> +- |10>)/sqrt(2).
inline std::array<BellState, 4> bell_states() {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex z{0.0, 0.0};
    const Complex p{r, 0.0};
    const Complex m{-r, 0.0};
    return {BellState{BellLabel::PhiPlus, PureState({p, z, z, p})},
            BellState{BellLabel::PhiMinus, PureState({p, z, z, m})},
            BellState{BellLabel::PsiPlus, PureState({z, p, p, z})},
            BellState{BellLabel::PsiMinus, PureState({z, p, m, z})}};
}

/// |phi>|phi+> = (alpha|0> + beta|1>)(|00> + |11>)/sqrt(2): amplitudes
/// alpha/sqrt(2) on |000>, |011> and beta/sqrt(2) on |100>, |111>.
inline PureState compose_initial(const PureState& phi) {
    if (phi.dim() != 2)
        throw ShapeError("teleport input must be a qubit, got dim " + std::to_string(phi.dim()));
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<Complex> amps(8, Complex{0.0, 0.0});
    amps[0] = phi[0] * r;
    amps[3] = phi[0] * r;
    amps[4] = phi[1] * r;
    amps[7] = phi[1] * r;
    return PureState(std::move(amps));
}

struct BellMeasurement {
    BellLabel outcome;
    PureState bob_post;
    double probability;
};

/// Projective measurement of Alice's two qubits in the Bell basis. Bob's
/// unnormalized conditional amplitudes are b_l = sum_j conj(B_j) psi_{jl}
/// (j runs over Alice's 4 basis labels); the outcome is sampled from the
/// branch weights |b|^2 unless forced_outcome preselects a branch.
inline BellMeasurement bell_measure_alice(const PureState& state3, std::uint64_t seed,
                                          std::optional<BellLabel> forced_outcome = std::nullopt) {
    if (state3.dim() != 8)
        throw ShapeError("Bell measurement expects 3 qubits (dim 8), got dim " +
                         std::to_string(state3.dim()));
    const auto basis = bell_states();
    std::array<std::array<Complex, 2>, 4> branch{};
    std::array<double, 4> prob{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t l = 0; l < 2; ++l) {
            Complex b{0.0, 0.0};
            for (std::size_t j = 0; j < 4; ++j)
                b += std::conj(basis[i].state[j]) * state3[j * 2 + l];
            branch[i][l] = b;
            prob[i] += std::norm(b);
        }
    }

    std::size_t pick;
    if (forced_outcome) {
        pick = static_cast<std::size_t>(*forced_outcome);
        if (prob[pick] <= 1e-12)
            throw DegenerateBranchError("forced outcome " + to_string(*forced_outcome) +
                                        " has probability " + std::to_string(prob[pick]));
    } else {
        std::mt19937_64 gen(seed);
        const double total = prob[0] + prob[1] + prob[2] + prob[3];
        const double u = uniform_unit(gen) * total;
        double acc = 0.0;
        pick = 3;
        for (std::size_t i = 0; i < 4; ++i) {
            acc += prob[i];
            if (u < acc) {
                pick = i;
                break;
            }
        }
    }

    const double norm = std::sqrt(prob[pick]);
    PureState bob({branch[pick][0] / norm, branch[pick][1] / norm});
    return BellMeasurement{static_cast<BellLabel>(pick), std::move(bob), prob[pick]};
}

/// Bob's recovery operation per outcome: I, sigma_z, sigma_x, sigma_y. The
/// psi- branch leaves Bob holding -i sigma_y |phi>, and sigma_y undoes it up
/// to the unobservable global phase -i.
inline ComplexMatrix correction_for(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return ComplexMatrix::identity(2);
        case BellLabel::PhiMinus: return pauli_z();
        case BellLabel::PsiPlus: return pauli_x();
        default: return pauli_y();
    }
}

inline std::string correction_name(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return "I";
        case BellLabel::PhiMinus: return "Z";
        case BellLabel::PsiPlus: return "X";
        default: return "Y";
    }
}

/// |<x|y>|^2.
inline double fidelity(const PureState& x, const PureState& y) {
    return std::norm(inner_product(x, y));
}

struct TeleportTranscript {
    PureState input_state;
    BellLabel measured_bell;
    std::string classical_bits;
    std::string correction;
    DensityOperator bob_pre_message;
    PureState output_state;
    double fidelity;
};

/// Full protocol run. Bob's pre-message marginal is recorded before the
/// outcome is known (it is always I/2 — the measurement alone tells Bob
/// nothing); the correction is recomputed from the 2 classical bits, not
/// from Alice's record, so the transcript proves the bits suffice.
inline TeleportTranscript teleport(const PureState& phi, std::uint64_t seed) {
    const PureState state3 = compose_initial(phi);
    DensityOperator rho3 = density_from_pure(state3, BipartiteDims{4, 2});
    DensityOperator bob_pre = partial_trace(rho3, Subsystem::B);

    const BellMeasurement meas = bell_measure_alice(state3, seed);
    const std::string bits = bits_for(meas.outcome);
    const BellLabel decoded = label_from_bits(bits);
    const ComplexMatrix corr = correction_for(decoded);

    const ComplexMatrix out_col = matmul(corr, meas.bob_post.as_column());
    PureState output({out_col(0, 0), out_col(1, 0)});
    const double fid = fidelity(phi, output);
    return TeleportTranscript{phi,     meas.outcome, bits,  correction_name(decoded),
                              std::move(bob_pre),    std::move(output), fid};
}

} // namespace qip
