// bell.hpp
// CHSH machinery: joint spin-measurement probabilities, Bell correlations
// (exact and Monte Carlo), the CHSH combination, the local-hidden-variable
// bound by exhaustive strategy enumeration, and the 2*sqrt(2) configuration.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qip/linalg.hpp"
#include "qip/rng.hpp"
#include "qip/states.hpp"

namespace qip {

// Alice measures along a1 or a2, Bob along b1 or b2.
struct ChshSetting {
    MeasurementAxis a1;
    MeasurementAxis a2;
    MeasurementAxis b1;
    MeasurementAxis b2;
};

// One local deterministic assignment: the +-1 outcome each party would
// produce for each of its two settings. A hidden-variable model is a mixture
// of the 16 such strategies, and the CHSH functional is linear in the
// mixture, so its extremes sit on these vertices.
struct DeterministicStrategy {
    int a1_out;
    int a2_out;
    int b1_out;
    int b2_out;
};

struct ChshReport {
    double c11;
    double c12;
    double c21;
    double c22;
    double s_value;
    bool violates_classical;
};

/// (|01> - |10>)/sqrt(2).
inline PureState singlet() {
    const double r = 1.0 / std::sqrt(2.0);
    return PureState({Complex{0.0, 0.0}, Complex{r, 0.0}, Complex{-r, 0.0}, Complex{0.0, 0.0}});
}

namespace detail {

inline void require_two_qubit(const DensityOperator& rho) {
    if (!rho.dims())
        throw MetadataError("two-qubit operation needs dims (2,2) on the density operator");
    if (rho.dims()->a != 2 || rho.dims()->b != 2)
        throw ShapeError("two-qubit operation needs dims (2,2), got (" +
                         std::to_string(rho.dims()->a) + "," + std::to_string(rho.dims()->b) +
                         ")");
}

inline void require_bit(int v, const char* name) {
    if (v != 0 && v != 1)
        throw ValidationError(std::string(name) + " must be 0 or 1, got " + std::to_string(v));
}

} // namespace detail

/// p_kl(a, b) = tr( rho P_k(a) (x) P_l(b) ).
inline double joint_probability(const DensityOperator& rho, const MeasurementAxis& a,
                                const MeasurementAxis& b, int k, int l) {
    detail::require_two_qubit(rho);
    detail::require_bit(k, "outcome k");
    detail::require_bit(l, "outcome l");
    const ComplexMatrix proj =
        kron(projector_from_axis(a, k).matrix(), projector_from_axis(b, l).matrix());
    return trace(matmul(rho.matrix(), proj)).real();
}

/// Singlet closed form p_kl = (1 - (-1)^{k+l} a.b) / 4.
inline double singlet_probability_closed_form(const MeasurementAxis& a, const MeasurementAxis& b,
                                              int k, int l) {
    detail::require_bit(k, "outcome k");
    detail::require_bit(l, "outcome l");
    const double sign = ((k + l) % 2 == 0) ? 1.0 : -1.0;
    return 0.25 * (1.0 - sign * dot(a, b));
}

/// C(a, b) = sum_kl (-1)^{k+l} p_kl; equals -a.b on the singlet.
inline double correlation(const DensityOperator& rho, const MeasurementAxis& a,
                          const MeasurementAxis& b) {
    double c = 0.0;
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
            const double sign = ((k + l) % 2 == 0) ? 1.0 : -1.0;
            c += sign * joint_probability(rho, a, b, k, l);
        }
    return c;
}

/// S = C22 - C11 - C12 - C21; hidden-variable models keep |S| <= 2.
inline ChshReport chsh_value(const DensityOperator& rho, const ChshSetting& setting) {
    const double c11 = correlation(rho, setting.a1, setting.b1);
    const double c12 = correlation(rho, setting.a1, setting.b2);
    const double c21 = correlation(rho, setting.a2, setting.b1);
    const double c22 = correlation(rho, setting.a2, setting.b2);
    const double s = c22 - c11 - c12 - c21;
    return ChshReport{c11, c12, c21, c22, s, std::abs(s) > 2.0 + kDefaultTol};
}

/// Coplanar axes in the x-z plane, at angles 90, 0, 45, 135 degrees from z
/// (a1, a2, b1, b2). On the singlet this attains S = 2*sqrt(2), the maximum
/// quantum mechanics allows.
inline ChshSetting optimal_chsh_setting() {
    auto axis = [](double gamma) {
        return MeasurementAxis{{std::sin(gamma), 0.0, std::cos(gamma)}};
    };
    const double pi = std::acos(-1.0);
    return ChshSetting{axis(pi / 2.0), axis(0.0), axis(pi / 4.0), axis(3.0 * pi / 4.0)};
}

/// All 16 strategies in a fixed order (a1 varying slowest, b2 fastest,
/// +1 before -1).
inline std::array<DeterministicStrategy, 16> enumerate_strategies() {
    std::array<DeterministicStrategy, 16> out{};
    std::size_t i = 0;
    const int vals[2] = {+1, -1};
    for (int a1 : vals)
        for (int a2 : vals)
            for (int b1 : vals)
                for (int b2 : vals) out[i++] = DeterministicStrategy{a1, a2, b1, b2};
    return out;
}

/// F = a2 b2 - a1 b1 - a1 b2 - a2 b1; each strategy lands on +2 or -2.
inline int chsh_f(const DeterministicStrategy& s) {
    return s.a2_out * s.b2_out - s.a1_out * s.b1_out - s.a1_out * s.b2_out -
           s.a2_out * s.b1_out;
}

struct LhvMax {
    int max_s;
    DeterministicStrategy argmax;
};

/// Exhaustive maximum of F over the 16 vertices: exactly 2.
inline LhvMax lhv_max_chsh() {
    const auto strategies = enumerate_strategies();
    LhvMax best{chsh_f(strategies[0]), strategies[0]};
    for (const DeterministicStrategy& s : strategies) {
        const int f = chsh_f(s);
        if (f > best.max_s) best = LhvMax{f, s};
    }
    return best;
}

struct SampleReport {
    double empirical_correlation;
    std::array<std::uint64_t, 4> counts; // order (0,0), (0,1), (1,0), (1,1)
};

/// n independent outcome pairs drawn by inverse CDF over the four joint
/// probabilities in the fixed order (0,0), (0,1), (1,0), (1,1). A private
/// generator is seeded per call, so equal seeds reproduce bit-identically.
inline SampleReport sample_outcomes(const DensityOperator& rho, const MeasurementAxis& a,
                                    const MeasurementAxis& b, std::uint64_t n,
                                    std::uint64_t seed) {
    if (n == 0) throw ValidationError("sample count must be at least 1");
    std::array<double, 4> p{};
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
            p[static_cast<std::size_t>(k * 2 + l)] =
                std::max(joint_probability(rho, a, b, k, l), 0.0);
    std::array<double, 4> cum{};
    double acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        acc += p[i];
        cum[i] = acc;
    }

    std::mt19937_64 gen(seed);
    std::array<std::uint64_t, 4> counts{};
    for (std::uint64_t t = 0; t < n; ++t) {
        const double u = uniform_unit(gen) * acc;
        std::size_t idx = 3;
        for (std::size_t i = 0; i < 4; ++i) {
            if (u < cum[i]) {
                idx = i;
                break;
            }
        }
        ++counts[idx];
    }

    const double nd = static_cast<double>(n);
    const double corr = (static_cast<double>(counts[0]) - static_cast<double>(counts[1]) -
                         static_cast<double>(counts[2]) + static_cast<double>(counts[3])) /
                        nd;
    return SampleReport{corr, counts};
}

} // namespace qip
