#pragma once

#include <array>
#include <complex>

#include "params.hpp"

namespace qrouter {

using cdouble = std::complex<double>;

// X1..X5, V1, V2 and the normalization denominator G at one energy.
struct CouplingCoefficients {
    double x1, x2, x3, x4, x5;
    double v1, v2;
    cdouble g_big;
};

// The five roots of the quintic V for one index (omega_0 plus the quartic
// factor).  All five are real for physical parameters; a complex pair is
// reported with nonzero imaginary part and flagged.
struct VRoots {
    std::array<cdouble, 5> roots; // sorted ascending by real part
    bool all_real;
};

struct ScatteringFrequencies {
    double omega_0;
    // index 1 (Omega1) and index 2 (Omega2)
    double omega_minus_1, omega_plus_1, omega_minus_prime_1, omega_plus_prime_1;
    double omega_minus_2, omega_plus_2, omega_minus_prime_2, omega_plus_prime_2;
};

// Values of the frequency expressions with the inner radical's first term
// taken as Omega^2 (as printed) or Omega^4, for the discrepancy report.
struct FreqFormulaVariant {
    double omega_minus, omega_plus, omega_minus_prime, omega_plus_prime;
};

struct ClosedFormAmplitudes {
    cdouble l_a, r_a, l_b, r_b;
};

// Evaluates X1..X5 and V1, V2 verbatim and G at k(E).  Requires symmetric
// parameters and in-band E.  Throws NearPole when |V1| or |V2| falls below
// 1e-10 xi^5 (E sits on a scattering frequency).
CouplingCoefficients coupling_coefficients(const ValidatedParams& params, double E);

// Polynomial value of V_{1|2}(E) from the printed quintic.
double v_polynomial(const ValidatedParams& params, int index, double E);

// Roots of V via companion-matrix eigenvalues of the quartic factor.
VRoots v_roots_numeric(const ValidatedParams& params, int index);

FreqFormulaVariant freq_formula_variant(double omega, double xi, double g_s, double Omega, bool quartic_first_term);

// Scattering frequencies; each value is cross-checked against
// v_roots_numeric and replaced by the numeric root on disagreement > 1e-6.
ScatteringFrequencies scattering_frequencies(const ValidatedParams& params);

// The four outgoing amplitudes of the analytic solution.  When nudge is
// true, an energy sitting on a pole of 1/V is offset by 1e-7 xi instead of
// raising NearPole.
ClosedFormAmplitudes amplitudes_closed_form(const ValidatedParams& params, double E,
                                            bool nudge = false);

} // namespace qrouter
