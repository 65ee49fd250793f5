#include "closed_form.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "dispersion.hpp"

namespace qrouter {

namespace {

void require_symmetric(const ValidatedParams& params)
{
    if (!params.symmetric())
        throw Error(ErrorCode::NotSymmetric,
                    "the analytic amplitudes are only valid in the symmetric regime "
                    "(equal couplings, equal frequencies, zero delta_es)");
}

struct SymScalars {
    double w, xi, ga, gs, O1, O2, phi;
    int l;
};

SymScalars sym(const ValidatedParams& params)
{
    const SystemParams& p = params.get();
    return {p.omega_a, p.xi, p.g_a1, p.g_c1, p.Omega1, p.Omega2, p.phi, p.l};
}

double v_poly(double E, double w, double xi, double gs, double O)
{
    double E2 = E * E;
    return (E - w)
        * (E2 * E2 + gs * gs * gs * gs - 4.0 * E2 * E * w
           + (O * O - w * w) * (xi * xi - w * w)
           - E2 * (2.0 * gs * gs + O * O + xi * xi - 6.0 * w * w)
           + gs * gs * (O * O - 2.0 * w * w)
           + 2.0 * E * w * (2.0 * gs * gs + O * O + xi * xi - 2.0 * w * w));
}

// Quartic factor Q(E) = V(E)/(E - omega), monic coefficients.
std::array<double, 5> quartic_coeffs(double w, double xi, double gs, double O)
{
    return {
        1.0,
        -4.0 * w,
        -(2.0 * gs * gs + O * O + xi * xi - 6.0 * w * w),
        2.0 * w * (2.0 * gs * gs + O * O + xi * xi - 2.0 * w * w),
        gs * gs * gs * gs + (O * O - w * w) * (xi * xi - w * w)
            + gs * gs * (O * O - 2.0 * w * w),
    };
}

} // namespace

CouplingCoefficients coupling_coefficients(const ValidatedParams& params, double E)
{
    require_symmetric(params);
    const auto s = sym(params);
    const double w = s.w, xi = s.xi, ga = s.ga, gs = s.gs, O1 = s.O1, O2 = s.O2;

    CouplingCoefficients c{};
    c.x1 = ga * ga * (-gs * gs + (E - w) * (E + xi - w))
         * (E * E - gs * gs + w * (xi + w) - E * (xi + 2.0 * w));
    c.x2 = ga * ga * gs * gs * O1 * xi;
    c.x4 = ga * ga * gs * gs * O2 * xi;
    auto x35 = [&](double O) {
        double E2 = E * E;
        return ga * ga
            * (E2 * E2 + O * O * xi * xi - 4.0 * E2 * E * w
               - (gs * gs + O * O + xi * xi) * w * w + w * w * w * w
               - E2 * (gs * gs + O * O + xi * xi - 6.0 * w * w)
               + 2.0 * E * w * (gs * gs + O * O + xi * xi - 2.0 * w * w));
    };
    c.x3 = x35(O2);
    c.x5 = x35(O1);
    c.v1 = v_poly(E, w, xi, gs, O1);
    c.v2 = v_poly(E, w, xi, gs, O2);

    const double xi5 = std::pow(xi, 5);
    if (std::abs(c.v1) < 1e-10 * xi5 || std::abs(c.v2) < 1e-10 * xi5)
        throw Error(ErrorCode::NearPole,
                    "E = " + std::to_string(E) + " sits on a scattering frequency");

    const double k = wavevector_from_energy(E, w, xi);
    const double sk = std::sin(k);
    const cdouble i(0.0, 1.0);
    const cdouble e2 = std::exp(2.0 * i * k * static_cast<double>(s.l));
    const double x1 = c.x1, x2 = c.x2, x3 = c.x3, x4 = c.x4, x5 = c.x5;
    const double v1 = c.v1, v2 = c.v2;

    c.g_big = (e2 - 1.0) * (e2 - 1.0) * (x1 * x3 - x4 * x4) * (x1 * x5 - x2 * x2)
        + 2.0 * i * (e2 - 1.0) * xi
            * (v1 * (x1 * x3 - x4 * x4) * (x1 + x5)
               + v2 * (x1 + x3) * (x1 * x5 - x2 * x2)) * sk
        - 4.0 * xi * xi
            * (v1 * v1 * (x1 * x3 - x4 * x4) + v1 * v2 * (x1 + x3) * (x1 + x5)
               + v2 * v2 * (x1 * x5 - x2 * x2)
               - e2 * v1 * v2 * (x1 * (x3 + x5) + 2.0 * x2 * x4 * std::cos(s.phi)))
            * sk * sk
        + 8.0 * i * xi * xi * xi * v1 * v2 * (v1 * (x1 + x3) + v2 * (x1 + x5))
            * sk * sk * sk
        + 16.0 * std::pow(xi, 4) * v1 * v1 * v2 * v2 * std::pow(sk, 4);
    return c;
}

double v_polynomial(const ValidatedParams& params, int index, double E)
{
    require_symmetric(params);
    if (index != 1 && index != 2)
        throw Error(ErrorCode::BadArgument, "V index must be 1 or 2");
    const auto s = sym(params);
    return v_poly(E, s.w, s.xi, s.gs, index == 1 ? s.O1 : s.O2);
}

VRoots v_roots_numeric(const ValidatedParams& params, int index)
{
    require_symmetric(params);
    if (index != 1 && index != 2)
        throw Error(ErrorCode::BadArgument, "V index must be 1 or 2");
    const auto s = sym(params);
    const auto c = quartic_coeffs(s.w, s.xi, s.gs, index == 1 ? s.O1 : s.O2);

    Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
    companion(0, 1) = companion(1, 2) = companion(2, 3) = 1.0;
    for (int j = 0; j < 4; ++j)
        companion(3, j) = -c[4 - j];
    Eigen::EigenSolver<Eigen::Matrix4d> es(companion, /*computeEigenvectors=*/false);

    VRoots out{};
    out.all_real = true;
    out.roots[0] = s.w; // the (E - omega) prefactor
    for (int j = 0; j < 4; ++j) {
        cdouble r = es.eigenvalues()(j);
        if (std::abs(r.imag()) < 1e-9 * s.xi)
            r = cdouble(r.real(), 0.0);
        else
            out.all_real = false;
        out.roots[j + 1] = r;
    }
    std::sort(out.roots.begin(), out.roots.end(), [](cdouble a, cdouble b) {
        if (a.real() != b.real())
            return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

FreqFormulaVariant freq_formula_variant(double omega, double xi, double g_s, double Omega,
                       bool quartic_first_term)
{
    const double O2 = Omega * Omega;
    const double first = quartic_first_term ? O2 * O2 : O2;
    const double inner2 = first + 4.0 * g_s * g_s * xi * xi - 2.0 * O2 * xi * xi
        + xi * xi * xi * xi;
    if (inner2 < 0.0)
        throw Error(ErrorCode::ComplexRoot, "inner radical is negative");
    const double inner = std::sqrt(inner2);
    const double base = 2.0 * g_s * g_s + O2 + xi * xi;
    if (base - inner < 0.0 || base + inner < 0.0)
        throw Error(ErrorCode::ComplexRoot, "outer radical is negative");
    const double lo = std::sqrt(2.0) * std::sqrt(base - inner);
    const double hi = std::sqrt(2.0) * std::sqrt(base + inner);
    FreqFormulaVariant v{};
    v.omega_minus = 0.5 * (-lo + 2.0 * omega);
    v.omega_plus = 0.5 * (lo + 2.0 * omega);
    v.omega_minus_prime = 0.5 * (-hi + 2.0 * omega);
    v.omega_plus_prime = 0.5 * (hi + 2.0 * omega);
    return v;
}

namespace {

// Match the four analytic values against the numeric quartic roots; fall
// back to the numeric root when they disagree by more than 1e-6.
void crosscheck(const VRoots& numeric, double omega, FreqFormulaVariant& v)
{
    std::array<double*, 4> vals = {&v.omega_minus_prime, &v.omega_minus,
                                   &v.omega_plus, &v.omega_plus_prime};
    // numeric.roots holds the (E - omega) prefactor root plus the 4 quartic
    // roots, ascending; drop the entry closest to omega
    std::array<double, 5> all{};
    for (int j = 0; j < 5; ++j)
        all[j] = numeric.roots[j].real();
    int drop = 0;
    for (int j = 1; j < 5; ++j)
        if (std::abs(all[j] - omega) < std::abs(all[drop] - omega))
            drop = j;
    std::array<double, 4> qr{};
    int n = 0;
    for (int j = 0; j < 5; ++j)
        if (j != drop)
            qr[n++] = all[j];
    for (int j = 0; j < 4; ++j)
        if (std::abs(*vals[j] - qr[j]) > 1e-6)
            *vals[j] = qr[j];
}

} // namespace

ScatteringFrequencies scattering_frequencies(const ValidatedParams& params)
{
    require_symmetric(params);
    const auto s = sym(params);

    ScatteringFrequencies f{};
    f.omega_0 = s.w;

    // first term of the inner radical taken as Omega^4: this is the variant
    // whose values coincide with the roots of V (see TRANSCRIPTION_NOTES)
    FreqFormulaVariant v1 = freq_formula_variant(s.w, s.xi, s.gs, s.O1, /*quartic_first_term=*/true);
    FreqFormulaVariant v2 = freq_formula_variant(s.w, s.xi, s.gs, s.O2, /*quartic_first_term=*/true);
    crosscheck(v_roots_numeric(params, 1), s.w, v1);
    crosscheck(v_roots_numeric(params, 2), s.w, v2);

    f.omega_minus_1 = v1.omega_minus;
    f.omega_plus_1 = v1.omega_plus;
    f.omega_minus_prime_1 = v1.omega_minus_prime;
    f.omega_plus_prime_1 = v1.omega_plus_prime;
    f.omega_minus_2 = v2.omega_minus;
    f.omega_plus_2 = v2.omega_plus;
    f.omega_minus_prime_2 = v2.omega_minus_prime;
    f.omega_plus_prime_2 = v2.omega_plus_prime;
    return f;
}

ClosedFormAmplitudes amplitudes_closed_form(const ValidatedParams& params, double E,
                                            bool nudge)
{
    require_symmetric(params);
    const auto s = sym(params);

    CouplingCoefficients c{};
    for (int attempt = 0;; ++attempt) {
        try {
            c = coupling_coefficients(params, E);
            break;
        } catch (const Error& err) {
            if (err.code() != ErrorCode::NearPole || !nudge || attempt >= 8)
                throw;
            E += 1e-7 * s.xi;
        }
    }

    const double k = wavevector_from_energy(E, s.w, s.xi);
    const double sk = std::sin(k);
    const cdouble i(0.0, 1.0);
    const cdouble e2 = std::exp(2.0 * i * k * static_cast<double>(s.l));
    const cdouble ep = std::exp(i * s.phi);
    const double xi = s.xi;
    const double x1 = c.x1, x2 = c.x2, x3 = c.x3, x4 = c.x4, x5 = c.x5;
    const double v1 = c.v1, v2 = c.v2;
    const cdouble G = c.g_big;

    ClosedFormAmplitudes a{};
    a.l_a = (2.0 * i * xi * v1 * sk
             * (-(e2 - 1.0) * (e2 - 1.0) * (x1 * x3 - x4 * x4) * x5
                + 2.0 * xi * sk
                    * (-i * (e2 - 1.0) * (v1 * (x1 * x3 - x4 * x4) + v2 * (x1 + x3) * x5)
                       + 2.0 * xi * v2 * sk
                           * (v1 * (x1 + x3 - e2 * x3) + v2 * x5
                              - 2.0 * i * xi * v1 * v2 * sk)))) / G
        - 1.0;
    a.r_a = (4.0 * i * xi * xi * v1 * v2 * sk * sk
             * (-i / ep * (e2 - 1.0) * (x2 * x4 + ep * x1 * x5)
                + 2.0 * xi * sk * (v1 * x1 + v2 * x5 - 2.0 * i * xi * v1 * v2 * sk))) / G;
    a.l_b = -((2.0 * i / ep * xi * v1 * sk
               * ((e2 - 1.0) * (e2 - 1.0) * x2 * (x1 * x3 - x4 * x4)
                  - 2.0 * xi * v2 * sk
                      * (-i * (e2 - 1.0) * x2 * (x1 + x3)
                         + 2.0 * xi * (v2 * x2 + e2 * ep * v1 * x4) * sk))) / G);
    a.r_b = (4.0 * i / ep * xi * xi * v1 * v2 * sk * sk
             * (-i * (e2 - 1.0) * (x2 * x3 + ep * x4 * x5)
                + 2.0 * xi * (v2 * x2 + ep * v1 * x4) * sk)) / G;
    return a;
}

} // namespace qrouter
