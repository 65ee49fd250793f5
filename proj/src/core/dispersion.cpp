#include "dispersion.hpp"

#include <cmath>

#include "errors.hpp"

namespace qrouter {

namespace {
constexpr double kBandMargin = 1e-9; // in units of xi
}

double dispersion_energy(double k, double omega_x, double xi)
{
    return omega_x - 2.0 * xi * std::cos(k);
}

bool in_band(double E, double omega_x, double xi)
{
    return std::abs(E - omega_x) < 2.0 * xi * (1.0 - 0.5 * kBandMargin);
}

double wavevector_from_energy(double E, double omega_x, double xi)
{
    double c = (omega_x - E) / (2.0 * xi);
    if (std::abs(c) >= 1.0 - 0.5 * kBandMargin)
        throw Error(ErrorCode::OutOfBand,
                    "E = " + std::to_string(E) + " is outside the open band ("
                        + std::to_string(omega_x - 2 * xi) + ", "
                        + std::to_string(omega_x + 2 * xi) + ")");
    return std::acos(c);
}

std::complex<double> complex_wavevector(double E, double omega_x, double xi)
{
    std::complex<double> c((omega_x - E) / (2.0 * xi), 0.0);
    std::complex<double> k = std::acos(c);
    if (k.imag() < 0.0)
        k = std::conj(k);
    return k;
}

} // namespace qrouter
