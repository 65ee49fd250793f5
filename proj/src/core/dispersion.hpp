#pragma once

#include <complex>

namespace qrouter {

// E = omega_x - 2 xi cos k, the cosine band of a single CRW.
double dispersion_energy(double k, double omega_x, double xi);

// Inverts the dispersion on the branch k in (0, pi).  Requires E strictly
// inside the band (margin 1e-9 xi); throws Error(OutOfBand) otherwise.
double wavevector_from_energy(double E, double omega_x, double xi);

bool in_band(double E, double omega_x, double xi);

// Complex wave vector for an evanescent guide: cos k = (omega_x - E)/(2 xi)
// with Im k > 0, so e^{ikj} decays to the right and e^{-ikj} to the left.
std::complex<double> complex_wavevector(double E, double omega_x, double xi);

} // namespace qrouter
