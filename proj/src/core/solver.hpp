#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "params.hpp"

namespace qrouter {

using cdouble = std::complex<double>;

// Full amplitude set for one (params, E, port) solve.
struct ScatteringSolution {
    cdouble l_a, r_a, l_b, r_b;       // outgoing port amplitudes
    cdouble r_1, l_1, r_2, l_2;       // interior region 0 < j < l
    cdouble c_a, c_b, d_a, d_b;       // vertical cavities
    std::array<cdouble, 6> atomic;    // v1..v6

    double energy;
    IncidencePort port;
    cdouble k_a, k_b;
    bool a_propagating, b_propagating;
};

struct RoutingRates {
    double L_a, R_a, L_b, R_b;
    double total;
};

struct ScatteringSystem {
    Eigen::Matrix<cdouble, 18, 18> matrix;
    Eigen::Vector<cdouble, 18> rhs;
    cdouble k_a, k_b;
    bool a_propagating, b_propagating;
};

// Unknown ordering inside the 18-vector.
enum Unknown {
    kLa = 0, kR1, kL1, kRa, kLb, kR2, kL2, kRb,
    kCa, kCb, kDa, kDb, kV1, kV2, kV3, kV4, kV5, kV6
};

// Assembles the steady-state equations with the plane-wave ansatz: 4
// continuity conditions, 4 node equations, 4 vertical-cavity equations and
// 6 atomic equations.  The incidence guide must be in band; the other guide
// may be evanescent (complex k, Im k > 0, zero outgoing flux).
ScatteringSystem build_scattering_system(const ValidatedParams& params, double E,
                                         IncidencePort port);

// Dense solve with partial pivoting.  Throws SingularSystem when the
// reciprocal condition estimate drops below 1e-14.
ScatteringSolution solve_scattering(const ValidatedParams& params, double E,
                                    IncidencePort port);

// Squared moduli of the outgoing amplitudes, flux-weighted by
// sin(k_out)/sin(k_in) so the four rates sum to 1 also when the two guides
// carry different wave vectors.  An evanescent guide contributes 0.
RoutingRates routing_rates(const ScatteringSolution& sol);

// The 10x10 vertical-cavity + atom block of the Hamiltonian (basis:
// C_a, C_b, D_a, D_b, v1..v6).  Hermitian by construction; exposed so tests
// can verify that.
Eigen::Matrix<cdouble, 10, 10> atomic_vertical_block(const ValidatedParams& params);

} // namespace qrouter
