#include "solver.hpp"

#include <cmath>

#include "dispersion.hpp"

namespace qrouter {

namespace {

struct GuideK {
    cdouble k_a, k_b;
    bool a_prop, b_prop;
};

GuideK wavevectors(const SystemParams& p, double E, IncidencePort port)
{
    GuideK g{};
    g.a_prop = in_band(E, p.omega_a, p.xi);
    g.b_prop = in_band(E, p.omega_b, p.xi);
    const bool incident_a = port == IncidencePort::LeftA || port == IncidencePort::RightA;
    if (incident_a && !g.a_prop)
        throw Error(ErrorCode::OutOfBand, "incident energy outside the band of CRW-a");
    if (!incident_a && !g.b_prop)
        throw Error(ErrorCode::OutOfBand, "incident energy outside the band of CRW-b");
    g.k_a = g.a_prop ? cdouble(wavevector_from_energy(E, p.omega_a, p.xi), 0.0)
                     : complex_wavevector(E, p.omega_a, p.xi);
    g.k_b = g.b_prop ? cdouble(wavevector_from_energy(E, p.omega_b, p.xi), 0.0)
                     : complex_wavevector(E, p.omega_b, p.xi);
    return g;
}

} // namespace

Eigen::Matrix<cdouble, 10, 10> atomic_vertical_block(const ValidatedParams& params)
{
    const SystemParams& p = params.get();
    const cdouble drive1 = p.Omega1 * std::exp(cdouble(0.0, -p.phi));
    Eigen::Matrix<cdouble, 10, 10> B = Eigen::Matrix<cdouble, 10, 10>::Zero();
    // basis: Ca, Cb, Da, Db, v1(s1), v2(e1), v3(e2), v4(e3), v5(s4), v6(e4)
    enum { Ca, Cb, Da, Db, V1, V2, V3, V4, V5, V6 };
    B(Ca, Ca) = p.omega_c;
    B(Cb, Cb) = p.omega_c;
    B(Da, Da) = p.omega_d;
    B(Db, Db) = p.omega_d;
    B(Ca, Cb) = B(Cb, Ca) = -p.xi;
    B(Da, Db) = B(Db, Da) = -p.xi;
    B(V1, V1) = p.omega_s1_eff;
    B(V2, V2) = p.omega_e1;
    B(V3, V3) = p.omega_e2;
    B(V4, V4) = p.omega_e3;
    B(V5, V5) = p.omega_s4_eff;
    B(V6, V6) = p.omega_e4;
    B(Ca, V2) = B(V2, Ca) = p.g_c1;
    B(Cb, V4) = B(V4, Cb) = p.g_c3;
    B(Da, V3) = B(V3, Da) = p.g_d2;
    B(Db, V6) = B(V6, Db) = p.g_d4;
    B(V2, V1) = drive1;             // Omega1 e^{-i phi} |e1><s1|
    B(V1, V2) = std::conj(drive1);
    B(V6, V5) = B(V5, V6) = p.Omega2;
    return B;
}

ScatteringSystem build_scattering_system(const ValidatedParams& params, double E,
                                         IncidencePort port)
{
    const SystemParams& p = params.get();
    const GuideK gk = wavevectors(p, E, port);
    const double l = static_cast<double>(p.l);
    const double xi = p.xi;

    const double incLa = port == IncidencePort::LeftA ? 1.0 : 0.0;
    const double incLb = port == IncidencePort::LeftB ? 1.0 : 0.0;
    const double incRa = port == IncidencePort::RightA ? 1.0 : 0.0;
    const double incRb = port == IncidencePort::RightB ? 1.0 : 0.0;

    const cdouble i(0.0, 1.0);
    const cdouble ea = std::exp(i * gk.k_a);
    const cdouble eb = std::exp(i * gk.k_b);
    const cdouble eal = std::exp(i * gk.k_a * l);
    const cdouble ebl = std::exp(i * gk.k_b * l);

    ScatteringSystem sys{};
    sys.k_a = gk.k_a;
    sys.k_b = gk.k_b;
    sys.a_propagating = gk.a_prop;
    sys.b_propagating = gk.b_prop;
    auto& M = sys.matrix;
    auto& rhs = sys.rhs;
    M.setZero();
    rhs.setZero();

    // Region expressions:
    //   alpha left:     incLa e^{i ka j} + l_a e^{-i ka j}
    //   alpha interior: r_1 e^{i ka j} + l_1 e^{-i ka j}
    //   alpha right:    incRa e^{-i ka j} + r_a e^{i ka j}
    // and the same for beta with kb.

    // continuity at j = 0 and j = l, both guides
    M(0, kLa) = 1.0; M(0, kR1) = -1.0; M(0, kL1) = -1.0;
    rhs(0) = -incLa;
    M(1, kR1) = eal; M(1, kL1) = 1.0 / eal; M(1, kRa) = -eal;
    rhs(1) = incRa / eal;
    M(2, kLb) = 1.0; M(2, kR2) = -1.0; M(2, kL2) = -1.0;
    rhs(2) = -incLb;
    M(3, kR2) = ebl; M(3, kL2) = 1.0 / ebl; M(3, kRb) = -ebl;
    rhs(3) = incRb / ebl;

    // node equations: (E - omega_x) amp_j + xi (amp_{j-1} + amp_{j+1}) = g v
    // at a_0 (neighbours from the left expression at j=-1 and the interior at j=+1)
    M(4, kLa) = (E - p.omega_a) + xi * ea;
    M(4, kR1) = xi * ea;
    M(4, kL1) = xi / ea;
    M(4, kV1) = -p.g_a1;
    rhs(4) = -incLa * ((E - p.omega_a) + xi / ea);
    // at a_l
    M(5, kRa) = ((E - p.omega_a) + xi * ea) * eal;
    M(5, kR1) = xi * eal / ea;
    M(5, kL1) = xi * ea / eal;
    M(5, kV3) = -p.g_a2;
    rhs(5) = -incRa * ((E - p.omega_a) / eal + xi / (eal * ea));
    // at b_0
    M(6, kLb) = (E - p.omega_b) + xi * eb;
    M(6, kR2) = xi * eb;
    M(6, kL2) = xi / eb;
    M(6, kV4) = -p.g_b3;
    rhs(6) = -incLb * ((E - p.omega_b) + xi / eb);
    // at b_l
    M(7, kRb) = ((E - p.omega_b) + xi * eb) * ebl;
    M(7, kR2) = xi * ebl / eb;
    M(7, kL2) = xi * eb / ebl;
    M(7, kV5) = -p.g_b4;
    rhs(7) = -incRb * ((E - p.omega_b) / ebl + xi / (ebl * eb));

    // vertical-cavity and atom rows: (E I - B) on the block columns, minus
    // the waveguide node amplitudes the block couples back to
    const auto B = atomic_vertical_block(params);
    for (int r = 0; r < 10; ++r) {
        M(8 + r, 8 + r) += E;
        for (int c = 0; c < 10; ++c)
            M(8 + r, 8 + c) -= B(r, c);
    }
    // atom rows also see the node cavity amplitudes:
    //   v1 <- g_a1 alpha_0, v3 <- g_a2 alpha_l, v4 <- g_b3 beta_0, v5 <- g_b4 beta_l
    M(8 + 4, kLa) = -p.g_a1;
    rhs(8 + 4) = incLa * p.g_a1;
    M(8 + 6, kRa) = -p.g_a2 * eal;
    rhs(8 + 6) = incRa * p.g_a2 / eal;
    M(8 + 7, kLb) = -p.g_b3;
    rhs(8 + 7) = incLb * p.g_b3;
    M(8 + 8, kRb) = -p.g_b4 * ebl;
    rhs(8 + 8) = incRb * p.g_b4 / ebl;

    return sys;
}

ScatteringSolution solve_scattering(const ValidatedParams& params, double E,
                                    IncidencePort port)
{
    const ScatteringSystem sys = build_scattering_system(params, E, port);

    Eigen::PartialPivLU<Eigen::Matrix<cdouble, 18, 18>> lu(sys.matrix);
    if (lu.rcond() < 1e-14)
        throw Error(ErrorCode::SingularSystem,
                    "scattering system is numerically singular at E = " + std::to_string(E));
    Eigen::Vector<cdouble, 18> x = lu.solve(sys.rhs);

    const double rhs_norm = sys.rhs.lpNorm<Eigen::Infinity>();
    const double resid = (sys.matrix * x - sys.rhs).lpNorm<Eigen::Infinity>();
    if (resid > 1e-10 * std::max(rhs_norm, 1.0))
        throw Error(ErrorCode::SingularSystem,
                    "solve residual " + std::to_string(resid) + " exceeds tolerance");

    ScatteringSolution sol{};
    sol.l_a = x(kLa); sol.r_a = x(kRa); sol.l_b = x(kLb); sol.r_b = x(kRb);
    sol.r_1 = x(kR1); sol.l_1 = x(kL1); sol.r_2 = x(kR2); sol.l_2 = x(kL2);
    sol.c_a = x(kCa); sol.c_b = x(kCb); sol.d_a = x(kDa); sol.d_b = x(kDb);
    for (int j = 0; j < 6; ++j)
        sol.atomic[j] = x(kV1 + j);
    sol.energy = E;
    sol.port = port;
    sol.k_a = sys.k_a;
    sol.k_b = sys.k_b;
    sol.a_propagating = sys.a_propagating;
    sol.b_propagating = sys.b_propagating;
    return sol;
}

RoutingRates routing_rates(const ScatteringSolution& sol)
{
    const bool incident_a =
        sol.port == IncidencePort::LeftA || sol.port == IncidencePort::RightA;
    const double sin_in = std::sin(incident_a ? sol.k_a.real() : sol.k_b.real());
    const double wa = sol.a_propagating ? std::sin(sol.k_a.real()) / sin_in : 0.0;
    const double wb = sol.b_propagating ? std::sin(sol.k_b.real()) / sin_in : 0.0;

    RoutingRates r{};
    r.L_a = wa * std::norm(sol.l_a);
    r.R_a = wa * std::norm(sol.r_a);
    r.L_b = wb * std::norm(sol.l_b);
    r.R_b = wb * std::norm(sol.r_b);
    r.total = r.L_a + r.R_a + r.L_b + r.R_b;
    return r;
}

} // namespace qrouter
