#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "core/closed_form.hpp"
#include "core/solver.hpp"

using namespace qrouter;

namespace {

void check_close(cdouble got, double re, double im, double tol = 1e-9)
{
    CHECK(std::abs(got - cdouble(re, im)) < tol);
}

SystemParams random_params(std::mt19937& rng, bool symmetric)
{
    std::uniform_real_distribution<double> gd(0.0, 1.0), od(0.05, 1.0),
        phid(0.0, 2.0 * M_PI), dd(-0.5, 0.5);
    std::uniform_int_distribution<int> ld(1, 6);
    SystemParams p;
    if (symmetric) {
        p.set("g_a", gd(rng));
        p.set("g_s", gd(rng));
    } else {
        for (const char* key : {"g_a1", "g_a2", "g_b3", "g_b4", "g_c1", "g_c3",
                                "g_d2", "g_d4"})
            p.set(key, gd(rng));
        p.set("delta_es1", dd(rng));
        p.set("delta_es4", dd(rng));
    }
    p.Omega1 = od(rng);
    p.Omega2 = od(rng);
    p.phi = phid(rng);
    p.l = ld(rng);
    return p;
}

} // namespace

TEST_SUITE("solver") {

TEST_CASE("frozen amplitudes from an independent implementation")
{
    SystemParams p;
    p.Omega2 = 0.3;
    p.phi = 0.7;
    p.l = 3;
    auto vp = validate(p);

    auto s = solve_scattering(vp, 10.3, IncidencePort::LeftA);
    check_close(s.l_a, -0.024822757691274, 0.461298744699292);
    check_close(s.r_a, 0.503339826942700, 0.117592672885157);
    check_close(s.l_b, 0.525119512936638, 0.240071793128675);
    check_close(s.r_b, -0.223636169901499, 0.368795574167361);

    s = solve_scattering(vp, 9.2, IncidencePort::LeftA);
    check_close(s.l_a, -0.182720907073858, 0.267066375975961);
    check_close(s.r_a, 0.884330091124686, 0.323892431811476);
    check_close(s.l_b, -0.020648539117485, 0.051789379135524);
    check_close(s.r_b, -0.010741561495153, 0.071545233143392);

    s = solve_scattering(vp, 10.77, IncidencePort::LeftA);
    check_close(s.l_a, -0.202164130162081, -0.266990099977250);
    check_close(s.r_a, 0.872329435109680, -0.339027118803595);
    check_close(s.l_b, -0.075164893000, -0.016412369743);
    check_close(s.r_b, -0.070653586034, -0.032200374334);
}

TEST_CASE("the atomic/vertical block is Hermitian")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        auto vp = validate(random_params(rng, trial % 2 == 0));
        auto B = atomic_vertical_block(vp);
        CHECK((B - B.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("solution satisfies the assembled equations")
{
    std::mt19937 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        auto vp = validate(random_params(rng, false));
        const double E = 10.0 + 1.7 * std::cos(trial * 0.7 + 0.3);
        auto port = static_cast<IncidencePort>(trial % 4);
        auto sys = build_scattering_system(vp, E, port);
        ScatteringSolution sol;
        try {
            sol = solve_scattering(vp, E, port);
        } catch (const Error&) {
            continue;
        }
        Eigen::Vector<cdouble, 18> x;
        x << sol.l_a, sol.r_1, sol.l_1, sol.r_a, sol.l_b, sol.r_2, sol.l_2, sol.r_b,
            sol.c_a, sol.c_b, sol.d_a, sol.d_b, sol.atomic[0], sol.atomic[1],
            sol.atomic[2], sol.atomic[3], sol.atomic[4], sol.atomic[5];
        CHECK((sys.matrix * x - sys.rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("flux conservation for random parameters and all ports")
{
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> ed(8.05, 11.95);
    for (int trial = 0; trial < 100; ++trial) {
        auto vp = validate(random_params(rng, trial % 3 == 0));
        auto port = static_cast<IncidencePort>(trial % 4);
        try {
            auto r = routing_rates(solve_scattering(vp, ed(rng), port));
            CHECK(std::abs(r.total - 1.0) < 1e-9);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SingularSystem);
        }
    }
}

TEST_CASE("detuned guides: flux-weighted rates still sum to one")
{
    SystemParams p;
    p.omega_b = 10.8; // both bands still overlap at E = 10.3
    auto vp = validate(p);
    auto s = solve_scattering(vp, 10.3, IncidencePort::LeftA);
    CHECK(s.a_propagating);
    CHECK(s.b_propagating);
    CHECK(std::abs(s.k_a.imag()) < 1e-14);
    auto r = routing_rates(s);
    CHECK(std::abs(r.total - 1.0) < 1e-9);
    CHECK(r.L_b > 0.0);
}

TEST_CASE("evanescent guide carries no flux")
{
    SystemParams p;
    p.omega_b = 13.5; // CRW-b band is [11.5, 15.5]: closed at E = 10.3
    auto vp = validate(p);
    auto s = solve_scattering(vp, 10.3, IncidencePort::LeftA);
    CHECK(s.a_propagating);
    CHECK_FALSE(s.b_propagating);
    CHECK(s.k_b.imag() > 0.0);
    auto r = routing_rates(s);
    CHECK(r.L_b == 0.0);
    CHECK(r.R_b == 0.0);
    CHECK(std::abs(r.L_a + r.R_a - 1.0) < 1e-9);
}

TEST_CASE("incident energy outside the incidence band is rejected")
{
    auto vp = validate(SystemParams{});
    CHECK_THROWS_AS(solve_scattering(vp, 12.5, IncidencePort::LeftA), Error);
    CHECK_THROWS_AS(solve_scattering(vp, 7.5, IncidencePort::RightB), Error);
}

TEST_CASE("solver reproduces the closed form on symmetric parameters")
{
    std::mt19937 rng(14);
    for (int trial = 0; trial < 5; ++trial) {
        auto vp = validate(random_params(rng, true));
        for (int i = 1; i <= 60; ++i) {
            const double E = vp->omega_a - 2.0 + 4.0 * (i - 0.5) / 60.0;
            ClosedFormAmplitudes a;
            try {
                a = amplitudes_closed_form(vp, E);
            } catch (const Error&) {
                continue; // scattering frequency: the closed form has a pole
            }
            auto s = solve_scattering(vp, E, IncidencePort::LeftA);
            CHECK(std::abs(a.l_a - s.l_a) < 1e-8);
            CHECK(std::abs(a.r_a - s.r_a) < 1e-8);
            CHECK(std::abs(a.l_b - s.l_b) < 1e-8);
            CHECK(std::abs(a.r_b - s.r_b) < 1e-8);
        }
    }
}

TEST_CASE("left/right symmetry of the symmetric router")
{
    // with identical chains and couplings, LeftA and RightB incidence are
    // related by the mirror that swaps the chains and reverses direction
    auto vp = validate(SystemParams{});
    auto la = routing_rates(solve_scattering(vp, 10.37, IncidencePort::LeftA));
    auto rb = routing_rates(solve_scattering(vp, 10.37, IncidencePort::RightB));
    CHECK(la.L_a == doctest::Approx(rb.R_b).epsilon(1e-10));
    CHECK(la.R_b == doctest::Approx(rb.L_a).epsilon(1e-10));
}

} // TEST_SUITE
