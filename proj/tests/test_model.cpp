#include <doctest.h>

#include <cmath>
#include <sstream>

#include "core/dispersion.hpp"
#include "core/params.hpp"

using namespace qrouter;

TEST_SUITE("model") {

TEST_CASE("defaults are the symmetric working point")
{
    SystemParams p;
    CHECK(p.omega_a == 10.0);
    CHECK(p.xi == 1.0);
    CHECK(p.l == 1);
    CHECK(p.is_symmetric());
    CHECK(validate(p).symmetric());
}

TEST_CASE("group keys fan out")
{
    SystemParams p;
    p.set("g_a", 0.7);
    CHECK(p.g_a1 == 0.7);
    CHECK(p.g_a2 == 0.7);
    CHECK(p.g_b3 == 0.7);
    CHECK(p.g_b4 == 0.7);
    p.set("g_s", 0.3);
    CHECK(p.g_c1 == 0.3);
    CHECK(p.g_d4 == 0.3);
    p.set("Omega", 0.9);
    CHECK(p.Omega1 == 0.9);
    CHECK(p.Omega2 == 0.9);
    p.set("omega", 12.0);
    CHECK(p.omega_d == 12.0);
    // individual key after a group key overrides
    p.set("g_a2", 0.1);
    CHECK(p.g_a1 == 0.7);
    CHECK(p.g_a2 == 0.1);
    CHECK_FALSE(p.is_symmetric());
}

TEST_CASE("delta_es and omega_s_eff stay in sync")
{
    SystemParams p;
    p.set("delta_es1", -0.46);
    CHECK(p.omega_s1_eff == doctest::Approx(10.46).epsilon(1e-14));
    p.set("omega_s4_eff", 9.54);
    CHECK(p.delta_es4 == doctest::Approx(0.46).epsilon(1e-12));
    p.set("omega_e1", 11.0); // moving the excited level re-derives the detuning
    CHECK(p.delta_es1 == doctest::Approx(11.0 - 10.46).epsilon(1e-12));
}

TEST_CASE("config stream parsing")
{
    std::istringstream in(
        "# comment\n"
        "omega = 9\n"
        "g_a = 0.25   # trailing comment\n"
        "\n"
        "l = 4\n");
    SystemParams p = load_config_stream(in, "test");
    CHECK(p.omega_b == 9.0);
    CHECK(p.g_b4 == 0.25);
    CHECK(p.l == 4);
}

TEST_CASE("config errors carry the line number")
{
    std::istringstream in("omega = 9\nnot a line\n");
    try {
        load_config_stream(in, "bad.conf");
        FAIL("expected ConfigError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConfigError);
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
    std::istringstream in2("nonsense_key = 1\n");
    CHECK_THROWS_AS(load_config_stream(in2, "bad.conf"), Error);
}

TEST_CASE("validate rejects unphysical parameters")
{
    SystemParams p;
    p.xi = 0.0;
    CHECK_THROWS_AS(validate(p), Error);
    p = SystemParams{};
    p.l = 0;
    CHECK_THROWS_AS(validate(p), Error);
    p = SystemParams{};
    p.g_c3 = -0.1;
    CHECK_THROWS_AS(validate(p), Error);
    p = SystemParams{};
    p.Omega2 = -1.0;
    CHECK_THROWS_AS(validate(p), Error);
}

TEST_CASE("port names round-trip")
{
    for (auto port : {IncidencePort::LeftA, IncidencePort::LeftB,
                      IncidencePort::RightA, IncidencePort::RightB})
        CHECK(port_from_name(port_name(port)) == port);
    CHECK_THROWS_AS(port_from_name("nowhere"), Error);
}

TEST_CASE("dispersion round trip inside the band")
{
    for (int i = 1; i < 60; ++i) {
        double k = M_PI * i / 60.0;
        double E = dispersion_energy(k, 10.0, 1.0);
        CHECK(wavevector_from_energy(E, 10.0, 1.0) == doctest::Approx(k).epsilon(1e-12));
    }
}

TEST_CASE("band edges and out-of-band energies are rejected")
{
    CHECK_THROWS_AS(wavevector_from_energy(8.0, 10.0, 1.0), Error);
    CHECK_THROWS_AS(wavevector_from_energy(12.0, 10.0, 1.0), Error);
    CHECK_THROWS_AS(wavevector_from_energy(7.0, 10.0, 1.0), Error);
    try {
        wavevector_from_energy(13.0, 10.0, 1.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OutOfBand);
    }
}

TEST_CASE("complex wavevector decays in the right direction")
{
    auto k = complex_wavevector(12.5, 10.0, 1.0);
    CHECK(k.imag() > 0.0);
    // E = omega - 2 xi cos k must still hold
    auto E = 10.0 - 2.0 * std::cos(k);
    CHECK(std::abs(E - 12.5) < 1e-10);
    auto k2 = complex_wavevector(7.2, 10.0, 1.0);
    CHECK(k2.imag() > 0.0);
}

} // TEST_SUITE
