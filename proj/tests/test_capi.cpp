#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "qrouter/qrouter.h"

TEST_SUITE("capi") {

TEST_CASE("version and error strings")
{
    CHECK(qr_version() != nullptr);
    CHECK(std::strlen(qr_version()) > 0);
    CHECK(qr_last_error() != nullptr);
}

TEST_CASE("params lifecycle, set/get and clone")
{
    qr_params* p = qr_params_create();
    REQUIRE(p != nullptr);
    double v = 0.0;
    CHECK(qr_params_get(p, "omega_a", &v) == QR_OK);
    CHECK(v == 10.0);
    CHECK(qr_params_set(p, "g_a", 0.7) == QR_OK);
    CHECK(qr_params_get(p, "g_b4", &v) == QR_OK);
    CHECK(v == 0.7);
    CHECK(qr_params_set(p, "no_such_key", 1.0) == QR_ERR_CONFIG);
    CHECK(std::string(qr_last_error()).find("no_such_key") != std::string::npos);

    qr_params* q = qr_params_clone(p);
    CHECK(qr_params_set(q, "g_a", 0.2) == QR_OK);
    CHECK(qr_params_get(p, "g_a1", &v) == QR_OK);
    CHECK(v == 0.7); // clone is independent
    qr_params_free(q);

    int symmetric = -1;
    CHECK(qr_params_validate(p, &symmetric) == QR_OK);
    CHECK(symmetric == 1);
    CHECK(qr_params_set(p, "xi", -1.0) == QR_OK);
    CHECK(qr_params_validate(p, nullptr) == QR_ERR_INVARIANT);
    qr_params_free(p);
}

TEST_CASE("config file loading")
{
    qr_params* p = qr_params_create();
    CHECK(qr_params_load_file(p, "/nonexistent/x.conf") == QR_ERR_CONFIG);
    qr_params_free(p);
}

TEST_CASE("dispersion helpers")
{
    double k = 0.0;
    CHECK(qr_wavevector_from_energy(10.5, 10.0, 1.0, &k) == QR_OK);
    CHECK(qr_dispersion_energy(k, 10.0, 1.0) == doctest::Approx(10.5).epsilon(1e-12));
    CHECK(qr_wavevector_from_energy(12.5, 10.0, 1.0, &k) == QR_ERR_OUT_OF_BAND);
}

TEST_CASE("amplitudes and rates through the C surface")
{
    qr_params* p = qr_params_create();
    double cf[8], sv[8], r[5];
    REQUIRE(qr_closed_form_amplitudes(p, 10.3, 0, cf) == QR_OK);
    REQUIRE(qr_solve_amplitudes(p, 10.3, QR_PORT_LEFT_A, sv) == QR_OK);
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(cf[i] - sv[i]) < 1e-8);
    REQUIRE(qr_routing_rates(p, 10.3, QR_PORT_LEFT_A, QR_ENGINE_AUTO, r) == QR_OK);
    CHECK(r[0] == doctest::Approx(cf[0] * cf[0] + cf[1] * cf[1]).epsilon(1e-9));
    CHECK(r[4] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(qr_closed_form_amplitudes(p, 10.0, 0, cf) == QR_ERR_NEAR_POLE);
    CHECK(qr_closed_form_amplitudes(p, 10.0, 1, cf) == QR_OK);

    double t = 0.0, n = 0.0;
    CHECK(qr_reverse_transmission(p, 10.3, &t) == QR_OK);
    CHECK(qr_nonreciprocity(p, 10.3, &n) == QR_OK);
    CHECK(std::abs(n) < 1e-10); // phi = 0 point is reciprocal
    qr_params_free(p);
}

TEST_CASE("scattering frequencies and report")
{
    qr_params* p = qr_params_create();
    double f[9];
    REQUIRE(qr_scattering_frequencies(p, f) == QR_OK);
    CHECK(f[0] == 10.0);
    CHECK(f[1] == doctest::Approx(9.5).epsilon(1e-10));
    CHECK(f[2] == doctest::Approx(10.5).epsilon(1e-10));
    char* json = nullptr;
    REQUIRE(qr_scatfreq_report_json(p, &json) == QR_OK);
    std::string doc(json);
    qr_string_free(json);
    CHECK(doc.find("numeric") != std::string::npos);
    CHECK(doc.find("matching_variant") != std::string::npos);
    qr_params_free(p);
}

TEST_CASE("sweep builder end to end")
{
    qr_params* p = qr_params_create();
    qr_sweep* s = qr_sweep_create(p);
    REQUIRE(s != nullptr);
    double grid[11];
    for (int i = 0; i < 11; ++i)
        grid[i] = 8.5 + 0.3 * i;
    CHECK(qr_sweep_add_axis(s, "E", grid, 11) == QR_OK);
    CHECK(qr_sweep_add_quantity(s, "L_a") == QR_OK);
    CHECK(qr_sweep_add_quantity(s, "R_b") == QR_OK);
    CHECK(qr_sweep_add_quantity(s, "bogus") == QR_ERR_BAD_ARGUMENT);
    CHECK(qr_sweep_set_engine(s, QR_ENGINE_SOLVER) == QR_OK);
    CHECK(qr_sweep_set_threads(s, 2) == QR_OK);
    REQUIRE(qr_sweep_run(s) == QR_OK);
    CHECK(qr_sweep_point_count(s) == 11);
    CHECK(qr_sweep_failed_count(s) == 0);
    double v = 0.0;
    CHECK(qr_sweep_value(s, "L_a", 5, &v) == QR_OK);
    double direct[5];
    qr_routing_rates(p, grid[5], QR_PORT_LEFT_A, QR_ENGINE_SOLVER, direct);
    CHECK(v == doctest::Approx(direct[0]).epsilon(1e-12));
    CHECK(std::string(qr_sweep_reason(s, 5)).empty());

    char* csv = nullptr;
    REQUIRE(qr_sweep_csv(s, &csv) == QR_OK);
    std::string first(csv);
    qr_string_free(csv);
    CHECK(first.rfind("E,L_a,R_b,reason\n", 0) == 0);
    REQUIRE(qr_sweep_csv(s, &csv) == QR_OK);
    CHECK(first == csv);
    qr_string_free(csv);

    char* j = nullptr;
    REQUIRE(qr_sweep_json(s, &j) == QR_OK);
    CHECK(std::string(j).find("\"L_a\"") != std::string::npos);
    qr_string_free(j);
    qr_sweep_free(s);
    qr_params_free(p);
}

TEST_CASE("wavepacket through the C surface")
{
    qr_params* p = qr_params_create();
    char* json = nullptr;
    REQUIRE(qr_wavepacket_run(p, 420, 1.5, 18.0, 110, 0.005, 0.0, &json) == QR_OK);
    std::string doc(json);
    qr_string_free(json);
    CHECK(doc.find("norm_drift") != std::string::npos);
    CHECK(qr_wavepacket_run(p, 420, 4.0, 18.0, 110, 0.005, 0.0, &json)
          == QR_ERR_BAD_ARGUMENT);
    qr_params_free(p);
}

} // TEST_SUITE
