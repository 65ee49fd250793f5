// Command-line front end for the qrouter shared library.  Subcommands map
// onto the C API: spectrum and nonreciprocity drive sweeps and write CSV,
// scatfreq and wavepacket write JSON reports, validate runs the invariant
// suite at the given parameters.
//
// Exit codes: 0 ok, 1 validation failure, 2 config/usage error,
// 3 every grid point failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrouter/qrouter.h"

namespace {

struct GridSpec {
    std::string name;
    std::vector<double> values;
};

GridSpec parse_grid(const std::string& spec)
{
    // name:start:stop:count
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':'))
        parts.push_back(tok);
    if (parts.size() != 4)
        throw CLI::ValidationError("--grid", "expected name:start:stop:count, got '" + spec + "'");
    GridSpec g;
    g.name = parts[0];
    double start, stop;
    long count;
    try {
        start = std::stod(parts[1]);
        stop = std::stod(parts[2]);
        count = std::stol(parts[3]);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "cannot parse '" + spec + "'");
    }
    if (count < 1)
        throw CLI::ValidationError("--grid", "count must be >= 1");
    for (long i = 0; i < count; ++i)
        g.values.push_back(count == 1 ? start
                                      : start + (stop - start) * static_cast<double>(i)
                                            / static_cast<double>(count - 1));
    return g;
}

[[noreturn]] void die(int code, const std::string& msg)
{
    std::cerr << "qrouter: " << msg << "\n";
    std::exit(code);
}

void check(qr_status st, int exit_code = 2)
{
    if (st != QR_OK)
        die(exit_code, qr_last_error());
}

struct ParamsHandle {
    qr_params* p = qr_params_create();
    ~ParamsHandle() { qr_params_free(p); }
    ParamsHandle() = default;
    ParamsHandle(const ParamsHandle&) = delete;
    ParamsHandle& operator=(const ParamsHandle&) = delete;
};

struct SweepHandle {
    qr_sweep* s = nullptr;
    explicit SweepHandle(const qr_params* p) : s(qr_sweep_create(p)) {}
    ~SweepHandle() { qr_sweep_free(s); }
    SweepHandle(const SweepHandle&) = delete;
    SweepHandle& operator=(const SweepHandle&) = delete;
};

void load_params(ParamsHandle& ph, const std::string& config,
                 const std::vector<std::string>& sets)
{
    if (!config.empty())
        check(qr_params_load_file(ph.p, config.c_str()));
    for (const auto& kv : sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            die(2, "--set expects key=value, got '" + kv + "'");
        double value;
        try {
            value = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            die(2, "cannot parse value in '" + kv + "'");
        }
        check(qr_params_set(ph.p, kv.substr(0, eq).c_str(), value));
    }
    check(qr_params_validate(ph.p, nullptr));
}

void write_file(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out)
            die(2, "cannot write '" + tmp + "'");
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        die(2, "cannot rename '" + tmp + "' to '" + path + "'");
}

nlohmann::json params_json(const qr_params* p)
{
    static const char* keys[] = {
        "omega_a", "omega_b", "omega_c", "omega_d", "xi",
        "g_a1", "g_a2", "g_b3", "g_b4", "g_c1", "g_c3", "g_d2", "g_d4",
        "omega_e1", "omega_e2", "omega_e3", "omega_e4",
        "omega_s1_eff", "omega_s4_eff", "Omega1", "Omega2", "phi", "l",
        "delta_es1", "delta_es4",
    };
    nlohmann::json out;
    for (const char* k : keys) {
        double v = 0.0;
        qr_params_get(p, k, &v);
        out[k] = v;
    }
    return out;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const qr_params* p, const std::string& engine,
                    const std::vector<GridSpec>& grids,
                    std::chrono::steady_clock::time_point started)
{
    nlohmann::json m;
    m["command"] = command;
    m["tool_version"] = qr_version();
    m["engine"] = engine;
    m["params"] = params_json(p);
    m["grids"] = nlohmann::json::array();
    for (const auto& g : grids)
        m["grids"].push_back({{"name", g.name},
                              {"points", g.values.size()},
                              {"start", g.values.front()},
                              {"stop", g.values.back()}});
    m["output"] = out_path;
    m["duration_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

qr_engine engine_from_string(const std::string& s)
{
    if (s == "auto") return QR_ENGINE_AUTO;
    if (s == "closed") return QR_ENGINE_CLOSED;
    if (s == "solver") return QR_ENGINE_SOLVER;
    die(2, "unknown engine '" + s + "' (expected closed|solver|auto)");
}

struct SweepArgs {
    std::string config;
    std::vector<std::string> sets;
    std::vector<std::string> grids;
    std::vector<std::string> quantities;
    std::string engine = "auto";
    std::string out = "sweep.csv";
    int threads = 1;
    bool nudge = false;
    std::optional<double> energy;
    std::optional<double> delta;
};

void add_sweep_flags(CLI::App* cmd, SweepArgs& a, bool with_quantities)
{
    cmd->add_option("--config", a.config, "parameter config file");
    cmd->add_option("--set", a.sets, "override a parameter, key=value")->take_all();
    cmd->add_option("--grid", a.grids, "sweep axis, name:start:stop:count (max 2)")
        ->required()
        ->expected(1, 2);
    if (with_quantities)
        cmd->add_option("--quantity", a.quantities,
                        "quantity to tabulate (L_a R_a L_b R_b T_lb N); "
                        "default: the four routing rates")
            ->take_all();
    cmd->add_option("--engine", a.engine, "closed|solver|auto (default auto)");
    cmd->add_option("--out", a.out, "output CSV path");
    cmd->add_option("--threads", a.threads, "worker threads (0 = hardware)");
    cmd->add_flag("--nudge-poles", a.nudge, "offset energies that sit on a pole");
    cmd->add_option("--energy", [&a](const CLI::results_t& r) {
        a.energy = std::stod(r[0]);
        return true;
    }, "fixed E when no energy axis is swept");
    cmd->add_option("--delta", [&a](const CLI::results_t& r) {
        a.delta = std::stod(r[0]);
        return true;
    }, "fixed Delta (= E - omega_a) when no energy axis is swept");
}

int run_sweep_command(const std::string& command, const SweepArgs& a,
                      const std::vector<std::string>& quantities)
{
    const auto started = std::chrono::steady_clock::now();
    ParamsHandle ph;
    load_params(ph, a.config, a.sets);

    SweepHandle sh(ph.p);
    std::vector<GridSpec> grids;
    for (const auto& gs : a.grids) {
        grids.push_back(parse_grid(gs));
        check(qr_sweep_add_axis(sh.s, grids.back().name.c_str(), grids.back().values.data(),
                                static_cast<long>(grids.back().values.size())));
    }
    for (const auto& q : quantities)
        check(qr_sweep_add_quantity(sh.s, q.c_str()));
    check(qr_sweep_set_engine(sh.s, engine_from_string(a.engine)));
    check(qr_sweep_set_threads(sh.s, a.threads));
    check(qr_sweep_set_nudge(sh.s, a.nudge ? 1 : 0));
    if (a.energy)
        check(qr_sweep_set_fixed_energy(sh.s, *a.energy));
    if (a.delta)
        check(qr_sweep_set_fixed_delta(sh.s, *a.delta));

    check(qr_sweep_run(sh.s));
    const long points = qr_sweep_point_count(sh.s);
    const long failed = qr_sweep_failed_count(sh.s);
    if (points > 0 && failed == points) {
        std::cerr << "qrouter: all " << points << " grid points failed; first reason: "
                  << qr_sweep_reason(sh.s, 0) << "\n";
        return 3;
    }

    char* csv = nullptr;
    check(qr_sweep_csv(sh.s, &csv));
    write_file(a.out, csv);
    qr_string_free(csv);
    write_manifest(a.out, command, ph.p, a.engine, grids, started);
    std::cerr << command << ": wrote " << points << " points (" << failed
              << " failed) to " << a.out << "\n";
    return 0;
}

int cmd_scatfreq(const std::string& config, const std::vector<std::string>& sets,
                 const std::string& out)
{
    const auto started = std::chrono::steady_clock::now();
    ParamsHandle ph;
    load_params(ph, config, sets);
    char* json = nullptr;
    check(qr_scatfreq_report_json(ph.p, &json));
    write_file(out, std::string(json) + "\n");
    qr_string_free(json);
    write_manifest(out, "scatfreq", ph.p, "closed", {}, started);
    std::cerr << "scatfreq: wrote " << out << "\n";
    return 0;
}

int cmd_wavepacket(const std::string& config, const std::vector<std::string>& sets,
                   int n_cells, double center_k, double width, int offset, double dt,
                   double t_max, const std::string& out)
{
    const auto started = std::chrono::steady_clock::now();
    ParamsHandle ph;
    load_params(ph, config, sets);
    char* json = nullptr;
    check(qr_wavepacket_run(ph.p, n_cells, center_k, width, offset, dt, t_max, &json), 1);
    write_file(out, std::string(json) + "\n");
    qr_string_free(json);
    write_manifest(out, "wavepacket", ph.p, "lattice", {}, started);
    std::cerr << "wavepacket: wrote " << out << "\n";
    return 0;
}

int cmd_validate(const std::string& config, const std::vector<std::string>& sets)
{
    ParamsHandle ph;
    load_params(ph, config, sets);
    int symmetric = 0;
    check(qr_params_validate(ph.p, &symmetric));

    double omega = 0.0, xi = 0.0;
    qr_params_get(ph.p, "omega_a", &omega);
    qr_params_get(ph.p, "xi", &xi);
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name
                  << (detail.empty() ? "" : "  (" + detail + ")") << "\n";
        if (!ok)
            ++failures;
    };

    // dispersion round trip
    {
        double worst = 0.0;
        for (int i = 1; i < 40; ++i) {
            double k = M_PI * i / 40.0;
            double back = 0.0;
            if (qr_wavevector_from_energy(qr_dispersion_energy(k, omega, xi), omega, xi,
                                          &back) == QR_OK)
                worst = std::max(worst, std::abs(back - k));
        }
        report("dispersion round trip", worst < 1e-12, "max |dk| = " + std::to_string(worst));
    }
    // flux conservation over a coarse energy grid
    {
        double worst = 0.0;
        bool any = false;
        for (int i = 1; i <= 17; ++i) {
            double E = omega - 2.0 * xi + 4.0 * xi * i / 18.0;
            double r[5];
            if (qr_routing_rates(ph.p, E, QR_PORT_LEFT_A, QR_ENGINE_SOLVER, r) == QR_OK) {
                worst = std::max(worst, std::abs(r[4] - 1.0));
                any = true;
            }
        }
        report("flux conservation", any && worst < 1e-9,
               "max |total - 1| = " + std::to_string(worst));
    }
    // closed-form / solver equivalence (symmetric parameters only)
    if (symmetric) {
        double worst = 0.0;
        for (int i = 1; i <= 33; ++i) {
            double E = omega - 2.0 * xi + 4.0 * xi * i / 34.0;
            double a[8], b[8];
            if (qr_closed_form_amplitudes(ph.p, E, 0, a) == QR_OK
                && qr_solve_amplitudes(ph.p, E, QR_PORT_LEFT_A, b) == QR_OK)
                for (int q = 0; q < 8; ++q)
                    worst = std::max(worst, std::abs(a[q] - b[q]));
        }
        report("closed-form equivalence", worst < 1e-8,
               "max deviation = " + std::to_string(worst));
    } else {
        std::cout << "SKIP  closed-form equivalence  (asymmetric parameters)\n";
    }
    // phase duality L_b(phi) = T_lb(-phi)
    {
        double phi = 0.0;
        qr_params_get(ph.p, "phi", &phi);
        double worst = 0.0;
        bool any = false;
        for (int i = 1; i <= 7; ++i) {
            double E = omega - 2.0 * xi + 4.0 * xi * i / 8.0;
            double fwd[5], t = 0.0;
            qr_params* rev = qr_params_clone(ph.p);
            qr_params_set(rev, "phi", -phi);
            if (qr_routing_rates(ph.p, E, QR_PORT_LEFT_A, QR_ENGINE_SOLVER, fwd) == QR_OK
                && qr_reverse_transmission(rev, E, &t) == QR_OK) {
                worst = std::max(worst, std::abs(fwd[2] - t));
                any = true;
            }
            qr_params_free(rev);
        }
        report("phase duality L_b(phi) = T_lb(-phi)", any && worst < 1e-10,
               "max deviation = " + std::to_string(worst));
    }
    std::cout << (failures == 0 ? "validate: all checks passed\n"
                                : "validate: " + std::to_string(failures) + " check(s) failed\n");
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"single-photon router simulator (four-node CRW model)"};
    app.require_subcommand(1);

    SweepArgs spec_args;
    auto* spectrum = app.add_subcommand("spectrum", "routing-rate spectra over a grid");
    add_sweep_flags(spectrum, spec_args, /*with_quantities=*/true);

    SweepArgs nr_args;
    auto* nonrec = app.add_subcommand("nonreciprocity",
                                      "forward/reverse transmission and N over a grid");
    add_sweep_flags(nonrec, nr_args, /*with_quantities=*/false);

    std::string sf_config, sf_out = "scatfreq.json";
    std::vector<std::string> sf_sets;
    auto* scatfreq = app.add_subcommand("scatfreq",
                                        "scattering frequencies: analytic values vs quintic roots");
    scatfreq->add_option("--config", sf_config, "parameter config file");
    scatfreq->add_option("--set", sf_sets, "override a parameter, key=value")->take_all();
    scatfreq->add_option("--out", sf_out, "output JSON path");

    std::string va_config;
    std::vector<std::string> va_sets;
    auto* validate_cmd = app.add_subcommand("validate", "run the invariant suite");
    validate_cmd->add_option("--config", va_config, "parameter config file");
    validate_cmd->add_option("--set", va_sets, "override a parameter, key=value")->take_all();

    std::string wp_config, wp_out = "wavepacket.json";
    std::vector<std::string> wp_sets;
    int wp_cells = 1200, wp_offset = 280;
    double wp_k = 1.5707963267948966, wp_width = 50.0, wp_dt = 0.005, wp_tmax = 0.0;
    auto* wavepacket = app.add_subcommand("wavepacket",
                                          "time-domain packet run on a truncated lattice");
    wavepacket->add_option("--config", wp_config, "parameter config file");
    wavepacket->add_option("--set", wp_sets, "override a parameter, key=value")->take_all();
    wavepacket->add_option("--cells", wp_cells, "cavities per chain");
    wavepacket->add_option("--carrier-k", wp_k, "packet carrier wave vector in (0, pi)");
    wavepacket->add_option("--width", wp_width, "packet width in sites");
    wavepacket->add_option("--offset", wp_offset, "launch offset left of j=0");
    wavepacket->add_option("--dt", wp_dt, "time step");
    wavepacket->add_option("--t-max", wp_tmax, "evolution time (0 = automatic)");
    wavepacket->add_option("--out", wp_out, "output JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed()) {
            auto q = spec_args.quantities;
            if (q.empty())
                q = {"L_a", "R_a", "L_b", "R_b"};
            return run_sweep_command("spectrum", spec_args, q);
        }
        if (nonrec->parsed()) {
            nr_args.engine = "solver";
            return run_sweep_command("nonreciprocity", nr_args, {"L_b", "T_lb", "N"});
        }
        if (scatfreq->parsed())
            return cmd_scatfreq(sf_config, sf_sets, sf_out);
        if (validate_cmd->parsed())
            return cmd_validate(va_config, va_sets);
        if (wavepacket->parsed())
            return cmd_wavepacket(wp_config, wp_sets, wp_cells, wp_k, wp_width, wp_offset,
                                  wp_dt, wp_tmax, wp_out);
    } catch (const std::exception& ex) {
        die(2, ex.what());
    }
    return 2;
}
