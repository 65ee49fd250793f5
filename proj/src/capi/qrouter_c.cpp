#include "qrouter/qrouter.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "core/analysis.hpp"
#include "core/closed_form.hpp"
#include "core/dispersion.hpp"
#include "core/errors.hpp"
#include "core/params.hpp"
#include "core/solver.hpp"
#include "core/wavepacket.hpp"

using namespace qrouter;

struct qr_params {
    SystemParams p;
};

struct qr_sweep {
    SystemParams params;
    std::vector<SweepAxis> axes;
    std::vector<Quantity> quantities;
    SweepOptions opts;
    std::optional<SweepResult> result;
};

namespace {

thread_local std::string g_last_error;

qr_status status_of(ErrorCode c)
{
    switch (c) {
    case ErrorCode::None: return QR_OK;
    case ErrorCode::ViolatedInvariant: return QR_ERR_INVARIANT;
    case ErrorCode::OutOfBand: return QR_ERR_OUT_OF_BAND;
    case ErrorCode::NotSymmetric: return QR_ERR_NOT_SYMMETRIC;
    case ErrorCode::NearPole: return QR_ERR_NEAR_POLE;
    case ErrorCode::ComplexRoot: return QR_ERR_COMPLEX_ROOT;
    case ErrorCode::SingularSystem: return QR_ERR_SINGULAR;
    case ErrorCode::EngineMismatch: return QR_ERR_ENGINE_MISMATCH;
    case ErrorCode::NormDrift: return QR_ERR_NORM_DRIFT;
    case ErrorCode::PacketNotCleared: return QR_ERR_PACKET_NOT_CLEARED;
    case ErrorCode::ConfigError: return QR_ERR_CONFIG;
    case ErrorCode::BadArgument: return QR_ERR_BAD_ARGUMENT;
    }
    return QR_ERR_INTERNAL;
}

template <typename F>
qr_status wrap(F&& f)
{
    try {
        f();
        g_last_error.clear();
        return QR_OK;
    } catch (const Error& err) {
        g_last_error = err.what();
        return status_of(err.code());
    } catch (const std::exception& ex) {
        g_last_error = ex.what();
        return QR_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

IncidencePort to_port(qr_port p)
{
    switch (p) {
    case QR_PORT_LEFT_A: return IncidencePort::LeftA;
    case QR_PORT_LEFT_B: return IncidencePort::LeftB;
    case QR_PORT_RIGHT_A: return IncidencePort::RightA;
    case QR_PORT_RIGHT_B: return IncidencePort::RightB;
    }
    throw Error(ErrorCode::BadArgument, "invalid port value");
}

Engine to_engine(qr_engine e)
{
    switch (e) {
    case QR_ENGINE_AUTO: return Engine::Auto;
    case QR_ENGINE_CLOSED: return Engine::ClosedForm;
    case QR_ENGINE_SOLVER: return Engine::Solver;
    }
    throw Error(ErrorCode::BadArgument, "invalid engine value");
}

void store_amplitudes(double out[8], cdouble la, cdouble ra, cdouble lb, cdouble rb)
{
    out[0] = la.real(); out[1] = la.imag();
    out[2] = ra.real(); out[3] = ra.imag();
    out[4] = lb.real(); out[5] = lb.imag();
    out[6] = rb.real(); out[7] = rb.imag();
}

} // namespace

extern "C" {

const char* qr_version(void) { return "1.0.0"; }

const char* qr_last_error(void) { return g_last_error.c_str(); }

void qr_string_free(char* s) { std::free(s); }

qr_params* qr_params_create(void) { return new qr_params{}; }

qr_params* qr_params_clone(const qr_params* p)
{
    return p ? new qr_params{*p} : nullptr;
}

void qr_params_free(qr_params* p) { delete p; }

qr_status qr_params_set(qr_params* p, const char* key, double value)
{
    return wrap([&] { p->p.set(key, value); });
}

qr_status qr_params_get(const qr_params* p, const char* key, double* value)
{
    return wrap([&] {
        auto m = p->p.as_map();
        auto it = m.find(key);
        if (it == m.end())
            throw Error(ErrorCode::BadArgument, std::string("unknown key '") + key + "'");
        *value = it->second;
    });
}

qr_status qr_params_load_file(qr_params* p, const char* path)
{
    return wrap([&] { p->p = load_config_file(path); });
}

qr_status qr_params_validate(const qr_params* p, int* symmetric)
{
    return wrap([&] {
        ValidatedParams vp = validate(p->p);
        if (symmetric)
            *symmetric = vp.symmetric() ? 1 : 0;
    });
}

double qr_dispersion_energy(double k, double omega_x, double xi)
{
    return dispersion_energy(k, omega_x, xi);
}

qr_status qr_wavevector_from_energy(double E, double omega_x, double xi, double* k)
{
    return wrap([&] { *k = wavevector_from_energy(E, omega_x, xi); });
}

qr_status qr_closed_form_amplitudes(const qr_params* p, double E, int nudge,
                                    double out[8])
{
    return wrap([&] {
        auto a = amplitudes_closed_form(validate(p->p), E, nudge != 0);
        store_amplitudes(out, a.l_a, a.r_a, a.l_b, a.r_b);
    });
}

qr_status qr_solve_amplitudes(const qr_params* p, double E, qr_port port,
                              double out[8])
{
    return wrap([&] {
        auto s = solve_scattering(validate(p->p), E, to_port(port));
        store_amplitudes(out, s.l_a, s.r_a, s.l_b, s.r_b);
    });
}

qr_status qr_routing_rates(const qr_params* p, double E, qr_port port,
                           qr_engine engine, double out[5])
{
    return wrap([&] {
        ValidatedParams vp = validate(p->p);
        Engine e = to_engine(engine);
        RoutingRates r{};
        const bool closed = e == Engine::ClosedForm
            || (e == Engine::Auto && vp.symmetric() && to_port(port) == IncidencePort::LeftA);
        if (closed) {
            if (to_port(port) != IncidencePort::LeftA)
                throw Error(ErrorCode::EngineMismatch,
                            "the closed-form engine covers LeftA incidence only");
            auto a = amplitudes_closed_form(vp, E);
            r.L_a = std::norm(a.l_a);
            r.R_a = std::norm(a.r_a);
            r.L_b = std::norm(a.l_b);
            r.R_b = std::norm(a.r_b);
            r.total = r.L_a + r.R_a + r.L_b + r.R_b;
        } else {
            r = routing_rates(solve_scattering(vp, E, to_port(port)));
        }
        out[0] = r.L_a; out[1] = r.R_a; out[2] = r.L_b; out[3] = r.R_b;
        out[4] = r.total;
    });
}

qr_status qr_reverse_transmission(const qr_params* p, double E, double* t_lb)
{
    return wrap([&] { *t_lb = reverse_transmission(validate(p->p), E); });
}

qr_status qr_nonreciprocity(const qr_params* p, double E, double* n)
{
    return wrap([&] { *n = nonreciprocity(validate(p->p), E); });
}

qr_status qr_scattering_frequencies(const qr_params* p, double out[9])
{
    return wrap([&] {
        auto f = scattering_frequencies(validate(p->p));
        out[0] = f.omega_0;
        out[1] = f.omega_minus_1;
        out[2] = f.omega_plus_1;
        out[3] = f.omega_minus_prime_1;
        out[4] = f.omega_plus_prime_1;
        out[5] = f.omega_minus_2;
        out[6] = f.omega_plus_2;
        out[7] = f.omega_minus_prime_2;
        out[8] = f.omega_plus_prime_2;
    });
}

qr_status qr_scatfreq_report_json(const qr_params* p, char** out_json)
{
    return wrap([&] {
        ValidatedParams vp = validate(p->p);
        const SystemParams& sp = vp.get();
        nlohmann::json doc;
        doc["params"] = sp.as_map();
        doc["omega_0"] = sp.omega_a;
        const char* names[4] = {"omega_minus_prime", "omega_minus", "omega_plus",
                                "omega_plus_prime"};
        for (int index : {1, 2}) {
            const double Omega = index == 1 ? sp.Omega1 : sp.Omega2;
            auto roots = v_roots_numeric(vp, index);
            auto printed = freq_formula_variant(sp.omega_a, sp.xi, sp.g_c1, Omega, false);
            auto quartic = freq_formula_variant(sp.omega_a, sp.xi, sp.g_c1, Omega, true);
            nlohmann::json entry;
            entry["Omega"] = Omega;
            for (const auto& r : roots.roots)
                entry["numeric_roots"].push_back({r.real(), r.imag()});
            entry["all_roots_real"] = roots.all_real;
            const double pr[4] = {printed.omega_minus_prime, printed.omega_minus,
                                  printed.omega_plus, printed.omega_plus_prime};
            const double qu[4] = {quartic.omega_minus_prime, quartic.omega_minus,
                                  quartic.omega_plus, quartic.omega_plus_prime};
            // quartic roots = the five numeric roots minus the omega prefactor
            double nm[4];
            {
                int drop = 0, n = 0;
                for (int j = 1; j < 5; ++j)
                    if (std::abs(roots.roots[j].real() - sp.omega_a)
                        < std::abs(roots.roots[drop].real() - sp.omega_a))
                        drop = j;
                for (int j = 0; j < 5; ++j)
                    if (j != drop)
                        nm[n++] = roots.roots[j].real();
            }
            double worst_printed = 0.0, worst_quartic = 0.0;
            for (int j = 0; j < 4; ++j) {
                entry["printed_first_term_Omega2"][names[j]] = pr[j];
                entry["first_term_Omega4"][names[j]] = qu[j];
                entry["numeric"][names[j]] = nm[j];
                worst_printed = std::max(worst_printed, std::abs(pr[j] - nm[j]));
                worst_quartic = std::max(worst_quartic, std::abs(qu[j] - nm[j]));
            }
            entry["max_deviation_Omega2"] = worst_printed;
            entry["max_deviation_Omega4"] = worst_quartic;
            entry["matching_variant"] =
                worst_quartic <= worst_printed ? "Omega4" : "Omega2";
            doc[index == 1 ? "index_1" : "index_2"] = std::move(entry);
        }
        *out_json = dup_string(doc.dump(2));
    });
}

qr_sweep* qr_sweep_create(const qr_params* p)
{
    if (!p)
        return nullptr;
    auto* s = new qr_sweep{};
    s->params = p->p;
    return s;
}

void qr_sweep_free(qr_sweep* s) { delete s; }

qr_status qr_sweep_add_axis(qr_sweep* s, const char* name, const double* grid, long n)
{
    return wrap([&] {
        if (n <= 0)
            throw Error(ErrorCode::BadArgument, "axis grid must be nonempty");
        s->axes.push_back({name, std::vector<double>(grid, grid + n)});
    });
}

qr_status qr_sweep_add_quantity(qr_sweep* s, const char* name)
{
    return wrap([&] { s->quantities.push_back(quantity_from_name(name)); });
}

qr_status qr_sweep_set_engine(qr_sweep* s, qr_engine engine)
{
    return wrap([&] { s->opts.engine = to_engine(engine); });
}

qr_status qr_sweep_set_threads(qr_sweep* s, int threads)
{
    return wrap([&] { s->opts.threads = threads; });
}

qr_status qr_sweep_set_nudge(qr_sweep* s, int nudge)
{
    return wrap([&] { s->opts.nudge_poles = nudge != 0; });
}

qr_status qr_sweep_set_fixed_energy(qr_sweep* s, double E)
{
    return wrap([&] {
        s->opts.energy = E;
        s->opts.delta.reset();
    });
}

qr_status qr_sweep_set_fixed_delta(qr_sweep* s, double delta)
{
    return wrap([&] {
        s->opts.delta = delta;
        s->opts.energy.reset();
    });
}

qr_status qr_sweep_run(qr_sweep* s)
{
    return wrap([&] { s->result = sweep(s->params, s->axes, s->quantities, s->opts); });
}

long qr_sweep_point_count(const qr_sweep* s)
{
    return s && s->result ? static_cast<long>(s->result->n_points()) : 0;
}

long qr_sweep_failed_count(const qr_sweep* s)
{
    if (!s || !s->result)
        return 0;
    long n = 0;
    for (const auto& r : s->result->reasons)
        if (!r.empty())
            ++n;
    return n;
}

qr_status qr_sweep_value(const qr_sweep* s, const char* quantity, long point,
                         double* value)
{
    return wrap([&] {
        if (!s->result)
            throw Error(ErrorCode::BadArgument, "sweep has not been run");
        Quantity q = quantity_from_name(quantity);
        std::size_t qi = 0;
        while (qi < s->result->quantities.size() && s->result->quantities[qi] != q)
            ++qi;
        if (qi == s->result->quantities.size())
            throw Error(ErrorCode::BadArgument, "quantity not part of this sweep");
        if (point < 0 || point >= static_cast<long>(s->result->n_points()))
            throw Error(ErrorCode::BadArgument, "point index out of range");
        *value = s->result->value(qi, static_cast<std::size_t>(point));
    });
}

const char* qr_sweep_reason(const qr_sweep* s, long point)
{
    if (!s || !s->result || point < 0
        || point >= static_cast<long>(s->result->reasons.size()))
        return "";
    return s->result->reasons[static_cast<std::size_t>(point)].c_str();
}

qr_status qr_sweep_csv(const qr_sweep* s, char** out)
{
    return wrap([&] {
        if (!s->result)
            throw Error(ErrorCode::BadArgument, "sweep has not been run");
        *out = dup_string(s->result->to_csv());
    });
}

qr_status qr_sweep_json(const qr_sweep* s, char** out)
{
    return wrap([&] {
        if (!s->result)
            throw Error(ErrorCode::BadArgument, "sweep has not been run");
        *out = dup_string(s->result->to_json());
    });
}

qr_status qr_wavepacket_run(const qr_params* p, int n_cells, double center_k,
                            double width_sites, int launch_offset, double dt,
                            double t_max, char** out_json)
{
    return wrap([&] {
        ValidatedParams vp = validate(p->p);
        LatticeConfig cfg;
        if (n_cells > 0)
            cfg.n_cells = n_cells;
        if (center_k > 0.0)
            cfg.packet_center_k = center_k;
        if (width_sites > 0.0)
            cfg.packet_width_sites = width_sites;
        if (launch_offset > 0)
            cfg.launch_offset = launch_offset;
        if (dt > 0.0)
            cfg.dt = dt;
        cfg.t_max = t_max;
        auto rep = run_wavepacket(vp, cfg);
        *out_json = dup_string(wavepacket_report_json(vp, cfg, rep));
    });
}

} // extern "C"
