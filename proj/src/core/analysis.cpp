#include "analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "closed_form.hpp"
#include "dispersion.hpp"

namespace qrouter {

const char* quantity_name(Quantity q)
{
    switch (q) {
    case Quantity::L_a: return "L_a";
    case Quantity::R_a: return "R_a";
    case Quantity::L_b: return "L_b";
    case Quantity::R_b: return "R_b";
    case Quantity::T_lb: return "T_lb";
    case Quantity::N: return "N";
    }
    return "?";
}

Quantity quantity_from_name(const std::string& name)
{
    for (Quantity q : {Quantity::L_a, Quantity::R_a, Quantity::L_b, Quantity::R_b,
                       Quantity::T_lb, Quantity::N})
        if (name == quantity_name(q))
            return q;
    throw Error(ErrorCode::BadArgument, "unknown quantity '" + name + "'");
}

double reverse_transmission(const ValidatedParams& params, double E)
{
    return routing_rates(solve_scattering(params, E, IncidencePort::LeftB)).L_a;
}

double nonreciprocity(const ValidatedParams& params, double E)
{
    double forward = routing_rates(solve_scattering(params, E, IncidencePort::LeftA)).L_b;
    return forward - reverse_transmission(params, E);
}

std::size_t SweepResult::n_points() const
{
    std::size_t n = 1;
    for (const auto& a : axes)
        n *= a.grid.size();
    return n;
}

double SweepResult::value(std::size_t quantity_index, std::size_t point) const
{
    return values.at(quantity_index).at(point);
}

namespace {

std::string format_value(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void validate_axis(const SweepAxis& axis)
{
    if (axis.grid.empty())
        throw Error(ErrorCode::BadArgument, "axis '" + axis.name + "' has an empty grid");
    for (std::size_t j = 1; j < axis.grid.size(); ++j) {
        const bool increasing = axis.grid[1] > axis.grid[0];
        const bool step_up = axis.grid[j] > axis.grid[j - 1];
        if (axis.grid[j] == axis.grid[j - 1] || step_up != increasing)
            throw Error(ErrorCode::BadArgument,
                        "axis '" + axis.name + "' grid must be strictly monotone");
    }
    if (axis.name == "l")
        for (double v : axis.grid)
            if (std::abs(v - std::round(v)) > 1e-9)
                throw Error(ErrorCode::BadArgument, "axis 'l' grid must be integral");
}

bool is_energy_axis(const std::string& name)
{
    return name == "E" || name == "Delta";
}

bool needs_reverse(Quantity q)
{
    return q == Quantity::T_lb || q == Quantity::N;
}

bool needs_forward(Quantity q)
{
    return q != Quantity::T_lb;
}

} // namespace

SweepResult sweep(const SystemParams& params, std::vector<SweepAxis> axes,
                  std::vector<Quantity> quantities, const SweepOptions& opts)
{
    if (axes.empty() || axes.size() > 2)
        throw Error(ErrorCode::BadArgument, "sweep takes 1 or 2 axes");
    if (quantities.empty())
        throw Error(ErrorCode::BadArgument, "sweep needs at least one quantity");
    int energy_axes = 0;
    for (const auto& a : axes) {
        validate_axis(a);
        if (is_energy_axis(a.name))
            ++energy_axes;
    }
    if (energy_axes > 1)
        throw Error(ErrorCode::BadArgument, "at most one of E/Delta may be an axis");
    if (energy_axes == 0 && !opts.energy && !opts.delta)
        throw Error(ErrorCode::BadArgument,
                    "no energy axis: a fixed E or Delta must be supplied");

    const bool any_reverse =
        std::any_of(quantities.begin(), quantities.end(), needs_reverse);
    if (opts.engine == Engine::ClosedForm) {
        if (any_reverse)
            throw Error(ErrorCode::EngineMismatch,
                        "T_lb/N require the general solver (reverse incidence)");
        if (!params.is_symmetric())
            throw Error(ErrorCode::EngineMismatch,
                        "the closed-form engine requires symmetric parameters");
    }

    SweepResult result;
    result.axes = std::move(axes);
    result.quantities = quantities;
    result.params_snapshot = params;
    const std::size_t n = result.n_points();
    result.values.assign(quantities.size(), std::vector<double>(n, std::nan("")));
    result.reasons.assign(n, {});

    const std::size_t stride = result.axes.size() == 2 ? result.axes[1].grid.size() : 1;

    auto eval_point = [&](std::size_t idx) {
        SystemParams p = params;
        std::optional<double> E;
        std::optional<double> delta = opts.delta;
        if (opts.energy)
            E = *opts.energy;
        const std::size_t i0 = idx / stride;
        const std::size_t i1 = idx % stride;
        for (std::size_t ax = 0; ax < result.axes.size(); ++ax) {
            const double v = result.axes[ax].grid[ax == 0 ? i0 : i1];
            const std::string& name = result.axes[ax].name;
            if (name == "E") {
                E = v;
                delta.reset();
            } else if (name == "Delta") {
                delta = v;
                E.reset();
            } else {
                p.set(name, v);
            }
        }
        try {
            ValidatedParams vp = validate(p);
            double energy = E ? *E : p.omega_a + *delta;
            const bool use_closed_form = opts.engine == Engine::ClosedForm
                || (opts.engine == Engine::Auto && vp.symmetric());

            // on a pole/singular point with --nudge-poles, retry on a
            // slightly offset energy
            auto with_nudge = [&](auto&& f) {
                double e = energy;
                for (int attempt = 0;; ++attempt) {
                    try {
                        return f(e);
                    } catch (const Error& err) {
                        if (!opts.nudge_poles || attempt >= 8
                            || (err.code() != ErrorCode::NearPole
                                && err.code() != ErrorCode::SingularSystem))
                            throw;
                        e += 1e-7 * p.xi;
                    }
                }
            };
            std::optional<RoutingRates> fwd;
            std::optional<double> t_lb;
            auto forward_rates = [&]() -> const RoutingRates& {
                if (!fwd) {
                    if (use_closed_form) {
                        auto a = amplitudes_closed_form(vp, energy, opts.nudge_poles);
                        RoutingRates r{};
                        r.L_a = std::norm(a.l_a);
                        r.R_a = std::norm(a.r_a);
                        r.L_b = std::norm(a.l_b);
                        r.R_b = std::norm(a.r_b);
                        r.total = r.L_a + r.R_a + r.L_b + r.R_b;
                        fwd = r;
                    } else {
                        fwd = with_nudge([&](double e) {
                            return routing_rates(
                                solve_scattering(vp, e, IncidencePort::LeftA));
                        });
                    }
                }
                return *fwd;
            };
            auto reverse = [&]() {
                if (!t_lb)
                    t_lb = with_nudge(
                        [&](double e) { return reverse_transmission(vp, e); });
                return *t_lb;
            };
            for (std::size_t qi = 0; qi < result.quantities.size(); ++qi) {
                double v = 0.0;
                switch (result.quantities[qi]) {
                case Quantity::L_a: v = forward_rates().L_a; break;
                case Quantity::R_a: v = forward_rates().R_a; break;
                case Quantity::L_b: v = forward_rates().L_b; break;
                case Quantity::R_b: v = forward_rates().R_b; break;
                case Quantity::T_lb: v = reverse(); break;
                case Quantity::N: v = forward_rates().L_b - reverse(); break;
                }
                result.values[qi][idx] = v;
            }
        } catch (const Error& err) {
            result.reasons[idx] = std::string(error_code_name(err.code())) + ": " + err.what();
        }
    };

    int threads = opts.threads;
    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (threads == 1) {
        for (std::size_t idx = 0; idx < n; ++idx)
            eval_point(idx);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t idx = next.fetch_add(1); idx < n; idx = next.fetch_add(1))
                    eval_point(idx);
            });
        for (auto& th : pool)
            th.join();
    }
    return result;
}

std::string SweepResult::to_csv() const
{
    std::ostringstream out;
    for (const auto& a : axes)
        out << a.name << ',';
    for (const auto& q : quantities)
        out << quantity_name(q) << ',';
    out << "reason\n";

    const std::size_t stride = axes.size() == 2 ? axes[1].grid.size() : 1;
    for (std::size_t idx = 0; idx < n_points(); ++idx) {
        out << format_value(axes[0].grid[idx / stride]) << ',';
        if (axes.size() == 2)
            out << format_value(axes[1].grid[idx % stride]) << ',';
        for (std::size_t qi = 0; qi < quantities.size(); ++qi) {
            double v = values[qi][idx];
            if (!std::isnan(v))
                out << format_value(v);
            out << ',';
        }
        out << reasons[idx] << '\n';
    }
    return out.str();
}

std::string SweepResult::to_json() const
{
    nlohmann::json doc;
    doc["params"] = params_snapshot.as_map();
    doc["axes"] = nlohmann::json::array();
    for (const auto& a : axes)
        doc["axes"].push_back({{"name", a.name}, {"grid", a.grid}});
    for (std::size_t qi = 0; qi < quantities.size(); ++qi) {
        auto arr = nlohmann::json::array();
        for (double v : values[qi]) {
            if (std::isnan(v))
                arr.push_back(nullptr);
            else
                arr.push_back(v);
        }
        doc["quantities"][quantity_name(quantities[qi])] = std::move(arr);
    }
    doc["reasons"] = reasons;
    return doc.dump(2);
}

std::vector<Extremum> find_extrema(const SweepResult& series, Quantity quantity)
{
    if (series.axes.size() != 1)
        throw Error(ErrorCode::BadArgument, "find_extrema needs a 1D sweep");
    std::size_t qi = 0;
    while (qi < series.quantities.size() && series.quantities[qi] != quantity)
        ++qi;
    if (qi == series.quantities.size())
        throw Error(ErrorCode::BadArgument, "quantity not present in sweep");

    const auto& v = series.values[qi];
    std::vector<Extremum> out;
    for (std::size_t j = 1; j + 1 < v.size(); ++j) {
        if (std::isnan(v[j - 1]) || std::isnan(v[j]) || std::isnan(v[j + 1]))
            continue;
        if (v[j] > v[j - 1] && v[j] > v[j + 1])
            out.push_back({j, series.axes[0].grid[j], v[j], true});
        else if (v[j] < v[j - 1] && v[j] < v[j + 1])
            out.push_back({j, series.axes[0].grid[j], v[j], false});
    }
    return out;
}

} // namespace qrouter
