#pragma once

#include <optional>
#include <string>
#include <vector>

#include "params.hpp"
#include "solver.hpp"

namespace qrouter {

enum class Quantity { L_a, R_a, L_b, R_b, T_lb, N };

const char* quantity_name(Quantity q);
Quantity quantity_from_name(const std::string& name);

enum class Engine { Auto, ClosedForm, Solver };

// One sweep dimension: a parameter name (E, Delta, phi, l, Omega1, Omega2,
// g_a, g_s, delta_es1, delta_es4 or any single coupling) and a strictly
// monotone grid.
struct SweepAxis {
    std::string name;
    std::vector<double> grid;
};

// Row-major grid of quantity values; NaN marks a point that failed, with the
// failure recorded in reasons.
struct SweepResult {
    std::vector<SweepAxis> axes; // 1 or 2
    std::vector<Quantity> quantities;
    std::vector<std::vector<double>> values; // values[q][point]
    std::vector<std::string> reasons;        // empty string = ok
    SystemParams params_snapshot;

    std::size_t n_points() const;
    // row-major: index = i0 * axes[1].grid.size() + i1 for 2D
    double value(std::size_t quantity_index, std::size_t point) const;

    std::string to_csv() const;
    std::string to_json() const;
};

// |l_a|^2 of the LeftB solve: transmission from the left of CRW-b back to
// the left of CRW-a.
double reverse_transmission(const ValidatedParams& params, double E);

// N = L_b(forward) - T_lb(reverse), in [-1, 1].
double nonreciprocity(const ValidatedParams& params, double E);

struct SweepOptions {
    Engine engine = Engine::Auto;
    int threads = 1;
    bool nudge_poles = false;
    // fixed energy for sweeps without an E/Delta axis (delta is relative to
    // omega_a, the usual plotting convention)
    std::optional<double> energy;
    std::optional<double> delta;
};

SweepResult sweep(const SystemParams& params, std::vector<SweepAxis> axes,
                  std::vector<Quantity> quantities, const SweepOptions& opts = {});

struct Extremum {
    std::size_t index;
    double axis_value;
    double value;
    bool is_max;
};

// Strict local extrema of a 1D sweep by the three-point test; endpoints and
// points adjacent to missing values are excluded.
std::vector<Extremum> find_extrema(const SweepResult& series, Quantity quantity);

} // namespace qrouter
