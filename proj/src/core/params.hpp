#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "errors.hpp"

namespace qrouter {

// All model constants, in units of the hopping strength xi.
// Frequencies default to the Fig. 2 working point (omega = 10 xi).
struct SystemParams {
    double omega_a = 10.0;
    double omega_b = 10.0;
    double omega_c = 10.0;
    double omega_d = 10.0;
    double xi = 1.0;

    // atom--CRW couplings
    double g_a1 = 0.5;
    double g_a2 = 0.5;
    double g_b3 = 0.5;
    double g_b4 = 0.5;
    // atom--vertical-cavity couplings
    double g_c1 = 0.5;
    double g_c3 = 0.5;
    double g_d2 = 0.5;
    double g_d4 = 0.5;

    // excited-state frequencies and rotating-frame intermediate-state
    // frequencies omega'_s = omega_s + nu
    double omega_e1 = 10.0;
    double omega_e2 = 10.0;
    double omega_e3 = 10.0;
    double omega_e4 = 10.0;
    double omega_s1_eff = 10.0;
    double omega_s4_eff = 10.0;

    double Omega1 = 0.5;
    double Omega2 = 0.5;
    double phi = 0.0;
    int l = 1;

    // delta_es = omega_e - omega_s_eff; kept in sync by set()
    double delta_es1 = 0.0;
    double delta_es4 = 0.0;

    // Assign one named field. Group keys "omega", "g_a", "g_s" and "Omega"
    // fan out to all members of the group; "delta_es1(4)" moves
    // omega_s1(4)_eff relative to omega_e1(4).
    void set(const std::string& key, double value);
    void set(const std::string& key, const std::string& value);

    bool is_symmetric() const;

    std::map<std::string, double> as_map() const;
};

// Read a flat "name = value" config file ('#' starts a comment) into params.
// Lines are applied in file order, so a group key followed by an individual
// key behaves as an override.
SystemParams load_config_file(const std::string& path);
SystemParams load_config_stream(std::istream& in, const std::string& label);

class ValidatedParams {
public:
    const SystemParams& get() const { return p_; }
    const SystemParams* operator->() const { return &p_; }
    bool symmetric() const { return symmetric_; }

private:
    friend ValidatedParams validate(const SystemParams&);
    SystemParams p_;
    bool symmetric_ = false;
};

// Checks xi > 0, l >= 1 and nonnegative couplings / Rabi frequencies.
// Throws Error(ViolatedInvariant) on the first violation.
ValidatedParams validate(const SystemParams& params);

enum class IncidencePort { LeftA, LeftB, RightA, RightB };

const char* port_name(IncidencePort p);
IncidencePort port_from_name(const std::string& name);

} // namespace qrouter
