#pragma once

#include <complex>
#include <string>
#include <vector>

#include "params.hpp"
#include "solver.hpp"

namespace qrouter {

// Truncated two-chain lattice for the time-domain validation oracle.
struct LatticeConfig {
    int n_cells = 1200;            // cavities per chain
    double packet_center_k = 1.5;  // carrier wave vector, in (0, pi)
    double packet_width_sites = 50.0;
    int launch_offset = 280;       // packet center this many sites left of j=0
    double dt = 0.005;             // in 1/xi
    double t_max = 0.0;            // 0 = choose automatically from group velocity
};

struct WavepacketReport {
    RoutingRates rates;            // probability in the four asymptotic regions
    double atomic_residual;        // probability left on atoms + vertical cavities
    double node_residual;          // probability within 10 sites of [0, l]
    double norm_drift;             // |1 - ||psi(T)||^2|
    double carrier_energy;         // dispersion energy of packet_center_k
    double elapsed_time;           // simulated time
};

// Hamiltonian of the truncated lattice in the single-excitation basis
// (chain a, chain b, 4 vertical cavities, 6 atomic levels), as a dense
// matrix-free operator.  The constant omega_a is subtracted from the
// diagonal (a global phase) to keep the RK4 step accurate.
class LatticeHamiltonian {
public:
    LatticeHamiltonian(const ValidatedParams& params, const LatticeConfig& config);

    int dimension() const { return dim_; }
    int n_cells() const { return n_; }
    int j_min() const { return j_min_; }
    int site_a(int j) const { return j - j_min_; }
    int site_b(int j) const { return n_ + (j - j_min_); }

    void apply(const std::vector<cdouble>& in, std::vector<cdouble>& out) const;

    // dense copy, for Hermiticity / spectrum tests
    std::vector<std::vector<cdouble>> dense() const;

private:
    int n_, dim_, j_min_;
    SystemParams p_;
    double shift_;
    std::vector<cdouble> diag_;
    // node couplings handled explicitly in apply()
    friend class WavepacketRun;
    cdouble drive1_;
};

// Gaussian packet launched toward the nodes from the left of chain a,
// evolved with fixed-step classical RK4 (no renormalization: norm drift is
// the error signal).
WavepacketReport run_wavepacket(const ValidatedParams& params, const LatticeConfig& config);

std::string wavepacket_report_json(const ValidatedParams& params,
                                   const LatticeConfig& config,
                                   const WavepacketReport& report);

} // namespace qrouter
