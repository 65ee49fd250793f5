/* qrouter — single-photon routing in a four-node coupled-resonator-waveguide
 * router.  C API of the shared library: opaque handles plus status codes.
 * All amplitude pairs are returned as interleaved (re, im) doubles. */

#ifndef QROUTER_H
#define QROUTER_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qr_status {
    QR_OK = 0,
    QR_ERR_INVARIANT = 1,
    QR_ERR_OUT_OF_BAND = 2,
    QR_ERR_NOT_SYMMETRIC = 3,
    QR_ERR_NEAR_POLE = 4,
    QR_ERR_COMPLEX_ROOT = 5,
    QR_ERR_SINGULAR = 6,
    QR_ERR_ENGINE_MISMATCH = 7,
    QR_ERR_NORM_DRIFT = 8,
    QR_ERR_PACKET_NOT_CLEARED = 9,
    QR_ERR_CONFIG = 10,
    QR_ERR_BAD_ARGUMENT = 11,
    QR_ERR_IO = 12,
    QR_ERR_INTERNAL = 13
} qr_status;

typedef enum qr_port {
    QR_PORT_LEFT_A = 0,
    QR_PORT_LEFT_B = 1,
    QR_PORT_RIGHT_A = 2,
    QR_PORT_RIGHT_B = 3
} qr_port;

typedef enum qr_engine {
    QR_ENGINE_AUTO = 0,
    QR_ENGINE_CLOSED = 1,
    QR_ENGINE_SOLVER = 2
} qr_engine;

typedef struct qr_params qr_params;
typedef struct qr_sweep qr_sweep;

const char* qr_version(void);

/* Message for the most recent failing call on this thread. */
const char* qr_last_error(void);

void qr_string_free(char* s);

/* ---- parameters ---------------------------------------------------- */

qr_params* qr_params_create(void);
qr_params* qr_params_clone(const qr_params* p);
void qr_params_free(qr_params* p);

/* Field keys match the config-file keys; group keys "omega", "g_a", "g_s"
 * and "Omega" fan out to their members. */
qr_status qr_params_set(qr_params* p, const char* key, double value);
qr_status qr_params_get(const qr_params* p, const char* key, double* value);

/* Replaces the contents of p with defaults overlaid by the file. */
qr_status qr_params_load_file(qr_params* p, const char* path);

/* *symmetric (may be NULL) receives 1 when the analytic formulas apply. */
qr_status qr_params_validate(const qr_params* p, int* symmetric);

/* ---- dispersion ----------------------------------------------------- */

double qr_dispersion_energy(double k, double omega_x, double xi);
qr_status qr_wavevector_from_energy(double E, double omega_x, double xi, double* k);

/* ---- scattering ----------------------------------------------------- */

/* out = re/im of l_a, r_a, l_b, r_b. */
qr_status qr_closed_form_amplitudes(const qr_params* p, double E, int nudge,
                                    double out[8]);
qr_status qr_solve_amplitudes(const qr_params* p, double E, qr_port port,
                              double out[8]);

/* out = L_a, R_a, L_b, R_b, total. */
qr_status qr_routing_rates(const qr_params* p, double E, qr_port port,
                           qr_engine engine, double out[5]);

qr_status qr_reverse_transmission(const qr_params* p, double E, double* t_lb);
qr_status qr_nonreciprocity(const qr_params* p, double E, double* n);

/* out = omega_0, then omega_-, omega_+, omega'_-, omega'_+ for index 1,
 * then the same four for index 2. */
qr_status qr_scattering_frequencies(const qr_params* p, double out[9]);

/* JSON document with the numeric quintic roots and both printed-formula
 * variants side by side; free with qr_string_free. */
qr_status qr_scatfreq_report_json(const qr_params* p, char** out_json);

/* ---- sweeps --------------------------------------------------------- */

qr_sweep* qr_sweep_create(const qr_params* p);
void qr_sweep_free(qr_sweep* s);

qr_status qr_sweep_add_axis(qr_sweep* s, const char* name, const double* grid,
                            long n);
qr_status qr_sweep_add_quantity(qr_sweep* s, const char* name);
qr_status qr_sweep_set_engine(qr_sweep* s, qr_engine engine);
qr_status qr_sweep_set_threads(qr_sweep* s, int threads);
qr_status qr_sweep_set_nudge(qr_sweep* s, int nudge);
qr_status qr_sweep_set_fixed_energy(qr_sweep* s, double E);
qr_status qr_sweep_set_fixed_delta(qr_sweep* s, double delta);

qr_status qr_sweep_run(qr_sweep* s);

long qr_sweep_point_count(const qr_sweep* s);
long qr_sweep_failed_count(const qr_sweep* s);
/* Value of a quantity at a row-major grid point; NaN when the point failed. */
qr_status qr_sweep_value(const qr_sweep* s, const char* quantity, long point,
                         double* value);
/* Failure reason for a point, or "" — valid until the sweep is freed. */
const char* qr_sweep_reason(const qr_sweep* s, long point);

/* Serialized results; free with qr_string_free. */
qr_status qr_sweep_csv(const qr_sweep* s, char** out);
qr_status qr_sweep_json(const qr_sweep* s, char** out);

/* ---- wavepacket oracle ---------------------------------------------- */

/* Time-evolves a Gaussian packet on a truncated lattice and reports port
 * probabilities as JSON (free with qr_string_free).  t_max <= 0 picks the
 * travel time automatically. */
qr_status qr_wavepacket_run(const qr_params* p, int n_cells, double center_k,
                            double width_sites, int launch_offset, double dt,
                            double t_max, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QROUTER_H */
