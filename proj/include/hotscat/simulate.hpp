#ifndef HOTSCAT_SIMULATE_HPP
#define HOTSCAT_SIMULATE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "hotscat/analytic.hpp"
#include "hotscat/chain.hpp"
#include "hotscat/profile.hpp"
#include "hotscat/rng.hpp"
#include "hotscat/stats.hpp"

namespace hotscat {

// Accumulated physical observables of one run (totals over all tracers):
// per-scatterer exchanged energy, per-link time-integrated current,
// entropy flow, collision counts. Event-driven and exact: observables change
// only at collisions, never through time discretization.
struct ObservableLedger {
    double t_elapsed = 0.0;
    int n_tracers = 1;
    std::vector<KahanSum> energy;      // per scatterer 0..N
    std::vector<KahanSum> current;     // per link 0..N-1
    KahanSum entropy;
    std::vector<std::uint64_t> collisions; // per scatterer
    double initial_kinetic = 0.0;      // total kinetic energy at measurement start
    double final_kinetic = 0.0;        // total kinetic energy at t_end
    double max_event_energy = 0.0;     // largest single energy exchange seen

    void init(int n_links);
    void merge(const ObservableLedger& other);

    int n_links() const { return static_cast<int>(current.size()); }
    double energy_rate(int scatterer) const;
    double current_rate(int link) const;
    double entropy_rate() const;
    double collision_rate(int scatterer) const;
    // Same rates divided by the number of tracers (single-tracer limits).
    double per_tracer_energy_rate(int scatterer) const;
    double per_tracer_current_rate(int link) const;
    double per_tracer_entropy_rate() const;
    double per_tracer_collision_rate(int scatterer) const;
};

struct PhaseSample {
    double t = 0.0;
    double q = 0.0;
    double p = 0.0;
};

struct AgeResidualSample {
    double age = 0.0;      // time since the last collision
    double residual = 0.0; // time to the next collision
};

// Continuous state of one tracer between collisions, with the renewal
// bookkeeping: the chain state names the scatterer the tracer is heading to
// (sign convention of the embedded chain) and next_event_time the arrival.
struct TracerState {
    double q = 0.0;
    double p = 1.0;
    ChainState chain;
    double next_event_time = 0.0;

    // Builds the state from a phase point: the first scatterer hit is
    // floor(q + (sign(p)+1)/2), with the boundary sign flip folded in.
    static TracerState from_phase(double q, double p, int n_links, double t_now);
};

struct BasicRunResult {
    std::vector<PhaseSample> samples;
    std::vector<AgeResidualSample> age_samples; // aligned with `samples`
    std::uint64_t collision_count = 0;
    // Optional event log: collision times and post-collision speeds.
    std::vector<double> collision_times;
    std::vector<double> emitted_speeds;
};

// Single particle in [0,1): ballistic flight, absorbed at 1, re-emitted at 0
// with a fresh speed from the bath law. sample_times must be sorted.
BasicRunResult run_basic(double beta, double q0, double p0, double t_end,
                         std::span<const double> sample_times, RngStream& rng,
                         bool keep_event_log = false);

struct RunConfig {
    double t_end = 0.0;
    double t_burn = 0.0;     // ledger starts counting after this time
    int n_windows = 1;       // time windows for Monte Carlo error bars
    std::uint64_t seed = 1;
    std::uint64_t stream_base = 0; // tracer i uses stream stream_base + i
    std::vector<double> sample_times; // phase samples, recorded from tracer 0
    int threads = 0;         // 0: HOTSCAT_THREADS env or hardware default
};

struct RunResult {
    ObservableLedger ledger;
    std::vector<ObservableLedger> windows; // n_windows slices of [t_burn, t_end]
    std::vector<PhaseSample> phase_samples;
};

// General tracers-and-scatterers run: M independent tracers driven by an
// irreducible chain on E. The deterministic transmit/reflect model is the
// special case matrix == TransitionMatrix::wandering(N).
RunResult run_general(const TempProfile& profile, const TransitionMatrix& matrix,
                      int n_tracers, const RunConfig& config);
RunResult run_wandering(const TempProfile& profile, int n_tracers, const RunConfig& config);

// One tracer locked in each cell [n, n+1], reflected at its two walls with
// the emission law of the wall just hit.
RunResult run_confined(const TempProfile& profile, const RunConfig& config);

// Time-integrated current through `link` over [0, t] for independent
// replicas started at a collision with the link's left scatterer.
std::vector<double> replica_link_currents(TracerModel model, const TempProfile& profile,
                                          int link, double t, int n_replicas,
                                          std::uint64_t seed, std::uint64_t stream_base = 0,
                                          int threads = 0);

// Finite-time empirical estimate of the cumulant generating function
// (1/t) log mean exp(-lambda J): biased for finite t; the jackknife standard
// error and the largest single-replica weight share are reported because the
// heavy interarrival tail can concentrate the exponential mean on few
// replicas (warning flag at a 10% share).
struct EmpiricalCgf {
    double value = 0.0;
    double std_error = 0.0;
    double max_weight_share = 0.0;
    bool heavy_tail_warning = false;
    int n_replicas = 0;
    double t_horizon = 0.0;
};
EmpiricalCgf estimate_empirical_cgf(TracerModel model, const TempProfile& profile, int link,
                                    double lambda, double t, int n_replicas,
                                    std::uint64_t seed, std::uint64_t stream_base = 0,
                                    int threads = 0);

// Importance-sampled estimate for positive-root points: flights are drawn
// from the tilted law whose normalizer is the corresponding factor integral,
// and reweighted exactly. The plain estimator's exponential mean is carried
// by trajectories far in the tail (hence the warning machinery above); the
// tilted proposal makes those trajectories typical, so the same replica
// budget resolves the value. Requires the query to lie off the plateau.
EmpiricalCgf estimate_empirical_cgf_tilted(TracerModel model, const TempProfile& profile,
                                           int link, double lambda, double t, int n_replicas,
                                           std::uint64_t seed, std::uint64_t stream_base = 0,
                                           int threads = 0);

} // namespace hotscat

#endif
