#include "hotscat/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hotscat/cgf.hpp"
#include "hotscat/quadrature.hpp"
#include "hotscat/sampling.hpp"

namespace hotscat {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HOTSCAT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Runs fn(i) for i in [0, count); results must be written to per-index slots.
// The first worker exception is rethrown on the calling thread.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::min(resolve_threads(threads), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            try {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= count) return;
                    fn(i);
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

void check_run_config(const RunConfig& cfg) {
    if (!(cfg.t_end > 0.0)) throw std::invalid_argument("run: t_end must be positive");
    if (cfg.t_burn < 0.0 || cfg.t_burn >= cfg.t_end)
        throw std::invalid_argument("run: t_burn must lie in [0, t_end)");
    if (cfg.n_windows < 1) throw std::invalid_argument("run: n_windows must be >= 1");
}

// Per-tracer accumulation target: window ledgers plus the odds and ends
// needed for the conservation bookkeeping.
struct TracerOutput {
    std::vector<ObservableLedger> windows;
    std::vector<PhaseSample> samples;
    double initial_kinetic = 0.0;
    double final_kinetic = 0.0;
    double max_event_energy = 0.0;
};

struct WindowSink {
    std::vector<ObservableLedger>* windows;
    double t_burn;
    double window_span;

    ObservableLedger& at(double t) {
        int w = static_cast<int>((t - t_burn) / window_span);
        w = std::clamp(w, 0, static_cast<int>(windows->size()) - 1);
        return (*windows)[static_cast<std::size_t>(w)];
    }
};

TracerOutput simulate_tracer(const TempProfile& profile, const TransitionMatrix& matrix,
                             const RunConfig& cfg, RngStream rng, bool record_samples) {
    const int n = profile.n_links();
    TracerOutput out;
    out.windows.assign(static_cast<std::size_t>(cfg.n_windows), {});
    for (auto& w : out.windows) w.init(n);
    WindowSink sink{&out.windows, cfg.t_burn,
                    (cfg.t_end - cfg.t_burn) / cfg.n_windows};

    // Start at a uniform phase point; the burn-in washes the choice out.
    double q0;
    do {
        q0 = rng.next_u01() * n;
    } while (q0 == std::floor(q0));
    const int dir0 = (rng.next_u64() & 1u) ? +1 : -1;
    const int emitter = dir0 > 0 ? static_cast<int>(std::floor(q0))
                                 : static_cast<int>(std::ceil(q0));
    double speed = sample_emission_speed(profile.beta(emitter), rng);
    const TracerState st = TracerState::from_phase(q0, dir0 * speed, n, 0.0);

    ChainState chain = st.chain;
    int target = chain.scatterer;
    int from = -1; // initial flight starts mid-cell, it crosses no full link
    double flight_origin = q0;
    double flight_start = 0.0;
    double flight_v = dir0 * speed;
    double t_arrive = st.next_event_time;

    std::size_t sample_idx = 0;
    const std::vector<double>& times = cfg.sample_times;
    bool seen_first_credit = false;

    while (t_arrive <= cfg.t_end) {
        if (record_samples) {
            while (sample_idx < times.size() && times[sample_idx] < t_arrive) {
                const double t = times[sample_idx];
                out.samples.push_back({t, flight_origin + flight_v * (t - flight_start), flight_v});
                ++sample_idx;
            }
        }

        const bool credit = t_arrive > cfg.t_burn;
        if (credit && from >= 0) {
            const int link = std::min(from, target);
            sink.at(t_arrive).current[static_cast<std::size_t>(link)].add(
                (target - from) * 0.5 * speed * speed);
        }

        // Collision: draw the next chain state, then the outgoing speed from
        // the bath of the scatterer just hit.
        const int s = target;
        const int idx = state_index(chain, n);
        const SuccessorPair succ = state_successors(idx, n);
        int next_idx;
        if (succ.left < 0) {
            next_idx = succ.right;
        } else if (succ.right < 0) {
            next_idx = succ.left;
        } else {
            const double pr = matrix.right_mass(idx);
            if (pr >= 1.0) next_idx = succ.right;
            else if (pr <= 0.0) next_idx = succ.left;
            else next_idx = (rng.next_u01() < pr) ? succ.right : succ.left;
        }
        const ChainState next_chain = state_at(next_idx, n);
        const double out_speed = sample_emission_speed(profile.beta(s), rng);

        if (credit) {
            const double de = 0.5 * (out_speed * out_speed - speed * speed);
            ObservableLedger& w = sink.at(t_arrive);
            w.energy[static_cast<std::size_t>(s)].add(de);
            w.entropy.add(-profile.beta(s) * de);
            w.collisions[static_cast<std::size_t>(s)] += 1;
            out.max_event_energy = std::max({out.max_event_energy,
                                             0.5 * speed * speed,
                                             0.5 * out_speed * out_speed});
            if (!seen_first_credit) {
                out.initial_kinetic = 0.5 * speed * speed;
                seen_first_credit = true;
            }
        }

        from = s;
        target = next_chain.scatterer;
        chain = next_chain;
        speed = out_speed;
        flight_v = (target - from) * out_speed;
        flight_origin = static_cast<double>(from);
        flight_start = t_arrive;
        t_arrive += 1.0 / out_speed;
    }

    if (record_samples) {
        while (sample_idx < times.size() && times[sample_idx] <= cfg.t_end) {
            const double t = times[sample_idx];
            out.samples.push_back({t, flight_origin + flight_v * (t - flight_start), flight_v});
            ++sample_idx;
        }
    }

    out.final_kinetic = 0.5 * speed * speed;
    if (!seen_first_credit) out.initial_kinetic = out.final_kinetic;
    return out;
}

TracerOutput simulate_confined_cell(const TempProfile& profile, int cell,
                                    const RunConfig& cfg, RngStream rng, bool record_samples) {
    const int n = profile.n_links();
    TracerOutput out;
    out.windows.assign(static_cast<std::size_t>(cfg.n_windows), {});
    for (auto& w : out.windows) w.init(n);
    WindowSink sink{&out.windows, cfg.t_burn,
                    (cfg.t_end - cfg.t_burn) / cfg.n_windows};

    double q0;
    do {
        q0 = cell + rng.next_u01();
    } while (q0 == static_cast<double>(cell));
    int dir = (rng.next_u64() & 1u) ? +1 : -1;
    const int emitter = dir > 0 ? cell : cell + 1;
    double speed = sample_emission_speed(profile.beta(emitter), rng);

    int wall = dir > 0 ? cell + 1 : cell;
    double flight_origin = q0;
    double flight_start = 0.0;
    double t_arrive = (wall - q0) / (dir * speed);
    bool initial_flight = true;
    bool seen_first_credit = false;

    std::size_t sample_idx = 0;
    const std::vector<double>& times = cfg.sample_times;

    while (t_arrive <= cfg.t_end) {
        if (record_samples) {
            while (sample_idx < times.size() && times[sample_idx] < t_arrive) {
                const double t = times[sample_idx];
                out.samples.push_back(
                    {t, flight_origin + dir * speed * (t - flight_start), dir * speed});
                ++sample_idx;
            }
        }

        const bool credit = t_arrive > cfg.t_burn;
        if (credit && !initial_flight) {
            sink.at(t_arrive).current[static_cast<std::size_t>(cell)].add(
                dir * 0.5 * speed * speed);
        }

        const double out_speed = sample_emission_speed(profile.beta(wall), rng);
        if (credit) {
            const double de = 0.5 * (out_speed * out_speed - speed * speed);
            ObservableLedger& w = sink.at(t_arrive);
            w.energy[static_cast<std::size_t>(wall)].add(de);
            w.entropy.add(-profile.beta(wall) * de);
            w.collisions[static_cast<std::size_t>(wall)] += 1;
            out.max_event_energy = std::max({out.max_event_energy,
                                             0.5 * speed * speed,
                                             0.5 * out_speed * out_speed});
            if (!seen_first_credit) {
                out.initial_kinetic = 0.5 * speed * speed;
                seen_first_credit = true;
            }
        }

        flight_origin = static_cast<double>(wall);
        flight_start = t_arrive;
        dir = -dir;
        wall = dir > 0 ? cell + 1 : cell;
        speed = out_speed;
        t_arrive += 1.0 / out_speed;
        initial_flight = false;
    }

    if (record_samples) {
        while (sample_idx < times.size() && times[sample_idx] <= cfg.t_end) {
            const double t = times[sample_idx];
            out.samples.push_back(
                {t, flight_origin + dir * speed * (t - flight_start), dir * speed});
            ++sample_idx;
        }
    }

    out.final_kinetic = 0.5 * speed * speed;
    if (!seen_first_credit) out.initial_kinetic = out.final_kinetic;
    return out;
}

RunResult collect(std::vector<TracerOutput>& parts, const TempProfile& profile,
                  int n_tracers, const RunConfig& cfg) {
    RunResult result;
    const int n = profile.n_links();
    result.windows.assign(static_cast<std::size_t>(cfg.n_windows), {});
    const double span = (cfg.t_end - cfg.t_burn) / cfg.n_windows;
    for (int w = 0; w < cfg.n_windows; ++w) {
        auto& window = result.windows[static_cast<std::size_t>(w)];
        window.init(n);
        window.t_elapsed = span;
        window.n_tracers = n_tracers;
    }
    result.ledger.init(n);
    result.ledger.t_elapsed = cfg.t_end - cfg.t_burn;
    result.ledger.n_tracers = n_tracers;

    // Merge in tracer order so results do not depend on the thread count.
    for (auto& part : parts) {
        for (int w = 0; w < cfg.n_windows; ++w) {
            result.windows[static_cast<std::size_t>(w)].merge(
                part.windows[static_cast<std::size_t>(w)]);
            result.ledger.merge(part.windows[static_cast<std::size_t>(w)]);
        }
        result.ledger.initial_kinetic += part.initial_kinetic;
        result.ledger.final_kinetic += part.final_kinetic;
        result.ledger.max_event_energy =
            std::max(result.ledger.max_event_energy, part.max_event_energy);
        if (!part.samples.empty())
            result.phase_samples.insert(result.phase_samples.end(), part.samples.begin(),
                                        part.samples.end());
    }
    return result;
}

} // namespace

void ObservableLedger::init(int n_links) {
    energy.assign(static_cast<std::size_t>(n_links) + 1, {});
    current.assign(static_cast<std::size_t>(n_links), {});
    collisions.assign(static_cast<std::size_t>(n_links) + 1, 0);
    entropy = {};
}

void ObservableLedger::merge(const ObservableLedger& other) {
    for (std::size_t i = 0; i < energy.size(); ++i) energy[i].merge(other.energy[i]);
    for (std::size_t i = 0; i < current.size(); ++i) current[i].merge(other.current[i]);
    for (std::size_t i = 0; i < collisions.size(); ++i) collisions[i] += other.collisions[i];
    entropy.merge(other.entropy);
}

double ObservableLedger::energy_rate(int s) const {
    return energy[static_cast<std::size_t>(s)].value() / t_elapsed;
}
double ObservableLedger::current_rate(int l) const {
    return current[static_cast<std::size_t>(l)].value() / t_elapsed;
}
double ObservableLedger::entropy_rate() const { return entropy.value() / t_elapsed; }
double ObservableLedger::collision_rate(int s) const {
    return static_cast<double>(collisions[static_cast<std::size_t>(s)]) / t_elapsed;
}
double ObservableLedger::per_tracer_energy_rate(int s) const {
    return energy_rate(s) / n_tracers;
}
double ObservableLedger::per_tracer_current_rate(int l) const {
    return current_rate(l) / n_tracers;
}
double ObservableLedger::per_tracer_entropy_rate() const { return entropy_rate() / n_tracers; }
double ObservableLedger::per_tracer_collision_rate(int s) const {
    return collision_rate(s) / n_tracers;
}

TracerState TracerState::from_phase(double q, double p, int n_links, double t_now) {
    if (p == 0.0) throw std::invalid_argument("TracerState: velocity must be nonzero");
    if (q < 0.0 || q > n_links)
        throw std::invalid_argument("TracerState: position outside the box");
    const int sign = p > 0.0 ? +1 : -1;
    const int n0 = static_cast<int>(std::floor(q + 0.5 * (sign + 1)));
    if (n0 < 0 || n0 > n_links)
        throw std::invalid_argument("TracerState: heading outside the scatterer array");
    TracerState st;
    st.q = q;
    st.p = p;
    st.chain.scatterer = n0;
    st.chain.sign = (n0 == 0 || n0 == n_links) ? -sign : sign;
    st.next_event_time = t_now + (n0 - q) / p;
    return st;
}

BasicRunResult run_basic(double beta, double q0, double p0, double t_end,
                         std::span<const double> sample_times, RngStream& rng,
                         bool keep_event_log) {
    if (!(beta > 0.0)) throw std::domain_error("run_basic: beta must be positive");
    if (!(q0 >= 0.0) || !(q0 < 1.0))
        throw std::domain_error("run_basic: q0 must lie in [0,1)");
    if (!(p0 > 0.0)) throw std::domain_error("run_basic: p0 must be positive");
    if (!(t_end > 0.0)) throw std::domain_error("run_basic: t_end must be positive");

    BasicRunResult out;
    out.samples.reserve(sample_times.size());
    out.age_samples.reserve(sample_times.size());

    double v = p0;
    double flight_origin = q0;
    double flight_start = 0.0;
    double last_collision = -q0 / p0; // virtual start so age = q0/p0 + t before S_0
    double t_arrive = (1.0 - q0) / p0;
    std::size_t sample_idx = 0;

    auto drain = [&](double limit, bool inclusive) {
        while (sample_idx < sample_times.size() &&
               (inclusive ? sample_times[sample_idx] <= limit
                          : sample_times[sample_idx] < limit)) {
            const double t = sample_times[sample_idx];
            out.samples.push_back({t, flight_origin + v * (t - flight_start), v});
            out.age_samples.push_back({t - last_collision, t_arrive - t});
            ++sample_idx;
        }
    };

    while (t_arrive <= t_end) {
        drain(t_arrive, false);
        ++out.collision_count;
        const double speed = sample_emission_speed(beta, rng);
        if (keep_event_log) {
            out.collision_times.push_back(t_arrive);
            out.emitted_speeds.push_back(speed);
        }
        v = speed;
        flight_origin = 0.0;
        flight_start = t_arrive;
        last_collision = t_arrive;
        t_arrive += 1.0 / speed;
    }
    drain(t_end, true);
    return out;
}

RunResult run_general(const TempProfile& profile, const TransitionMatrix& matrix,
                      int n_tracers, const RunConfig& cfg) {
    if (matrix.n_links() != profile.n_links())
        throw std::invalid_argument("run_general: matrix/profile size mismatch");
    if (n_tracers < 1) throw std::invalid_argument("run_general: need at least one tracer");
    check_run_config(cfg);

    std::vector<TracerOutput> parts(static_cast<std::size_t>(n_tracers));
    parallel_for(n_tracers, cfg.threads, [&](int i) {
        RngStream rng(cfg.seed, cfg.stream_base + static_cast<std::uint64_t>(i));
        parts[static_cast<std::size_t>(i)] =
            simulate_tracer(profile, matrix, cfg, rng, i == 0 && !cfg.sample_times.empty());
    });
    return collect(parts, profile, n_tracers, cfg);
}

RunResult run_wandering(const TempProfile& profile, int n_tracers, const RunConfig& cfg) {
    return run_general(profile, TransitionMatrix::wandering(profile.n_links()), n_tracers, cfg);
}

RunResult run_confined(const TempProfile& profile, const RunConfig& cfg) {
    check_run_config(cfg);
    const int n = profile.n_links();
    std::vector<TracerOutput> parts(static_cast<std::size_t>(n));
    parallel_for(n, cfg.threads, [&](int cell) {
        RngStream rng(cfg.seed, cfg.stream_base + static_cast<std::uint64_t>(cell));
        parts[static_cast<std::size_t>(cell)] = simulate_confined_cell(
            profile, cell, cfg, rng, cell == 0 && !cfg.sample_times.empty());
    });
    return collect(parts, profile, n, cfg);
}

std::vector<double> replica_link_currents(TracerModel model, const TempProfile& profile,
                                          int link, double t, int n_replicas,
                                          std::uint64_t seed, std::uint64_t stream_base,
                                          int threads) {
    if (link < 0 || link >= profile.n_links())
        throw std::invalid_argument("replica_link_currents: link out of range");
    if (!(t > 0.0)) throw std::invalid_argument("replica_link_currents: t must be positive");
    if (n_replicas < 1) throw std::invalid_argument("replica_link_currents: need replicas");

    const int n = profile.n_links();
    std::vector<double> currents(static_cast<std::size_t>(n_replicas), 0.0);

    if (model == TracerModel::Wandering) {
        // Per-state emission parameters along the deterministic cycle.
        std::vector<double> beta_of(static_cast<std::size_t>(2 * n));
        std::vector<int> scat_of(static_cast<std::size_t>(2 * n));
        for (int idx = 0; idx < 2 * n; ++idx) {
            scat_of[static_cast<std::size_t>(idx)] = state_at(idx, n).scatterer;
            beta_of[static_cast<std::size_t>(idx)] =
                profile.beta(scat_of[static_cast<std::size_t>(idx)]);
        }
        const int start_idx = state_index({link, +1}, n);
        parallel_for(n_replicas, threads, [&](int r) {
            RngStream rng(seed, stream_base + static_cast<std::uint64_t>(r));
            KahanSum j;
            int idx = start_idx;
            double t_now = 0.0;
            for (;;) {
                const int s = scat_of[static_cast<std::size_t>(idx)];
                const double u = sample_emission_speed(beta_of[static_cast<std::size_t>(idx)], rng);
                const double t_next = t_now + 1.0 / u;
                if (t_next > t) break;
                const int next_idx = (idx + 1) % (2 * n);
                const int s2 = scat_of[static_cast<std::size_t>(next_idx)];
                if (std::min(s, s2) == link) j.add((s2 - s) * 0.5 * u * u);
                idx = next_idx;
                t_now = t_next;
            }
            currents[static_cast<std::size_t>(r)] = j.value();
        });
    } else {
        const double beta_left = profile.beta(link);
        const double beta_right = profile.beta(link + 1);
        parallel_for(n_replicas, threads, [&](int r) {
            RngStream rng(seed, stream_base + static_cast<std::uint64_t>(r));
            KahanSum j;
            int dir = +1; // start at the left wall, emitted rightward
            double t_now = 0.0;
            for (;;) {
                const double u = sample_emission_speed(dir > 0 ? beta_left : beta_right, rng);
                const double t_next = t_now + 1.0 / u;
                if (t_next > t) break;
                j.add(dir * 0.5 * u * u);
                dir = -dir;
                t_now = t_next;
            }
            currents[static_cast<std::size_t>(r)] = j.value();
        });
    }
    return currents;
}

namespace {

// (1/t) log mean(exp(logw)) with a jackknife standard error and the largest
// single-replica weight share, all on a max-shifted scale.
EmpiricalCgf summarize_log_weights(const std::vector<double>& logw, double t) {
    const double r_count = static_cast<double>(logw.size());
    double m = logw[0];
    for (double x : logw) m = std::max(m, x);
    KahanSum sum;
    double wmax = 0.0;
    std::vector<double> w(logw.size());
    for (std::size_t r = 0; r < logw.size(); ++r) {
        w[r] = std::exp(logw[r] - m);
        sum.add(w[r]);
        wmax = std::max(wmax, w[r]);
    }
    const double s = sum.value();

    EmpiricalCgf out;
    out.n_replicas = static_cast<int>(logw.size());
    out.t_horizon = t;
    out.value = (m + std::log(s / r_count)) / t;
    out.max_weight_share = wmax / s;
    out.heavy_tail_warning = out.max_weight_share > 0.10;

    std::vector<double> theta(logw.size());
    KahanSum theta_sum;
    for (std::size_t r = 0; r < logw.size(); ++r) {
        theta[r] = (m + std::log((s - w[r]) / (r_count - 1.0))) / t;
        theta_sum.add(theta[r]);
    }
    const double theta_mean = theta_sum.value() / r_count;
    KahanSum dev;
    for (double th : theta) dev.add((th - theta_mean) * (th - theta_mean));
    out.std_error = std::sqrt((r_count - 1.0) / r_count * dev.value());
    return out;
}

void check_cgf_estimate_args(const TempProfile& profile, int link, double lambda,
                             int n_replicas) {
    if (link < 0 || link >= profile.n_links())
        throw std::invalid_argument("empirical cgf: link out of range");
    const double bn = profile.beta(link);
    const double bn1 = profile.beta(link + 1);
    if (!(lambda > -bn) || !(lambda < bn1))
        throw std::domain_error(
            "empirical cgf: lambda outside (-beta_n, beta_{n+1}); the "
            "exponential moment may not exist");
    if (n_replicas < 100)
        throw std::invalid_argument("empirical cgf: need at least 100 replicas");
}

} // namespace

EmpiricalCgf estimate_empirical_cgf(TracerModel model, const TempProfile& profile, int link,
                                    double lambda, double t, int n_replicas,
                                    std::uint64_t seed, std::uint64_t stream_base, int threads) {
    check_cgf_estimate_args(profile, link, lambda, n_replicas);
    const std::vector<double> j =
        replica_link_currents(model, profile, link, t, n_replicas, seed, stream_base, threads);
    std::vector<double> logw(j.size());
    for (std::size_t r = 0; r < j.size(); ++r) logw[r] = -lambda * j[r];
    return summarize_log_weights(logw, t);
}

EmpiricalCgf estimate_empirical_cgf_tilted(TracerModel model, const TempProfile& profile,
                                           int link, double lambda, double t, int n_replicas,
                                           std::uint64_t seed, std::uint64_t stream_base,
                                           int threads) {
    check_cgf_estimate_args(profile, link, lambda, n_replicas);
    if (!(t > 0.0)) throw std::invalid_argument("empirical cgf: t must be positive");

    const CgfResult root = cgf_value({model, profile, link, lambda});
    if (root.branch == CgfBranch::ZeroPlateau)
        throw std::invalid_argument(
            "estimate_empirical_cgf_tilted: lambda lies on the zero plateau; "
            "there is no tilting root to sample from");
    const double eps0 = root.value;

    // Cyclic flight schedule with per-state bath and tilt parameters.
    struct FlightLaw {
        double beta;
        double a;        // beta + lambda * delta
        double log_c;    // log of the factor integral (the tilted normalizer)
        double c;
    };
    std::vector<FlightLaw> cycle;
    if (model == TracerModel::Confined) {
        for (int delta : {+1, -1}) {
            const double beta = profile.beta(delta > 0 ? link : link + 1);
            const double c = c_factor(beta, delta, lambda, eps0);
            cycle.push_back({beta, beta + lambda * delta, std::log(c), c});
        }
    } else {
        const int n = profile.n_links();
        const int plus_idx = state_index({link, +1}, n);
        const int minus_idx = state_index({link + 1, -1}, n);
        for (int k = 0; k < 2 * n; ++k) {
            const int idx = (plus_idx + k) % (2 * n); // start at the link's left state
            const double beta = profile.beta(state_at(idx, n).scatterer);
            const int delta = idx == plus_idx ? +1 : (idx == minus_idx ? -1 : 0);
            const double c = c_factor(beta, delta, lambda, eps0);
            cycle.push_back({beta, beta + lambda * delta, std::log(c), c});
        }
    }

    // Survival probability of the tilted flight law past u: P(v < 1/u).
    auto tilted_log_survival = [eps0](const FlightLaw& law, double u) {
        auto f = [&law, eps0](double v) {
            if (v <= 0.0) return 0.0;
            return v * std::exp(-eps0 / v - 0.5 * law.a * v * v);
        };
        const double w = 1.0 / u;
        const double mode_scale = 1.0 / std::sqrt(law.a);
        if (w <= mode_scale) {
            const double head = gk_integrate(f, 0.0, w, 1e-300, 1e-12).value;
            return std::log(law.beta * head / law.c);
        }
        const double tail = gk_integrate_to_inf(f, w, mode_scale, 1e-300, 1e-12).value;
        return std::log1p(-law.beta * tail / law.c);
    };

    std::vector<double> logw(static_cast<std::size_t>(n_replicas));
    parallel_for(n_replicas, threads, [&](int r) {
        RngStream rng(seed, stream_base + static_cast<std::uint64_t>(r));
        double log_weight = 0.0;
        double t_now = 0.0;
        std::size_t k = 0;
        for (;;) {
            const FlightLaw& law = cycle[k % cycle.size()];
            // rejection from the untilted emission law of the same exponent
            double v = 0.0;
            for (int tries = 0;; ++tries) {
                v = std::sqrt(-2.0 * std::log1p(-rng.next_open01()) / law.a);
                if (rng.next_u01() < std::exp(-eps0 / v)) break;
                if (tries > 100000)
                    throw std::runtime_error("tilted sampler: rejection loop stalled");
            }
            const double tau = 1.0 / v;
            if (t_now + tau > t) {
                const double u = t - t_now;
                if (u > 0.0) {
                    const double log_p = std::log(-std::expm1(-0.5 * law.beta / (u * u)));
                    log_weight += log_p - tilted_log_survival(law, u);
                }
                break;
            }
            log_weight += eps0 * tau + law.log_c;
            t_now += tau;
            ++k;
        }
        logw[static_cast<std::size_t>(r)] = log_weight;
    });
    return summarize_log_weights(logw, t);
}

} // namespace hotscat
