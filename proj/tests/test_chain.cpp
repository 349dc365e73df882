#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hotscat/chain.hpp"
#include "hotscat/profile.hpp"

using namespace hotscat;

namespace {

// Test-side stationary oracle: damped power iteration on the half-lazy chain.
std::vector<double> power_iteration_oracle(const TransitionMatrix& q) {
    const int m = q.state_count();
    std::vector<double> nu(static_cast<std::size_t>(m), 1.0 / m);
    std::vector<double> next(static_cast<std::size_t>(m));
    for (int iter = 0; iter < 1000000; ++iter) {
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int i = 0; i < m; ++i) s += nu[i] * q.entry(i, j);
            next[j] = 0.5 * (nu[j] + s);
        }
        double delta = 0.0;
        for (int j = 0; j < m; ++j) delta = std::max(delta, std::abs(next[j] - nu[j]));
        nu.swap(next);
        if (delta < 1e-15) break;
    }
    return nu;
}

int single_successor(const TransitionMatrix& q, int idx) {
    for (int j = 0; j < q.state_count(); ++j)
        if (q.entry(idx, j) == 1.0) return j;
    return -1;
}

} // namespace

TEST_CASE("temperature profiles validate and convert") {
    CHECK_THROWS_AS(TempProfile::from_betas({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TempProfile::from_betas({1.0, -2.0}), std::invalid_argument);
    CHECK_THROWS_AS(TempProfile::from_betas({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(TempProfile::from_temperatures({1.0, -1.0}), std::invalid_argument);

    const TempProfile p = TempProfile::from_temperatures({2.0, 0.5, 1.0});
    CHECK(p.n_links() == 2);
    CHECK(p.n_scatterers() == 3);
    CHECK(p.beta(0) == doctest::Approx(0.5));
    CHECK(p.temperature(1) == doctest::Approx(0.5));
    CHECK(p.reversed().temperature(0) == doctest::Approx(1.0));
    CHECK_FALSE(p.is_equilibrium());
    CHECK(TempProfile::uniform(1.3, 4).is_equilibrium());

    const TempProfile lin = TempProfile::linear_temperature(1.0, 2.0, 4);
    CHECK(lin.temperature(0) == 1.0);
    CHECK(lin.temperature(4) == 2.0);
    CHECK(lin.temperature(2) == doctest::Approx(1.5));
}

TEST_CASE("state space membership and the fixed enumeration") {
    const int n = 4;
    CHECK(chain_state_in_space({0, +1}, n));
    CHECK_FALSE(chain_state_in_space({0, -1}, n));
    CHECK(chain_state_in_space({4, -1}, n));
    CHECK_FALSE(chain_state_in_space({4, +1}, n));
    CHECK(chain_state_in_space({2, -1}, n));
    CHECK_FALSE(chain_state_in_space({5, +1}, n));

    for (int idx = 0; idx < 2 * n; ++idx) {
        const ChainState s = state_at(idx, n);
        CHECK(state_index(s, n) == idx);
        CHECK(chain_state_in_space(s, n));
    }
}

TEST_CASE("smallest system: the two boundary states swap") {
    const TransitionMatrix q = TransitionMatrix::wandering(1);
    const int i0 = state_index({0, +1}, 1);
    const int i1 = state_index({1, -1}, 1);
    CHECK(q.entry(i0, i1) == 1.0);
    CHECK(q.entry(i1, i0) == 1.0);
    CHECK(q.entry(i0, i0) == 0.0);
}

TEST_CASE("N=2 wandering matrix is the 4-cycle") {
    const TransitionMatrix q = TransitionMatrix::wandering(2);
    const std::vector<ChainState> cycle = {{0, +1}, {1, +1}, {2, -1}, {1, -1}};
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        const ChainState from = cycle[k];
        const ChainState to = cycle[(k + 1) % cycle.size()];
        CHECK(q.entry(from, to) == 1.0);
    }
}

TEST_CASE("wandering matrix has order 2N") {
    for (int n : {1, 2, 3, 5, 8}) {
        const TransitionMatrix q = TransitionMatrix::wandering(n);
        const int m = q.state_count();
        // follow the permutation 2N steps from each state
        for (int start = 0; start < m; ++start) {
            int idx = start;
            for (int k = 0; k < 2 * n; ++k) idx = single_successor(q, idx);
            CHECK(idx == start);
        }
    }
}

TEST_CASE("closed-form walk reproduces the matrix walk for k = 0..4N") {
    for (int n : {1, 2, 3, 6}) {
        const TransitionMatrix q = TransitionMatrix::wandering(n);
        for (int start = 0; start < q.state_count(); ++start) {
            const ChainState s0 = state_at(start, n);
            int idx = start;
            for (int k = 0; k <= 4 * n; ++k) {
                const ChainState expect = state_at(idx, n);
                const ChainState got = deterministic_walk_state(s0, k, n);
                CHECK(got == expect);
                idx = single_successor(q, idx);
            }
        }
    }
}

TEST_CASE("wandering stationary distribution is uniform") {
    for (int n : {1, 3, 7}) {
        const TransitionMatrix q = TransitionMatrix::wandering(n);
        const std::vector<double> nu = q.stationary_distribution();
        for (double x : nu) CHECK(x == doctest::Approx(1.0 / (2 * n)).epsilon(1e-12));
        CHECK(q.stationary_residual(nu) < 1e-12);
    }
}

TEST_CASE("random irreducible chain matches the power-iteration oracle") {
    // N=2 with asymmetric transmit/reflect splits at scatterer 1.
    const int n = 2;
    const int m = 2 * n;
    std::vector<double> e(static_cast<std::size_t>(m) * m, 0.0);
    auto set = [&](ChainState a, ChainState b, double v) {
        e[static_cast<std::size_t>(state_index(a, n)) * m + state_index(b, n)] = v;
    };
    set({0, +1}, {1, +1}, 1.0);
    set({2, -1}, {1, -1}, 1.0);
    set({1, +1}, {2, -1}, 0.3);
    set({1, +1}, {0, +1}, 0.7);
    set({1, -1}, {0, +1}, 0.85);
    set({1, -1}, {2, -1}, 0.15);
    const TransitionMatrix q = TransitionMatrix::from_entries(n, e);

    const std::vector<double> nu = q.stationary_distribution();
    const std::vector<double> oracle = power_iteration_oracle(q);
    for (int i = 0; i < m; ++i) CHECK(nu[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
    CHECK(q.stationary_residual(nu) < 1e-12);
}

TEST_CASE("validation rejects bad matrices") {
    CHECK_THROWS_AS(TransitionMatrix::wandering(0), std::invalid_argument);

    const int n = 3;
    const int m = 2 * n;

    // mass from an interior state to a state the geometry cannot reach
    {
        std::vector<double> e(static_cast<std::size_t>(m) * m, 0.0);
        TransitionMatrix w = TransitionMatrix::wandering(n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) e[static_cast<std::size_t>(i) * m + j] = w.entry(i, j);
        // (1,+1) -> (2,-1): the sign does not match the move
        e[static_cast<std::size_t>(state_index({1, +1}, n)) * m + state_index({2, +1}, n)] = 0.0;
        e[static_cast<std::size_t>(state_index({1, +1}, n)) * m + state_index({2, -1}, n)] = 1.0;
        CHECK_THROWS_AS(TransitionMatrix::from_entries(n, e), std::invalid_argument);
    }

    // row sum off by more than the tolerance
    {
        TransitionMatrix w = TransitionMatrix::wandering(n);
        std::vector<double> e(static_cast<std::size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) e[static_cast<std::size_t>(i) * m + j] = w.entry(i, j);
        e[0] += 1e-6;
        CHECK_THROWS_AS(TransitionMatrix::from_entries(n, e), std::invalid_argument);
    }

    // reducible support: both scatterer-1 rows send everything rightward
    {
        const int n2 = 2;
        const int m2 = 4;
        std::vector<double> e(static_cast<std::size_t>(m2) * m2, 0.0);
        auto set = [&](ChainState a, ChainState b, double v) {
            e[static_cast<std::size_t>(state_index(a, n2)) * m2 + state_index(b, n2)] = v;
        };
        set({0, +1}, {1, +1}, 1.0);
        set({2, -1}, {1, -1}, 1.0);
        set({1, +1}, {2, -1}, 1.0);
        set({1, -1}, {2, -1}, 1.0);
        CHECK_THROWS_AS(TransitionMatrix::from_entries(n2, e), std::invalid_argument);
    }
}

TEST_CASE("transmit-reflect helper builds the advertised split") {
    const TransitionMatrix q = TransitionMatrix::transmit_reflect(2, 0.5);
    CHECK(q.entry({1, +1}, {2, -1}) == doctest::Approx(0.5));
    CHECK(q.entry({1, +1}, {0, +1}) == doctest::Approx(0.5));
    CHECK(q.entry({1, -1}, {0, +1}) == doctest::Approx(0.5));
    CHECK(q.entry({1, -1}, {2, -1}) == doctest::Approx(0.5));
    CHECK(q.entry({0, +1}, {1, +1}) == doctest::Approx(1.0));
    // full transmission recovers the wandering matrix
    CHECK(TransitionMatrix::transmit_reflect(4, 1.0).is_wandering());
    // stationary law of the symmetric split is uniform
    const std::vector<double> nu = q.stationary_distribution();
    for (double x : nu) CHECK(x == doctest::Approx(0.25).epsilon(1e-12));
}
