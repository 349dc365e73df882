#include "hotscat/chain.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace hotscat {

namespace {

constexpr double kRowSumTol = 1e-12;

void require_valid_n(int n_links) {
    if (n_links < 1) throw std::invalid_argument("chain: n_links must be >= 1");
}

// State entered when a tracer arrives at `target` moving in `direction`.
// At the boundaries the stored sign is the post-reflection one.
ChainState arrival_state(int target, int direction, int n_links) {
    if (target == 0) return {0, +1};
    if (target == n_links) return {n_links, -1};
    return {target, direction};
}

bool strongly_connected(const std::vector<std::vector<int>>& adj,
                        const std::vector<std::vector<int>>& radj) {
    const int m = static_cast<int>(adj.size());
    for (const auto* graph : {&adj, &radj}) {
        std::vector<char> seen(static_cast<std::size_t>(m), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int count = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : (*graph)[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    ++count;
                    q.push(v);
                }
            }
        }
        if (count != m) return false;
    }
    return true;
}

} // namespace

bool chain_state_in_space(const ChainState& s, int n_links) {
    if (s.sign != +1 && s.sign != -1) return false;
    if (s.scatterer == 0) return s.sign == +1;
    if (s.scatterer == n_links) return s.sign == -1;
    return s.scatterer > 0 && s.scatterer < n_links;
}

int state_index(const ChainState& s, int n_links) {
    require_valid_n(n_links);
    if (!chain_state_in_space(s, n_links))
        throw std::invalid_argument("chain: state outside the state space");
    return s.sign > 0 ? s.scatterer : 2 * n_links - s.scatterer;
}

ChainState state_at(int index, int n_links) {
    require_valid_n(n_links);
    if (index < 0 || index >= 2 * n_links)
        throw std::invalid_argument("chain: state index out of range");
    if (index < n_links) return {index, +1};
    return {2 * n_links - index, -1};
}

ChainState deterministic_walk_state(const ChainState& start, long long k, int n_links) {
    const int m = 2 * n_links;
    const long long idx0 = state_index(start, n_links);
    long long idx = (idx0 + k) % m;
    if (idx < 0) idx += m;
    return state_at(static_cast<int>(idx), n_links);
}

SuccessorPair state_successors(int index, int n_links) {
    const ChainState s = state_at(index, n_links);
    SuccessorPair out;
    if (s.scatterer == 0) {
        out.right = state_index(arrival_state(1, +1, n_links), n_links);
    } else if (s.scatterer == n_links) {
        out.left = state_index(arrival_state(n_links - 1, -1, n_links), n_links);
    } else {
        out.right = state_index(arrival_state(s.scatterer + 1, +1, n_links), n_links);
        out.left = state_index(arrival_state(s.scatterer - 1, -1, n_links), n_links);
    }
    return out;
}

TransitionMatrix TransitionMatrix::wandering(int n_links) {
    require_valid_n(n_links);
    const int m = 2 * n_links;
    std::vector<double> p(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) {
        const ChainState s = state_at(i, n_links);
        const SuccessorPair succ = state_successors(i, n_links);
        int to;
        if (s.scatterer == 0) to = succ.right;
        else if (s.scatterer == n_links) to = succ.left;
        else to = (s.sign > 0) ? succ.right : succ.left; // transmit
        p[static_cast<std::size_t>(i) * m + to] = 1.0;
    }
    return TransitionMatrix(n_links, std::move(p));
}

TransitionMatrix TransitionMatrix::from_entries(int n_links, std::vector<double> entries) {
    require_valid_n(n_links);
    const int m = 2 * n_links;
    if (entries.size() != static_cast<std::size_t>(m) * m)
        throw std::invalid_argument("TransitionMatrix: entry block has wrong size");
    TransitionMatrix q(n_links, std::move(entries));
    q.validate();
    return q;
}

TransitionMatrix TransitionMatrix::transmit_reflect(int n_links, double transmit) {
    require_valid_n(n_links);
    if (!(transmit >= 0.0) || !(transmit <= 1.0))
        throw std::invalid_argument("TransitionMatrix: transmit probability outside [0,1]");
    const int m = 2 * n_links;
    std::vector<double> p(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) {
        const ChainState s = state_at(i, n_links);
        const SuccessorPair succ = state_successors(i, n_links);
        auto row = p.begin() + static_cast<std::ptrdiff_t>(i) * m;
        if (s.scatterer == 0) {
            row[succ.right] = 1.0;
        } else if (s.scatterer == n_links) {
            row[succ.left] = 1.0;
        } else {
            const int ahead = (s.sign > 0) ? succ.right : succ.left;
            const int back = (s.sign > 0) ? succ.left : succ.right;
            row[ahead] += transmit;
            row[back] += 1.0 - transmit;
        }
    }
    return from_entries(n_links, std::move(p));
}

void TransitionMatrix::validate() const {
    const int m = state_count();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(m));
    std::vector<std::vector<int>> radj(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const SuccessorPair succ = state_successors(i, n_links_);
        double row_sum = 0.0;
        for (int j = 0; j < m; ++j) {
            const double e = entry(i, j);
            if (e < 0.0)
                throw std::invalid_argument("TransitionMatrix: negative entry");
            if (e > 0.0) {
                if (j != succ.right && j != succ.left)
                    throw std::invalid_argument(
                        "TransitionMatrix: mass on a geometrically unreachable state");
                adj[static_cast<std::size_t>(i)].push_back(j);
                radj[static_cast<std::size_t>(j)].push_back(i);
            }
            row_sum += e;
        }
        if (std::abs(row_sum - 1.0) > kRowSumTol)
            throw std::invalid_argument("TransitionMatrix: row does not sum to 1");
    }
    if (!strongly_connected(adj, radj))
        throw std::invalid_argument("TransitionMatrix: chain is not irreducible");
}

double TransitionMatrix::right_mass(int from) const {
    const SuccessorPair succ = state_successors(from, n_links_);
    return succ.right >= 0 ? entry(from, succ.right) : 0.0;
}

double TransitionMatrix::left_mass(int from) const {
    const SuccessorPair succ = state_successors(from, n_links_);
    return succ.left >= 0 ? entry(from, succ.left) : 0.0;
}

bool TransitionMatrix::is_wandering() const {
    const TransitionMatrix w = wandering(n_links_);
    return entries_ == w.entries_;
}

std::vector<double> TransitionMatrix::stationary_distribution() const {
    const int m = state_count();
    std::vector<double> nu(static_cast<std::size_t>(m), 1.0 / m);

    if (m <= 64) {
        // Solve (Q^T - I) nu = 0 with the last equation replaced by sum = 1.
        std::vector<double> a(static_cast<std::size_t>(m) * (m + 1), 0.0);
        auto at = [&](int r, int c) -> double& {
            return a[static_cast<std::size_t>(r) * (m + 1) + c];
        };
        for (int r = 0; r < m - 1; ++r) {
            for (int c = 0; c < m; ++c) at(r, c) = entry(c, r) - (r == c ? 1.0 : 0.0);
            at(r, m) = 0.0;
        }
        for (int c = 0; c < m; ++c) at(m - 1, c) = 1.0;
        at(m - 1, m) = 1.0;

        for (int col = 0; col < m; ++col) {
            int pivot = col;
            for (int r = col + 1; r < m; ++r)
                if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
            if (std::abs(at(pivot, col)) < 1e-300)
                throw std::runtime_error("stationary_distribution: singular system");
            if (pivot != col)
                for (int c = col; c <= m; ++c) std::swap(at(pivot, c), at(col, c));
            for (int r = 0; r < m; ++r) {
                if (r == col) continue;
                const double factor = at(r, col) / at(col, col);
                if (factor == 0.0) continue;
                for (int c = col; c <= m; ++c) at(r, c) -= factor * at(col, c);
            }
        }
        for (int r = 0; r < m; ++r) nu[static_cast<std::size_t>(r)] = at(r, m) / at(r, r);
    } else {
        // nu <- nu (I + Q)/2; the half-lazy chain shares the stationary
        // distribution and is aperiodic, so the iteration always settles.
        std::vector<double> next(static_cast<std::size_t>(m));
        for (long iter = 0; iter < 2'000'000; ++iter) {
            for (int j = 0; j < m; ++j) {
                double s = 0.0;
                for (int i = 0; i < m; ++i) s += nu[static_cast<std::size_t>(i)] * entry(i, j);
                next[static_cast<std::size_t>(j)] = 0.5 * (nu[static_cast<std::size_t>(j)] + s);
            }
            double norm = 0.0;
            for (double x : next) norm += x;
            for (auto& x : next) x /= norm;
            double delta = 0.0;
            for (int j = 0; j < m; ++j)
                delta = std::max(delta, std::abs(next[static_cast<std::size_t>(j)] -
                                                 nu[static_cast<std::size_t>(j)]));
            nu.swap(next);
            if (delta < 1e-16) break;
        }
    }

    for (auto& x : nu)
        if (x < 0.0 && x > -1e-14) x = 0.0;
    double norm = 0.0;
    for (double x : nu) norm += x;
    for (auto& x : nu) x /= norm;

    if (stationary_residual(nu) >= 1e-12)
        throw std::runtime_error("stationary_distribution: fixed-point residual exceeds 1e-12");
    return nu;
}

double TransitionMatrix::stationary_residual(const std::vector<double>& nu) const {
    const int m = state_count();
    double worst = 0.0;
    for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += nu[static_cast<std::size_t>(i)] * entry(i, j);
        worst = std::max(worst, std::abs(s - nu[static_cast<std::size_t>(j)]));
    }
    return worst;
}

} // namespace hotscat
