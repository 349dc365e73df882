#ifndef HOTSCAT_CHAIN_HPP
#define HOTSCAT_CHAIN_HPP

#include <vector>

namespace hotscat {

// State of the embedded chain: the scatterer being visited plus a sign.
// Convention: at interior scatterers the sign is the incoming flight
// direction; at the two boundary scatterers it is the outgoing direction
// (the reflection is folded into the state). The state space is
//   E = {(n, s) : n = 1..N-1, s = +-1} u {(0,+1), (N,-1)},  |E| = 2N.
struct ChainState {
    int scatterer = 0;
    int sign = +1;

    bool operator==(const ChainState&) const = default;
};

bool chain_state_in_space(const ChainState& s, int n_links);

// Fixed enumeration of E: (0,+1),(1,+1),...,(N-1,+1),(N,-1),(N-1,-1),...,(1,-1).
// In this order the deterministic transmit-and-reflect walk is the unit cyclic
// shift, which makes its 2N-periodicity a structural property of the matrix.
int state_index(const ChainState& s, int n_links);
ChainState state_at(int index, int n_links);

// Closed form of the deterministic walk: the state reached after k steps of
// the transmit-at-interior / reflect-at-boundary chain started at `start`.
ChainState deterministic_walk_state(const ChainState& start, long long k, int n_links);

// Row-stochastic transition matrix on E. Beyond row sums, construction
// enforces the support the geometry allows: an interior state (n, s) may
// send mass only to the two states reached by re-emitting the tracer left or
// right (with the sign flip when the target is a boundary), and a boundary
// state has a single successor. Irreducibility is checked by BFS closure.
class TransitionMatrix {
public:
    // Deterministic matrix: transmit at interior scatterers, reflect at the
    // two boundaries; a cyclic permutation of E of order 2N.
    static TransitionMatrix wandering(int n_links);

    // Validating constructor from dense row-major entries (size 2N x 2N,
    // indexed by the fixed enumeration of E).
    static TransitionMatrix from_entries(int n_links, std::vector<double> entries);

    // Symmetric transmit/reflect matrix: at every interior scatterer the
    // tracer is transmitted with probability `transmit` and reflected with
    // probability 1 - transmit.
    static TransitionMatrix transmit_reflect(int n_links, double transmit);

    int n_links() const { return n_links_; }
    int state_count() const { return 2 * n_links_; }

    double entry(int from, int to) const {
        return entries_[static_cast<std::size_t>(from) * state_count() + to];
    }
    double entry(const ChainState& from, const ChainState& to) const {
        return entry(state_index(from, n_links_), state_index(to, n_links_));
    }

    // Probability that the state sends the tracer rightward / leftward.
    double right_mass(int from) const;
    double left_mass(int from) const;

    bool is_wandering() const;

    // Unique stationary distribution nu with nu Q = nu, sum nu = 1. Solved
    // as a dense linear system for |E| <= 64, by damped power iteration
    // above (the plain iteration does not settle on periodic chains).
    std::vector<double> stationary_distribution() const;

    // Max-norm residual ||nu Q - nu||_inf for a candidate distribution.
    double stationary_residual(const std::vector<double>& nu) const;

private:
    TransitionMatrix(int n_links, std::vector<double> entries)
        : n_links_(n_links), entries_(std::move(entries)) {}

    void validate() const;

    int n_links_;
    std::vector<double> entries_;
};

// The two geometric successors of a state: the chain states entered when the
// tracer is re-emitted rightward / leftward. Boundary states get only the
// single successor the geometry allows (the other slot is index -1).
struct SuccessorPair {
    int right = -1;
    int left = -1;
};
SuccessorPair state_successors(int index, int n_links);

} // namespace hotscat

#endif
