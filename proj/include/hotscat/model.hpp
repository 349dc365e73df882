#ifndef HOTSCAT_MODEL_HPP
#define HOTSCAT_MODEL_HPP

#include <variant>

#include "hotscat/chain.hpp"
#include "hotscat/profile.hpp"

namespace hotscat {

// The four model flavours. Basic: one particle in a unit box over a single
// bath. General: arbitrary irreducible chain on E. Wandering: deterministic
// transmit/reflect chain, M independent tracers. Confined: one tracer locked
// in each of the N cells, reflected by its two walls.
struct BasicModel {
    double beta = 1.0;
};

struct GeneralModel {
    TempProfile profile;
    TransitionMatrix matrix;
};

struct WanderingModel {
    TempProfile profile;
    int n_tracers = 1;
};

struct ConfinedModel {
    TempProfile profile;
};

using ModelKind = std::variant<BasicModel, GeneralModel, WanderingModel, ConfinedModel>;

// Cross-field consistency: profile length vs. matrix size, tracer counts,
// positive bath parameters. Throws std::invalid_argument.
void validate_model(const ModelKind& model);

} // namespace hotscat

#endif
