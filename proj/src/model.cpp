#include "hotscat/model.hpp"

#include <cmath>
#include <stdexcept>

namespace hotscat {

void validate_model(const ModelKind& model) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, BasicModel>) {
                if (!(m.beta > 0.0) || !std::isfinite(m.beta))
                    throw std::invalid_argument("model: basic-process beta must be positive");
            } else if constexpr (std::is_same_v<T, GeneralModel>) {
                if (m.matrix.n_links() != m.profile.n_links())
                    throw std::invalid_argument(
                        "model: transition matrix size does not match the profile");
            } else if constexpr (std::is_same_v<T, WanderingModel>) {
                if (m.n_tracers < 1)
                    throw std::invalid_argument("model: need at least one tracer");
            } else {
                static_assert(std::is_same_v<T, ConfinedModel>);
                // One tracer per cell is implied by the profile length.
            }
        },
        model);
}

} // namespace hotscat
