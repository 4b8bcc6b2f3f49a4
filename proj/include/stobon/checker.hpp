#pragma once

#include "stobon/formula.hpp"
#include "stobon/kripke.hpp"
#include "stobon/probability.hpp"
#include "stobon/world_set.hpp"

#include <string_view>

namespace stobon {

/// Set of worlds where f holds, computed bottom-up so every subformula is
/// evaluated once per model (memoized on node identity; nested E^k is k
/// passes). Throws DomainError on names that do not resolve in the model.
WorldSet extension(const KripkeModel& model, const Formula& f);

/// Truth at the actual world. Throws EvalError on a collapsed model.
bool holds(const PointedModel& pm, const Formula& f);

/// |accessible worlds satisfying f| / |accessible worlds|, the uniform prior
/// over the agent's indistinguishability block. Exact rational.
Probability subjective_probability(const PointedModel& pm, AgentId agent, const Formula& f);
Probability subjective_probability(const PointedModel& pm, std::string_view agent, const Formula& f);

} // namespace stobon
