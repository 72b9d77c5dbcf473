#pragma once

#include "hlsforge/kernel_model.hpp"

namespace hlsforge {

struct RewardInputs {
  EvaluationOutcome outcome;
  DesignMetrics baseline;  // the parent state's metrics
};

struct RewardValue {
  int value = 0;  // one of {-2, -1, 0, 1, 2}
};

// Rule-based scoring of one evaluation against its parent baseline:
//
//   verification failed                      -> -2
//   synthesis failed or budget exceeded      -> -1
//   baseline unsynthesizable, child works    -> +1  (synthesizability repaired)
//   latency below baseline and timing met    -> +2
//   latency below baseline                   -> +1
//   otherwise                                ->  0
//
// Failure checks dominate in that order; a design that computes wrong
// answers never earns performance credit.
RewardValue score(const RewardInputs& in);

}  // namespace hlsforge
