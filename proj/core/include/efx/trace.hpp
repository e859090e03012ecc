#pragma once

#include <string>
#include <vector>

#include "efx/types.hpp"

namespace efx {

// What a rewrite step promises about progress:
//   Pareto  - every agent's utility weakly improves, at least one strictly
//   Phi     - the potential strictly increases
//   Neutral - bookkeeping only; covered by an enclosing lemma's claim
enum class Claim { Pareto, Phi, Neutral };

inline const char* claim_name(Claim c) {
  switch (c) {
    case Claim::Pareto: return "Pareto";
    case Claim::Phi: return "Phi";
    default: return "Neutral";
  }
}

struct TraceEvent {
  uint64_t step;
  std::string rule;
  Claim claim;
  Int phi;              // potential after the step
  std::string detail;   // free-form, e.g. which case fired
};

struct Trace {
  std::vector<TraceEvent> events;

  void add(uint64_t step, std::string rule, Claim claim, Int phi,
           std::string detail = "") {
    events.push_back({step, std::move(rule), claim, std::move(phi),
                      std::move(detail)});
  }

  // One JSON object per line.
  std::string to_json_lines() const;
};

}  // namespace efx
