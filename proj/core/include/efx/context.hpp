#pragma once

#include <optional>

#include "efx/allocation.hpp"
#include "efx/errors.hpp"
#include "efx/trace.hpp"

namespace efx {

struct SolveConfig {
  uint64_t maxSteps = 1000000;
  bool traceOn = true;
  // 0 = off, 1 = progress claims, 2 = plus structural checks per dispatch
  int assertLevel = 2;
};

// What a lemma-level procedure achieved. Phi guarantees the potential
// strictly exceeds the entry value; ParetoEscape means the state Pareto
// improved but preconditions stopped holding, so the master loop must
// re-dispatch; Complete means the pool ran dry.
enum class LemmaStatus { PhiImproved, ParetoEscape, Complete };

class SolveContext {
 public:
  explicit SolveContext(SolveConfig cfg) : cfg_(cfg) {}

  const SolveConfig& config() const { return cfg_; }
  uint64_t steps() const { return steps_; }
  Trace& trace() { return trace_; }

  void micro_step() {
    if (++steps_ > cfg_.maxSteps)
      throw StepCapExceeded("step cap of " + std::to_string(cfg_.maxSteps) +
                            " micro-steps exceeded");
  }

  // Records a checkpoint and, when enabled, verifies its progress claim
  // against the previous checkpoint.
  void emit(const Allocation& x, std::string rule, Claim claim,
            std::string detail = "") {
    micro_step();
    if (cfg_.assertLevel >= 1 && prev_) {
      switch (claim) {
        case Claim::Phi:
          if (x.phi() <= prev_->phi())
            throw ProofViolation("checkpoint " + rule +
                                 " claimed Phi without raising phi");
          break;
        case Claim::Pareto:
          if (!Allocation::pareto_improves(*prev_, x))
            throw ProofViolation("checkpoint " + rule +
                                 " claimed Pareto without dominating");
          break;
        case Claim::Neutral:
          if (x.phi() < prev_->phi())
            throw ProofViolation("checkpoint " + rule + " lowered phi");
          break;
      }
    }
    if (cfg_.assertLevel >= 1) x.assert_partition();
    prev_ = x;
    if (cfg_.traceOn)
      trace_.add(steps_, std::move(rule), claim, x.phi(), std::move(detail));
  }

 private:
  SolveConfig cfg_;
  uint64_t steps_ = 0;
  Trace trace_;
  std::optional<Allocation> prev_;
};

}  // namespace efx
