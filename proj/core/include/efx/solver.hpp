#pragma once

#include "efx/context.hpp"
#include "efx/instance.hpp"

namespace efx {

// Case procedures of the main loop. Each raises the potential strictly
// above phiEntry (PhiImproved), completes the allocation (Complete), or
// leaves a strictly Pareto-better state whose structure no longer fits
// the procedure's preconditions (ParetoEscape); the master loop then
// re-dispatches. Every mutation is checkpointed through the context.

// a_1 is a source and envies the leading agent of group B or C.
LemmaStatus lemma_a1_envies_b1_or_c1(Allocation& x, SolveContext& ctx,
                                     const Int& phiEntry);

// a_1 is a source and envies some agent of B or C.
LemmaStatus lemma_a1_envies_somebody(Allocation& x, SolveContext& ctx,
                                     const Int& phiEntry);

// a_1 is not a source but envies some agent of B or C.
LemmaStatus lemma_a1_not_source_easy(Allocation& x, SolveContext& ctx);

// a_1 is not a source and envies nobody outside A.
LemmaStatus lemma_a1_not_source_hard(Allocation& x, SolveContext& ctx);

// Runs one master-loop iteration: structural checks, then the first
// applicable rule in the fixed priority order (envy cycle, leading
// self-champion, single source, three sources, the a_1-source cases,
// the a_1-not-source cases).
void dispatch_step(Allocation& x, SolveContext& ctx);

struct SolveResult {
  Allocation allocation;
  Trace trace;
  uint64_t steps = 0;
};

// Computes a complete EFX allocation. Deterministic for a fixed
// instance and config; throws StepCapExceeded or ProofViolation.
SolveResult solve(const Instance& inst, SolveConfig cfg = {});

}  // namespace efx
