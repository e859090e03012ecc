#pragma once

#include "efx/context.hpp"

namespace efx {

// Smallest-cardinality subset of S whose vtype value strictly exceeds
// the threshold: the greedy top-k goods of S. Throws ProofViolation if
// even the whole of S does not suffice.
Bundle preferred_subset(const Instance& inst, Group vtype, const Bundle& S,
                        const Int& threshold);

// Round-based competition for the configuration: a_1 is a source, envies
// nobody outside A, and g-champions the leading agent of group y. That
// leader temporarily holds a_1's cut of its bundle plus g while the
// groups compete over the remaining bundles via comparison sets and
// virtual bundles; each round grows the pool or the virtual count, so
// the loop finalizes within m * (|y's rival group| + O(1)) rounds.
// Returns with the potential strictly above phiEntry, possibly after
// handing the final envy configuration back to the case procedures, or
// with a complete allocation.
LemmaStatus iterated_competition(Allocation& x, SolveContext& ctx,
                                 const Int& phiEntry, int g, Group y);

}  // namespace efx
