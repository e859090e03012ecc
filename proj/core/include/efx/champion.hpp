#pragma once

#include <optional>

#include "efx/allocation.hpp"
#include "efx/envy.hpp"

namespace efx {

// Canonical minimally envied subset of S relative to reference bundle R,
// under vtype's perturbed values: the k highest-valued goods of S for the
// least k whose total exceeds value(R). Valid because values are additive
// and the perturbation removes ties. Throws if value(S) <= value(R).
Bundle mes(const Instance& inst, Group vtype, const Bundle& S,
           const Bundle& R);

struct ChampionResult {
  AgentId champion;
  Bundle mesBundle;
};

// Among the agents that envy S, one minimizing the cardinality of their
// minimally envied subset; ties broken by leading agents first, then
// group A,B,C, then rank. Throws if nobody envies S.
ChampionResult champion_of_bundle(const Allocation& x, const Bundle& S);

// Champion of X_j plus the unallocated good g. Some champion always
// exists: j itself envies its own bundle plus a positively valued good.
ChampionResult g_champion(const Allocation& x, int g, AgentId j);

// The champion relation proper. Several agents can tie on the minimum
// cut cardinality, and the case analyses branch on membership in that
// set, not on the tie-broken representative: a tied self-champion, for
// example, must take priority over a champion cycle through it.
bool champions(const Allocation& x, AgentId i, const Bundle& S);
bool g_champions(const Allocation& x, AgentId i, int g, AgentId j);

struct Decomposition {
  Bundle top;     // MES_i(X_j + g, X_i) minus g
  Bundle bottom;  // X_j minus top
};

// Splits the target's bundle into the part the champion cuts (top) and
// the rest (bottom). Requires that i does not envy X_j itself, which
// forces g into every minimally envied subset of X_j + g.
Decomposition decompose(const Allocation& x, int g, AgentId i, AgentId j);

// Structural facts the correctness argument guarantees on every dispatch
// state (partial EFX, ordering invariant, pool good g). Throws
// ProofViolation on the first failure:
//  - same-group agents with a nonempty bundle are comparable by envy
//  - only leading agents are sources of the envy graph
//  - if a non-leading agent envies j, so does its group's leading agent
//  - every canonical champion is a leading agent
//  - the champion graph over all agents is cyclic
//  - the canonical champion edges among leading agents close a cycle of
//    length at most 3
void assert_dispatch_structure(const Allocation& x, int g);

}  // namespace efx
