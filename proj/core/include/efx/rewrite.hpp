#pragma once

#include <optional>

#include "efx/champion.hpp"

namespace efx {

enum class EdgeKind { Envy, Champion };

struct PseudoEdge {
  AgentId from;  // always a leading agent
  AgentId to;
  EdgeKind kind;
  int good = -1;  // champion edges only
};

// 2 or 3 edges; from-agents are the leading agents of distinct groups,
// a_1 is both an envying and an envied agent, and each unallocated good
// appears on at most one champion edge.
using PseudoCycle = std::vector<PseudoEdge>;

// Replaces each strongly envied bundle X_j, j in targets (all in t's
// group), by MES_t(X_j, X_t); removed goods join the pool. phi is
// unchanged and afterwards neither t nor any target strongly envies.
void resolve_internal_envies(Allocation& x, AgentId t,
                             const std::vector<AgentId>& targets);

// Repeatedly applies the above with t = the strongly envying agent of
// minimum (group, rank) until no strong envy remains. All strong envies
// must be within groups. Restores the group order.
void resolve_all_intra_group(Allocation& x);

// Rotates bundles along a directed envy cycle: every agent on it takes
// the bundle it envied. Pareto improvement; EFX preserved.
void eliminate_envy_cycle(Allocation& x, const std::vector<AgentId>& cycle);

// Path rotation: champion takes MES_champion(X_target + g); every other
// agent on the envy path target ~> champion takes its successor's
// bundle; X_target's leftover joins the pool. Degenerate path {i} is the
// self-champion rewrite. All path agents strictly improve.
void champion_path_improvement(Allocation& x, int g, AgentId champion,
                               AgentId target,
                               const std::vector<AgentId>& path);

// Gives each envied bundle (or the MES bundle on champion edges) to the
// envying group's leading slot; each group that loses a bundle receives
// one. phi strictly increases because group A trades X_{a_1} up.
void eliminate_pseudo_cycle(Allocation& x, const PseudoCycle& pc);

// For two leading agents that g-champion each other while no leading
// agent envies them: exchange the top halves; if the third leading agent
// then strongly envies one side, that side keeps only its cut top plus
// g; group-internal strong envy toward a swapped agent is settled by an
// MES relative to the group's rank-2 bundle. Pareto improvement, both
// swapped agents strictly better, non-leading bundles unchanged.
void two_cycle_top_swap(Allocation& x, int g, AgentId u, AgentId w);

// When all three leading agents are sources: resolves the canonical
// champion structure among their bundles. A self-champion or a mutual
// champion pair is handled by the primitives above; otherwise the
// champion map is a 3-cycle and the tops and bottoms of the leading
// bundles are redistributed by case analysis on which agents prefer the
// next bottom over their own. Pareto improvement; non-leading bundles
// unchanged.
void three_sources_exchange(Allocation& x, int g);

}  // namespace efx
