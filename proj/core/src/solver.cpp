#include "efx/solver.hpp"

#include <algorithm>

#include "efx/champion.hpp"
#include "efx/competition.hpp"
#include "efx/envy.hpp"
#include "efx/rewrite.hpp"

namespace efx {

namespace {

constexpr AgentId kA1{Group::A, 1};

Group other_non_a(Group y) { return y == Group::B ? Group::C : Group::B; }

void require_efx(const Allocation& x, const char* where) {
  auto bad = efx_violations(x);
  if (!bad.empty())
    throw ProofViolation(std::string(where) + ": allocation not EFX (" +
                         agent_name(bad[0].envier) + " -> " +
                         agent_name(bad[0].envied) + ")");
}

// A leading agent that g-champions its own bundle, in group order.
std::optional<AgentId> find_self_champion(const Allocation& x, int g) {
  for (Group grp : {Group::A, Group::B, Group::C}) {
    AgentId l = x.leading(grp);
    if (g_champions(x, l, g, l)) return l;
  }
  return std::nullopt;
}

bool envies_outside_a(const Allocation& x, AgentId i) {
  for (AgentId j : x.all_agents())
    if (j.group != Group::A && envies(x, i, j)) return true;
  return false;
}

// First leading agent (B before C) that envies a_1, if any.
std::optional<Group> leader_envying_a1(const Allocation& x) {
  for (Group grp : {Group::B, Group::C})
    if (envies(x, x.leading(grp), kA1)) return grp;
  return std::nullopt;
}

// Single-source improvement: walk the envy path from the sole source a_1
// to the champion of X_{a_1} + g and rotate bundles along it. Requires
// an acyclic envy graph.
void single_source_walk(Allocation& x, const EnvyGraph& eg, int g) {
  ChampionResult c = g_champion(x, g, kA1);
  auto path = eg.shortest_path(kA1, c.champion);
  if (path.empty())
    throw ProofViolation("champion unreachable from the sole source");
  champion_path_improvement(x, g, c.champion, kA1, path);
}

// Shared loop prologue of the iterative case procedures: clears envy
// cycles and leading self-champions with Pareto steps, since the case
// analyses assume neither. Returns true if it mutated the allocation.
bool settle_cycles_and_self_champions(Allocation& x, SolveContext& ctx,
                                      const char* rule) {
  EnvyGraph eg(x);
  auto cyc = eg.shortest_cycle();
  if (!cyc.empty()) {
    eliminate_envy_cycle(x, cyc);
    ctx.emit(x, std::string(rule) + "/envy_cycle", Claim::Pareto);
    return true;
  }
  int g = x.lowest_pool_good();
  if (auto l = find_self_champion(x, g)) {
    champion_path_improvement(x, g, *l, *l, {*l});
    ctx.emit(x, std::string(rule) + "/self_champion",
             l->group == Group::A ? Claim::Phi : Claim::Pareto,
             agent_name(*l));
    return true;
  }
  return false;
}

}  // namespace

LemmaStatus lemma_a1_envies_b1_or_c1(Allocation& x, SolveContext& ctx,
                                     const Int& phiEntry) {
  const Instance& inst = x.instance();
  bool mutated = false;
  while (true) {
    ctx.micro_step();
    if (x.complete()) return LemmaStatus::Complete;
    if (x.phi() > phiEntry) return LemmaStatus::PhiImproved;
    if (settle_cycles_and_self_champions(x, ctx, "a1_envies_leader")) {
      mutated = true;
      continue;
    }
    int g = x.lowest_pool_good();
    EnvyGraph eg(x);

    // re-derive preconditions each pass
    if (!eg.is_source(kA1)) {
      if (mutated) return LemmaStatus::ParetoEscape;
      throw ProofViolation("a1_envies_leader: a_1 is not a source");
    }
    std::optional<Group> y;
    for (Group grp : {Group::B, Group::C})
      if (envies(x, kA1, x.leading(grp))) {
        y = grp;
        break;
      }
    if (!y) {
      if (mutated) return LemmaStatus::ParetoEscape;
      throw ProofViolation("a1_envies_leader: a_1 envies neither leader");
    }
    Group z = other_non_a(*y);
    AgentId b1 = x.leading(*y), c1 = x.leading(z);

    auto srcs = eg.sources();
    if (srcs.size() == 1) {
      single_source_walk(x, eg, g);
      ctx.emit(x, "a1_envies_leader/single_source", Claim::Phi);
      mutated = true;
      continue;
    }
    if (srcs.size() != 2 || !eg.is_source(c1))
      throw ProofViolation("a1_envies_leader: expected sources a_1 and the "
                           "unenvied leader");

    if (g_champions(x, b1, g, kA1)) {
      eliminate_pseudo_cycle(
          x, {{kA1, b1, EdgeKind::Envy, -1}, {b1, kA1, EdgeKind::Champion, g}});
      ctx.emit(x, "a1_envies_leader/pseudo_cycle", Claim::Phi);
      mutated = true;
      continue;
    }
    if (!g_champions(x, c1, g, kA1))
      throw ProofViolation("a1_envies_leader: unexpected champion of a_1");

    if (g_champions(x, kA1, g, c1)) {
      two_cycle_top_swap(x, g, kA1, c1);
      ctx.emit(x, "a1_envies_leader/top_swap", Claim::Phi);
      mutated = true;
      continue;
    }
    if (!g_champions(x, b1, g, c1))
      throw ProofViolation("a1_envies_leader: unexpected champion of c_1");

    // top exchange: a_1 takes X_{b_1}; b_1 takes its cut of X_{c_1} plus
    // g; c_1 takes c_1's cut of X_{a_1} plus the rest of its old bundle
    Decomposition dbc = decompose(x, g, b1, c1);
    Decomposition dac = decompose(x, g, c1, kA1);
    Bundle oldB1 = x.bundle(b1);
    x.set_bundle(kA1, oldB1);
    x.set_bundle(b1, bundle_with(dbc.top, g));
    x.set_bundle(c1, bundle_union(dac.top, dbc.bottom));
    x.pool_erase(g);
    x.pool_insert(dac.bottom);
    mutated = true;

    auto viol = efx_violations(x);
    if (viol.empty()) {
      x.restore_group_order();
      ctx.emit(x, "a1_envies_leader/top_exchange", Claim::Phi);
      continue;
    }
    for (const auto& v : viol)
      if (v.envier.group != Group::A || v.envied != c1)
        throw ProofViolation("a1_envies_leader: unexpected strong envy " +
                             agent_name(v.envier) + " -> " +
                             agent_name(v.envied));

    // resolve what c_1 itself envies in the exchanged state
    std::optional<AgentId> ai, bj;
    for (AgentId j : x.group_agents(Group::A))
      if (j != kA1 && envies(x, c1, j)) {
        ai = j;
        break;
      }
    if (!ai)
      for (AgentId j : x.group_agents(*y))
        if (j != b1 && envies(x, c1, j)) {
          bj = j;
          break;
        }

    if (ai) {
      Bundle ya = x.bundle(*ai), yc = x.bundle(c1);
      x.set_bundle(*ai, yc);
      x.set_bundle(c1, ya);
      resolve_all_intra_group(x);
      ctx.emit(x, "a1_envies_leader/top_exchange/swap_ai", Claim::Phi,
               agent_name(*ai));
      continue;
    }
    if (bj) {
      Bundle yc = x.bundle(c1), yb = x.bundle(*bj);
      Bundle ya1 = x.bundle(kA1), yb1 = x.bundle(b1);
      x.set_bundle(kA1, yc);
      x.set_bundle(c1, yb);
      x.set_bundle(b1, ya1);
      x.set_bundle(*bj, yb1);
      resolve_all_intra_group(x);
      ctx.emit(x, "a1_envies_leader/top_exchange/rotate_bj", Claim::Phi,
               agent_name(*bj));
      continue;
    }

    // c_1 envies nobody outside its group: carve its own bundle down
    Bundle best;
    std::optional<AgentId> bestOwner;
    for (Group grp : {Group::A, *y})
      for (AgentId j : x.group_agents(grp))
        if (!bestOwner || inst.prefers(z, x.bundle(j), best)) {
          best = x.bundle(j);
          bestOwner = j;
        }
    Bundle S = mes(inst, z, x.bundle(c1), best);
    if (!strongly_envies_bundle(x, kA1, S)) {
      x.pool_insert(bundle_minus(x.bundle(c1), S));
      x.set_bundle(c1, S);
      resolve_all_intra_group(x);
      ctx.emit(x, "a1_envies_leader/top_exchange/carve", Claim::Phi);
      continue;
    }
    Bundle Sp = mes(inst, Group::A, S, x.bundle(kA1));
    Bundle yc1 = x.bundle(c1);
    if (bestOwner->group == Group::A) {
      x.set_bundle(c1, best);
      x.set_bundle(*bestOwner, Sp);
      x.pool_insert(bundle_minus(S, Sp));
      x.pool_insert(bundle_minus(yc1, S));
      resolve_all_intra_group(x);
      ctx.emit(x, "a1_envies_leader/top_exchange/carve_to_ai", Claim::Phi,
               agent_name(*bestOwner));
      continue;
    }
    // best bundle sits in group y: its holder takes the best A bundle,
    // whose holder takes the carved S'
    std::optional<AgentId> pick;
    for (AgentId j : x.group_agents(Group::A))
      if (!pick || inst.prefers(*y, x.bundle(j), x.bundle(*pick))) pick = j;
    Bundle xPick = x.bundle(*pick);
    x.set_bundle(*bestOwner, xPick);
    x.set_bundle(c1, best);
    x.set_bundle(*pick, Sp);
    x.pool_insert(bundle_minus(S, Sp));
    x.pool_insert(bundle_minus(yc1, S));
    resolve_all_intra_group(x);
    ctx.emit(x, "a1_envies_leader/top_exchange/carve_to_bj", Claim::Phi,
             agent_name(*bestOwner));
  }
}

LemmaStatus lemma_a1_envies_somebody(Allocation& x, SolveContext& ctx,
                                     const Int& phiEntry) {
  bool mutated = false;
  while (true) {
    ctx.micro_step();
    if (x.complete()) return LemmaStatus::Complete;
    if (x.phi() > phiEntry) return LemmaStatus::PhiImproved;
    if (settle_cycles_and_self_champions(x, ctx, "a1_envies_somebody")) {
      mutated = true;
      continue;
    }
    int g = x.lowest_pool_good();
    EnvyGraph eg(x);

    if (!eg.is_source(kA1)) {
      if (mutated) return LemmaStatus::ParetoEscape;
      throw ProofViolation("a1_envies_somebody: a_1 is not a source");
    }
    bool enviesLeader = false;
    for (Group grp : {Group::B, Group::C})
      if (envies(x, kA1, x.leading(grp))) enviesLeader = true;
    if (enviesLeader) {
      LemmaStatus st = lemma_a1_envies_b1_or_c1(x, ctx, phiEntry);
      if (st != LemmaStatus::ParetoEscape) return st;
      mutated = true;
      continue;
    }
    std::optional<AgentId> bi;
    for (AgentId j : x.all_agents())
      if (j.group != Group::A && j.rank != 1 && envies(x, kA1, j)) {
        bi = j;
        break;
      }
    if (!bi) {
      if (mutated) return LemmaStatus::ParetoEscape;
      throw ProofViolation("a1_envies_somebody: a_1 envies nobody outside A");
    }
    Group y = bi->group, z = other_non_a(y);
    AgentId b1 = x.leading(y), c1 = x.leading(z);

    auto srcs = eg.sources();
    if (srcs.size() == 3) {
      three_sources_exchange(x, g);
      ctx.emit(x, "a1_envies_somebody/three_sources", Claim::Pareto);
      mutated = true;
      continue;
    }
    if (srcs.size() == 1) {
      single_source_walk(x, eg, g);
      ctx.emit(x, "a1_envies_somebody/single_source", Claim::Phi);
      mutated = true;
      continue;
    }

    if (g_champions(x, b1, g, kA1)) {
      eliminate_pseudo_cycle(
          x, {{kA1, *bi, EdgeKind::Envy, -1}, {b1, kA1, EdgeKind::Champion, g}});
      ctx.emit(x, "a1_envies_somebody/pseudo_cycle_b", Claim::Phi);
      mutated = true;
      continue;
    }
    if (!g_champions(x, c1, g, kA1))
      throw ProofViolation("a1_envies_somebody: unexpected champion of a_1");

    if (envies(x, b1, c1)) {
      eliminate_pseudo_cycle(x, {{kA1, *bi, EdgeKind::Envy, -1},
                                 {b1, c1, EdgeKind::Envy, -1},
                                 {c1, kA1, EdgeKind::Champion, g}});
      ctx.emit(x, "a1_envies_somebody/pseudo_cycle_bc", Claim::Phi);
      mutated = true;
      continue;
    }
    if (!envies(x, c1, b1))
      throw ProofViolation("a1_envies_somebody: neither leader envies the "
                           "other");

    if (g_champions(x, b1, g, c1)) {
      // c_1 takes X_{b_1}; b_1 takes its own cut of X_{c_1} plus g
      Decomposition dbc = decompose(x, g, b1, c1);
      Bundle oldB1 = x.bundle(b1);
      x.set_bundle(c1, oldB1);
      x.set_bundle(b1, bundle_with(dbc.top, g));
      x.pool_erase(g);
      x.pool_insert(dbc.bottom);
      x.restore_group_order();
      require_efx(x, "a1_envies_somebody/rebundle");
      ctx.emit(x, "a1_envies_somebody/rebundle", Claim::Pareto);
      mutated = true;
      continue;
    }
    if (!g_champions(x, kA1, g, c1))
      throw ProofViolation("a1_envies_somebody: unexpected champion of c_1");
    two_cycle_top_swap(x, g, kA1, c1);
    ctx.emit(x, "a1_envies_somebody/top_swap", Claim::Phi);
    mutated = true;
  }
}

LemmaStatus lemma_a1_not_source_easy(Allocation& x, SolveContext& ctx) {
  int g = x.lowest_pool_good();
  auto yOpt = leader_envying_a1(x);
  if (!yOpt)
    throw ProofViolation("a1_not_source_easy: no leader envies a_1");
  Group y = *yOpt, z = other_non_a(y);
  AgentId b1 = x.leading(y), c1 = x.leading(z);

  // a_1 envies someone in b_1's group: two envy edges close through a_1
  for (AgentId j : x.group_agents(y))
    if (envies(x, kA1, j)) {
      eliminate_pseudo_cycle(
          x, {{kA1, j, EdgeKind::Envy, -1}, {b1, kA1, EdgeKind::Envy, -1}});
      ctx.emit(x, "a1_not_source_easy/envies_group_b", Claim::Phi,
               agent_name(j));
      return LemmaStatus::PhiImproved;
    }
  std::optional<AgentId> cj;
  for (AgentId j : x.group_agents(z))
    if (envies(x, kA1, j)) {
      cj = j;
      break;
    }
  if (!cj)
    throw ProofViolation("a1_not_source_easy: a_1 envies nobody outside A");

  if (envies(x, c1, kA1)) {
    eliminate_pseudo_cycle(
        x, {{kA1, *cj, EdgeKind::Envy, -1}, {c1, kA1, EdgeKind::Envy, -1}});
    ctx.emit(x, "a1_not_source_easy/envies_group_c", Claim::Phi,
             agent_name(*cj));
    return LemmaStatus::PhiImproved;
  }

  if (g_champions(x, b1, g, b1)) {
    champion_path_improvement(x, g, b1, b1, {b1});
    ctx.emit(x, "a1_not_source_easy/self_champion", Claim::Pareto);
    return LemmaStatus::ParetoEscape;
  }
  if (g_champions(x, kA1, g, b1)) {
    eliminate_pseudo_cycle(
        x, {{kA1, b1, EdgeKind::Champion, g}, {b1, kA1, EdgeKind::Envy, -1}});
    ctx.emit(x, "a1_not_source_easy/champion_b1", Claim::Phi);
    return LemmaStatus::PhiImproved;
  }
  eliminate_pseudo_cycle(x, {{kA1, *cj, EdgeKind::Envy, -1},
                             {c1, b1, EdgeKind::Champion, g},
                             {b1, kA1, EdgeKind::Envy, -1}});
  ctx.emit(x, "a1_not_source_easy/champion_chain", Claim::Phi,
           agent_name(*cj));
  return LemmaStatus::PhiImproved;
}

LemmaStatus lemma_a1_not_source_hard(Allocation& x, SolveContext& ctx) {
  const Instance& inst = x.instance();
  int g = x.lowest_pool_good();
  auto yOpt = leader_envying_a1(x);
  if (!yOpt)
    throw ProofViolation("a1_not_source_hard: no leader envies a_1");
  Group y = *yOpt, z = other_non_a(y);
  AgentId b1 = x.leading(y), c1 = x.leading(z);

  if (g_champions(x, b1, g, b1))
    throw ProofViolation("a1_not_source_hard: self-champion past dispatch");
  if (g_champions(x, kA1, g, b1)) {
    eliminate_pseudo_cycle(
        x, {{kA1, b1, EdgeKind::Champion, g}, {b1, kA1, EdgeKind::Envy, -1}});
    ctx.emit(x, "a1_not_source_hard/champion_b1", Claim::Phi);
    return LemmaStatus::PhiImproved;
  }

  if (g_champions(x, c1, g, c1))
    throw ProofViolation("a1_not_source_hard: self-champion past dispatch");
  if (g_champions(x, b1, g, c1)) {
    if (envies(x, b1, c1)) {
      champion_path_improvement(x, g, c1, b1, {b1, c1});
      ctx.emit(x, "a1_not_source_hard/champion_pair", Claim::Pareto);
    } else if (envies(x, c1, b1)) {
      champion_path_improvement(x, g, b1, c1, {c1, b1});
      ctx.emit(x, "a1_not_source_hard/champion_pair", Claim::Pareto);
    } else {
      two_cycle_top_swap(x, g, b1, c1);
      ctx.emit(x, "a1_not_source_hard/top_swap_bc", Claim::Pareto);
    }
    return LemmaStatus::ParetoEscape;
  }
  if (!g_champions(x, kA1, g, c1))
    throw ProofViolation("a1_not_source_hard: unexpected champion of c_1");

  // a_1 champions c_1; c_1 takes its favorite bundle among groups A and
  // y; the displaced holder is compensated with a_1's cut of X_{c_1} + g
  std::optional<AgentId> bestOwner;
  for (Group grp : {Group::A, y})
    for (AgentId j : x.group_agents(grp))
      if (!bestOwner || inst.prefers(z, x.bundle(j), x.bundle(*bestOwner)))
        bestOwner = j;
  Decomposition dca = decompose(x, g, kA1, c1);
  Bundle cut = bundle_with(dca.top, g);

  if (bestOwner->group == y) {
    Bundle xb = x.bundle(*bestOwner), xa = x.bundle(kA1);
    x.set_bundle(c1, xb);
    x.set_bundle(kA1, cut);
    x.set_bundle(*bestOwner, xa);
    x.pool_erase(g);
    x.pool_insert(dca.bottom);
    resolve_all_intra_group(x);
    ctx.emit(x, "a1_not_source_hard/picks_bj", Claim::Phi,
             agent_name(*bestOwner));
    return LemmaStatus::PhiImproved;
  }
  if (*bestOwner == kA1) {
    Bundle xa = x.bundle(kA1);
    x.set_bundle(c1, xa);
    x.set_bundle(kA1, cut);
    x.pool_erase(g);
    x.pool_insert(dca.bottom);
    resolve_all_intra_group(x);
    ctx.emit(x, "a1_not_source_hard/picks_a1", Claim::Phi);
    return LemmaStatus::PhiImproved;
  }
  Bundle xa = x.bundle(*bestOwner);
  x.set_bundle(c1, xa);
  x.set_bundle(*bestOwner, cut);
  x.pool_erase(g);
  x.pool_insert(dca.bottom);
  resolve_all_intra_group(x);
  ctx.emit(x, "a1_not_source_hard/picks_aj", Claim::Neutral,
           agent_name(*bestOwner));
  // a_1 now envies the holder of its former group-mate's bundle
  if (!envies_outside_a(x, kA1))
    throw ProofViolation("a1_not_source_hard: expected a_1 to envy the "
                         "reallocated bundle");
  return lemma_a1_not_source_easy(x, ctx);
}

void dispatch_step(Allocation& x, SolveContext& ctx) {
  int g = x.lowest_pool_good();
  if (ctx.config().assertLevel >= 2) assert_dispatch_structure(x, g);
  Int phi0 = x.phi();

  EnvyGraph eg(x);
  auto cyc = eg.shortest_cycle();
  if (!cyc.empty()) {
    eliminate_envy_cycle(x, cyc);
    ctx.emit(x, "dispatch/envy_cycle", Claim::Pareto);
    return;
  }
  if (auto l = find_self_champion(x, g)) {
    champion_path_improvement(x, g, *l, *l, {*l});
    ctx.emit(x, "dispatch/self_champion",
             l->group == Group::A ? Claim::Phi : Claim::Pareto,
             agent_name(*l));
    return;
  }
  auto srcs = eg.sources();
  bool a1Source = eg.is_source(kA1);
  if (a1Source && srcs.size() == 1) {
    single_source_walk(x, eg, g);
    ctx.emit(x, "dispatch/single_source", Claim::Phi);
    return;
  }
  if (srcs.size() == 3) {
    three_sources_exchange(x, g);
    ctx.emit(x, "dispatch/three_sources", Claim::Pareto);
    return;
  }
  if (a1Source) {
    if (envies_outside_a(x, kA1)) {
      lemma_a1_envies_somebody(x, ctx, phi0);
      return;
    }
    // two sources, a_1 envies nobody outside A: the second source's
    // leader envies the remaining leader
    if (srcs.size() != 2)
      throw ProofViolation("dispatch: expected exactly two sources");
    AgentId b1 = srcs[0] == kA1 ? srcs[1] : srcs[0];
    Group y = b1.group, z = other_non_a(y);
    AgentId c1 = x.leading(z);
    if (!envies(x, b1, c1))
      throw ProofViolation("dispatch: second source does not envy the "
                           "remaining leader");
    if (g_champions(x, c1, g, b1)) {
      champion_path_improvement(x, g, c1, b1, {b1, c1});
      ctx.emit(x, "dispatch/source_pair_rotation", Claim::Pareto);
      return;
    }
    if (!g_champions(x, kA1, g, b1))
      throw ProofViolation("dispatch: unexpected champion of the second "
                           "source");
    iterated_competition(x, ctx, phi0, g, y);
    return;
  }
  if (envies_outside_a(x, kA1)) {
    lemma_a1_not_source_easy(x, ctx);
    return;
  }
  lemma_a1_not_source_hard(x, ctx);
}

SolveResult solve(const Instance& inst, SolveConfig cfg) {
  SolveContext ctx(cfg);
  Allocation x = bootstrap(inst);
  ctx.emit(x, "bootstrap", Claim::Neutral);
  while (!x.complete()) dispatch_step(x, ctx);
  x.assert_partition();
  x.assert_ordering();
  require_efx(x, "solve");
  return {std::move(x), std::move(ctx.trace()), ctx.steps()};
}

}  // namespace efx
