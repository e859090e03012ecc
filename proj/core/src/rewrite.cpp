#include "efx/rewrite.hpp"

#include <algorithm>

#include "efx/errors.hpp"

namespace efx {

namespace {

void assert_efx_now(const Allocation& x, const char* where) {
  auto bad = efx_violations(x);
  if (!bad.empty())
    throw ProofViolation(std::string(where) + ": result not EFX (" +
                         agent_name(bad[0].envier) + " -> " +
                         agent_name(bad[0].envied) + ")");
}

}  // namespace

void resolve_internal_envies(Allocation& x, AgentId t,
                             const std::vector<AgentId>& targets) {
  for (AgentId j : targets) {
    if (j.group != t.group)
      throw ProofViolation("internal envy target outside the group");
    if (!strongly_envies(x, t, j))
      throw ProofViolation("internal envy target not strongly envied");
    Bundle kept = mes(x.instance(), t.group, x.bundle(j), x.bundle(t));
    x.pool_insert(bundle_minus(x.bundle(j), kept));
    x.set_bundle(j, std::move(kept));
  }
}

void resolve_all_intra_group(Allocation& x) {
  size_t cap = static_cast<size_t>(x.instance().goods()) + 2;
  for (size_t round = 0; round <= cap; ++round) {
    std::optional<AgentId> envier;
    std::vector<AgentId> targets;
    for (AgentId t : x.all_agents()) {
      for (AgentId j : x.all_agents()) {
        if (t == j || !strongly_envies(x, t, j)) continue;
        if (j.group != t.group)
          throw ProofViolation("cross-group strong envy in intra-group resolve: " +
                               agent_name(t) + " -> " + agent_name(j));
        targets.push_back(j);
      }
      if (!targets.empty()) {
        envier = t;
        break;
      }
    }
    if (!envier) {
      x.restore_group_order();
      return;
    }
    resolve_internal_envies(x, *envier, targets);
    x.restore_group_order();
  }
  throw ProofViolation("intra-group resolution did not terminate");
}

void eliminate_envy_cycle(Allocation& x, const std::vector<AgentId>& cycle) {
  if (cycle.size() < 2) throw ProofViolation("envy cycle needs >= 2 agents");
  std::vector<Bundle> received;
  for (size_t i = 0; i < cycle.size(); ++i) {
    AgentId from = cycle[i];
    AgentId to = cycle[(i + 1) % cycle.size()];
    if (!envies(x, from, to))
      throw ProofViolation("not an envy cycle at " + agent_name(from));
    received.push_back(x.bundle(to));
  }
  for (size_t i = 0; i < cycle.size(); ++i)
    x.set_bundle(cycle[i], std::move(received[i]));
  x.restore_group_order();
  x.assert_partition();
  assert_efx_now(x, "eliminate_envy_cycle");
}

void champion_path_improvement(Allocation& x, int g, AgentId champion,
                               AgentId target,
                               const std::vector<AgentId>& path) {
  if (path.empty() || path.front() != target || path.back() != champion)
    throw ProofViolation("champion path must run target -> champion");
  Bundle contested = bundle_with(x.bundle(target), g);
  Bundle kept = mes(x.instance(), champion.group, contested,
                    x.bundle(champion));
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (!envies(x, path[i], path[i + 1]))
      throw ProofViolation("champion path edge is not envy at " +
                           agent_name(path[i]));

  std::vector<Bundle> received;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    received.push_back(x.bundle(path[i + 1]));
  x.pool_erase(g);
  x.pool_insert(bundle_minus(contested, kept));
  x.set_bundle(champion, std::move(kept));
  for (size_t i = 0; i + 1 < path.size(); ++i)
    x.set_bundle(path[i], std::move(received[i]));
  x.restore_group_order();
  x.assert_partition();
  assert_efx_now(x, "champion_path_improvement");
}

void eliminate_pseudo_cycle(Allocation& x, const PseudoCycle& pc) {
  if (pc.size() != 2 && pc.size() != 3)
    throw ProofViolation("pseudo-cycle must have 2 or 3 edges");
  Int phiBefore = x.phi();

  bool a1From = false, a1To = false;
  std::array<std::optional<Bundle>, 3> gained;  // per receiving group
  std::array<std::optional<AgentId>, 3> emptied;
  std::set<int> championGoods;
  for (const PseudoEdge& e : pc) {
    if (e.from.rank != 1)
      throw ProofViolation("pseudo-cycle envier must be a leading agent");
    if (e.from.group == e.to.group)
      throw ProofViolation("pseudo-cycle edge within one group");
    if (e.from == AgentId{Group::A, 1}) a1From = true;
    if (e.to == AgentId{Group::A, 1}) a1To = true;

    size_t fg = static_cast<size_t>(e.from.group);
    size_t tg = static_cast<size_t>(e.to.group);
    if (gained[fg] || emptied[tg])
      throw ProofViolation("pseudo-cycle visits a group twice");
    emptied[tg] = e.to;

    if (e.kind == EdgeKind::Envy) {
      if (!envies(x, e.from, e.to))
        throw ProofViolation("pseudo-cycle envy edge without envy");
      gained[fg] = x.bundle(e.to);
    } else {
      if (!x.pool().count(e.good))
        throw ProofViolation("pseudo-cycle champion good not in pool");
      if (!championGoods.insert(e.good).second)
        throw ProofViolation("two champion edges share one good");
      if (!g_champions(x, e.from, e.good, e.to))
        throw ProofViolation("pseudo-cycle champion edge mismatch");
      gained[fg] = mes(x.instance(), e.from.group,
                       bundle_with(x.bundle(e.to), e.good), x.bundle(e.from));
    }
  }
  if (!a1From || !a1To)
    throw ProofViolation("pseudo-cycle must pass through a_1");

  for (const PseudoEdge& e : pc) {
    size_t fg = static_cast<size_t>(e.from.group);
    if (e.kind == EdgeKind::Champion) {
      x.pool_erase(e.good);
      x.pool_insert(bundle_minus(bundle_with(x.bundle(e.to), e.good),
                                 *gained[fg]));
    }
  }
  for (int gi = 0; gi < 3; ++gi) {
    if (!gained[static_cast<size_t>(gi)]) continue;
    // the group that gains a bundle is exactly the group that lost one
    if (!emptied[static_cast<size_t>(gi)])
      throw ProofViolation("pseudo-cycle group gains without losing");
    x.set_bundle(*emptied[static_cast<size_t>(gi)],
                 std::move(*gained[static_cast<size_t>(gi)]));
  }
  x.restore_group_order();
  x.assert_partition();
  assert_efx_now(x, "eliminate_pseudo_cycle");
  if (x.phi() <= phiBefore)
    throw ProofViolation("pseudo-cycle elimination did not raise phi");
}

void two_cycle_top_swap(Allocation& x, int g, AgentId u, AgentId w) {
  if (u.rank != 1 || w.rank != 1 || u.group == w.group)
    throw ProofViolation("top swap needs two distinct leading agents");
  for (int gi = 0; gi < 3; ++gi) {
    AgentId lead = x.leading(static_cast<Group>(gi));
    if ((lead != u && envies(x, lead, u)) || (lead != w && envies(x, lead, w)))
      throw ProofViolation("a leading agent envies a top-swap participant");
  }
  Allocation before = x;
  const Instance& inst = x.instance();

  Decomposition cutFromW = decompose(x, g, u, w);  // u cuts X_w
  Decomposition cutFromU = decompose(x, g, w, u);  // w cuts X_u
  Bundle newU = bundle_union(cutFromW.top, cutFromU.bottom);
  Bundle newW = bundle_union(cutFromU.top, cutFromW.bottom);

  Group thirdGroup = static_cast<Group>(3 - static_cast<int>(u.group) -
                                        static_cast<int>(w.group));
  AgentId third = x.leading(thirdGroup);
  auto thirdStrong = [&](const Bundle& b) {
    return strongly_envies_bundle(x, third, b);
  };
  bool pickU = thirdStrong(newU);
  bool pickW = thirdStrong(newW);
  if (pickU && pickW)
    throw ProofViolation("third leading agent strongly envies both sides");

  if (pickU) {
    newU = bundle_with(cutFromW.top, g);
    x.pool_insert(cutFromU.bottom);
    x.pool_erase(g);
  } else if (pickW) {
    newW = bundle_with(cutFromU.top, g);
    x.pool_insert(cutFromW.bottom);
    x.pool_erase(g);
  }
  x.set_bundle(u, newU);
  x.set_bundle(w, newW);

  // settle group-internal strong envy toward a swapped agent with an MES
  // relative to the group's rank-2 bundle (sizes >= 2 only)
  for (AgentId o : {u, w}) {
    if (inst.group_size(o.group) < 2) continue;
    bool envied = false;
    for (AgentId mate : x.group_agents(o.group))
      if (mate != o && strongly_envies_bundle(x, mate, x.bundle(o)))
        envied = true;
    if (!envied) continue;
    Bundle ref = before.bundle({o.group, 2});
    Bundle kept = mes(inst, o.group, x.bundle(o), ref);
    x.pool_insert(bundle_minus(x.bundle(o), kept));
    x.set_bundle(o, std::move(kept));
  }

  for (AgentId o : {u, w})
    if (inst.value(o.group, x.bundle(o)) <= before.own_value(o))
      throw ProofViolation("top-swap participant did not strictly improve");

  x.restore_group_order();
  x.assert_partition();
  assert_efx_now(x, "two_cycle_top_swap");
  if (!Allocation::pareto_improves(before, x))
    throw ProofViolation("top swap is not a Pareto improvement");
}

void three_sources_exchange(Allocation& x, int g) {
  EnvyGraph eg(x);
  std::array<AgentId, 3> lead = {x.leading(Group::A), x.leading(Group::B),
                                 x.leading(Group::C)};
  for (AgentId l : lead)
    if (!eg.is_source(l))
      throw ProofViolation("three-source exchange needs all leading agents "
                           "to be sources");

  // championing can tie, so probe the relation directly: a self-champion
  // takes priority, then a mutual pair; once both are excluded the leading
  // champion of each bundle is unique and the edges form a 3-cycle
  for (AgentId l : lead)
    if (g_champions(x, l, g, l)) {
      champion_path_improvement(x, g, l, l, {l});
      return;
    }
  for (size_t r = 0; r < 3; ++r)
    for (size_t s = r + 1; s < 3; ++s)
      if (g_champions(x, lead[r], g, lead[s]) &&
          g_champions(x, lead[s], g, lead[r])) {
        two_cycle_top_swap(x, g, lead[r], lead[s]);
        return;
      }

  // champion map over the leading bundles: sigma[r] champions X_{lead r}
  std::array<int, 3> sigma{};
  for (int r = 0; r < 3; ++r) {
    ChampionResult c = g_champion(x, g, lead[static_cast<size_t>(r)]);
    if (c.champion.rank != 1)
      throw ProofViolation("canonical champion is not a leading agent");
    sigma[static_cast<size_t>(r)] = static_cast<int>(c.champion.group);
  }
  auto sg = [&](int r) { return sigma[static_cast<size_t>(r)]; };

  // no fixed point and no mutual pair on three nodes forces a 3-cycle
  auto succ = [&](int r) { return sg(r); };
  auto pred = [&](int r) { return sg(sg(r)); };
  Allocation before = x;
  const Instance& inst = x.instance();

  std::array<Decomposition, 3> d;
  for (int r = 0; r < 3; ++r)
    d[static_cast<size_t>(r)] =
        decompose(x, g, lead[static_cast<size_t>(succ(r))],
                  lead[static_cast<size_t>(r)]);
  auto T = [&](int r) -> const Bundle& {
    return d[static_cast<size_t>(r)].top;
  };
  auto B = [&](int r) -> const Bundle& {
    return d[static_cast<size_t>(r)].bottom;
  };
  const Bundle gOnly{g};

  // every group prefers the top cut from its predecessor's bundle to the
  // other tops, values its own bottom above g, and g above the
  // predecessor's bottom
  for (int r = 0; r < 3; ++r) {
    Group vr = static_cast<Group>(r);
    if (!inst.prefers(vr, T(pred(r)), T(r)) ||
        !inst.prefers(vr, T(pred(r)), T(succ(r))) ||
        !inst.prefers(vr, B(r), gOnly) ||
        !inst.prefers(vr, gOnly, B(pred(r))))
      throw ProofViolation("three-source top/bottom ordering failed");
  }

  // p[r]: group r prefers its successor's bottom to its own
  std::array<bool, 3> p{};
  for (int r = 0; r < 3; ++r)
    p[static_cast<size_t>(r)] =
        inst.prefers(static_cast<Group>(r), B(succ(r)), B(r));
  int holds = (p[0] ? 1 : 0) + (p[1] ? 1 : 0) + (p[2] ? 1 : 0);

  std::array<Bundle, 3> nb;
  bool usesG = false;
  if (holds == 3) {
    for (int r = 0; r < 3; ++r)
      nb[static_cast<size_t>(r)] = bundle_union(T(pred(r)), B(succ(r)));
  } else if (holds == 0) {
    for (int r = 0; r < 3; ++r)
      nb[static_cast<size_t>(r)] = bundle_union(T(pred(r)), B(r));
  } else if (holds == 1) {
    int alpha = p[0] ? 0 : (p[1] ? 1 : 2);
    int beta = succ(alpha), gamma = pred(alpha);
    nb[static_cast<size_t>(alpha)] = bundle_union(T(gamma), B(alpha));
    nb[static_cast<size_t>(beta)] = bundle_with(T(alpha), g);
    nb[static_cast<size_t>(gamma)] = bundle_union(T(beta), B(gamma));
    usesG = true;
  } else {
    int gamma = !p[0] ? 0 : (!p[1] ? 1 : 2);  // the failing group
    int alpha = succ(gamma), beta = succ(alpha);
    if (inst.prefers(static_cast<Group>(gamma), T(gamma), T(alpha))) {
      nb[static_cast<size_t>(alpha)] = bundle_union(T(gamma), B(beta));
      nb[static_cast<size_t>(beta)] = bundle_union(T(alpha), B(gamma));
      nb[static_cast<size_t>(gamma)] = bundle_with(T(beta), g);
      usesG = true;
    } else {
      Bundle mixed = bundle_union(T(alpha), B(gamma));
      Bundle S = mes(inst, static_cast<Group>(beta), mixed,
                     x.bundle(lead[static_cast<size_t>(beta)]));
      if (inst.prefers(static_cast<Group>(gamma), S,
                       x.bundle(lead[static_cast<size_t>(gamma)]))) {
        nb[static_cast<size_t>(alpha)] = bundle_union(T(gamma), B(alpha));
        nb[static_cast<size_t>(beta)] =
            x.bundle(lead[static_cast<size_t>(beta)]);
        nb[static_cast<size_t>(gamma)] = S;
      } else {
        nb[static_cast<size_t>(alpha)] = bundle_union(T(gamma), B(beta));
        nb[static_cast<size_t>(beta)] = S;
        nb[static_cast<size_t>(gamma)] = bundle_with(T(beta), g);
        usesG = true;
      }
    }
  }

  Bundle oldAll;
  for (AgentId l : lead) oldAll = bundle_union(oldAll, x.bundle(l));
  Bundle newAll;
  for (const Bundle& b : nb) newAll = bundle_union(newAll, b);
  if (usesG) x.pool_erase(g);
  x.pool_insert(bundle_minus(oldAll, newAll));
  for (int r = 0; r < 3; ++r)
    x.set_bundle(lead[static_cast<size_t>(r)], nb[static_cast<size_t>(r)]);

  resolve_all_intra_group(x);
  x.assert_partition();
  assert_efx_now(x, "three_sources_exchange");
  if (!Allocation::pareto_improves(before, x))
    throw ProofViolation("three-source exchange is not a Pareto improvement");
}

}  // namespace efx
