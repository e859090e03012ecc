#include "efx/champion.hpp"

#include <algorithm>
#include <map>

#include "efx/errors.hpp"

namespace efx {

Bundle mes(const Instance& inst, Group vtype, const Bundle& S,
           const Bundle& R) {
  Int target = inst.value(vtype, R);
  if (inst.value(vtype, S) <= target)
    throw ProofViolation("mes: bundle not preferred to reference");
  const std::vector<Int>& per = inst.perturbed_values(vtype);
  std::vector<int> order(S.begin(), S.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return per[static_cast<size_t>(a)] > per[static_cast<size_t>(b)];
  });
  Bundle out;
  Int total = 0;
  for (int g : order) {
    out.insert(g);
    total += per[static_cast<size_t>(g)];
    if (total > target) return out;
  }
  throw ProofViolation("mes: unreachable");
}

namespace {

// Tie-break key for champions: smallest MES first, then leading agents,
// then group A,B,C, then rank.
std::array<int, 4> champion_key(size_t card, AgentId a) {
  return {static_cast<int>(card), a.rank == 1 ? 0 : 1,
          static_cast<int>(a.group), a.rank};
}

}  // namespace

ChampionResult champion_of_bundle(const Allocation& x, const Bundle& S) {
  const Instance& inst = x.instance();
  std::optional<ChampionResult> best;
  std::array<int, 4> bestKey{};
  for (AgentId t : x.all_agents()) {
    if (inst.value(t.group, S) <= x.own_value(t)) continue;
    Bundle m = mes(inst, t.group, S, x.bundle(t));
    auto key = champion_key(m.size(), t);
    if (!best || key < bestKey) {
      best = ChampionResult{t, std::move(m)};
      bestKey = key;
    }
  }
  if (!best) throw ProofViolation("champion_of_bundle: no envier");
  return *best;
}

ChampionResult g_champion(const Allocation& x, int g, AgentId j) {
  return champion_of_bundle(x, bundle_with(x.bundle(j), g));
}

bool champions(const Allocation& x, AgentId i, const Bundle& S) {
  const Instance& inst = x.instance();
  if (inst.value(i.group, S) <= x.own_value(i)) return false;
  size_t own = mes(inst, i.group, S, x.bundle(i)).size();
  for (AgentId t : x.all_agents()) {
    if (inst.value(t.group, S) <= x.own_value(t)) continue;
    if (mes(inst, t.group, S, x.bundle(t)).size() < own) return false;
  }
  return true;
}

bool g_champions(const Allocation& x, AgentId i, int g, AgentId j) {
  return champions(x, i, bundle_with(x.bundle(j), g));
}

Decomposition decompose(const Allocation& x, int g, AgentId i, AgentId j) {
  if (envies(x, i, j))
    throw ProofViolation("decompose: champion envies target");
  Bundle m = mes(x.instance(), i.group, bundle_with(x.bundle(j), g),
                 x.bundle(i));
  if (!m.count(g))
    throw ProofViolation("decompose: good not in the champion's MES");
  m.erase(g);
  return {m, bundle_minus(x.bundle(j), m)};
}

namespace {

void assert_same_group_comparable(const Allocation& x) {
  for (int gi = 0; gi < 3; ++gi) {
    Group g = static_cast<Group>(gi);
    auto agents = x.group_agents(g);
    for (size_t i = 0; i < agents.size(); ++i)
      for (size_t j = i + 1; j < agents.size(); ++j) {
        if (x.bundle(agents[i]).empty() && x.bundle(agents[j]).empty())
          continue;
        bool ij = envies(x, agents[i], agents[j]);
        bool ji = envies(x, agents[j], agents[i]);
        if (ij == ji)
          throw ProofViolation(
              "same-group agents " + agent_name(agents[i]) + "," +
              agent_name(agents[j]) + " not comparable by envy");
      }
  }
}

void assert_leading_dominance(const Allocation& x, const EnvyGraph& eg) {
  for (AgentId s : eg.sources())
    if (s.rank != 1)
      throw ProofViolation("non-leading source " + agent_name(s));
  for (AgentId i : x.all_agents()) {
    if (i.rank == 1) continue;
    AgentId lead = x.leading(i.group);
    for (AgentId j : x.all_agents())
      if (i != j && j != lead && eg.edge(i, j) && !eg.edge(lead, j))
        throw ProofViolation("leading agent of " + agent_name(i) +
                             " misses envy toward " + agent_name(j));
  }
}

void assert_champion_graph(const Allocation& x, int g) {
  const Instance& inst = x.instance();
  auto agents = x.all_agents();
  size_t n = agents.size();

  // adjacency: edge[i][j] iff agent i attains the minimum MES
  // cardinality among the enviers of X_j plus g
  std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
  for (size_t j = 0; j < n; ++j) {
    Bundle s = bundle_with(x.bundle(agents[j]), g);
    size_t best = SIZE_MAX;
    std::vector<size_t> minimizers;
    for (size_t i = 0; i < n; ++i) {
      AgentId t = agents[i];
      if (inst.value(t.group, s) <= x.own_value(t)) continue;
      size_t card = mes(inst, t.group, s, x.bundle(t)).size();
      if (card < best) {
        best = card;
        minimizers.assign(1, i);
      } else if (card == best) {
        minimizers.push_back(i);
      }
    }
    if (minimizers.empty())
      throw ProofViolation("bundle with pool good has no envier");
    for (size_t i : minimizers) edge[i][j] = 1;
    for (size_t i : minimizers) {
      if (agents[i].rank == 1) continue;
      bool leadToo = false;
      for (size_t l : minimizers)
        if (agents[l].group == agents[i].group && agents[l].rank == 1)
          leadToo = true;
      if (!leadToo)
        throw ProofViolation("non-leading champion " +
                             agent_name(agents[i]) +
                             " without its leading agent");
    }
  }

  // cyclicity via Kahn's algorithm: some node must survive peeling
  std::vector<int> outdeg(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) outdeg[i] += edge[i][j];
  std::vector<size_t> stack;
  std::vector<char> removed(n, 0);
  for (size_t i = 0; i < n; ++i)
    if (outdeg[i] == 0) stack.push_back(i);
  size_t peeled = 0;
  while (!stack.empty()) {
    size_t j = stack.back();
    stack.pop_back();
    removed[j] = 1;
    ++peeled;
    for (size_t i = 0; i < n; ++i)
      if (!removed[i] && edge[i][j] && --outdeg[i] == 0) stack.push_back(i);
  }
  if (peeled == n) throw ProofViolation("champion graph is acyclic");

  // canonical champion edges among leading targets close a short cycle
  std::map<Group, Group> next;
  for (int gi = 0; gi < 3; ++gi) {
    Group grp = static_cast<Group>(gi);
    ChampionResult c = g_champion(x, g, x.leading(grp));
    if (c.champion.rank != 1)
      throw ProofViolation("canonical champion " + agent_name(c.champion) +
                           " is not a leading agent");
    next[grp] = c.champion.group;
  }
  Group cur = Group::A;
  std::map<Group, int> seenAt;
  for (int step = 0; step <= 3; ++step) {
    auto it = seenAt.find(cur);
    if (it != seenAt.end()) {
      if (step - it->second > 3)
        throw ProofViolation("leading champion cycle longer than 3");
      return;
    }
    seenAt[cur] = step;
    cur = next[cur];
  }
  throw ProofViolation("no leading champion cycle within 3 steps");
}

}  // namespace

void assert_dispatch_structure(const Allocation& x, int g) {
  x.assert_partition();
  x.assert_ordering();
  assert_same_group_comparable(x);
  EnvyGraph eg(x);
  assert_leading_dominance(x, eg);
  assert_champion_graph(x, g);
}

}  // namespace efx
