#include "efx/envy.hpp"

#include <deque>

#include "efx/errors.hpp"

namespace efx {

bool envies(const Allocation& x, AgentId i, AgentId j) {
  return x.instance().value(i.group, x.bundle(j)) > x.own_value(i);
}

bool strongly_envies_bundle(const Allocation& x, AgentId i, const Bundle& b) {
  if (b.empty()) return false;
  const Instance& inst = x.instance();
  const std::vector<Int>& per = inst.perturbed_values(i.group);
  int cheapest = *b.begin();
  for (int g : b)
    if (per[static_cast<size_t>(g)] < per[static_cast<size_t>(cheapest)])
      cheapest = g;
  Int rest = inst.value(i.group, b) - per[static_cast<size_t>(cheapest)];
  return rest > x.own_value(i);
}

bool strongly_envies(const Allocation& x, AgentId i, AgentId j) {
  return strongly_envies_bundle(x, i, x.bundle(j));
}

std::vector<EfxViolation> efx_violations(const Allocation& x) {
  std::vector<EfxViolation> out;
  auto agents = x.all_agents();
  for (AgentId i : agents)
    for (AgentId j : agents)
      if (i != j && strongly_envies(x, i, j)) out.push_back({i, j});
  return out;
}

bool is_efx(const Allocation& x) { return efx_violations(x).empty(); }

EnvyGraph::EnvyGraph(const Allocation& x) : nodes_(x.all_agents()) {
  offset_[0] = 0;
  offset_[1] = x.instance().group_size(Group::A);
  offset_[2] = offset_[1] + x.instance().group_size(Group::B);
  size_t n = nodes_.size();
  adj_.assign(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    Int own = x.own_value(nodes_[i]);
    for (size_t j = 0; j < n; ++j)
      if (i != j &&
          x.instance().value(nodes_[i].group, x.bundle(nodes_[j])) > own)
        adj_[i][j] = 1;
  }
}

size_t EnvyGraph::index(AgentId a) const {
  return static_cast<size_t>(offset_[static_cast<size_t>(a.group)] +
                             a.rank - 1);
}

std::vector<AgentId> EnvyGraph::sources() const {
  std::vector<AgentId> out;
  for (size_t j = 0; j < nodes_.size(); ++j) {
    bool incoming = false;
    for (size_t i = 0; i < nodes_.size() && !incoming; ++i)
      incoming = adj_[i][j] != 0;
    if (!incoming) out.push_back(nodes_[j]);
  }
  return out;
}

bool EnvyGraph::is_source(AgentId a) const {
  size_t j = index(a);
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (adj_[i][j]) return false;
  return true;
}

std::vector<AgentId> EnvyGraph::shortest_path(AgentId u, AgentId w) const {
  size_t n = nodes_.size();
  size_t src = index(u), dst = index(w);
  std::vector<int> prev(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<size_t> queue{src};
  seen[src] = 1;
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    if (cur == dst && cur != src) break;
    for (size_t next = 0; next < n; ++next) {
      if (!adj_[cur][next] || seen[next]) continue;
      seen[next] = 1;
      prev[next] = static_cast<int>(cur);
      queue.push_back(next);
    }
  }
  if (src == dst) return {u};
  if (!seen[dst] || prev[dst] < 0) return {};
  std::vector<AgentId> path;
  for (int cur = static_cast<int>(dst); cur >= 0; cur = prev[static_cast<size_t>(cur)])
    path.push_back(nodes_[static_cast<size_t>(cur)]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<AgentId> EnvyGraph::shortest_cycle() const {
  std::vector<AgentId> best;
  size_t n = nodes_.size();
  for (size_t start = 0; start < n; ++start) {
    // shortest path from any out-neighbor of start back to start
    std::vector<int> prev(n, -1);
    std::vector<char> seen(n, 0);
    std::deque<size_t> queue;
    for (size_t next = 0; next < n; ++next)
      if (adj_[start][next] && !seen[next]) {
        seen[next] = 1;
        prev[next] = static_cast<int>(start);
        queue.push_back(next);
      }
    bool found = seen[start] != 0;
    while (!queue.empty() && !found) {
      size_t cur = queue.front();
      queue.pop_front();
      for (size_t next = 0; next < n; ++next) {
        if (!adj_[cur][next] || seen[next]) continue;
        seen[next] = 1;
        prev[next] = static_cast<int>(cur);
        if (next == start) {
          found = true;
          break;
        }
        queue.push_back(next);
      }
    }
    if (!found) continue;
    std::vector<AgentId> cycle;
    size_t cur = start;
    do {
      cycle.push_back(nodes_[cur]);
      cur = static_cast<size_t>(prev[cur]);
    } while (cur != start);
    std::reverse(cycle.begin(), cycle.end());
    if (best.empty() || cycle.size() < best.size()) best = cycle;
  }
  return best;
}

}  // namespace efx
