#pragma once

#include <optional>
#include <string>

#include "efx/allocation.hpp"

namespace efx {

// i envies j: i strictly prefers j's bundle to its own.
bool envies(const Allocation& x, AgentId i, AgentId j);

// Strong envy: i still envies j's bundle after the removal of some good.
// With additive values it suffices to drop the good i values least.
bool strongly_envies(const Allocation& x, AgentId i, AgentId j);
bool strongly_envies_bundle(const Allocation& x, AgentId i, const Bundle& b);

struct EfxViolation {
  AgentId envier;
  AgentId envied;
};

// EFX check over all ordered agent pairs; returns every violating pair.
std::vector<EfxViolation> efx_violations(const Allocation& x);
bool is_efx(const Allocation& x);

// Envy graph over all agents: edge i -> j iff envies(x, i, j).
// Neighbor order everywhere: group A, B, C, then rank ascending.
class EnvyGraph {
 public:
  explicit EnvyGraph(const Allocation& x);

  const std::vector<AgentId>& nodes() const { return nodes_; }
  bool edge(AgentId i, AgentId j) const {
    return adj_[index(i)][index(j)];
  }

  // Nodes with no incoming edge.
  std::vector<AgentId> sources() const;
  bool is_source(AgentId a) const;

  // Shortest directed path from u to w (breadth-first, deterministic
  // neighbor order), inclusive of both ends. Empty if unreachable.
  std::vector<AgentId> shortest_path(AgentId u, AgentId w) const;

  // A shortest directed cycle, as node sequence without repeating the
  // start. Empty if acyclic.
  std::vector<AgentId> shortest_cycle() const;

 private:
  size_t index(AgentId a) const;

  std::vector<AgentId> nodes_;
  std::vector<std::vector<char>> adj_;
  std::array<int, 3> offset_;
};

}  // namespace efx
