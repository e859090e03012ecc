#pragma once

#include <array>
#include <string>

#include "efx/instance.hpp"
#include "efx/types.hpp"

namespace efx {

// A partial allocation: one bundle per agent plus a pool of unallocated
// goods. Within each group, bundles are kept sorted by the group's own
// (perturbed) value, nondecreasing in rank; the rank-1 agent of a group
// is its leading agent and holds the group-minimum bundle.
class Allocation {
 public:
  explicit Allocation(const Instance& inst);

  const Instance& instance() const { return *inst_; }

  const Bundle& bundle(AgentId a) const {
    return grp(a.group)[static_cast<size_t>(a.rank - 1)];
  }
  void set_bundle(AgentId a, Bundle b) {
    grp(a.group)[static_cast<size_t>(a.rank - 1)] = std::move(b);
  }

  const Bundle& pool() const { return pool_; }
  void pool_insert(const Bundle& b) { pool_.insert(b.begin(), b.end()); }
  void pool_erase(int g) { pool_.erase(g); }
  int lowest_pool_good() const { return *pool_.begin(); }
  bool complete() const { return pool_.empty(); }

  Int value(Group viewer, AgentId holder) const {
    return inst_->value(viewer, bundle(holder));
  }
  Int own_value(AgentId a) const { return value(a.group, a); }

  std::vector<AgentId> all_agents() const;
  std::vector<AgentId> group_agents(Group g) const;
  AgentId leading(Group g) const { return {g, 1}; }

  // Potential: the utility of the worst-off group-A agent, i.e. a_1's
  // own value once the ordering invariant holds.
  Int phi() const;

  // Sum of every agent's own utility; (phi, this) is the lexicographic
  // progress measure.
  Int utility_sum() const;

  // Re-sorts each group's bundles by own value, nondecreasing. Distinct
  // bundles never tie under perturbed values, so the order is unique.
  void restore_group_order();

  // Mirror of Instance::swap_bc for the bundle side; callers swap both.
  void swap_bc() { std::swap(groups_[1], groups_[2]); }

  void assert_partition() const;   // bundles and pool partition the goods
  void assert_ordering() const;    // per-group value nondecreasing in rank

  // Per-group utility vectors weakly improve rank-wise with at least one
  // strict improvement. Both allocations must satisfy the ordering
  // invariant.
  static bool pareto_improves(const Allocation& before,
                              const Allocation& after);

  std::string to_json() const;
  static Allocation from_json(const Instance& inst, const std::string& text);

 private:
  const std::vector<Bundle>& grp(Group g) const {
    return groups_[static_cast<size_t>(g)];
  }
  std::vector<Bundle>& grp(Group g) {
    return groups_[static_cast<size_t>(g)];
  }

  const Instance* inst_;
  std::array<std::vector<Bundle>, 3> groups_;
  Bundle pool_;
};

// Starting allocation: hand the lowest-indexed pool good to the first
// empty-handed agent (by group then rank) until everyone holds a
// singleton or the pool runs dry, then restore the group order. Single
// goods can't be strongly envied, so the result is EFX.
Allocation bootstrap(const Instance& inst);

}  // namespace efx
