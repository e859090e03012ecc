#pragma once

#include <array>
#include <string>

#include "efx/types.hpp"

namespace efx {

enum class Cmp { Less, Equal, Greater };

// A fair-division instance with up to three additive valuation types.
// Groups are always materialized as three nonempty slots A, B, C; input
// documents with fewer groups are handled by splitting agents of an
// existing type across labels (valuations are per-type, so this does not
// change the underlying problem).
class Instance {
 public:
  struct GroupData {
    int size = 0;
    std::vector<Int> base;       // normalized integer value per good
    std::vector<Int> perturbed;  // base[i] * 2^m + 2^i
  };

  static Instance from_json(const std::string& text);
  static Instance make(int goods, std::array<int, 3> sizes,
                       std::array<std::vector<Int>, 3> values);

  int goods() const { return m_; }
  int group_size(Group g) const { return grp(g).size; }
  int agents() const {
    return grp(Group::A).size + grp(Group::B).size + grp(Group::C).size;
  }

  const std::vector<Int>& base_values(Group g) const { return grp(g).base; }
  const std::vector<Int>& perturbed_values(Group g) const {
    return grp(g).perturbed;
  }

  // All solver comparisons use perturbed values; the perturbation is
  // injective over bundles, so distinct bundles never compare Equal.
  Int value(Group g, const Bundle& s) const {
    return bundle_sum(grp(g).perturbed, s);
  }
  Int base_value(Group g, const Bundle& s) const {
    return bundle_sum(grp(g).base, s);
  }

  Cmp compare(Group g, const Bundle& s, const Bundle& t) const {
    Int vs = value(g, s), vt = value(g, t);
    if (vs < vt) return Cmp::Less;
    if (vs > vt) return Cmp::Greater;
    return Cmp::Equal;
  }
  bool prefers(Group g, const Bundle& s, const Bundle& t) const {
    return value(g, s) > value(g, t);
  }

  // Swaps the B and C group data. Used to realize "without loss of
  // generality" relabelings; group A is never relabeled.
  void swap_bc();

  std::string to_json() const;

 private:
  const GroupData& grp(Group g) const {
    return groups_[static_cast<size_t>(g)];
  }
  GroupData& grp(Group g) { return groups_[static_cast<size_t>(g)]; }

  int m_ = 0;
  std::array<GroupData, 3> groups_;
};

}  // namespace efx
