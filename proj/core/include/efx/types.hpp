#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace efx {

using Int = boost::multiprecision::cpp_int;
using Bundle = std::set<int>;

enum class Group : int { A = 0, B = 1, C = 2 };

inline const char* group_name(Group g) {
  switch (g) {
    case Group::A: return "A";
    case Group::B: return "B";
    default: return "C";
  }
}

// rank is 1-based within the group; rank 1 is the leading agent.
struct AgentId {
  Group group;
  int rank;

  auto operator<=>(const AgentId&) const = default;
};

inline std::string agent_name(AgentId a) {
  return std::string(group_name(a.group)) + std::to_string(a.rank);
}

inline Int bundle_sum(const std::vector<Int>& perGood, const Bundle& s) {
  Int total = 0;
  for (int g : s) total += perGood[static_cast<size_t>(g)];
  return total;
}

inline Bundle bundle_union(const Bundle& s, const Bundle& t) {
  Bundle r = s;
  r.insert(t.begin(), t.end());
  return r;
}

inline Bundle bundle_minus(const Bundle& s, const Bundle& t) {
  Bundle r;
  for (int g : s)
    if (!t.count(g)) r.insert(g);
  return r;
}

inline Bundle bundle_with(Bundle s, int g) {
  s.insert(g);
  return s;
}

}  // namespace efx
