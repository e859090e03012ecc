#include <doctest.h>

#include "efx/errors.hpp"
#include "efx/instance.hpp"

using namespace efx;

namespace {

Instance same_type_instance(int goods, std::array<int, 3> sizes,
                            std::vector<Int> values) {
  return Instance::make(goods, sizes, {values, values, values});
}

}  // namespace

TEST_CASE("perturbation formula for two goods valued 3,3") {
  Instance inst = same_type_instance(2, {1, 1, 1}, {3, 3});
  // base * 2^m + 2^i with m = 2
  CHECK(inst.perturbed_values(Group::A) == std::vector<Int>{13, 14});
  CHECK(inst.value(Group::A, Bundle{}) == 0);
  CHECK(inst.value(Group::A, Bundle{0}) == 13);
  CHECK(inst.value(Group::A, Bundle{0, 1}) == 27);
}

TEST_CASE("rational values are scaled by the common denominator") {
  Instance inst = Instance::from_json(R"({
    "goods": 2,
    "groups": [
      {"name": "A", "size": 1, "values": ["1/2", "1/3"]},
      {"name": "B", "size": 1, "values": [1, 0]},
      {"name": "C", "size": 1, "values": [0, 1]}
    ]
  })");
  CHECK(inst.base_values(Group::A) == std::vector<Int>{3, 2});
  CHECK(inst.base_values(Group::B) == std::vector<Int>{6, 0});
}

TEST_CASE("perturbed values are injective and order preserving over bundles") {
  // every subset of 6 goods gets a distinct value, and base-value order
  // carries over to perturbed order
  Instance inst = same_type_instance(6, {1, 1, 1}, {7, 7, 3, 0, 0, 12});
  std::vector<Int> seen;
  for (int mask = 0; mask < 64; ++mask) {
    Bundle b;
    for (int i = 0; i < 6; ++i)
      if (mask & (1 << i)) b.insert(i);
    seen.push_back(inst.value(Group::A, b));
  }
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());

  for (int s = 0; s < 64; ++s)
    for (int t = 0; t < 64; ++t) {
      Bundle bs, bt;
      for (int i = 0; i < 6; ++i) {
        if (s & (1 << i)) bs.insert(i);
        if (t & (1 << i)) bt.insert(i);
      }
      if (inst.base_value(Group::A, bs) > inst.base_value(Group::A, bt))
        CHECK(inst.value(Group::A, bs) > inst.value(Group::A, bt));
    }
}

TEST_CASE("missing group labels are filled by splitting a larger type") {
  Instance inst = Instance::from_json(R"({
    "goods": 2,
    "groups": [
      {"name": "B", "size": 3, "values": [5, 1]},
      {"name": "C", "size": 3, "values": [2, 2]}
    ]
  })");
  CHECK(inst.group_size(Group::A) == 1);
  CHECK(inst.group_size(Group::B) == 2);
  CHECK(inst.group_size(Group::C) == 3);
  CHECK(inst.base_values(Group::A) == inst.base_values(Group::B));
  CHECK(inst.agents() == 6);
}

TEST_CASE("single-type instances split across all three labels") {
  Instance inst = Instance::from_json(R"({
    "goods": 1,
    "groups": [{"name": "A", "size": 5, "values": [4]}]
  })");
  CHECK(inst.group_size(Group::A) == 3);
  CHECK(inst.group_size(Group::B) == 1);
  CHECK(inst.group_size(Group::C) == 1);
}

TEST_CASE("instances with fewer than three agents are rejected") {
  CHECK_THROWS_AS(Instance::from_json(R"({
    "goods": 1,
    "groups": [{"name": "A", "size": 2, "values": [1]}]
  })"),
                  ParseError);
}

TEST_CASE("instance documents round-trip") {
  Instance inst = same_type_instance(3, {2, 1, 1}, {3, 1, 4});
  Instance again = Instance::from_json(inst.to_json());
  CHECK(again.to_json() == inst.to_json());
  CHECK(again.agents() == inst.agents());
}
