#include <doctest.h>

#include <random>

#include "efx/oracle.hpp"
#include "efx/envy.hpp"

using namespace efx;

namespace {

Instance same_type_instance(int goods, std::vector<Int> values) {
  return Instance::make(goods, {1, 1, 1}, {values, values, values});
}

}  // namespace

TEST_CASE("enumeration counts EFX assignments for a tiny instance") {
  // 3 identical agents, goods worth 1 and 2. Complete assignments: 9.
  // EFX fails only when one agent takes both goods (someone else then
  // strongly envies the pair): 3 bad, 6 good.
  Instance inst = same_type_instance(2, {1, 2});
  EfxEnumeration complete = enumerate_efx(inst, true, 10);
  CHECK(complete.total == 6);
  REQUIRE(complete.allocations.size() == 6);
  for (const Allocation& x : complete.allocations) {
    CHECK(x.complete());
    CHECK(oracle_is_efx(inst, x, true));
  }

  // Partial assignments add a pool slot per good: 16 total, and the
  // only failures still give both goods to one agent: 13 remain EFX.
  EfxEnumeration partial = enumerate_efx(inst, false, 3);
  CHECK(partial.total == 13);
  CHECK(partial.allocations.size() == 3);
}

TEST_CASE("oracle strong-envy check agrees with the additive shortcut") {
  std::mt19937_64 rng(991);
  for (int iter = 0; iter < 200; ++iter) {
    int m = 2 + static_cast<int>(rng() % 5);
    std::array<std::vector<Int>, 3> vals;
    for (auto& v : vals) {
      v.resize(static_cast<size_t>(m));
      for (auto& e : v) e = Int(rng() % 8);
    }
    Instance inst = Instance::make(m, {1, 2, 1}, vals);
    Allocation x(inst);
    for (int g = 0; g < m; ++g) {
      uint64_t pick = rng() % 5;  // 4 agents + pool
      if (pick == 4) continue;
      auto agents = x.all_agents();
      Bundle b = x.bundle(agents[pick]);
      b.insert(g);
      x.set_bundle(agents[pick], b);
      x.pool_erase(g);
    }
    CHECK(oracle_is_efx(inst, x, false) == is_efx(x));
  }
}

TEST_CASE("verify_allocation reports on good and tampered allocations") {
  Instance inst = same_type_instance(3, {3, 2, 1});
  Allocation x = bootstrap(inst);
  VerifyReport ok = verify_allocation(inst, x);
  CHECK(ok.partitionOk);
  CHECK(ok.complete);
  CHECK(ok.efxBase);
  CHECK(ok.efxPerturbed);
  CHECK(ok.orderingOk);
  CHECK(ok.efx_complete());

  // hand everything to one agent: still a partition, no longer EFX
  Allocation bad(inst);
  bad.set_bundle({Group::B, 1}, Bundle{0, 1, 2});
  for (int g : {0, 1, 2}) bad.pool_erase(g);
  VerifyReport rep = verify_allocation(inst, bad);
  CHECK(rep.partitionOk);
  CHECK(rep.complete);
  CHECK_FALSE(rep.efxBase);
  CHECK_FALSE(rep.efx_complete());

  // a duplicated good breaks the partition flag without throwing
  Allocation dup = bootstrap(inst);
  Bundle b = dup.bundle({Group::C, 1});
  b.insert(0);
  dup.set_bundle({Group::C, 1}, b);
  VerifyReport drep = verify_allocation(inst, dup);
  CHECK_FALSE(drep.partitionOk);
}

TEST_CASE("an empty allocation is EFX but incomplete") {
  Instance inst = same_type_instance(2, {1, 1});
  Allocation x(inst);
  VerifyReport rep = verify_allocation(inst, x);
  CHECK(rep.partitionOk);
  CHECK_FALSE(rep.complete);
  CHECK(rep.efxBase);
  CHECK(rep.efxPerturbed);
  CHECK_FALSE(rep.efx_complete());
}
