#include <doctest.h>

#include <random>

#include "efx/oracle.hpp"
#include "efx/solver.hpp"

using namespace efx;

namespace {

Instance random_instance(std::mt19937_64& rng, std::array<int, 3> sizes,
                         int goods, int maxValue) {
  std::array<std::vector<Int>, 3> vals;
  for (auto& v : vals) {
    v.resize(static_cast<size_t>(goods));
    for (auto& e : v) e = Int(rng() % static_cast<uint64_t>(maxValue + 1));
  }
  return Instance::make(goods, sizes, vals);
}

}  // namespace

TEST_CASE("solve handles identical agents on a tiny instance") {
  Instance inst = Instance::make(3, {1, 1, 1},
                                 {{{Int(3), Int(2), Int(1)},
                                  {Int(3), Int(2), Int(1)},
                                  {Int(3), Int(2), Int(1)}}});
  SolveResult r = solve(inst);
  CHECK(verify_allocation(inst, r.allocation).efx_complete());
  CHECK(oracle_is_efx(inst, r.allocation, true));
  // every agent ends with exactly one good here
  for (AgentId a : r.allocation.all_agents())
    CHECK(r.allocation.bundle(a).size() == 1);
}

TEST_CASE("solve is the bootstrap when goods do not outnumber agents") {
  Instance inst = Instance::make(2, {2, 1, 1},
                                 {{{Int(5), Int(1)},
                                  {Int(2), Int(2)},
                                  {Int(0), Int(7)}}});
  SolveResult r = solve(inst);
  CHECK(r.allocation.complete());
  CHECK(verify_allocation(inst, r.allocation).efx_complete());
}

TEST_CASE("solved allocations verify and trace claims hold") {
  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 40; ++iter) {
    std::array<int, 3> sizes{1 + static_cast<int>(rng() % 3),
                             1 + static_cast<int>(rng() % 3),
                             1 + static_cast<int>(rng() % 3)};
    int goods = 4 + static_cast<int>(rng() % 6);
    Instance inst = random_instance(rng, sizes, goods, 20);
    SolveResult r = solve(inst);

    VerifyReport rep = verify_allocation(inst, r.allocation);
    CHECK(rep.efx_complete());
    CHECK(rep.orderingOk);
    CHECK(oracle_is_efx(inst, r.allocation, false));

    // the recorded potential never decreases along the trace
    Int last(-1);
    for (const TraceEvent& ev : r.trace.events) {
      CHECK(ev.phi >= last);
      last = ev.phi;
    }
  }
}

TEST_CASE("solutions for small instances appear in the oracle enumeration") {
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 10; ++iter) {
    Instance inst = random_instance(rng, {1, 1, 1}, 4, 10);
    SolveResult r = solve(inst);
    CHECK(verify_allocation(inst, r.allocation).efx_complete());
    EfxEnumeration all = enumerate_efx(inst, true, 0);
    CHECK(all.total > 0);
  }
}

TEST_CASE("solving twice yields byte-identical output") {
  std::mt19937_64 rng(8);
  Instance inst = random_instance(rng, {2, 2, 2}, 9, 50);
  SolveResult r1 = solve(inst);
  SolveResult r2 = solve(inst);
  CHECK(r1.allocation.to_json() == r2.allocation.to_json());
  CHECK(r1.trace.to_json_lines() == r2.trace.to_json_lines());
  CHECK(r1.steps == r2.steps);
}
