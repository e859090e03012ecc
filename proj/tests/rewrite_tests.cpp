#include <doctest.h>

#include "efx/rewrite.hpp"

using namespace efx;

TEST_CASE("resolve_internal_envies cuts the envied bundle to an MES") {
  Instance inst = Instance::make(
      3, {2, 1, 1},
      {{{Int(6), Int(5), Int(1)},
       {Int(0), Int(0), Int(0)},
       {Int(0), Int(0), Int(0)}}});
  Allocation x(inst);
  AgentId a1{Group::A, 1}, a2{Group::A, 2};
  x.set_bundle(a1, Bundle{2});
  x.set_bundle(a2, Bundle{0, 1});
  for (int g : {0, 1, 2}) x.pool_erase(g);
  REQUIRE(strongly_envies(x, a1, a2));

  resolve_internal_envies(x, a1, {a2});
  CHECK(x.bundle(a2) == Bundle{0});
  CHECK(x.pool() == Bundle{1});
  CHECK_FALSE(strongly_envies(x, a1, a2));
  CHECK(x.phi() == inst.value(Group::A, Bundle{2}));
  x.assert_partition();
}

TEST_CASE("resolve_all_intra_group settles strong envy and re-sorts") {
  Instance inst = Instance::make(
      3, {2, 1, 1},
      {{{Int(6), Int(5), Int(1)},
       {Int(0), Int(0), Int(0)},
       {Int(0), Int(0), Int(0)}}});
  Allocation x(inst);
  AgentId a1{Group::A, 1}, a2{Group::A, 2};
  x.set_bundle(a1, Bundle{0, 1});
  x.set_bundle(a2, Bundle{2});
  for (int g : {0, 1, 2}) x.pool_erase(g);
  x.restore_group_order();  // {2} is the minimum, so a_1 holds it
  REQUIRE(x.bundle(a1) == Bundle{2});
  REQUIRE(strongly_envies(x, a1, a2));

  resolve_all_intra_group(x);
  CHECK(is_efx(x));
  x.assert_ordering();
  x.assert_partition();
  CHECK(x.pool() == Bundle{1});
}

TEST_CASE("eliminate_envy_cycle rotates bundles along the cycle") {
  Instance inst = Instance::make(2, {1, 1, 1},
                                 {{{Int(1), Int(10)},
                                  {Int(10), Int(1)},
                                  {Int(1), Int(1)}}});
  Allocation x(inst);
  AgentId a1{Group::A, 1}, b1{Group::B, 1};
  x.set_bundle(a1, Bundle{0});
  x.set_bundle(b1, Bundle{1});
  x.pool_erase(0);
  x.pool_erase(1);
  Allocation before = x;

  eliminate_envy_cycle(x, {a1, b1});
  CHECK(x.bundle(a1) == Bundle{1});
  CHECK(x.bundle(b1) == Bundle{0});
  CHECK(is_efx(x));
  CHECK(Allocation::pareto_improves(before, x));
}

TEST_CASE("self-champion path keeps only the minimally envied cut") {
  Instance inst = Instance::make(2, {1, 1, 1},
                                 {{{Int(1), Int(5)},
                                  {Int(0), Int(0)},
                                  {Int(0), Int(0)}}});
  Allocation x(inst);
  AgentId a1{Group::A, 1};
  x.set_bundle(a1, Bundle{0});
  x.pool_erase(0);

  ChampionResult r = g_champion(x, 1, a1);
  REQUIRE(r.champion == a1);
  REQUIRE(r.mesBundle == Bundle{1});

  Allocation before = x;
  champion_path_improvement(x, 1, a1, a1, {a1});
  CHECK(x.bundle(a1) == Bundle{1});
  CHECK(x.pool() == Bundle{0});
  CHECK(Allocation::pareto_improves(before, x));
}

TEST_CASE("pseudo-cycle elimination strictly raises phi") {
  Instance inst = Instance::make(3, {1, 1, 1},
                                 {{{Int(1), Int(8), Int(0)},
                                  {Int(5), Int(1), Int(4)},
                                  {Int(0), Int(0), Int(0)}}});
  Allocation x(inst);
  AgentId a1{Group::A, 1}, b1{Group::B, 1};
  x.set_bundle(a1, Bundle{0});
  x.set_bundle(b1, Bundle{1});
  x.pool_erase(0);
  x.pool_erase(1);
  REQUIRE(envies(x, a1, b1));
  REQUIRE(g_champion(x, 2, a1).champion == b1);

  Int phi0 = x.phi();
  eliminate_pseudo_cycle(x, {{a1, b1, EdgeKind::Envy, -1},
                             {b1, a1, EdgeKind::Champion, 2}});
  CHECK(x.bundle(a1) == Bundle{1});
  CHECK(x.bundle(b1) == Bundle{0});
  CHECK(x.pool() == Bundle{2});
  CHECK(x.phi() > phi0);
  CHECK(is_efx(x));
  x.assert_partition();
}
