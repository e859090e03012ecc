#include "efx/oracle.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

#include "efx/errors.hpp"

namespace efx {

namespace {

Int val(const Instance& inst, Group g, const Bundle& b, bool base) {
  return base ? inst.base_value(g, b) : inst.value(g, b);
}

}  // namespace

bool oracle_is_efx(const Instance& inst, const Allocation& x,
                   bool baseValues) {
  auto agents = x.all_agents();
  for (AgentId i : agents) {
    Int own = val(inst, i.group, x.bundle(i), baseValues);
    for (AgentId j : agents) {
      if (i == j) continue;
      const Bundle& b = x.bundle(j);
      for (int g : b) {
        Bundle cut = b;
        cut.erase(g);
        if (val(inst, i.group, cut, baseValues) > own) return false;
      }
    }
  }
  return true;
}

EfxEnumeration enumerate_efx(const Instance& inst, bool completeOnly,
                             size_t limit) {
  auto probe = Allocation(inst);
  auto agents = probe.all_agents();
  uint64_t slots = agents.size() + (completeOnly ? 0 : 1);
  uint64_t space = 1;
  for (int g = 0; g < inst.goods(); ++g) {
    space *= slots;
    if (space > 10000000ULL)
      throw TooLarge("assignment space exceeds 10^7");
  }

  EfxEnumeration out;
  std::vector<uint64_t> digits(static_cast<size_t>(inst.goods()), 0);
  for (uint64_t idx = 0; idx < space; ++idx) {
    uint64_t rest = idx;
    for (auto& d : digits) {
      d = rest % slots;
      rest /= slots;
    }
    Allocation x(inst);
    for (int g = 0; g < inst.goods(); ++g) {
      uint64_t d = digits[static_cast<size_t>(g)];
      if (d == agents.size()) continue;  // stays in the pool
      x.pool_erase(g);
      Bundle b = x.bundle(agents[d]);
      b.insert(g);
      x.set_bundle(agents[d], std::move(b));
    }
    if (!oracle_is_efx(inst, x, true)) continue;
    ++out.total;
    if (out.allocations.size() < limit) out.allocations.push_back(x);
  }
  return out;
}

Bundle brute_mes(const Instance& inst, Group vtype, const Bundle& S,
                 const Bundle& R) {
  if (S.size() > 20) throw TooLarge("brute_mes handles |S| <= 20");
  std::vector<int> goods(S.begin(), S.end());
  Int target = inst.value(vtype, R);
  size_t n = goods.size();

  for (size_t k = 1; k <= n; ++k) {
    // lexicographically ordered k-subsets over the sorted good indices
    std::vector<size_t> pick(k);
    for (size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      Bundle cand;
      for (size_t i : pick) cand.insert(goods[i]);
      if (inst.value(vtype, cand) > target) return cand;
      size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw ProofViolation("brute_mes: set is not preferred to the reference");
}

VerifyReport verify_allocation(const Instance& inst, const Allocation& x) {
  VerifyReport r;
  try {
    x.assert_partition();
    r.partitionOk = true;
  } catch (const ProofViolation&) {
  }
  r.complete = x.complete();
  r.efxBase = oracle_is_efx(inst, x, true);
  r.efxPerturbed = oracle_is_efx(inst, x, false);
  try {
    x.assert_ordering();
    r.orderingOk = true;
  } catch (const ProofViolation&) {
  }
  r.phi = x.phi();
  return r;
}

std::string VerifyReport::to_json() const {
  nlohmann::json doc;
  doc["partition_ok"] = partitionOk;
  doc["complete"] = complete;
  doc["efx_base"] = efxBase;
  doc["efx_perturbed"] = efxPerturbed;
  doc["ordering_ok"] = orderingOk;
  doc["phi"] = phi.str();
  return doc.dump(2);
}

}  // namespace efx
