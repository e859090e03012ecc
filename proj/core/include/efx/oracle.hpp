#pragma once

#include <string>
#include <vector>

#include "efx/allocation.hpp"

namespace efx {

// Exhaustive strong-envy check, independent of the solver's shortcut:
// tries the removal of every single good from the envied bundle.
bool oracle_is_efx(const Instance& inst, const Allocation& x,
                   bool baseValues);

struct EfxEnumeration {
  uint64_t total = 0;                  // number of EFX assignments found
  std::vector<Allocation> allocations; // the first `limit` of them
};

// Enumerates every assignment of goods to agents (and to the pool when
// completeOnly is false) and keeps those that are EFX under base values.
// Deterministic order by assignment index. Throws TooLarge if the
// assignment space exceeds 10^7.
EfxEnumeration enumerate_efx(const Instance& inst, bool completeOnly,
                             size_t limit);

// Exhaustive minimally envied subset: scans subsets of S by increasing
// cardinality (lexicographic within one cardinality) and returns the
// first whose vtype value strictly exceeds R's. Throws ProofViolation
// if S itself is not preferred. |S| <= 20.
Bundle brute_mes(const Instance& inst, Group vtype, const Bundle& S,
                 const Bundle& R);

struct VerifyReport {
  bool partitionOk = false;
  bool complete = false;
  bool efxBase = false;
  bool efxPerturbed = false;
  bool orderingOk = false;
  Int phi = 0;

  bool efx_complete() const {
    return partitionOk && complete && efxBase && efxPerturbed;
  }
  std::string to_json() const;
};

VerifyReport verify_allocation(const Instance& inst, const Allocation& x);

}  // namespace efx
