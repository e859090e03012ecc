#include "efx/competition.hpp"

#include <algorithm>

#include "efx/champion.hpp"
#include "efx/envy.hpp"
#include "efx/rewrite.hpp"
#include "efx/solver.hpp"

namespace efx {

namespace {

constexpr AgentId kA1{Group::A, 1};

struct Entry {
  enum Kind { Real, Virtual, Reserved } kind;
  AgentId owner;    // Real / Virtual
  int removed = -1; // Virtual: the good dropped from the owner's bundle
};

Bundle entry_bundle(const Allocation& x, const Entry& e, AgentId holder) {
  switch (e.kind) {
    case Entry::Reserved:
      return x.bundle(holder);
    case Entry::Real:
      return x.bundle(e.owner);
    default: {
      Bundle b = x.bundle(e.owner);
      b.erase(e.removed);
      return b;
    }
  }
}

// Index of the entry with the strictly largest bundle value under
// vtype. Distinct bundles never tie under perturbed values.
size_t max_entry(const Allocation& x, const std::vector<Entry>& entries,
                 AgentId holder, Group vtype) {
  const Instance& inst = x.instance();
  size_t best = 0;
  Int bestVal = inst.value(vtype, entry_bundle(x, entries[0], holder));
  for (size_t i = 1; i < entries.size(); ++i) {
    Int v = inst.value(vtype, entry_bundle(x, entries[i], holder));
    if (v > bestVal) {
      bestVal = v;
      best = i;
    }
  }
  return best;
}

void require_invariant1(const Allocation& x, AgentId b1) {
  for (const auto& v : efx_violations(x))
    if (v.envier != b1)
      throw ProofViolation("competition: strong envy from " +
                           agent_name(v.envier) +
                           " while only the temporary holder may envy");
}

// Cuts every same-group bundle t strongly envies down to t's minimally
// envied subset, without re-sorting (labels stay frozen mid-loop).
void settle_group(Allocation& x, AgentId t) {
  std::vector<AgentId> targets;
  for (AgentId j : x.group_agents(t.group))
    if (j != t && strongly_envies(x, t, j)) targets.push_back(j);
  if (!targets.empty()) resolve_internal_envies(x, t, targets);
}

void require_efx(const Allocation& x, const char* where) {
  auto bad = efx_violations(x);
  if (!bad.empty())
    throw ProofViolation(std::string(where) + ": allocation not EFX (" +
                         agent_name(bad[0].envier) + " -> " +
                         agent_name(bad[0].envied) + ")");
}

}  // namespace

Bundle preferred_subset(const Instance& inst, Group vtype, const Bundle& S,
                        const Int& threshold) {
  if (inst.value(vtype, S) <= threshold)
    throw ProofViolation("preferred_subset: whole set does not beat the "
                         "threshold");
  std::vector<int> goods(S.begin(), S.end());
  const auto& per = inst.perturbed_values(vtype);
  std::sort(goods.begin(), goods.end(), [&](int a, int b) {
    return per[static_cast<size_t>(a)] > per[static_cast<size_t>(b)];
  });
  Bundle out;
  Int total = 0;
  for (int g : goods) {
    out.insert(g);
    total += per[static_cast<size_t>(g)];
    if (total > threshold) return out;
  }
  throw ProofViolation("preferred_subset: unreachable");
}

LemmaStatus iterated_competition(Allocation& x, SolveContext& ctx,
                                 const Int& phiEntry, int g, Group y) {
  const Instance& inst = x.instance();
  Group z = y == Group::B ? Group::C : Group::B;
  AgentId b1 = x.leading(y);

  {
    EnvyGraph eg(x);
    if (!eg.is_source(kA1))
      throw ProofViolation("competition: a_1 is not a source");
  }
  for (AgentId j : x.all_agents())
    if (j.group != Group::A && envies(x, kA1, j))
      throw ProofViolation("competition: a_1 envies outside A");
  if (!g_champions(x, kA1, g, b1))
    throw ProofViolation("competition: a_1 does not champion the leader");

  // the temporary holding: b_1 takes a_1's cut of X_{b_1} plus g
  Decomposition d = decompose(x, g, kA1, b1);
  x.set_bundle(b1, bundle_with(d.top, g));
  x.pool_erase(g);
  x.pool_insert(d.bottom);
  ctx.emit(x, "competition/init", Claim::Neutral, group_name(y));
  require_invariant1(x, b1);

  std::vector<Entry> ob, oc;
  auto rebuild = [&]() {
    ob.clear();
    oc.clear();
    for (Group grp : {Group::A, z})
      for (AgentId j : x.group_agents(grp)) ob.push_back({Entry::Real, j});
    ob.push_back({Entry::Reserved, b1});
    for (Group grp : {Group::A, y})
      for (AgentId j : x.group_agents(grp))
        if (j != b1) oc.push_back({Entry::Real, j});
    oc.push_back({Entry::Reserved, b1});
  };
  rebuild();

  int virtualCount = 0;
  size_t roundCap =
      static_cast<size_t>(x.instance().goods() + 2) *
          static_cast<size_t>(inst.group_size(z) + 2) +
      8;
  for (size_t round = 0;; ++round) {
    if (round > roundCap)
      throw ProofViolation("competition: round bound exceeded");
    ctx.micro_step();
    size_t poolBefore = x.pool().size();
    int vcBefore = virtualCount;

    size_t pi = max_entry(x, ob, b1, y);
    Entry& P = ob[pi];

    if (P.kind == Entry::Reserved || P.owner.group == Group::A) {
      // finalize, variant one: the winning bundle sits in A or is the
      // temporary holding itself
      if (P.kind == Entry::Reserved) {
        settle_group(x, b1);
        x.restore_group_order();
        require_efx(x, "competition/finalize_reserved");
        ctx.emit(x, "competition/finalize", Claim::Neutral, "reserved");
        if (x.complete()) return LemmaStatus::Complete;
        return lemma_a1_envies_somebody(x, ctx, phiEntry);
      }
      AgentId ai = P.owner;
      Bundle pa = x.bundle(ai), r = x.bundle(b1);
      x.set_bundle(b1, pa);
      x.set_bundle(ai, r);
      settle_group(x, b1);
      settle_group(x, ai);
      x.restore_group_order();
      require_efx(x, "competition/finalize_a");
      if (ai == kA1) {
        ctx.emit(x, "competition/finalize", Claim::Phi, "a_1");
        return LemmaStatus::PhiImproved;
      }
      ctx.emit(x, "competition/finalize", Claim::Neutral, agent_name(ai));
      if (x.complete()) return LemmaStatus::Complete;
      return lemma_a1_envies_somebody(x, ctx, phiEntry);
    }

    // P comes from group z; pit it against z's own comparison set
    AgentId ci = P.owner;
    Bundle pb = entry_bundle(x, P, b1);
    Int pVal = inst.value(z, pb);
    size_t qi = max_entry(x, oc, b1, z);
    bool qIsP = pVal > inst.value(z, entry_bundle(x, oc[qi], b1));
    const Entry& Q = oc[qi];

    if (!qIsP && (Q.kind == Entry::Reserved || Q.owner.group == Group::A)) {
      // finalize, variant two: three-way settlement through c_i
      Bundle leftovers = bundle_minus(x.bundle(ci), pb);
      Bundle r = x.bundle(b1);
      if (Q.kind == Entry::Reserved) {
        x.set_bundle(b1, pb);
        x.set_bundle(ci, r);
        x.pool_insert(leftovers);
        settle_group(x, b1);
        settle_group(x, ci);
        x.restore_group_order();
        require_efx(x, "competition/finalize_c_reserved");
        ctx.emit(x, "competition/finalize", Claim::Neutral,
                 agent_name(ci) + " reserved");
        if (x.complete()) return LemmaStatus::Complete;
        return lemma_a1_envies_somebody(x, ctx, phiEntry);
      }
      AgentId aj = Q.owner;
      Bundle qa = x.bundle(aj);
      x.set_bundle(b1, pb);
      x.set_bundle(ci, qa);
      x.set_bundle(aj, r);
      x.pool_insert(leftovers);
      settle_group(x, b1);
      settle_group(x, ci);
      settle_group(x, aj);
      x.restore_group_order();
      require_efx(x, "competition/finalize_c_a");
      if (aj == kA1) {
        ctx.emit(x, "competition/finalize", Claim::Phi,
                 agent_name(ci) + " a_1");
        return LemmaStatus::PhiImproved;
      }
      ctx.emit(x, "competition/finalize", Claim::Neutral,
               agent_name(ci) + " " + agent_name(aj));
      if (x.complete()) return LemmaStatus::Complete;
      return lemma_a1_envies_somebody(x, ctx, phiEntry);
    }

    auto virtualize = [&]() {
      const Bundle& cur = x.bundle(ci);
      int h = *cur.begin();
      for (int good : cur)
        if (inst.value(y, Bundle{good}) < inst.value(y, Bundle{h})) h = good;
      P.kind = Entry::Virtual;
      P.removed = h;
      ++virtualCount;
    };

    if (P.kind == Entry::Real) {
      if (!qIsP) {
        // a rival bundle of group y beats P inside z's comparison set
        if (Q.kind != Entry::Real || Q.owner.group != y || Q.owner == b1)
          throw ProofViolation("competition: unexpected rival entry");
        virtualize();
        ctx.emit(x, "competition/round", Claim::Neutral, "virtualize");
      } else {
        // b_1 and c_i compete over P: smaller preferred subset wins
        Int maxOb = Int(-1);
        for (size_t i = 0; i < ob.size(); ++i) {
          if (i == pi) continue;
          Int v = inst.value(y, entry_bundle(x, ob[i], b1));
          if (v > maxOb) maxOb = v;
        }
        Int maxOc = Int(-1);
        for (const Entry& e : oc) {
          Int v = inst.value(z, entry_bundle(x, e, b1));
          if (v > maxOc) maxOc = v;
        }
        Bundle Pb = preferred_subset(inst, y, pb, maxOb);
        Bundle Pc = preferred_subset(inst, z, pb, maxOc);
        if (Pc.size() <= Pb.size() && Pc != pb) {
          x.pool_insert(bundle_minus(pb, Pc));
          x.set_bundle(ci, Pc);
          settle_group(x, ci);
          rebuild();
          ctx.emit(x, "competition/round", Claim::Neutral, "carve_win");
          if (x.pool().size() <= poolBefore)
            throw ProofViolation("competition: carve did not grow the pool");
        } else {
          virtualize();
          ctx.emit(x, "competition/round", Claim::Neutral, "virtualize_win");
        }
      }
    } else {
      // P is a virtual bundle X_{c_i} minus one good
      if (qIsP) {
        x.pool_insert(Bundle{P.removed});
        x.set_bundle(ci, pb);
        settle_group(x, ci);
        rebuild();
        ctx.emit(x, "competition/round", Claim::Neutral, "claim_virtual");
      } else {
        if (Q.kind != Entry::Real || Q.owner.group != y || Q.owner == b1)
          throw ProofViolation("competition: unexpected rival entry");
        AgentId bj = Q.owner;
        Bundle qb = x.bundle(bj);
        x.set_bundle(bj, pb);
        x.set_bundle(ci, qb);
        x.pool_insert(Bundle{P.removed});
        settle_group(x, bj);
        settle_group(x, ci);
        rebuild();
        ctx.emit(x, "competition/round", Claim::Neutral, "swap_virtual");
      }
    }
    require_invariant1(x, b1);
    if (x.pool().size() <= poolBefore && virtualCount <= vcBefore)
      throw ProofViolation("competition: round made no progress");
  }
}

}  // namespace efx
