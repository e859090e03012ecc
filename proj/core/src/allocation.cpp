#include "efx/allocation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

#include "efx/errors.hpp"
#include "efx/trace.hpp"

namespace efx {

Allocation::Allocation(const Instance& inst) : inst_(&inst) {
  for (int i = 0; i < 3; ++i)
    groups_[static_cast<size_t>(i)].resize(
        static_cast<size_t>(inst.group_size(static_cast<Group>(i))));
  for (int g = 0; g < inst.goods(); ++g) pool_.insert(g);
}

std::vector<AgentId> Allocation::all_agents() const {
  std::vector<AgentId> out;
  for (int i = 0; i < 3; ++i) {
    Group g = static_cast<Group>(i);
    for (int r = 1; r <= inst_->group_size(g); ++r) out.push_back({g, r});
  }
  return out;
}

std::vector<AgentId> Allocation::group_agents(Group g) const {
  std::vector<AgentId> out;
  for (int r = 1; r <= inst_->group_size(g); ++r) out.push_back({g, r});
  return out;
}

Int Allocation::phi() const {
  Int best;
  bool first = true;
  for (const Bundle& b : grp(Group::A)) {
    Int v = inst_->value(Group::A, b);
    if (first || v < best) {
      best = v;
      first = false;
    }
  }
  return best;
}

Int Allocation::utility_sum() const {
  Int total = 0;
  for (int i = 0; i < 3; ++i) {
    Group g = static_cast<Group>(i);
    for (const Bundle& b : grp(g)) total += inst_->value(g, b);
  }
  return total;
}

void Allocation::restore_group_order() {
  for (int i = 0; i < 3; ++i) {
    Group g = static_cast<Group>(i);
    std::sort(grp(g).begin(), grp(g).end(),
              [&](const Bundle& x, const Bundle& y) {
                Int vx = inst_->value(g, x), vy = inst_->value(g, y);
                if (vx != vy) return vx < vy;
                return x < y;  // only empty bundles can tie
              });
  }
}

void Allocation::assert_partition() const {
  std::vector<int> seen(static_cast<size_t>(inst_->goods()), 0);
  auto mark = [&](const Bundle& b) {
    for (int g : b) {
      if (g < 0 || g >= inst_->goods())
        throw ProofViolation("good index out of range");
      seen[static_cast<size_t>(g)] += 1;
    }
  };
  for (const auto& bundles : groups_)
    for (const Bundle& b : bundles) mark(b);
  mark(pool_);
  for (int g = 0; g < inst_->goods(); ++g)
    if (seen[static_cast<size_t>(g)] != 1)
      throw ProofViolation("good " + std::to_string(g) +
                           " allocated " + std::to_string(seen[static_cast<size_t>(g)]) +
                           " times");
}

void Allocation::assert_ordering() const {
  for (int i = 0; i < 3; ++i) {
    Group g = static_cast<Group>(i);
    for (size_t r = 1; r < grp(g).size(); ++r)
      if (inst_->value(g, grp(g)[r - 1]) > inst_->value(g, grp(g)[r]))
        throw ProofViolation(std::string("ordering invariant broken in group ") +
                             group_name(g));
  }
}

bool Allocation::pareto_improves(const Allocation& before,
                                 const Allocation& after) {
  bool strict = false;
  for (int i = 0; i < 3; ++i) {
    Group g = static_cast<Group>(i);
    const Instance& inst = before.instance();
    for (size_t r = 0; r < before.grp(g).size(); ++r) {
      Int vb = inst.value(g, before.grp(g)[r]);
      Int va = inst.value(g, after.grp(g)[r]);
      if (va < vb) return false;
      if (va > vb) strict = true;
    }
  }
  return strict;
}

std::string Allocation::to_json() const {
  nlohmann::json doc;
  nlohmann::json bundles = nlohmann::json::object();
  for (AgentId a : all_agents()) {
    nlohmann::json arr = nlohmann::json::array();
    for (int g : bundle(a)) arr.push_back(g);
    bundles[agent_name(a)] = std::move(arr);
  }
  doc["bundles"] = std::move(bundles);
  nlohmann::json un = nlohmann::json::array();
  for (int g : pool_) un.push_back(g);
  doc["unallocated"] = std::move(un);
  doc["phi"] = phi().str();
  return doc.dump(2);
}

Allocation Allocation::from_json(const Instance& inst,
                                 const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed allocation document: ") +
                     e.what());
  }
  if (!doc.is_object() || !doc.contains("bundles"))
    throw ParseError("allocation document needs \"bundles\"");
  Allocation x(inst);
  x.pool_.clear();
  for (AgentId a : x.all_agents()) {
    std::string name = agent_name(a);
    if (!doc["bundles"].contains(name))
      throw ParseError("allocation document misses agent " + name);
    Bundle b;
    for (const auto& v : doc["bundles"][name]) b.insert(v.get<int>());
    x.set_bundle(a, std::move(b));
  }
  if (doc.contains("unallocated"))
    for (const auto& v : doc["unallocated"]) x.pool_.insert(v.get<int>());
  x.assert_partition();
  return x;
}

Allocation bootstrap(const Instance& inst) {
  Allocation x(inst);
  for (AgentId a : x.all_agents()) {
    if (x.complete()) break;
    int g = x.lowest_pool_good();
    x.pool_erase(g);
    x.set_bundle(a, Bundle{g});
  }
  x.restore_group_order();
  x.assert_partition();
  return x;
}

std::string Trace::to_json_lines() const {
  std::string out;
  for (const TraceEvent& e : events) {
    nlohmann::json line;
    line["step"] = e.step;
    line["rule"] = e.rule;
    line["claim"] = claim_name(e.claim);
    line["phi"] = e.phi.str();
    if (!e.detail.empty()) line["detail"] = e.detail;
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace efx
