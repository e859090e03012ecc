#include "efx/instance.hpp"

#include <nlohmann/json.hpp>

#include <numeric>

#include "efx/errors.hpp"

namespace efx {
namespace {

using nlohmann::json;

struct Rat {
  Int num;
  Int den;  // > 0
};

Int gcd(Int a, Int b) {
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rat parse_value(const json& v) {
  if (v.is_number_unsigned()) return {Int(v.get<uint64_t>()), 1};
  if (v.is_number_integer()) {
    int64_t x = v.get<int64_t>();
    if (x < 0) throw ParseError("negative value");
    return {Int(x), 1};
  }
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return {Int(s), 1};
      Int num(s.substr(0, slash));
      Int den(s.substr(slash + 1));
      if (den <= 0) throw ParseError("nonpositive denominator in " + s);
      if (num < 0) throw ParseError("negative value " + s);
      return {num, den};
    } catch (const std::exception& e) {
      throw ParseError("bad value string \"" + s + "\": " + e.what());
    }
  }
  throw ParseError("value must be a nonnegative integer or \"a/b\" string");
}

int group_index(const std::string& name) {
  if (name == "A") return 0;
  if (name == "B") return 1;
  if (name == "C") return 2;
  throw ParseError("group name must be A, B or C, got \"" + name + "\"");
}

}  // namespace

Instance Instance::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("goods") || !doc.contains("groups"))
    throw ParseError("instance document needs \"goods\" and \"groups\"");

  int m = doc["goods"].get<int>();
  if (m <= 0) throw ParseError("goods must be >= 1");
  const json& groups = doc["groups"];
  if (!groups.is_array() || groups.empty() || groups.size() > 3)
    throw ParseError("groups array must have 1 to 3 entries");

  std::array<int, 3> sizes = {0, 0, 0};
  std::array<std::vector<Rat>, 3> rats;
  for (const json& g : groups) {
    int idx = group_index(g.at("name").get<std::string>());
    if (sizes[idx] > 0) throw ParseError("duplicate group");
    int sz = g.at("size").get<int>();
    if (sz < 0) throw ParseError("negative group size");
    const json& vals = g.at("values");
    if (!vals.is_array() || static_cast<int>(vals.size()) != m)
      throw ParseError("values array must have one entry per good");
    sizes[idx] = sz;
    for (const json& v : vals) rats[idx].push_back(parse_value(v));
  }

  // Scale every value of every type by the least common multiple of all
  // denominators, keeping the exact-integer core.
  Int lcm = 1;
  for (const auto& vec : rats)
    for (const Rat& r : vec) lcm = lcm / gcd(lcm, r.den) * r.den;

  std::array<std::vector<Int>, 3> values;
  for (int i = 0; i < 3; ++i) {
    values[i].reserve(rats[i].size());
    for (const Rat& r : rats[i]) values[i].push_back(r.num * (lcm / r.den));
  }

  // Fewer-type reduction: fill an empty group label by moving one agent
  // of a type that has at least two agents and copying its valuation
  // vector. Valuations are identical within a type, so the instance is
  // unchanged up to labels.
  int n = sizes[0] + sizes[1] + sizes[2];
  if (n < 3) throw ParseError("need at least 3 agents");
  for (int i = 0; i < 3; ++i) {
    if (sizes[i] > 0) continue;
    int donor = -1;
    for (int j = 0; j < 3; ++j)
      if (sizes[j] >= 2 && (donor < 0 || sizes[j] > sizes[donor])) donor = j;
    if (donor < 0) throw ProofViolation("no donor group for reduction");
    sizes[donor] -= 1;
    sizes[i] = 1;
    values[i] = values[donor];
  }

  return make(m, sizes, values);
}

Instance Instance::make(int goods, std::array<int, 3> sizes,
                        std::array<std::vector<Int>, 3> values) {
  if (goods <= 0) throw ParseError("goods must be >= 1");
  Instance inst;
  inst.m_ = goods;
  Int shift = Int(1) << goods;
  for (int i = 0; i < 3; ++i) {
    if (sizes[i] <= 0) throw ParseError("every group must be nonempty");
    if (static_cast<int>(values[i].size()) != goods)
      throw ParseError("values array must have one entry per good");
    GroupData& g = inst.groups_[static_cast<size_t>(i)];
    g.size = sizes[i];
    g.base = std::move(values[i]);
    g.perturbed.reserve(static_cast<size_t>(goods));
    for (int j = 0; j < goods; ++j) {
      if (g.base[static_cast<size_t>(j)] < 0) throw ParseError("negative value");
      g.perturbed.push_back((g.base[static_cast<size_t>(j)] * shift) +
                            (Int(1) << j));
    }
  }
  return inst;
}

void Instance::swap_bc() {
  std::swap(groups_[1], groups_[2]);
}

std::string Instance::to_json() const {
  json doc;
  doc["goods"] = m_;
  json groups = json::array();
  for (int i = 0; i < 3; ++i) {
    const GroupData& g = groups_[static_cast<size_t>(i)];
    json jg;
    jg["name"] = group_name(static_cast<Group>(i));
    jg["size"] = g.size;
    json vals = json::array();
    for (const Int& v : g.base) vals.push_back(v.str());
    jg["values"] = std::move(vals);
    groups.push_back(std::move(jg));
  }
  doc["groups"] = std::move(groups);
  return doc.dump(2);
}

}  // namespace efx
