#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "efx/oracle.hpp"
#include "efx/solver.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw efx::ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw efx::ParseError("cannot write " + path);
  out << text;
}

// Instance generator. The algorithm is fixed for reproducibility across
// platforms: one std::mt19937_64 seeded with `seed`; for each group with
// a nonzero agent count, in the order A, B, C, draw one value per good
// as mt() % (maxValue + 1).
std::string generate_instance(const std::array<int, 3>& sizes, int goods,
                              uint64_t maxValue, uint64_t seed) {
  std::mt19937_64 mt(seed);
  std::ostringstream out;
  out << "{\n  \"goods\": " << goods << ",\n  \"groups\": [";
  bool firstGroup = true;
  for (int i = 0; i < 3; ++i) {
    if (sizes[static_cast<size_t>(i)] == 0) continue;
    if (!firstGroup) out << ",";
    firstGroup = false;
    out << "\n    {\"name\": \"" << efx::group_name(static_cast<efx::Group>(i))
        << "\", \"size\": " << sizes[static_cast<size_t>(i)]
        << ", \"values\": [";
    for (int g = 0; g < goods; ++g) {
      if (g) out << ", ";
      out << (mt() % (maxValue + 1));
    }
    out << "]}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

uint64_t default_max_steps() {
  if (const char* env = std::getenv("EFX_MAX_STEPS")) {
    char* end = nullptr;
    uint64_t v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return efx::SolveConfig{}.maxSteps;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EFX allocation toolkit: generate, solve, verify, enumerate"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random instance document");
  std::string agentsSpec = "1,1,1";
  int goods = 6;
  uint64_t maxValue = 100, seed = 0;
  gen->add_option("--agents", agentsSpec,
                  "group sizes p,q,r (0 drops that type)");
  gen->add_option("--goods", goods, "number of goods")->required();
  gen->add_option("--max-value", maxValue, "values drawn from [0, V]");
  gen->add_option("--seed", seed, "generator seed");

  // solve
  auto* solveCmd = app.add_subcommand("solve", "compute a complete EFX "
                                               "allocation");
  std::string instancePath, tracePath, outputPath;
  uint64_t maxSteps = default_max_steps();
  solveCmd->add_option("instance", instancePath, "instance document")
      ->required();
  solveCmd->add_option("--trace", tracePath, "write a JSON-lines trace here");
  solveCmd->add_option("--max-steps", maxSteps, "micro-step cap");
  solveCmd->add_option("--output", outputPath,
                       "write the allocation here instead of stdout");

  // verify
  auto* verifyCmd = app.add_subcommand("verify", "check an allocation "
                                                 "document");
  std::string allocPath;
  verifyCmd->add_option("instance", instancePath, "instance document")
      ->required();
  verifyCmd->add_option("allocation", allocPath, "allocation document")
      ->required();

  // oracle
  auto* oracleCmd = app.add_subcommand("oracle", "brute-force EFX "
                                                 "enumeration");
  bool completeOnly = false;
  size_t limit = 10;
  oracleCmd->add_option("instance", instancePath, "instance document")
      ->required();
  oracleCmd->add_flag("--complete-only", completeOnly,
                      "skip partial allocations");
  oracleCmd->add_option("--limit", limit, "allocations to print");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      std::array<int, 3> sizes{};
      if (std::sscanf(agentsSpec.c_str(), "%d,%d,%d", &sizes[0], &sizes[1],
                      &sizes[2]) != 3 ||
          sizes[0] < 0 || sizes[1] < 0 || sizes[2] < 0 ||
          sizes[0] + sizes[1] + sizes[2] == 0) {
        std::cerr << "bad --agents, expected p,q,r\n";
        return 1;
      }
      std::cout << generate_instance(sizes, goods, maxValue, seed);
      return 0;
    }

    efx::Instance inst = efx::Instance::from_json(read_file(instancePath));

    if (solveCmd->parsed()) {
      efx::SolveConfig cfg;
      cfg.maxSteps = maxSteps;
      try {
        efx::SolveResult res = efx::solve(inst, cfg);
        if (!tracePath.empty())
          write_file(tracePath, res.trace.to_json_lines());
        efx::VerifyReport rep = verify_allocation(inst, res.allocation);
        if (!rep.efx_complete()) {
          std::cerr << "self-verification failed:\n" << rep.to_json() << "\n";
          return 3;
        }
        std::string doc = res.allocation.to_json() + "\n";
        if (outputPath.empty())
          std::cout << doc;
        else
          write_file(outputPath, doc);
        return 0;
      } catch (const efx::StepCapExceeded& e) {
        std::cerr << "step cap exceeded: " << e.what() << "\n";
        return 2;
      } catch (const efx::ProofViolation& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 3;
      }
    }

    if (verifyCmd->parsed()) {
      efx::Allocation x =
          efx::Allocation::from_json(inst, read_file(allocPath));
      efx::VerifyReport rep = verify_allocation(inst, x);
      std::cout << rep.to_json() << "\n";
      return rep.partitionOk && rep.efxBase ? 0 : 1;
    }

    // oracle
    efx::EfxEnumeration e = enumerate_efx(inst, completeOnly, limit);
    std::cout << "{\n  \"total\": " << e.total << ",\n  \"allocations\": [";
    for (size_t i = 0; i < e.allocations.size(); ++i) {
      if (i) std::cout << ",";
      std::istringstream lines(e.allocations[i].to_json());
      std::string line;
      std::cout << "\n";
      while (std::getline(lines, line)) std::cout << "    " << line << "\n";
    }
    std::cout << "  ]\n}\n";
    return 0;
  } catch (const efx::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const efx::TooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
