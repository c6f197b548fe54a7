#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sho/bider.hpp"
#include "sho/io.hpp"

namespace sho {

struct CheckResult {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::string note;

  bool pass() const { return violations == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int threads = 0;
};

/// Everything the suites need, built once per run.
struct VerifySession {
  const AlgebraContext* ctx;
  AlgebraChain chain;
  StructureTensor tensor;
  io::AlgebraChecks checks;

  explicit VerifySession(const AlgebraContext& c) : ctx(&c), tensor(c.field()) {}
  bool degenerate() const { return checks.degenerate(chain.dim()); }
};

VerifySession build_session(const AlgebraContext& ctx, int threads = 0);

/// Construction identities of Lambda and W plus T_H / divergence laws and the
/// chain-soundness checks (dims, inclusions, gradings, centralizers).
std::vector<CheckResult> identities_suite(const VerifySession& s, const SuiteOptions& opt);

/// Toral subalgebra, weight space decomposition of HO/SHO, closed-form weights.
std::vector<CheckResult> weights_suite(const VerifySession& s, const SuiteOptions& opt);

/// Solver residual identities on every solution of the defining system,
/// plus the cross-assembly agreement at small dimension.
std::vector<CheckResult> lemmas_suite(const VerifySession& s, const SuiteOptions& opt);

/// The inner-biderivation theorem at the session parameters (skipped with a
/// diagnostic when the parameter set is degenerate).
std::vector<CheckResult> theorem_suite(const VerifySession& s, const SuiteOptions& opt);

/// Preferred solve mode by the size budget: dense up to dim 60, blocked above.
SolveMode pick_mode(std::uint32_t dim);

}  // namespace sho
