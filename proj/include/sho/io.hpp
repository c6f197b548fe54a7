#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "sho/bider.hpp"
#include "sho/structure.hpp"

namespace sho::io {

using Json = nlohmann::ordered_json;

/// Tensor-level health of a built algebra; `simple` failing (or a zero or
/// non-perfect SHO) marks the parameter set degenerate for the theorem.
struct AlgebraChecks {
  bool perfect = false;
  std::uint32_t center_dim = 0;
  bool simple = false;
  std::vector<std::uint32_t> ideal_witnesses;

  bool degenerate(std::uint32_t sho_dim) const {
    return sho_dim == 0 || !perfect || center_dim != 0 || !simple;
  }
};

AlgebraChecks run_checks(const AlgebraChain& chain, const StructureTensor& tensor);

Json algebra_json(const AlgebraContext& ctx, const AlgebraChain& chain,
                  const StructureTensor& tensor, const AlgebraChecks& checks);

/// Algebra file contents; enough to rerun the solver without rebuilding.
struct LoadedAlgebra {
  std::uint32_t n = 0;
  Scalar p = 0;
  MultiIndex t;
  Json dims;
  bool degenerate = false;
  AlgebraChecks checks;
  // basis vectors as (monomial key, 1-based direction, coeff) triples
  std::vector<std::vector<std::tuple<std::uint64_t, std::uint32_t, Scalar>>> basis;
  std::vector<std::uint32_t> parities;
  std::vector<std::int32_t> zdegs;
  std::vector<std::vector<Scalar>> weights;
  std::vector<std::array<std::uint32_t, 4>> structure_constants;  // (a,b,k,c)

  AlgebraContext make_context() const { return AlgebraContext(n, p, t); }
  StructureTensor make_tensor() const;
  std::vector<VectorField> basis_fields(const AlgebraContext& ctx) const;
};

LoadedAlgebra load_algebra(const std::string& path);
LoadedAlgebra parse_algebra(const Json& j);

/// Canonical serialization: 2-space indent, fixed key order, trailing newline.
void write_json(const std::string& path, const Json& j);

Json solve_report_json(const SolveReport& rep);

}  // namespace sho::io
