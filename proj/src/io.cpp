#include "sho/io.hpp"

#include <array>
#include <fstream>
#include <stdexcept>

namespace sho::io {

AlgebraChecks run_checks(const AlgebraChain& chain, const StructureTensor& tensor) {
  (void)chain;
  AlgebraChecks out;
  const std::uint32_t d = tensor.dim;
  // perfect: the tensor rows span the whole algebra
  {
    Eliminator e(d, tensor.F);
    for (std::uint32_t a = 0; a < d && e.rank() < d; ++a)
      for (std::uint32_t b = 0; b < d && e.rank() < d; ++b) {
        const auto& row = tensor.at(a, b);
        if (row.empty()) continue;
        SparseVec v;
        v.dim = d;
        v.entries.assign(row.begin(), row.end());
        e.add_row(v);
      }
    out.perfect = (e.rank() == d);
  }
  out.center_dim = centralizer(tensor, Subspace::full(d, tensor.F)).rank();
  out.simple = basis_ideals_full(tensor, &out.ideal_witnesses);
  return out;
}

namespace {

Json basis_json(const AlgebraContext& ctx, const AlgebraChain& chain) {
  Json arr = Json::array();
  for (std::uint32_t k = 0; k < chain.dim(); ++k) {
    Json vec;
    vec["parity"] = chain.parities[k];
    vec["zdeg"] = chain.zdegs[k];
    vec["weights"] = chain.weights[k];
    Json terms = Json::array();
    for (const auto& [coord, c] : chain.sho.basis()[k].entries)
      terms.push_back({ctx.key_of(ctx.mono(ctx.w_rank(coord))), ctx.w_dir(coord) + 1, c});
    vec["terms"] = std::move(terms);
    arr.push_back(std::move(vec));
  }
  return arr;
}

}  // namespace

Json algebra_json(const AlgebraContext& ctx, const AlgebraChain& chain,
                  const StructureTensor& tensor, const AlgebraChecks& checks) {
  Json j;
  j["format"] = "sho-algebra";
  j["format_version"] = 1;
  j["n"] = ctx.n();
  j["p"] = ctx.field().p();
  j["t"] = ctx.t();
  j["monomial_key"] =
      "key = mixed_radix(alpha) * 2^n + odd_set; alpha_1 is the least significant "
      "digit with radix p^{t_1}, then alpha_2 with radix p^{t_2}, ...; odd_set bit b "
      "(b = 0..n-1) is the odd variable x_{n+1+b}; directions are 1-based D_1..D_2n";
  j["dims"] = {{"lambda", ctx.lambda_dim()}, {"w", ctx.w_dim()},      {"ho", chain.ho.rank()},
               {"sprime", chain.sprime.rank()}, {"sho_prime", chain.sho_prime.rank()},
               {"sho_bar", chain.sho_bar.rank()}, {"sho", chain.sho.rank()}};
  j["degenerate"] = checks.degenerate(chain.dim());
  j["checks"] = {{"perfect", checks.perfect},
                 {"center_dim", checks.center_dim},
                 {"simple", checks.simple},
                 {"ideal_witnesses", checks.ideal_witnesses}};
  j["basis"] = basis_json(ctx, chain);
  Json sc = Json::array();
  for (std::uint32_t a = 0; a < tensor.dim; ++a)
    for (std::uint32_t b = 0; b < tensor.dim; ++b)
      for (const auto& [k, c] : tensor.at(a, b)) sc.push_back({a, b, k, c});
  j["structure_constants"] = std::move(sc);
  return j;
}

StructureTensor LoadedAlgebra::make_tensor() const {
  StructureTensor S{PrimeField(p)};
  S.dim = static_cast<std::uint32_t>(basis.size());
  S.parity = parities;
  S.zdeg = zdegs;
  S.rows.resize(std::size_t(S.dim) * S.dim);
  for (const auto& [a, b, k, c] : structure_constants)
    S.rows[std::size_t(a) * S.dim + b].emplace_back(k, c);
  return S;
}

std::vector<VectorField> LoadedAlgebra::basis_fields(const AlgebraContext& ctx) const {
  std::vector<VectorField> out;
  out.reserve(basis.size());
  for (const auto& terms : basis) {
    VectorField vf(ctx);
    for (const auto& [key, dir, coeff] : terms)
      vf.add_term(ctx.rank_of_key(key), dir - 1, coeff);
    out.push_back(std::move(vf));
  }
  return out;
}

LoadedAlgebra parse_algebra(const Json& j) {
  if (j.value("format", "") != "sho-algebra")
    throw std::runtime_error("not an algebra file");
  LoadedAlgebra a;
  a.n = j.at("n").get<std::uint32_t>();
  a.p = j.at("p").get<Scalar>();
  a.t = j.at("t").get<MultiIndex>();
  a.dims = j.at("dims");
  a.degenerate = j.at("degenerate").get<bool>();
  a.checks.perfect = j.at("checks").at("perfect").get<bool>();
  a.checks.center_dim = j.at("checks").at("center_dim").get<std::uint32_t>();
  a.checks.simple = j.at("checks").at("simple").get<bool>();
  a.checks.ideal_witnesses =
      j.at("checks").at("ideal_witnesses").get<std::vector<std::uint32_t>>();
  for (const auto& vec : j.at("basis")) {
    a.parities.push_back(vec.at("parity").get<std::uint32_t>());
    a.zdegs.push_back(vec.at("zdeg").get<std::int32_t>());
    a.weights.push_back(vec.at("weights").get<std::vector<Scalar>>());
    std::vector<std::tuple<std::uint64_t, std::uint32_t, Scalar>> terms;
    for (const auto& t : vec.at("terms"))
      terms.emplace_back(t.at(0).get<std::uint64_t>(), t.at(1).get<std::uint32_t>(),
                         t.at(2).get<Scalar>());
    a.basis.push_back(std::move(terms));
  }
  for (const auto& q : j.at("structure_constants"))
    a.structure_constants.push_back({q.at(0).get<std::uint32_t>(), q.at(1).get<std::uint32_t>(),
                                     q.at(2).get<std::uint32_t>(), q.at(3).get<Scalar>()});
  return a;
}

LoadedAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open algebra file: " + path);
  Json j = Json::parse(in);
  return parse_algebra(j);
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

Json solve_report_json(const SolveReport& rep) {
  Json j;
  j["phi_parity"] = rep.phi_parity;
  j["mode"] = rep.mode;
  j["unknowns"] = rep.unknowns;
  j["active_unknowns"] = rep.active_unknowns;
  j["rows_consumed"] = rep.rows_consumed;
  j["nullity"] = rep.nullity;
  Json lam = Json::array();
  for (const auto& l : rep.lambda) {
    if (l)
      lam.push_back(*l);
    else
      lam.push_back("not inner");
  }
  j["lambda"] = std::move(lam);
  j["verified_full_stream"] = rep.verified_full_stream;
  j["fell_back_to_dense"] = rep.fell_back_to_dense;
  j["status"] = rep.status;
  return j;
}

}  // namespace sho::io
