// Timing comparison of the serial reference kernels against the OpenMP
// versions: structure-constant extraction, bracket-span generation, and
// full-stream solution verification.
//
// Usage: bench_kernels [n p t1,t2,...]   (default 2 5 1,1)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sho/bider.hpp"
#include "sho/cartan.hpp"
#include "sho/io.hpp"
#include "sho/structure.hpp"

using namespace sho;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MultiIndex parse_t(const std::string& s) {
  MultiIndex t;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    t.push_back(static_cast<std::uint32_t>(std::stoul(s.substr(pos, next - pos))));
    pos = next + 1;
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint32_t n = 2;
  Scalar p = 5;
  MultiIndex t = {1, 1};
  if (argc == 4) {
    n = static_cast<std::uint32_t>(std::stoul(argv[1]));
    p = static_cast<Scalar>(std::stoul(argv[2]));
    t = parse_t(argv[3]);
  } else if (argc != 1) {
    std::fprintf(stderr, "usage: %s [n p t1,t2,...]\n", argv[0]);
    return 2;
  }
#ifdef _OPENMP
  std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("openmp not available; parallel kernels run serially\n");
#endif

  AlgebraContext ctx(n, p, t);
  std::printf("(n,p,|t|) = (%u,%u,%u), dim W = %u\n", n, p, mi_total(t), ctx.w_dim());

  auto t0 = std::chrono::steady_clock::now();
  AlgebraChain chain = build_chain(ctx);
  std::printf("chain build: %.3fs (dim SHO = %u)\n", seconds_since(t0), chain.dim());

  t0 = std::chrono::steady_clock::now();
  auto rows_serial = bracket_span_rows_serial(ctx, chain.sho_prime);
  const double span_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  auto rows_par = bracket_span_rows(ctx, chain.sho_prime, 0);
  const double span_p = seconds_since(t0);
  std::printf("bracket span (%zu rows): serial %.3fs, parallel %.3fs, speedup %.2fx, equal %s\n",
              rows_serial.size(), span_s, span_p, span_s / span_p,
              rows_serial == rows_par ? "yes" : "NO");

  t0 = std::chrono::steady_clock::now();
  StructureTensor S_serial = structure_constants_serial(chain);
  const double sc_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  StructureTensor S = structure_constants(chain, 0);
  const double sc_p = seconds_since(t0);
  std::printf("structure constants (%llu entries): serial %.3fs, parallel %.3fs, "
              "speedup %.2fx, equal %s\n",
              static_cast<unsigned long long>(S.entry_count()), sc_s, sc_p, sc_s / sc_p,
              S_serial == S ? "yes" : "NO");

  BiderSystem sys(S, 0);
  BiderTensor phi = inner_tensor(S, 1);
  t0 = std::chrono::steady_clock::now();
  const std::uint64_t v_serial = count_violations_serial(sys, phi);
  const double ver_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const std::uint64_t v_par = count_violations(sys, phi, 0);
  const double ver_p = seconds_since(t0);
  std::printf("full-stream verify (%llu unknowns): serial %.3fs, parallel %.3fs, "
              "speedup %.2fx, violations %llu/%llu\n",
              static_cast<unsigned long long>(sys.unknown_count()), ver_s, ver_p, ver_s / ver_p,
              static_cast<unsigned long long>(v_serial), static_cast<unsigned long long>(v_par));

  t0 = std::chrono::steady_clock::now();
  SolveResult res = solve(S, 0, SolveMode::dense, nullptr, 0);
  std::printf("dense solve (even): %.3fs, nullity %u, rows %llu\n", seconds_since(t0),
              res.report.nullity, static_cast<unsigned long long>(res.report.rows_consumed));
  return 0;
}
