#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "stepreach/satcore.hpp"

using namespace stepreach::sat;

namespace {

Cnf random_3cnf(std::mt19937_64& rng, int vars, int clauses) {
  Cnf f;
  f.num_vars = vars;
  std::uniform_int_distribution<int> v(1, vars);
  std::bernoulli_distribution sign(0.5);
  for (int i = 0; i < clauses; ++i) {
    Clause c;
    for (int k = 0; k < 3; ++k) c.push_back(sign(rng) ? v(rng) : -v(rng));
    f.add_clause(c);
  }
  return f;
}

// All models of f by repeated solving with blocking clauses.
std::set<std::vector<bool>> enumerate_models(const Cnf& f, std::uint64_t seed) {
  std::set<std::vector<bool>> out;
  Solver s(seed);
  s.ensure_vars(f.num_vars);
  s.add_cnf(f);
  while (s.solve() == Status::sat) {
    std::vector<bool> m(static_cast<std::size_t>(f.num_vars) + 1, false);
    Clause block;
    for (int v = 1; v <= f.num_vars; ++v) {
      m[static_cast<std::size_t>(v)] = s.value(v);
      block.push_back(s.value(v) ? -v : v);
    }
    REQUIRE(out.insert(m).second);
    if (!s.add_clause(block)) break;
  }
  return out;
}

}  // namespace

TEST_CASE("solver agrees with truth table on random 3-CNF") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const int vars = 3 + static_cast<int>(rng() % 10);
    const int clauses = 1 + static_cast<int>(rng() % (5 * vars));
    const Cnf f = random_3cnf(rng, vars, clauses);
    const auto truth = oracle::truth_table_models(f);
    const SolveResult r = solve(f, i);
    CHECK((r.status == Status::sat) == !truth.empty());
    if (r.status == Status::sat) CHECK(satisfies(f, r.model));
    const auto all = enumerate_models(f, static_cast<std::uint64_t>(i));
    CHECK(all == std::set<std::vector<bool>>(truth.begin(), truth.end()));
  }
}

TEST_CASE("empty clause and trivial formulas") {
  Cnf f;
  f.num_vars = 2;
  CHECK(solve(f).status == Status::sat);
  f.add_clause({});
  CHECK(f.has_empty_clause());
  CHECK(solve(f).status == Status::unsat);
  Cnf g;
  g.num_vars = 1;
  g.add_clause({1});
  g = add_blocking_clause(g, {-1});
  CHECK(g.clauses.size() == 2);
  CHECK(solve(g).status == Status::unsat);
}

TEST_CASE("pigeonhole 6 into 5 is unsat") {
  Cnf f;
  const int P = 6, H = 5;
  auto var = [&](int p, int h) { return p * H + h + 1; };
  f.num_vars = P * H;
  for (int p = 0; p < P; ++p) {
    Clause c;
    for (int h = 0; h < H; ++h) c.push_back(var(p, h));
    f.add_clause(c);
  }
  for (int h = 0; h < H; ++h)
    for (int p = 0; p < P; ++p)
      for (int q = p + 1; q < P; ++q) f.add_clause({-var(p, h), -var(q, h)});
  CHECK(solve(f).status == Status::unsat);
}

TEST_CASE("same seed gives the same model") {
  std::mt19937_64 rng(3);
  const Cnf f = random_3cnf(rng, 40, 120);
  const SolveResult a = solve(f, 5);
  const SolveResult b = solve(f, 5);
  CHECK(a.status == b.status);
  CHECK(a.model == b.model);
}

TEST_CASE("dimacs output") {
  Cnf f;
  f.num_vars = 2;
  f.add_clause({1, -2});
  const std::string d = f.to_dimacs();
  CHECK(d.find("p cnf 2 1") != std::string::npos);
  CHECK(d.find("1 -2 0") != std::string::npos);
}
