#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace stepreach::sat {

// DIMACS-style literal: +v or -v for variable v >= 1.
using Lit = int;
using Clause = std::vector<Lit>;

struct Cnf {
  int num_vars = 0;
  std::vector<Clause> clauses;

  int new_var() { return ++num_vars; }
  void add_clause(Clause c) { clauses.push_back(std::move(c)); }
  bool has_empty_clause() const;
  std::string to_dimacs() const;
};

// Returns a copy of cnf with the clause appended.
Cnf add_blocking_clause(Cnf cnf, Clause lits);

// True iff the assignment (indexed 1..num_vars; entry 0 unused) satisfies
// every clause.
bool satisfies(const Cnf& cnf, const std::vector<bool>& assignment);

enum class Status { sat, unsat };

struct Stats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t solves = 0;
};

// CDCL solver: two watched literals, first-UIP learning with clause
// minimization, VSIDS with phase saving, Luby restarts.  Clauses can be added
// between solve() calls, which is how models are enumerated.
class Solver {
 public:
  explicit Solver(std::uint64_t seed = 0);

  int new_var();
  void ensure_vars(int n);
  int num_vars() const { return static_cast<int>(assigns_.size()); }

  // Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::span<const Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) { return add_clause(std::span<const Lit>(lits.begin(), lits.size())); }
  void add_cnf(const Cnf& cnf);

  Status solve();

  // Valid after solve() returned sat.
  bool value(int var) const { return model_[static_cast<std::size_t>(var)]; }
  const std::vector<bool>& model() const { return model_; }
  const Stats& stats() const { return stats_; }

 private:
  using Idx = std::uint32_t;  // internal literal: 2*(v-1) + negated
  static constexpr std::int8_t kUndef = 2;

  struct StoredClause {
    std::vector<Idx> lits;
    double activity = 0.0;
    bool learnt = false;
    bool deleted = false;
  };

  static Idx to_idx(Lit l) { return l > 0 ? static_cast<Idx>(2 * (l - 1)) : static_cast<Idx>(2 * (-l - 1) + 1); }
  static Idx neg(Idx p) { return p ^ 1u; }
  static Idx var_of(Idx p) { return p >> 1; }
  std::int8_t lit_value(Idx p) const {
    const std::int8_t v = assigns_[var_of(p)];
    return v == kUndef ? kUndef : static_cast<std::int8_t>(v ^ static_cast<std::int8_t>(p & 1u));
  }

  void enqueue(Idx p, int reason);
  int propagate();
  void analyze(int confl, std::vector<Idx>& learnt, int& bt_level);
  bool redundant(Idx p, std::uint32_t abstract_levels);
  void cancel_until(int level);
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  Idx pick_branch();
  void attach(int ci);
  void bump_var(Idx v);
  void bump_clause(StoredClause& c);
  void reduce_db();
  bool locked(int ci) const;
  Status search(std::uint64_t conflict_budget);

  // heap keyed by activity
  void heap_insert(Idx v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  Idx heap_pop();
  bool heap_less(Idx a, Idx b) const { return activity_[a] > activity_[b]; }

  std::vector<StoredClause> clauses_;
  std::vector<std::vector<int>> watches_;  // by literal; clauses watching it
  std::vector<std::int8_t> assigns_;       // per variable: 0 false, 1 true, 2 undef
  std::vector<std::int8_t> phase_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<double> activity_;
  std::vector<char> seen_;
  std::vector<Idx> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<Idx> heap_;
  std::vector<int> heap_pos_;  // -1 when absent
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::size_t num_learnts_ = 0;
  std::size_t num_problem_ = 0;
  bool ok_ = true;
  std::vector<bool> model_;
  std::mt19937_64 rng_;
  Stats stats_;
};

struct SolveResult {
  Status status = Status::unsat;
  std::vector<bool> model;  // indexed 1..num_vars
};

SolveResult solve(const Cnf& cnf, std::uint64_t seed = 0);

}  // namespace stepreach::sat
