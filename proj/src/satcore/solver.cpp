#include <algorithm>
#include <cstdlib>

#include "stepreach/satcore.hpp"

namespace stepreach::sat {

namespace {

// Luby sequence 1,1,2,1,1,2,4,... scaled by powers of y.
double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1.0;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;
constexpr int kRestartBase = 100;

enum class SearchResult { sat, unsat, restart };

}  // namespace

Solver::Solver(std::uint64_t seed) : rng_(seed) {}

int Solver::new_var() {
  const auto v = static_cast<Idx>(assigns_.size());
  assigns_.push_back(kUndef);
  phase_.push_back(0);
  level_.push_back(0);
  reason_.push_back(-1);
  // Tiny seeded perturbation breaks activity ties deterministically.
  activity_.push_back(std::uniform_real_distribution<double>(0.0, 1e-5)(rng_));
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_pos_.push_back(-1);
  heap_insert(v);
  return static_cast<int>(v) + 1;
}

void Solver::ensure_vars(int n) {
  while (num_vars() < n) new_var();
}

void Solver::add_cnf(const Cnf& cnf) {
  ensure_vars(cnf.num_vars);
  for (const auto& c : cnf.clauses) add_clause(c);
}

bool Solver::add_clause(std::span<const Lit> lits) {
  if (!ok_) return false;
  cancel_until(0);
  std::vector<Idx> ps;
  ps.reserve(lits.size());
  for (Lit l : lits) {
    ensure_vars(std::abs(l));
    ps.push_back(to_idx(l));
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<Idx> kept;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i + 1 < ps.size() && ps[i + 1] == neg(ps[i])) return true;  // tautology
    const auto v = lit_value(ps[i]);
    if (v == 1) return true;
    if (v == 0) continue;
    kept.push_back(ps[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() != -1) ok_ = false;
    return ok_;
  }
  clauses_.push_back(StoredClause{std::move(kept), 0.0, false, false});
  attach(static_cast<int>(clauses_.size()) - 1);
  ++num_problem_;
  return true;
}

void Solver::attach(int ci) {
  const auto& c = clauses_[static_cast<std::size_t>(ci)];
  watches_[c.lits[0]].push_back(ci);
  watches_[c.lits[1]].push_back(ci);
}

void Solver::enqueue(Idx p, int reason) {
  const Idx v = var_of(p);
  assigns_[v] = static_cast<std::int8_t>((p & 1u) ? 0 : 1);
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(p);
}

int Solver::propagate() {
  int confl = -1;
  while (qhead_ < trail_.size()) {
    const Idx p = trail_[qhead_++];
    const Idx false_lit = neg(p);
    ++stats_.propagations;
    auto& ws = watches_[false_lit];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      const int ci = ws[i++];
      StoredClause& c = clauses_[static_cast<std::size_t>(ci)];
      if (c.deleted) continue;
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      const Idx first = c.lits[0];
      if (lit_value(first) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (lit_value(c.lits[k]) != 0) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[c.lits[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (lit_value(first) == 0) {
        confl = ci;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, ci);
      }
    }
    ws.resize(j);
    if (confl != -1) break;
  }
  return confl;
}

void Solver::bump_var(Idx v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void Solver::bump_clause(StoredClause& c) {
  if ((c.activity += cla_inc_) > 1e20) {
    for (auto& cl : clauses_)
      if (cl.learnt) cl.activity *= 1e-20;
    cla_inc_ *= 1e-20;
  }
}

bool Solver::redundant(Idx p, std::uint32_t) {
  const int r = reason_[var_of(p)];
  if (r < 0) return false;
  const auto& c = clauses_[static_cast<std::size_t>(r)];
  for (std::size_t k = 1; k < c.lits.size(); ++k) {
    const Idx v = var_of(c.lits[k]);
    if (!seen_[v] && level_[v] > 0) return false;
  }
  return true;
}

void Solver::analyze(int confl, std::vector<Idx>& learnt, int& bt_level) {
  int path_count = 0;
  bool have_p = false;
  Idx p = 0;
  learnt.clear();
  learnt.push_back(0);
  std::size_t index = trail_.size();
  do {
    StoredClause& c = clauses_[static_cast<std::size_t>(confl)];
    if (c.learnt) bump_clause(c);
    for (std::size_t j = have_p ? 1 : 0; j < c.lits.size(); ++j) {
      const Idx q = c.lits[j];
      const Idx v = var_of(q);
      if (!seen_[v] && level_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (level_[v] >= decision_level())
          ++path_count;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[var_of(trail_[--index])]) {
    }
    p = trail_[index];
    have_p = true;
    confl = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path_count;
  } while (path_count > 0);
  learnt[0] = neg(p);

  std::vector<Idx> to_clear(learnt.begin() + 1, learnt.end());
  std::size_t keep = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    if (!redundant(learnt[i], 0)) learnt[keep++] = learnt[i];
  learnt.resize(keep);
  for (Idx q : to_clear) seen_[var_of(q)] = 0;

  if (learnt.size() == 1) {
    bt_level = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])]) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    bt_level = level_[var_of(learnt[1])];
  }
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  const auto stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(level)]);
  for (std::size_t i = trail_.size(); i-- > stop;) {
    const Idx v = var_of(trail_[i]);
    phase_[v] = assigns_[v];
    assigns_[v] = kUndef;
    reason_[v] = -1;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

Solver::Idx Solver::pick_branch() {
  while (!heap_.empty()) {
    const Idx v = heap_pop();
    if (assigns_[v] == kUndef) return 2 * v + (phase_[v] == 1 ? 0u : 1u);
  }
  return static_cast<Idx>(-1);
}

bool Solver::locked(int ci) const {
  const auto& c = clauses_[static_cast<std::size_t>(ci)];
  const Idx v = var_of(c.lits[0]);
  return reason_[v] == ci && lit_value(c.lits[0]) == 1;
}

void Solver::reduce_db() {
  std::vector<int> learnts;
  for (std::size_t i = 0; i < clauses_.size(); ++i)
    if (clauses_[i].learnt && !clauses_[i].deleted) learnts.push_back(static_cast<int>(i));
  std::sort(learnts.begin(), learnts.end(), [&](int a, int b) {
    const auto& ca = clauses_[static_cast<std::size_t>(a)];
    const auto& cb = clauses_[static_cast<std::size_t>(b)];
    if (ca.activity != cb.activity) return ca.activity < cb.activity;
    return a < b;
  });
  const std::size_t half = learnts.size() / 2;
  for (std::size_t i = 0; i < half; ++i) {
    auto& c = clauses_[static_cast<std::size_t>(learnts[i])];
    if (c.lits.size() > 2 && !locked(learnts[i])) {
      c.deleted = true;
      --num_learnts_;
    }
  }
}

Status Solver::solve() {
  ++stats_.solves;
  model_.clear();
  if (!ok_) return Status::unsat;
  cancel_until(0);
  if (propagate() != -1) {
    ok_ = false;
    return Status::unsat;
  }
  double max_learnts = std::max<double>(static_cast<double>(num_problem_) / 3.0, 2000.0);
  int restarts = 0;
  std::vector<Idx> learnt;
  for (;;) {
    const auto budget = static_cast<std::uint64_t>(luby(2.0, restarts) * kRestartBase);
    std::uint64_t conflicts = 0;
    SearchResult result = SearchResult::restart;
    for (;;) {
      const int confl = propagate();
      if (confl != -1) {
        ++stats_.conflicts;
        ++conflicts;
        if (decision_level() == 0) {
          result = SearchResult::unsat;
          break;
        }
        int bt = 0;
        analyze(confl, learnt, bt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          clauses_.push_back(StoredClause{learnt, 0.0, true, false});
          const int ci = static_cast<int>(clauses_.size()) - 1;
          attach(ci);
          bump_clause(clauses_.back());
          enqueue(learnt[0], ci);
          ++num_learnts_;
        }
        var_inc_ /= kVarDecay;
        cla_inc_ /= kClauseDecay;
        continue;
      }
      if (conflicts >= budget) {
        result = SearchResult::restart;
        break;
      }
      if (static_cast<double>(num_learnts_) >= max_learnts + static_cast<double>(trail_.size())) reduce_db();
      const Idx next = pick_branch();
      if (next == static_cast<Idx>(-1)) {
        result = SearchResult::sat;
        break;
      }
      ++stats_.decisions;
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(next, -1);
    }
    if (result == SearchResult::sat) {
      model_.assign(assigns_.size() + 1, false);
      for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v + 1] = assigns_[v] == 1;
      cancel_until(0);
      return Status::sat;
    }
    if (result == SearchResult::unsat) {
      ok_ = false;
      return Status::unsat;
    }
    cancel_until(0);
    ++restarts;
    ++stats_.restarts;
    max_learnts *= 1.1;
  }
}

void Solver::heap_insert(Idx v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  const Idx v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  const Idx v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

Solver::Idx Solver::heap_pop() {
  const Idx top = heap_[0];
  heap_pos_[top] = -1;
  const Idx last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

SolveResult solve(const Cnf& cnf, std::uint64_t seed) {
  Solver s(seed);
  s.add_cnf(cnf);
  SolveResult r;
  r.status = s.solve();
  if (r.status == Status::sat) {
    r.model = s.model();
    r.model.resize(static_cast<std::size_t>(cnf.num_vars) + 1, false);
  }
  return r;
}

}  // namespace stepreach::sat
