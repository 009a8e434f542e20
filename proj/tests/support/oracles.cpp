#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stepreach/bench.hpp"

namespace oracle {

using nlohmann::json;

std::vector<Vector> vertices(const stepreach::HPolytope& p, double tol) {
  const int m = static_cast<int>(p.A.rows());
  const int n = static_cast<int>(p.A.cols());
  std::vector<Vector> out;
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Matrix S(n, n);
      Vector r(n);
      for (int i = 0; i < n; ++i) {
        S.row(i) = p.A.row(pick[static_cast<std::size_t>(i)]);
        r(i) = p.b(pick[static_cast<std::size_t>(i)]);
      }
      Eigen::FullPivLU<Matrix> lu(S);
      if (lu.rank() < n) return;
      const Vector x = lu.solve(r);
      for (int i = 0; i < m; ++i)
        if (p.A.row(i).dot(x) > p.b(i) + tol) return;
      for (const auto& v : out)
        if ((v - x).cwiseAbs().maxCoeff() < 1e-9) return;
      out.push_back(x);
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

double max_over(const std::vector<Vector>& pts, const Vector& l) {
  double best = -INFINITY;
  for (const auto& v : pts) best = std::max(best, l.dot(v));
  return best;
}

Matrix taylor_exp(const Matrix& A, double t) {
  using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const auto n = A.rows();
  LMat M = (A * t).cast<long double>();
  long double norm = 0;
  for (Eigen::Index i = 0; i < n; ++i) norm = std::max(norm, M.row(i).cwiseAbs().sum());
  int s = 0;
  while (norm > 0.125L) {
    norm /= 2;
    ++s;
  }
  M /= std::pow(2.0L, s);
  LMat sum = LMat::Identity(n, n);
  LMat term = LMat::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = term * M / static_cast<long double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum.cast<double>();
}

Vector rk4_step(const Matrix& A, const Vector& u, const Vector& x, double h) {
  auto f = [&](const Vector& y) -> Vector { return A * y + u; };
  const Vector k1 = f(x);
  const Vector k2 = f(x + 0.5 * h * k1);
  const Vector k3 = f(x + 0.5 * h * k2);
  const Vector k4 = f(x + h * k3);
  return x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
}

std::vector<std::vector<bool>> truth_table_models(const stepreach::sat::Cnf& cnf) {
  std::vector<std::vector<bool>> out;
  const int V = cnf.num_vars;
  if (V > 22) throw std::invalid_argument("truth table too large");
  for (std::uint64_t bits = 0; bits < (1ull << V); ++bits) {
    std::vector<bool> a(static_cast<std::size_t>(V) + 1, false);
    for (int v = 1; v <= V; ++v) a[static_cast<std::size_t>(v)] = (bits >> (v - 1)) & 1u;
    bool ok = true;
    for (const auto& c : cnf.clauses) {
      bool sat = false;
      for (int l : c)
        if (a[static_cast<std::size_t>(std::abs(l))] == (l > 0)) sat = true;
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(a);
  }
  return out;
}

stepreach::ProductStats literal_product_counts(const stepreach::Network& net) {
  const std::size_t m = net.size();
  // Alphabet of each component.
  std::map<std::string, std::vector<std::size_t>> owners;
  for (std::size_t c = 0; c < m; ++c) {
    std::set<std::string> labels;
    for (const auto& t : net.component(c).transitions) labels.insert(t.label);
    for (const auto& l : labels) owners[l].push_back(c);
  }
  stepreach::ProductStats out;
  std::vector<std::size_t> loc(m, 0);
  for (;;) {
    ++out.locations;
    for (const auto& [label, comps] : owners) {
      std::uint64_t ways = 1;
      for (std::size_t c : comps) {
        std::uint64_t here = 0;
        for (const auto& t : net.component(c).transitions)
          if (t.label == label && t.source == loc[c]) ++here;
        ways *= here;
      }
      out.transitions += ways;
    }
    std::size_t c = m;
    while (c > 0) {
      --c;
      if (++loc[c] < net.component(c).locations.size()) break;
      loc[c] = 0;
      if (c == 0) return out;
    }
    if (m == 0) return out;
  }
}

namespace {

json unit_invariant() { return json::array({{{"coeffs", {-1.0}}, {"bound", 0.0}}, {{"coeffs", {1.0}}, {"bound", 1.0}}}); }

}  // namespace

std::string random_model_json(std::mt19937_64& rng, const RandomShape& shape) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::bernoulli_distribution shared(shape.shared_probability);
  const int m = uni(1, shape.max_components);
  json comps = json::array();
  for (int c = 0; c < m; ++c) {
    const int nl = uni(1, shape.max_locations);
    json locs = json::array();
    for (int v = 0; v < nl; ++v)
      locs.push_back({{"id", "q" + std::to_string(v)},
                      {"flow", {{"A", {{0.0}}}, {"u_lower", {0.0}}, {"u_upper", {0.0}}}},
                      {"invariant", unit_invariant()}});
    json trans = json::array();
    const int nt = uni(0, shape.max_transitions);
    for (int t = 0; t < nt; ++t) {
      const std::string label = shared(rng) ? "s" + std::to_string(uni(0, shape.shared_pool - 1))
                                            : "c" + std::to_string(c) + "t" + std::to_string(t);
      trans.push_back({{"label", label},
                       {"source", "q" + std::to_string(uni(0, nl - 1))},
                       {"target", "q" + std::to_string(uni(0, nl - 1))}});
    }
    comps.push_back({{"name", "k" + std::to_string(c)},
                     {"variables", {"v" + std::to_string(c)}},
                     {"locations", locs},
                     {"transitions", trans},
                     {"initial", "q0"}});
  }
  return json{{"components", comps}}.dump();
}

stepreach::SafetySpec random_spec(std::mt19937_64& rng, const stepreach::Network& net, int bound) {
  stepreach::SafetySpec s;
  const auto n = static_cast<Eigen::Index>(net.total_dimension());
  for (std::size_t c = 0; c < net.size(); ++c) {
    const auto& comp = net.component(c);
    std::size_t at = comp.initial_location;
    for (auto steps = rng() % 4; steps > 0; --steps) {
      std::vector<std::size_t> next;
      for (const auto& t : comp.transitions)
        if (t.source == at) next.push_back(t.target);
      if (next.empty()) break;
      at = next[rng() % next.size()];
    }
    s.initial_locations.push_back(comp.initial_location);
    s.unsafe_locations.push_back(at);
  }
  s.initial_set = stepreach::HPolytope::box(Vector::Constant(n, 0.4), Vector::Constant(n, 0.6));
  s.unsafe_set = stepreach::HPolytope::box(Vector::Zero(n), Vector::Ones(n));
  s.bound = bound;
  return s;
}

std::pair<std::string, std::string> random_timer_case(std::mt19937_64& rng) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution shared(0.3);
  const int m = uni(1, 3);
  json comps = json::array();
  std::vector<int> unsafe_loc;
  for (int c = 0; c < m; ++c) {
    const int nl = uni(2, 4);
    const double rate = 0.5 * uni(1, 3);
    const bool spread = coin(rng);
    json locs = json::array();
    for (int v = 0; v < nl; ++v)
      locs.push_back({{"id", "q" + std::to_string(v)},
                      {"flow", {{"A", {{0.0}}}, {"u_lower", {spread ? rate - 0.2 : rate}}, {"u_upper", {spread ? rate + 0.2 : rate}}}},
                      {"invariant", json::array({{{"coeffs", {-1.0}}, {"bound", 0.0}}, {{"coeffs", {1.0}}, {"bound", 4.0}}})}});
    json trans = json::array();
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(nl));
    const int nt = uni(1, 5);
    for (int t = 0; t < nt; ++t) {
      const int s = uni(0, nl - 1);
      const int d = uni(0, nl - 1);
      succ[static_cast<std::size_t>(s)].push_back(d);
      const double g = 0.5 * uni(1, 7);
      json guard = coin(rng) ? json::array({{{"coeffs", {-1.0}}, {"bound", -g}}}) : json::array({{{"coeffs", {1.0}}, {"bound", g}}});
      json tr = {{"label", shared(rng) ? "s" + std::to_string(uni(0, 1)) : "c" + std::to_string(c) + "t" + std::to_string(t)},
                 {"source", "q" + std::to_string(s)},
                 {"target", "q" + std::to_string(d)},
                 {"guard", guard}};
      if (uni(0, 9) < 4) tr["reset"] = {{"R", {{0.0}}}, {"c", {0.0}}};
      trans.push_back(tr);
    }
    // Unsafe location: end of a short random walk, so it is often reachable.
    int at = 0;
    for (int step = uni(1, 3); step > 0 && !succ[static_cast<std::size_t>(at)].empty(); --step) {
      const auto& next = succ[static_cast<std::size_t>(at)];
      at = next[static_cast<std::size_t>(uni(0, static_cast<int>(next.size()) - 1))];
    }
    unsafe_loc.push_back(at);
    comps.push_back({{"name", "k" + std::to_string(c)},
                     {"variables", {"x" + std::to_string(c)}},
                     {"locations", locs},
                     {"transitions", trans},
                     {"initial", "q0"}});
  }
  std::vector<std::string> init_locs(static_cast<std::size_t>(m), "q0");
  std::vector<std::string> bad_locs;
  for (int v : unsafe_loc) bad_locs.push_back("q" + std::to_string(v));
  std::vector<double> lo(static_cast<std::size_t>(m), 0.0), hi(static_cast<std::size_t>(m), 0.2);
  std::vector<double> ulo(static_cast<std::size_t>(m), 0.0), uhi(static_cast<std::size_t>(m), 4.0);
  // Component 0 must have a small clock: reached through a reset or a low guard.
  uhi[0] = 0.3;
  json config = {{"initial", {{"locations", init_locs}, {"set", {{"lower", lo}, {"upper", hi}}}}},
                 {"unsafe", {{"locations", bad_locs}, {"set", {{"lower", ulo}, {"upper", uhi}}}}},
                 {"bound", uni(2, 5)},
                 {"time_step", 0.01},
                 {"time_horizon", 20.0},
                 {"directions", "box"}};
  return {json{{"components", comps}}.dump(), config.dump()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<CorpusEntry> corpus(const std::string& data_dir) {
  using namespace stepreach;
  std::vector<CorpusEntry> out;
  const std::string model = read_file(data_dir + "/nav_example.model.json");
  for (const char* c : {"feasible", "l2_blocked", "unsafe"})
    out.push_back({std::string("nav_example_") + c, model, read_file(data_dir + "/nav_example." + c + ".json")});
  for (int m : {1, 2}) {
    for (Variant v : {Variant::safe, Variant::unsafe}) {
      NavSpec s;
      s.objects = m;
      s.variant = v;
      const auto g = gen_nav(s);
      out.push_back({"nav3_m" + std::to_string(m) + (v == Variant::safe ? "_safe" : "_unsafe"), g.model, g.config});
    }
  }
  {
    NavSpec s;
    s.objects = 2;
    s.sync = true;
    const auto g = gen_nav(s);
    out.push_back({"nav3_m2_sync", g.model, g.config});
  }
  {
    NavSpec s;
    s.width = s.height = 2;
    s.objects = 2;
    s.init_cell = {0, 0};
    s.unsafe_cell = {1, 1};
    const auto g = gen_nav(s);
    out.push_back({"nav2_m2", g.model, g.config});
  }
  for (int n : {1, 2, 3}) {
    for (Variant v : {Variant::safe, Variant::unsafe}) {
      RodSpec r;
      r.rods = n;
      r.variant = v;
      const auto g = gen_rods(r);
      out.push_back({"rods" + std::to_string(n) + (v == Variant::safe ? "_safe" : "_unsafe"), g.model, g.config});
    }
  }
  std::mt19937_64 rng(20261015);
  for (int i = 0; i < 15; ++i) {
    auto [mdl, cfg] = random_timer_case(rng);
    out.push_back({"timers" + std::to_string(i), mdl, cfg});
  }
  return out;
}

std::string key(const stepreach::Interleaving& path) {
  std::string s;
  for (const auto& ev : path) {
    s += '[';
    for (const auto& p : ev) s += std::to_string(p.component) + ":" + std::to_string(p.transition) + ",";
    s += ']';
  }
  return s;
}

}  // namespace oracle
