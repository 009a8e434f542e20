#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "stepreach/bench.hpp"
#include "stepreach/errors.hpp"

namespace stepreach {

namespace {

using nlohmann::json;

std::string cell_id(int i, int j) { return "c" + std::to_string(i) + "_" + std::to_string(j); }

json row(std::vector<double> coeffs, double bound) { return {{"coeffs", std::move(coeffs)}, {"bound", bound}}; }

// Rows keeping (x, y) of a 4-variable block inside cell (i, j); `width` is the
// length of the coefficient vectors and `at` the offset of x.
std::vector<json> cell_rows(int i, int j, std::size_t width, std::size_t at) {
  std::vector<json> rows;
  auto unit = [&](std::size_t k, double s) {
    std::vector<double> c(width, 0.0);
    c[at + k] = s;
    return c;
  };
  rows.push_back(row(unit(0, -1), -i));
  rows.push_back(row(unit(0, 1), i + 1));
  rows.push_back(row(unit(1, -1), -j));
  rows.push_back(row(unit(1, 1), j + 1));
  return rows;
}

}  // namespace

GeneratedBenchmark gen_nav(const NavSpec& spec) {
  if (spec.width < 1 || spec.height < 1 || spec.width * spec.height < 2)
    throw ValidationError("grid", "needs at least two cells");
  if (spec.objects < 1) throw ValidationError("objects", "needs at least one object");
  auto inside = [&](std::pair<int, int> c) { return c.first >= 0 && c.first < spec.width && c.second >= 0 && c.second < spec.height; };
  if (!inside(spec.init_cell)) throw ValidationError("init_cell", "outside the grid");
  if (!inside(spec.unsafe_cell)) throw ValidationError("unsafe_cell", "outside the grid");

  const auto [ui, uj] = spec.unsafe_cell;
  auto desired = [&](int i, int) -> std::pair<double, double> {
    if (spec.variant == Variant::unsafe) return {0.0, 1.0};
    if (i == spec.width - 1) return {0.0, -1.0};
    return {1.0, 0.0};
  };

  json comps = json::array();
  for (int k = 1; k <= spec.objects; ++k) {
    const std::string s = std::to_string(k);
    json locs = json::array();
    json trans = json::array();
    for (int j = 0; j < spec.height; ++j) {
      for (int i = 0; i < spec.width; ++i) {
        const auto [dx, dy] = desired(i, j);
        json A = {{0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, spec.a11, spec.a12}, {0, 0, spec.a21, spec.a22}};
        const double ux = -(spec.a11 * dx + spec.a12 * dy);
        const double uy = -(spec.a21 * dx + spec.a22 * dy);
        json u = {0.0, 0.0, ux, uy};
        locs.push_back({{"id", cell_id(i, j)},
                        {"flow", {{"A", A}, {"u_lower", u}, {"u_upper", u}}},
                        {"invariant", cell_rows(i, j, 4, 0)}});
        if (i == ui && j == uj) continue;  // the unsafe cell is absorbing
        struct Move {
          int di, dj;
          std::vector<double> coeffs;
          double bound;
        };
        const std::vector<Move> moves = {
            {1, 0, {-1, 0, 0, 0}, -(i + 1.0)},
            {-1, 0, {1, 0, 0, 0}, static_cast<double>(i)},
            {0, 1, {0, -1, 0, 0}, -(j + 1.0)},
            {0, -1, {0, 1, 0, 0}, static_cast<double>(j)},
        };
        for (const auto& mv : moves) {
          const int ni = i + mv.di;
          const int nj = j + mv.dj;
          if (ni < 0 || ni >= spec.width || nj < 0 || nj >= spec.height) continue;
          const bool enters = spec.sync && ni == ui && nj == uj;
          const std::string label = enters ? "enter_unsafe" : "o" + s + "_" + cell_id(i, j) + "_" + cell_id(ni, nj);
          trans.push_back({{"label", label},
                           {"source", cell_id(i, j)},
                           {"target", cell_id(ni, nj)},
                           {"guard", json::array({row(mv.coeffs, mv.bound)})}});
        }
      }
    }
    comps.push_back({{"name", "obj" + s},
                     {"variables", {"x" + s, "y" + s, "vx" + s, "vy" + s}},
                     {"locations", locs},
                     {"transitions", trans},
                     {"initial", cell_id(spec.init_cell.first, spec.init_cell.second)}});
  }

  const auto n = static_cast<std::size_t>(4 * spec.objects);
  std::vector<double> lower, upper;
  for (int k = 0; k < spec.objects; ++k) {
    const double cx = spec.init_cell.first + 0.5;
    const double cy = spec.init_cell.second + 0.5;
    lower.insert(lower.end(), {cx - 0.1, cy - 0.1, -0.1, -0.1});
    upper.insert(upper.end(), {cx + 0.1, cy + 0.1, 0.1, 0.1});
  }
  json unsafe_rows = json::array();
  for (int k = 0; k < spec.objects; ++k)
    for (auto& r : cell_rows(ui, uj, n, static_cast<std::size_t>(4 * k))) unsafe_rows.push_back(r);

  const int manhattan = std::abs(spec.init_cell.first - ui) + std::abs(spec.init_cell.second - uj);
  const int bound = spec.bound > 0 ? spec.bound : spec.objects * manhattan;
  std::vector<std::string> init_locs(static_cast<std::size_t>(spec.objects), cell_id(spec.init_cell.first, spec.init_cell.second));
  std::vector<std::string> unsafe_locs(static_cast<std::size_t>(spec.objects), cell_id(ui, uj));
  json config = {{"initial", {{"locations", init_locs}, {"set", {{"lower", lower}, {"upper", upper}}}}},
                 {"unsafe", {{"locations", unsafe_locs}, {"set", unsafe_rows}}},
                 {"bound", bound},
                 {"time_step", 0.01},
                 {"time_horizon", 20.0},
                 {"directions", "box"}};
  return {json{{"components", comps}}.dump(1) + "\n", config.dump(1) + "\n"};
}

}  // namespace stepreach
