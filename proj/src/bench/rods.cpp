#include <string>
#include <vector>

#include <json.hpp>

#include "stepreach/bench.hpp"
#include "stepreach/errors.hpp"

namespace stepreach {

namespace {

using nlohmann::json;

json row(double coeff, double bound) { return {{"coeffs", {coeff}}, {"bound", bound}}; }

json clock_flow() { return {{"A", {{0.0}}}, {"u_lower", {1.0}}, {"u_upper", {1.0}}}; }

json zero_reset() { return {{"R", {{0.0}}}, {"c", {0.0}}}; }

}  // namespace

GeneratedBenchmark gen_rods(const RodSpec& spec) {
  if (spec.rods < 1) throw ValidationError("rods", "needs at least one rod");
  const int n = spec.rods;
  const double P = spec.period;
  const double H = spec.hold;
  const double R = spec.rest > 0 ? spec.rest : (spec.variant == Variant::safe ? 2.0 : 0.5);
  const double D = spec.recovery > 0 ? spec.recovery : 2.0 * n;

  json comps = json::array();
  {
    json locs = json::array();
    json trans = json::array();
    locs.push_back({{"id", "c0"}, {"flow", clock_flow()}, {"invariant", {row(-1, 0), row(1, P)}}});
    for (int i = 1; i <= n; ++i) {
      const std::string s = std::to_string(i);
      locs.push_back({{"id", "c" + s}, {"flow", clock_flow()}, {"invariant", {row(-1, 0), row(1, H)}}});
      trans.push_back({{"label", "add" + s}, {"source", "c0"}, {"target", "c" + s}, {"guard", {row(-1, -P)}}, {"reset", zero_reset()}});
      trans.push_back({{"label", "remove" + s}, {"source", "c" + s}, {"target", "c0"}, {"guard", {row(-1, -H)}}, {"reset", zero_reset()}});
    }
    comps.push_back({{"name", "ctrl"}, {"variables", {"t"}}, {"locations", locs}, {"transitions", trans}, {"initial", "c0"}});
  }
  for (int i = 1; i <= n; ++i) {
    const std::string s = std::to_string(i);
    json locs = {
        {{"id", "out"}, {"flow", clock_flow()}, {"invariant", {row(-1, 0)}}},
        {{"id", "in"}, {"flow", clock_flow()}, {"invariant", {row(-1, 0)}}},
        {{"id", "rec"}, {"flow", clock_flow()}, {"invariant", {row(-1, 0), row(1, D)}}},
    };
    json trans = {
        {{"label", "add" + s}, {"source", "out"}, {"target", "in"}, {"guard", {row(-1, -R)}}, {"reset", zero_reset()}},
        {{"label", "remove" + s}, {"source", "in"}, {"target", "rec"}, {"reset", zero_reset()}},
        {{"label", "back" + s}, {"source", "rec"}, {"target", "out"}, {"guard", {row(-1, -D)}}},
    };
    comps.push_back({{"name", "rod" + s}, {"variables", {"x" + s}}, {"locations", locs}, {"transitions", trans}, {"initial", "out"}});
  }

  const auto dim = static_cast<std::size_t>(n + 1);
  std::vector<std::string> init_locs{"c0"};
  std::vector<std::string> unsafe_locs{"c0"};
  for (int i = 0; i < n; ++i) {
    init_locs.push_back("out");
    unsafe_locs.push_back("rec");
  }
  std::vector<double> zero(dim, 0.0);
  std::vector<double> upper(dim, D);
  upper[0] = P;
  json config = {{"initial", {{"locations", init_locs}, {"set", {{"lower", zero}, {"upper", zero}}}}},
                 {"unsafe", {{"locations", unsafe_locs}, {"set", {{"lower", zero}, {"upper", upper}}}}},
                 {"bound", spec.bound > 0 ? spec.bound : 2 * n},
                 {"time_step", 0.01},
                 {"time_horizon", 20.0},
                 {"directions", "box"}};
  return {json{{"components", comps}}.dump(1) + "\n", config.dump(1) + "\n"};
}

}  // namespace stepreach
