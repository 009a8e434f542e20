#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "stepreach/baseline.hpp"
#include "stepreach/errors.hpp"

using namespace stepreach;

TEST_CASE("product matches literal counts") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    const Network net = parse_model(oracle::random_model_json(rng, {}));
    const ProductAutomaton p = build_product(net);
    const ProductStats s = oracle::literal_product_counts(net);
    CHECK(p.locations.size() == s.locations);
    CHECK(p.transitions.size() == s.transitions);
    for (std::size_t k = 0; k < p.locations.size(); ++k) CHECK(p.index(p.locations[k]) == k);
    for (const auto& t : p.transitions) {
      for (const auto& part : t.participants) {
        const auto& tr = net.component(part.component).transitions[part.transition];
        CHECK(tr.label == t.label);
        CHECK(p.locations[t.source][part.component] == tr.source);
        CHECK(p.locations[t.target][part.component] == tr.target);
      }
    }
  }
}

TEST_CASE("cap") {
  std::mt19937_64 rng(1);
  const Network net = parse_model(oracle::random_model_json(rng, {4, 5, 7, 3, 0.35}));
  if (product_stats(net).locations > 1) CHECK_THROWS_AS(build_product(net, 1), CapExceeded);
}

TEST_CASE("bounded paths") {
  const Network net = parse_model(oracle::read_file(std::string(STEPREACH_TEST_DATA) + "/nav_example.model.json"));
  const ProductAutomaton p = build_product(net);
  const SafetySpec spec = parse_config(oracle::read_file(std::string(STEPREACH_TEST_DATA) + "/nav_example.feasible.json"), net);
  CHECK(bfs_paths(p, spec.initial_locations, spec.unsafe_locations, 4).empty());
  const auto paths = bfs_paths(p, spec.initial_locations, spec.unsafe_locations, 5);
  CHECK(paths.size() == 14);
  std::set<std::string> keys;
  for (const auto& i : paths) keys.insert(oracle::key(i));
  CHECK(keys.size() == 14);
  const auto zero = bfs_paths(p, spec.initial_locations, spec.initial_locations, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero.front().empty());
}

TEST_CASE("baseline verdicts on the example") {
  const std::string dir = STEPREACH_TEST_DATA;
  const Network net = parse_model(oracle::read_file(dir + "/nav_example.model.json"));
  const ProductAutomaton p = build_product(net);
  CHECK(bfs_reach(net, p, parse_config(oracle::read_file(dir + "/nav_example.feasible.json"), net)).safe);
  const auto r = bfs_reach(net, p, parse_config(oracle::read_file(dir + "/nav_example.unsafe.json"), net));
  CHECK_FALSE(r.safe);
}
