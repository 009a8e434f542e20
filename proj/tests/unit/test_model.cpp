#include <doctest.h>

#include "oracles.hpp"
#include "stepreach/errors.hpp"
#include "stepreach/model.hpp"

using namespace stepreach;

namespace {
const std::string kData = STEPREACH_TEST_DATA;
Network nav() { return parse_model(oracle::read_file(kData + "/nav_example.model.json")); }
}  // namespace

TEST_CASE("navigation example sizes") {
  const Network net = nav();
  CHECK(net.size() == 3);
  CHECK(net.total_dimension() == 6);
  const ProductStats s = product_stats(net);
  CHECK(s == oracle::literal_product_counts(net));
  CHECK(s.locations == 216);
  CHECK(s.transitions == 1164);
}

TEST_CASE("shared labels occur in two or more components") {
  const Network net = nav();
  for (const auto& l : net.shared_labels()) CHECK(net.sharing_components(l).size() >= 2);
  CHECK(net.is_shared("sh1"));
  CHECK_FALSE(net.is_shared("l2"));
}

TEST_CASE("model and config round trip") {
  const Network net = nav();
  const Network again = parse_model(serialize_model(net));
  CHECK(again == net);
  for (const char* c : {"feasible", "l2_blocked", "unsafe"}) {
    const SafetySpec s = parse_config(oracle::read_file(kData + "/nav_example." + c + ".json"), net);
    const SafetySpec t = parse_config(serialize_config(s, net), net);
    CHECK(t.initial_locations == s.initial_locations);
    CHECK(t.unsafe_locations == s.unsafe_locations);
    CHECK(t.initial_set == s.initial_set);
    CHECK(t.unsafe_set == s.unsafe_set);
    CHECK(t.bound == s.bound);
    CHECK(t.time_step == s.time_step);
    CHECK(t.directions == s.directions);
  }
}

TEST_CASE("random models round trip") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 30; ++i) {
    const Network net = parse_model(oracle::random_model_json(rng, {}));
    CHECK(parse_model(serialize_model(net)) == net);
    CHECK(product_stats(net) == oracle::literal_product_counts(net));
  }
}

TEST_CASE("rejects bad input") {
  CHECK_THROWS_AS(parse_model("{ not json"), SyntaxError);
  CHECK_THROWS_AS(parse_model("{\"components\": 3}"), ValidationError);
  const Network net = nav();
  std::string cfg = oracle::read_file(kData + "/nav_example.feasible.json");
  std::string bad = cfg;
  bad.replace(bad.find("\"bound\": 5"), 10, "\"bound\": -1");
  CHECK_THROWS_AS(parse_config(bad, net), ValidationError);
  bad = cfg;
  bad.replace(bad.find("\"1\""), 3, "\"99\"");
  CHECK_THROWS_AS(parse_config(bad, net), ValidationError);
  bad = cfg;
  bad.replace(bad.find("\"box\""), 5, "\"ball\"");
  CHECK_THROWS_AS(parse_config(bad, net), ValidationError);
}

TEST_CASE("segment count") {
  CHECK(segment_count(0.01, 20.0) == 2000);
  CHECK(segment_count(0.3, 1.0) == 4);
  CHECK(segment_count(0.5, 0.1) == 1);
}
