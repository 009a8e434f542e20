#include <doctest.h>

#include <json.hpp>

#include "oracles.hpp"
#include "stepreach/cli.hpp"
#include "stepreach/engine.hpp"

using namespace stepreach;

namespace {
const std::string kData = STEPREACH_TEST_DATA;
}

TEST_CASE("navigation example verdicts") {
  const Network net = parse_model(oracle::read_file(kData + "/nav_example.model.json"));
  for (const char* c : {"feasible", "l2_blocked"}) {
    const SafetySpec spec = parse_config(oracle::read_file(kData + "/nav_example." + std::string(c) + ".json"), net);
    const Report r = verify(net, spec);
    CHECK(r.safe);
    CHECK(r.reach.postc == 10);
    CHECK(r.enumeration.step_paths == 4);
    CHECK(r.enumeration.shallow_paths == 2);
  }
  const SafetySpec bad = parse_config(oracle::read_file(kData + "/nav_example.unsafe.json"), net);
  const Report r = verify(net, bad);
  CHECK_FALSE(r.safe);
  REQUIRE(r.witness.has_value());
  CHECK(r.hit_location == bad.unsafe_locations);
  // The certificate lies in the unsafe set.
  CHECK(bad.unsafe_set.contains(r.certificate, 1e-7));
}

TEST_CASE("caching does not change verdicts or path counts") {
  for (const auto& e : oracle::corpus(kData)) {
    const Network net = parse_model(e.model);
    const SafetySpec spec = parse_config(e.config, net);
    RunOptions on, off;
    off.use_cache = false;
    const Report a = verify(net, spec, on);
    const Report b = verify(net, spec, off);
    CAPTURE(e.name);
    CHECK(a.safe == b.safe);
    CHECK(a.enumeration.step_paths == b.enumeration.step_paths);
    CHECK(a.enumeration.shallow_paths == b.enumeration.shallow_paths);
    CHECK(a.reach.postc <= b.reach.postc);
    CHECK(b.reach.flowpipe_hits == 0);
    CHECK(b.reach.successor_hits == 0);
  }
}

TEST_CASE("discrete successor through guard and reset") {
  // One variable, drifting from [0, 0.2] at rate 1; guard x >= 0.5; reset x := 2x + 1.
  const Network net = parse_model(R"({"components":[{"name":"a","variables":["x"],
    "locations":[{"id":"p","flow":{"A":[[0]],"u_lower":[1],"u_upper":[1]},
                  "invariant":[{"coeffs":[-1],"bound":0},{"coeffs":[1],"bound":1}]},
                 {"id":"q","invariant":[{"coeffs":[-1],"bound":0},{"coeffs":[1],"bound":10}]}],
    "transitions":[{"label":"go","source":"p","target":"q","guard":[{"coeffs":[-1],"bound":-0.5}],
                    "reset":{"R":[[2]],"c":[1]}}],"initial":"p"}]})");
  const std::vector<std::size_t> p{0}, q{1};
  const ComposedLocation lp = compose_location(net, p);
  const ComposedLocation lq = compose_location(net, q);
  const auto dirs = DirectionSet::get(DirectionFamily::box, 1);
  const Flowpipe fp = postC(lp, template_approx(HPolytope::box(Vector::Zero(1), Vector::Constant(1, 0.2)), dirs), 0.01, 5.0);
  const std::vector<Participant> ev{{0, 0}};
  const ComposedTransition t = make_compatible(net, ev);
  const TemplatePolyhedron s = postD(fp, t, lq);
  REQUIRE_FALSE(s.is_empty());
  // Guard part is x in [0.5, 1]; image [2, 3] up to one step of bloating.
  CHECK(s.box_lower()(0) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(s.box_upper()(0) == doctest::Approx(3.0).epsilon(0.02));
  CHECK(s.box_lower()(0) <= 2.0 + 1e-9);
  CHECK(s.box_upper()(0) >= 3.0 - 1e-9);

  const HPolytope far = HPolytope::box(Vector::Constant(1, 0.95), Vector::Constant(1, 1.0));
  const auto hit = unsafe_hit(fp, far);
  REQUIRE(hit.has_value());
  CHECK(far.contains(hit->point, 1e-9));
  CHECK(fp.segments[hit->segment].contains(hit->point, 1e-9));
  CHECK_FALSE(unsafe_hit(fp, HPolytope::box(Vector::Constant(1, 1.5), Vector::Constant(1, 2.0))).has_value());
}

TEST_CASE("tree dump is deterministic") {
  const Network net = parse_model(oracle::read_file(kData + "/nav_example.model.json"));
  const SafetySpec spec = parse_config(oracle::read_file(kData + "/nav_example.feasible.json"), net);
  auto run = [&] {
    EngineOptions o;
    o.record_tree = true;
    ReachabilityEngine eng(net, spec, o);
    enumerate(net, spec, eng.callback());
    return eng.tree_json();
  };
  const std::string a = run();
  CHECK(a == run());
  const auto doc = nlohmann::json::parse(a);
  CHECK(doc.size() == 2);
}

TEST_CASE("several workers give the same result") {
  const auto all = oracle::corpus(kData);
  for (const auto& e : all) {
    if (e.name.rfind("rods", 0) != 0 && e.name.rfind("nav3", 0) != 0) continue;
    const Network net = parse_model(e.model);
    const SafetySpec spec = parse_config(e.config, net);
    RunOptions one, three;
    three.workers = 3;
    const Report a = verify(net, spec, one);
    const Report b = verify(net, spec, three);
    CAPTURE(e.name);
    CHECK(a.safe == b.safe);
    CHECK(a.reach.postc == b.reach.postc);
  }
}
