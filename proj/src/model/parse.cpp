#include <cmath>
#include <json.hpp>

#include "stepreach/composition.hpp"
#include "stepreach/errors.hpp"
#include "stepreach/model.hpp"

namespace stepreach {

using nlohmann::json;

namespace {

// ---- reading helpers -------------------------------------------------------

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(path, std::string("missing field '") + key + "'");
  return *it;
}

const json* optional_member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return (it == obj.end() || it->is_null()) ? nullptr : &*it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(path, "expected a finite number");
  return v;
}

std::string as_string(const json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ValidationError(path, "expected a string");
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path, "expected an array");
  return j;
}

std::vector<double> number_list(const json& j, const std::string& path) {
  std::vector<double> out;
  const json& arr = as_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_number(arr[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Vector vector_of(const json& j, std::size_t n, const std::string& path) {
  auto v = number_list(j, path);
  if (v.size() != n) throw ValidationError(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  return Eigen::Map<Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Square matrix; a null row stands for the corresponding identity row.
Matrix matrix_of(const json& j, std::size_t n, const std::string& path, bool null_rows_are_identity) {
  const json& rows = as_array(j, path);
  if (rows.size() != n) throw ValidationError(path, "expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
  const auto sn = static_cast<Eigen::Index>(n);
  Matrix M = Matrix::Zero(sn, sn);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (rows[r].is_null() && null_rows_are_identity) {
      M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = 1.0;
      continue;
    }
    Vector row = vector_of(rows[r], n, rp);
    M.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return M;
}

std::vector<LinearConstraint> constraint_list(const json& j, std::size_t n, const std::string& path) {
  std::vector<LinearConstraint> out;
  const json& arr = as_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    LinearConstraint c;
    c.coeffs = number_list(member(arr[i], "coeffs", p), p + ".coeffs");
    if (c.coeffs.size() != n)
      throw ValidationError(p + ".coeffs", "expected " + std::to_string(n) + " coefficients, got " + std::to_string(c.coeffs.size()));
    c.bound = as_number(member(arr[i], "bound", p), p + ".bound");
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t location_index(const ComponentAutomaton& comp, const std::string& id, const std::string& path) {
  auto idx = comp.find_location(id);
  if (!idx) throw ValidationError(path, "unknown location '" + id + "' in component '" + comp.name + "'");
  return *idx;
}

ComponentAutomaton read_component(const json& j, std::size_t ci) {
  const std::string base = "components[" + std::to_string(ci) + "]";
  ComponentAutomaton comp;
  comp.name = as_string(member(j, "name", base), base + ".name");
  const json& vars = as_array(member(j, "variables", base), base + ".variables");
  for (std::size_t i = 0; i < vars.size(); ++i)
    comp.variables.push_back(as_string(vars[i], base + ".variables[" + std::to_string(i) + "]"));
  const std::size_t n = comp.variables.size();
  const auto sn = static_cast<Eigen::Index>(n);

  const json& locs = as_array(member(j, "locations", base), base + ".locations");
  for (std::size_t li = 0; li < locs.size(); ++li) {
    const std::string p = base + ".locations[" + std::to_string(li) + "]";
    Location loc;
    loc.id = as_string(member(locs[li], "id", p), p + ".id");
    loc.flow.A = Matrix::Zero(sn, sn);
    loc.flow.u_lower = Vector::Zero(sn);
    loc.flow.u_upper = Vector::Zero(sn);
    if (const json* flow = optional_member(locs[li], "flow")) {
      if (const json* a = optional_member(*flow, "A")) loc.flow.A = matrix_of(*a, n, p + ".flow.A", false);
      if (const json* lo = optional_member(*flow, "u_lower")) loc.flow.u_lower = vector_of(*lo, n, p + ".flow.u_lower");
      if (const json* hi = optional_member(*flow, "u_upper")) loc.flow.u_upper = vector_of(*hi, n, p + ".flow.u_upper");
    }
    if (const json* inv = optional_member(locs[li], "invariant")) loc.invariant = constraint_list(*inv, n, p + ".invariant");
    comp.locations.push_back(std::move(loc));
  }
  comp.initial_location = location_index(comp, as_string(member(j, "initial", base), base + ".initial"), base + ".initial");

  if (const json* trans = optional_member(j, "transitions")) {
    as_array(*trans, base + ".transitions");
    for (std::size_t ti = 0; ti < trans->size(); ++ti) {
      const json& tj = (*trans)[ti];
      const std::string p = base + ".transitions[" + std::to_string(ti) + "]";
      Transition t;
      t.label = as_string(member(tj, "label", p), p + ".label");
      t.source = location_index(comp, as_string(member(tj, "source", p), p + ".source"), p + ".source");
      t.target = location_index(comp, as_string(member(tj, "target", p), p + ".target"), p + ".target");
      if (const json* g = optional_member(tj, "guard")) t.guard = constraint_list(*g, n, p + ".guard");
      t.reset.R = Matrix::Identity(sn, sn);
      t.reset.c = Vector::Zero(sn);
      if (const json* r = optional_member(tj, "reset")) {
        if (const json* R = optional_member(*r, "R")) t.reset.R = matrix_of(*R, n, p + ".reset.R", true);
        if (const json* c = optional_member(*r, "c")) t.reset.c = vector_of(*c, n, p + ".reset.c");
      }
      comp.transitions.push_back(std::move(t));
    }
  }
  return comp;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SyntaxError(e.what());
  }
}

// A set is either a list of rows over the composed vector or the box sugar
// {"lower":[...], "upper":[...]}.
HPolytope read_set(const json& j, std::size_t n, const std::string& path) {
  if (j.is_object()) {
    Vector lo = vector_of(member(j, "lower", path), n, path + ".lower");
    Vector hi = vector_of(member(j, "upper", path), n, path + ".upper");
    for (std::size_t i = 0; i < n; ++i)
      if (lo(static_cast<Eigen::Index>(i)) > hi(static_cast<Eigen::Index>(i)))
        throw ValidationError(path, "lower exceeds upper at index " + std::to_string(i));
    return HPolytope::box(lo, hi);
  }
  auto rows = constraint_list(j, n, path);
  const auto sn = static_cast<Eigen::Index>(n);
  Matrix A(static_cast<Eigen::Index>(rows.size()), sn);
  Vector b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    A.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vector>(rows[i].coeffs.data(), sn).transpose();
    b(static_cast<Eigen::Index>(i)) = rows[i].bound;
  }
  return HPolytope(std::move(A), std::move(b));
}

std::vector<std::size_t> read_locations(const json& j, const Network& net, const std::string& path) {
  const json& arr = as_array(j, path);
  if (arr.size() != net.size())
    throw ValidationError(path, "expected one location per component (" + std::to_string(net.size()) + "), got " +
                                    std::to_string(arr.size()));
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < arr.size(); ++c) {
    const std::string p = path + "[" + std::to_string(c) + "]";
    out.push_back(location_index(net.component(c), as_string(arr[c], p), p));
  }
  return out;
}

// ---- writing helpers -------------------------------------------------------

json write_vector(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json write_matrix(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json write_constraints(const std::vector<LinearConstraint>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back({{"coeffs", r.coeffs}, {"bound", r.bound}});
  return a;
}

json write_set(const HPolytope& p) {
  json a = json::array();
  for (Eigen::Index r = 0; r < p.A.rows(); ++r) {
    std::vector<double> coeffs(p.A.cols());
    for (Eigen::Index c = 0; c < p.A.cols(); ++c) coeffs[static_cast<std::size_t>(c)] = p.A(r, c);
    a.push_back({{"coeffs", coeffs}, {"bound", p.b(r)}});
  }
  return a;
}

bool within(double value, double bound) { return value <= bound + kTolerance * std::max(1.0, std::abs(bound)); }

}  // namespace

Network parse_model(std::string_view text) {
  const json doc = parse_json(text);
  const json& comps = as_array(member(doc, "components", ""), "components");
  std::vector<ComponentAutomaton> out;
  for (std::size_t c = 0; c < comps.size(); ++c) out.push_back(read_component(comps[c], c));
  return Network(std::move(out));
}

void validate_config(const SafetySpec& spec, const Network& net) {
  const std::size_t n = net.total_dimension();
  if (spec.bound < 0) throw ValidationError("bound", "must be a non-negative integer");
  if (!(spec.time_step > 0) || !std::isfinite(spec.time_step)) throw ValidationError("time_step", "must be positive");
  if (!(spec.time_horizon > 0) || !std::isfinite(spec.time_horizon))
    throw ValidationError("time_horizon", "must be positive");
  if (spec.initial_locations.size() != net.size()) throw ValidationError("initial.locations", "wrong length");
  if (spec.unsafe_locations.size() != net.size()) throw ValidationError("unsafe.locations", "wrong length");
  if (spec.initial_set.dimension() != n) throw ValidationError("initial.set", "dimension mismatch");
  if (spec.unsafe_set.dimension() != n) throw ValidationError("unsafe.set", "dimension mismatch");

  if (spec.initial_set.is_empty()) throw ValidationError("initial.set", "the initial set is empty");
  for (std::size_t i = 0; i < n; ++i) {
    for (double s : {1.0, -1.0}) {
      Vector e = Vector::Zero(static_cast<Eigen::Index>(n));
      e(static_cast<Eigen::Index>(i)) = s;
      if (!spec.initial_set.support_or_unbounded(e)) throw ValidationError("initial.set", "the initial set must be bounded");
    }
  }
  const ComposedLocation init = compose_location(net, spec.initial_locations);
  for (Eigen::Index r = 0; r < init.invariant.A.rows(); ++r) {
    const double h = spec.initial_set.support(init.invariant.A.row(r).transpose());
    if (!within(h, init.invariant.b(r)))
      throw ValidationError("initial.set", "the initial set is not contained in the invariant of the initial location");
  }
  if (spec.unsafe_set.is_empty()) throw ValidationError("unsafe.set", "the unsafe set is empty");
  const ComposedLocation bad = compose_location(net, spec.unsafe_locations);
  for (Eigen::Index r = 0; r < bad.invariant.A.rows(); ++r) {
    auto h = spec.unsafe_set.support_or_unbounded(bad.invariant.A.row(r).transpose());
    if (!h || !within(*h, bad.invariant.b(r)))
      throw ValidationError("unsafe.set", "the unsafe set is not contained in the invariant of the unsafe location");
  }
}

SafetySpec parse_config(std::string_view text, const Network& net) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ValidationError("", "expected an object");
  const std::size_t n = net.total_dimension();
  SafetySpec spec;
  const json& init = member(doc, "initial", "");
  spec.initial_locations = read_locations(member(init, "locations", "initial"), net, "initial.locations");
  spec.initial_set = read_set(member(init, "set", "initial"), n, "initial.set");
  const json& unsafe = member(doc, "unsafe", "");
  spec.unsafe_locations = read_locations(member(unsafe, "locations", "unsafe"), net, "unsafe.locations");
  if (const json* s = optional_member(unsafe, "set"))
    spec.unsafe_set = read_set(*s, n, "unsafe.set");
  else
    spec.unsafe_set = compose_location(net, spec.unsafe_locations).invariant;
  const json& k = member(doc, "bound", "");
  if (!k.is_number_integer()) throw ValidationError("bound", "expected an integer");
  spec.bound = k.get<int>();
  if (const json* dt = optional_member(doc, "time_step")) spec.time_step = as_number(*dt, "time_step");
  if (const json* T = optional_member(doc, "time_horizon")) spec.time_horizon = as_number(*T, "time_horizon");
  if (const json* d = optional_member(doc, "directions")) {
    const std::string name = as_string(*d, "directions");
    if (name == "box")
      spec.directions = DirectionFamily::box;
    else if (name == "oct")
      spec.directions = DirectionFamily::oct;
    else
      throw ValidationError("directions", "expected \"box\" or \"oct\"");
  }
  validate_config(spec, net);
  return spec;
}

std::string serialize_model(const Network& net) {
  json comps = json::array();
  for (const auto& comp : net.components()) {
    json locs = json::array();
    for (const auto& loc : comp.locations) {
      locs.push_back({{"id", loc.id},
                      {"flow", {{"A", write_matrix(loc.flow.A)}, {"u_lower", write_vector(loc.flow.u_lower)},
                                {"u_upper", write_vector(loc.flow.u_upper)}}},
                      {"invariant", write_constraints(loc.invariant)}});
    }
    json trans = json::array();
    for (const auto& t : comp.transitions) {
      trans.push_back({{"label", t.label},
                       {"source", comp.locations[t.source].id},
                       {"target", comp.locations[t.target].id},
                       {"guard", write_constraints(t.guard)},
                       {"reset", {{"R", write_matrix(t.reset.R)}, {"c", write_vector(t.reset.c)}}}});
    }
    comps.push_back({{"name", comp.name},
                     {"variables", comp.variables},
                     {"locations", std::move(locs)},
                     {"transitions", std::move(trans)},
                     {"initial", comp.locations[comp.initial_location].id}});
  }
  return json{{"components", std::move(comps)}}.dump(1);
}

std::string serialize_config(const SafetySpec& spec, const Network& net) {
  json init_locs = json::array();
  json unsafe_locs = json::array();
  for (std::size_t c = 0; c < net.size(); ++c) {
    init_locs.push_back(net.component(c).locations[spec.initial_locations[c]].id);
    unsafe_locs.push_back(net.component(c).locations[spec.unsafe_locations[c]].id);
  }
  json doc = {{"initial", {{"locations", init_locs}, {"set", write_set(spec.initial_set)}}},
              {"unsafe", {{"locations", unsafe_locs}, {"set", write_set(spec.unsafe_set)}}},
              {"bound", spec.bound},
              {"time_step", spec.time_step},
              {"time_horizon", spec.time_horizon},
              {"directions", to_string(spec.directions)}};
  return doc.dump(1);
}

}  // namespace stepreach
