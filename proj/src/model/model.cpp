#include <algorithm>
#include <cmath>
#include <set>

#include "stepreach/errors.hpp"
#include "stepreach/model.hpp"

namespace stepreach {

bool Reset::is_identity() const {
  return R.rows() == R.cols() && R.isIdentity(0.0) && (c.size() == 0 || c.isZero(0.0));
}

std::optional<std::size_t> ComponentAutomaton::find_location(std::string_view id) const {
  for (std::size_t i = 0; i < locations.size(); ++i)
    if (locations[i].id == id) return i;
  return std::nullopt;
}

namespace {

std::string comp_path(std::size_t c) { return "components[" + std::to_string(c) + "]"; }

void check_rows(const std::vector<LinearConstraint>& rows, std::size_t n, const std::string& path) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (r.coeffs.size() != n)
      throw ValidationError(p + ".coeffs", "expected " + std::to_string(n) + " coefficients, got " +
                                               std::to_string(r.coeffs.size()));
    for (double v : r.coeffs)
      if (!std::isfinite(v)) throw ValidationError(p + ".coeffs", "non-finite coefficient");
    if (!std::isfinite(r.bound)) throw ValidationError(p + ".bound", "non-finite bound");
  }
}

void validate_component(const ComponentAutomaton& comp, std::size_t ci) {
  const std::string base = comp_path(ci);
  const std::size_t n = comp.dimension();
  if (comp.name.empty()) throw ValidationError(base + ".name", "component name must not be empty");
  if (n == 0) throw ValidationError(base + ".variables", "a component needs at least one variable");
  std::set<std::string> vars;
  for (const auto& v : comp.variables) {
    if (v.empty()) throw ValidationError(base + ".variables", "empty variable name");
    if (!vars.insert(v).second) throw ValidationError(base + ".variables", "duplicate variable '" + v + "'");
  }
  if (comp.locations.empty()) throw ValidationError(base + ".locations", "a component needs at least one location");
  std::set<std::string> ids;
  for (std::size_t li = 0; li < comp.locations.size(); ++li) {
    const auto& loc = comp.locations[li];
    const std::string p = base + ".locations[" + std::to_string(li) + "]";
    if (loc.id.empty()) throw ValidationError(p + ".id", "empty location id");
    if (!ids.insert(loc.id).second) throw ValidationError(p + ".id", "duplicate location id '" + loc.id + "'");
    const auto sn = static_cast<Eigen::Index>(n);
    if (loc.flow.A.rows() != sn || loc.flow.A.cols() != sn)
      throw ValidationError(p + ".flow.A", "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    if (loc.flow.u_lower.size() != sn || loc.flow.u_upper.size() != sn)
      throw ValidationError(p + ".flow", "input bounds must have " + std::to_string(n) + " entries");
    if (!loc.flow.A.allFinite() || !loc.flow.u_lower.allFinite() || !loc.flow.u_upper.allFinite())
      throw ValidationError(p + ".flow", "non-finite entry");
    for (Eigen::Index i = 0; i < sn; ++i)
      if (loc.flow.u_lower(i) > loc.flow.u_upper(i))
        throw ValidationError(p + ".flow", "u_lower exceeds u_upper at index " + std::to_string(i));
    check_rows(loc.invariant, n, p + ".invariant");
  }
  if (comp.initial_location >= comp.locations.size()) throw ValidationError(base + ".initial", "unknown location");
  for (std::size_t ti = 0; ti < comp.transitions.size(); ++ti) {
    const auto& t = comp.transitions[ti];
    const std::string p = base + ".transitions[" + std::to_string(ti) + "]";
    if (t.label.empty()) throw ValidationError(p + ".label", "empty label");
    if (t.label == kStutterLabel) throw ValidationError(p + ".label", "the label 'stutter' is reserved");
    if (t.source >= comp.locations.size()) throw ValidationError(p + ".source", "unknown location");
    if (t.target >= comp.locations.size()) throw ValidationError(p + ".target", "unknown location");
    check_rows(t.guard, n, p + ".guard");
    const auto sn = static_cast<Eigen::Index>(n);
    if (t.reset.R.rows() != sn || t.reset.R.cols() != sn)
      throw ValidationError(p + ".reset.R", "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    if (t.reset.c.size() != sn) throw ValidationError(p + ".reset.c", "expected " + std::to_string(n) + " entries");
    if (!t.reset.R.allFinite() || !t.reset.c.allFinite()) throw ValidationError(p + ".reset", "non-finite entry");
  }
}

}  // namespace

Network::Network(std::vector<ComponentAutomaton> components) : components_(std::move(components)) {
  if (components_.empty()) throw ValidationError("components", "a model needs at least one component");
  std::set<std::string> names;
  std::map<std::string, std::size_t> owner;
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const auto& comp = components_[c];
    validate_component(comp, c);
    if (!names.insert(comp.name).second)
      throw ValidationError(comp_path(c) + ".name", "duplicate component name '" + comp.name + "'");
    for (const auto& v : comp.variables) {
      auto [it, fresh] = owner.emplace(v, c);
      if (!fresh)
        throw ValidationError(comp_path(c) + ".variables", "variable '" + v + "' is already declared by component '" +
                                                               components_[it->second].name + "'");
    }
  }
  offsets_.resize(components_.size());
  for (std::size_t c = 0; c < components_.size(); ++c) {
    offsets_[c] = total_dim_;
    total_dim_ += components_[c].dimension();
  }
  for (std::size_t c = 0; c < components_.size(); ++c) {
    std::set<std::string> alphabet;
    for (const auto& t : components_[c].transitions) alphabet.insert(t.label);
    for (const auto& l : alphabet) label_components_[l].push_back(c);
  }
  for (const auto& [label, comps] : label_components_)
    if (comps.size() >= 2) shared_labels_.push_back(label);
  outgoing_.resize(components_.size());
  for (std::size_t c = 0; c < components_.size(); ++c) {
    outgoing_[c].resize(components_[c].locations.size());
    for (std::size_t t = 0; t < components_[c].transitions.size(); ++t)
      outgoing_[c][components_[c].transitions[t].source].push_back(t);
  }
}

bool Network::is_shared(const std::string& label) const { return shared_index(label).has_value(); }

std::optional<std::size_t> Network::shared_index(const std::string& label) const {
  auto it = std::lower_bound(shared_labels_.begin(), shared_labels_.end(), label);
  if (it == shared_labels_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - shared_labels_.begin());
}

const std::vector<std::size_t>& Network::sharing_components(const std::string& label) const {
  static const std::vector<std::size_t> none;
  auto it = label_components_.find(label);
  return it == label_components_.end() ? none : it->second;
}

ProductStats product_stats(const Network& net) {
  ProductStats s;
  s.locations = 1;
  for (const auto& comp : net.components()) s.locations *= comp.locations.size();
  const auto others = [&](const std::vector<std::size_t>& excluded) {
    std::uint64_t p = 1;
    for (std::size_t d = 0; d < net.size(); ++d)
      if (std::find(excluded.begin(), excluded.end(), d) == excluded.end()) p *= net.component(d).locations.size();
    return p;
  };
  for (std::size_t c = 0; c < net.size(); ++c) {
    std::uint64_t local = 0;
    for (const auto& t : net.component(c).transitions)
      if (!net.is_shared(t.label)) ++local;
    s.transitions += local * others({c});
  }
  for (const auto& label : net.shared_labels()) {
    const auto& comps = net.sharing_components(label);
    std::uint64_t combos = 1;
    for (std::size_t c : comps) {
      std::uint64_t k = 0;
      for (const auto& t : net.component(c).transitions)
        if (t.label == label) ++k;
      combos *= k;
    }
    s.transitions += combos * others(comps);
  }
  return s;
}

std::size_t segment_count(double time_step, double time_horizon) {
  const double ratio = time_horizon / time_step;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, rounded)) return static_cast<std::size_t>(std::max(1.0, rounded));
  return static_cast<std::size_t>(std::ceil(ratio));
}

}  // namespace stepreach
