#include "stepreach/composition.hpp"

#include <algorithm>
#include <stdexcept>

namespace stepreach {

HPolytope embed_constraints(const Network& net, std::size_t c, const std::vector<LinearConstraint>& rows) {
  const auto n = static_cast<Eigen::Index>(net.total_dimension());
  const auto off = static_cast<Eigen::Index>(net.offset(c));
  Matrix A = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), n);
  Vector b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t k = 0; k < rows[r].coeffs.size(); ++k)
      A(static_cast<Eigen::Index>(r), off + static_cast<Eigen::Index>(k)) = rows[r].coeffs[k];
    b(static_cast<Eigen::Index>(r)) = rows[r].bound;
  }
  return HPolytope(std::move(A), std::move(b));
}

ComposedLocation compose_location(const Network& net, std::span<const std::size_t> locations) {
  if (locations.size() != net.size()) throw std::invalid_argument("compose_location: one location per component required");
  const auto n = static_cast<Eigen::Index>(net.total_dimension());
  ComposedLocation out;
  out.locations.assign(locations.begin(), locations.end());
  out.A = Matrix::Zero(n, n);
  out.u_lower = Vector::Zero(n);
  out.u_upper = Vector::Zero(n);
  out.invariant = HPolytope::universe(net.total_dimension());
  for (std::size_t c = 0; c < net.size(); ++c) {
    const auto& loc = net.component(c).locations.at(locations[c]);
    const auto off = static_cast<Eigen::Index>(net.offset(c));
    const auto nc = static_cast<Eigen::Index>(net.component(c).dimension());
    out.A.block(off, off, nc, nc) = loc.flow.A;
    out.u_lower.segment(off, nc) = loc.flow.u_lower;
    out.u_upper.segment(off, nc) = loc.flow.u_upper;
    if (!loc.invariant.empty()) out.invariant = out.invariant.intersected(embed_constraints(net, c, loc.invariant));
  }
  return out;
}

ComposedTransition make_compatible(const Network& net, std::span<const Participant> participants) {
  if (participants.empty()) throw std::logic_error("make_compatible: no participants");
  const auto n = static_cast<Eigen::Index>(net.total_dimension());
  ComposedTransition out;
  out.participants.assign(participants.begin(), participants.end());
  std::sort(out.participants.begin(), out.participants.end());
  out.label = net.component(out.participants[0].component).transitions.at(out.participants[0].transition).label;
  out.guard = HPolytope::universe(net.total_dimension());
  out.R = Matrix::Identity(n, n);
  out.c = Vector::Zero(n);
  for (std::size_t i = 0; i < out.participants.size(); ++i) {
    const auto [c, tid] = out.participants[i];
    if (i > 0 && out.participants[i - 1].component == c)
      throw std::logic_error("make_compatible: two participants from the same component");
    const Transition& t = net.component(c).transitions.at(tid);
    if (t.label != out.label) throw std::logic_error("make_compatible: participants carry different labels");
    const auto off = static_cast<Eigen::Index>(net.offset(c));
    const auto nc = static_cast<Eigen::Index>(net.component(c).dimension());
    if (!t.guard.empty()) out.guard = out.guard.intersected(embed_constraints(net, c, t.guard));
    out.R.block(off, off, nc, nc) = t.reset.R;
    out.c.segment(off, nc) = t.reset.c;
  }
  if (!net.is_shared(out.label) && out.participants.size() != 1)
    throw std::logic_error("make_compatible: a local label has exactly one participant");
  return out;
}

}  // namespace stepreach
