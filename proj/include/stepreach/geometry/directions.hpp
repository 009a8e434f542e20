#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "stepreach/linalg.hpp"

namespace stepreach {

enum class DirectionFamily { box, oct };

std::string to_string(DirectionFamily f);
DirectionFamily direction_family_from_string(const std::string& name);

// A fixed family of template directions over R^n.  Instances are interned,
// so two template polyhedra use the same directions iff their pointers match.
class DirectionSet {
 public:
  static std::shared_ptr<const DirectionSet> get(DirectionFamily family, std::size_t dim);

  DirectionFamily family() const { return family_; }
  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return static_cast<std::size_t>(dirs_.rows()); }
  // One direction per row.
  const Matrix& matrix() const { return dirs_; }
  Vector direction(std::size_t i) const { return dirs_.row(static_cast<Eigen::Index>(i)).transpose(); }

  // Both families start with the 2n axis directions +e0, -e0, +e1, -e1, ...
  static std::size_t upper_index(std::size_t axis) { return 2 * axis; }
  static std::size_t lower_index(std::size_t axis) { return 2 * axis + 1; }

  DirectionSet(DirectionFamily family, std::size_t dim);

 private:
  DirectionFamily family_;
  std::size_t dim_;
  Matrix dirs_;
};

using DirectionsPtr = std::shared_ptr<const DirectionSet>;

}  // namespace stepreach
