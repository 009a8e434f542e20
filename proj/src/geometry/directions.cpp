#include "stepreach/geometry/directions.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace stepreach {

std::string to_string(DirectionFamily f) { return f == DirectionFamily::box ? "box" : "oct"; }

DirectionFamily direction_family_from_string(const std::string& name) {
  if (name == "box") return DirectionFamily::box;
  if (name == "oct") return DirectionFamily::oct;
  throw std::invalid_argument("unknown direction family '" + name + "' (expected box or oct)");
}

DirectionSet::DirectionSet(DirectionFamily family, std::size_t dim) : family_(family), dim_(dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::Index count = 2 * n;
  if (family == DirectionFamily::oct) count += 2 * n * (n - 1);
  dirs_ = Matrix::Zero(count, n);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    dirs_(r++, i) = 1.0;
    dirs_(r++, i) = -1.0;
  }
  if (family == DirectionFamily::oct) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        for (double si : {1.0, -1.0}) {
          for (double sj : {1.0, -1.0}) {
            dirs_(r, i) = si;
            dirs_(r, j) = sj;
            ++r;
          }
        }
      }
    }
  }
}

std::shared_ptr<const DirectionSet> DirectionSet::get(DirectionFamily family, std::size_t dim) {
  static std::mutex mu;
  static std::map<std::pair<DirectionFamily, std::size_t>, std::shared_ptr<const DirectionSet>> pool;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = pool[{family, dim}];
  if (!slot) slot = std::make_shared<const DirectionSet>(family, dim);
  return slot;
}

}  // namespace stepreach
