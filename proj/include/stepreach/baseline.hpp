#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stepreach/model.hpp"
#include "stepreach/pathenum.hpp"

namespace stepreach {

struct ProductTransition {
  std::size_t source = 0;
  std::size_t target = 0;
  std::string label;
  Event participants;  // ascending component order
};

// Explicit parallel composition.  Product locations are numbered in
// mixed radix with component 0 most significant.
struct ProductAutomaton {
  std::vector<std::size_t> radices;
  std::vector<std::vector<std::size_t>> locations;
  std::vector<ProductTransition> transitions;
  std::vector<std::vector<std::size_t>> outgoing;  // transition ids by source

  std::size_t index(const std::vector<std::size_t>& loc) const;
};

inline constexpr std::size_t kDefaultProductCap = 10000;

// Throws CapExceeded when the product has more than `cap` locations.
ProductAutomaton build_product(const Network& net, std::size_t cap = kDefaultProductCap);

// Every path from init to unsafe with at most k transitions.
std::vector<Interleaving> bfs_paths(const ProductAutomaton& prod, const std::vector<std::size_t>& init,
                                    const std::vector<std::size_t>& unsafe, std::size_t k);

struct BaselineResult {
  bool safe = true;
  std::vector<std::size_t> hit_location;
  std::size_t hit_segment = 0;
  Vector certificate;  // point of the unsafe set reached
  std::uint64_t states = 0;
  std::uint64_t postc = 0;
  std::uint64_t postd = 0;
};

// Breadth-first flowpipe exploration of the product up to spec.bound jumps.
BaselineResult bfs_reach(const Network& net, const ProductAutomaton& prod, const SafetySpec& spec);

}  // namespace stepreach
