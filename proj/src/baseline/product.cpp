#include <functional>
#include <set>

#include "stepreach/baseline.hpp"
#include "stepreach/errors.hpp"

namespace stepreach {

std::size_t ProductAutomaton::index(const std::vector<std::size_t>& loc) const {
  std::size_t idx = 0;
  for (std::size_t c = 0; c < radices.size(); ++c) idx = idx * radices[c] + loc[c];
  return idx;
}

ProductAutomaton build_product(const Network& net, std::size_t cap) {
  ProductAutomaton prod;
  std::size_t total = 1;
  for (const auto& comp : net.components()) {
    prod.radices.push_back(comp.locations.size());
    if (total > cap / std::max<std::size_t>(comp.locations.size(), 1) + 1) throw CapExceeded("product too large");
    total *= comp.locations.size();
  }
  if (total > cap) throw CapExceeded("product has " + std::to_string(total) + " locations, cap is " + std::to_string(cap));

  const std::size_t m = net.size();
  prod.locations.reserve(total);
  std::vector<std::size_t> loc(m, 0);
  for (std::size_t i = 0; i < total; ++i) {
    prod.locations.push_back(loc);
    for (std::size_t c = m; c-- > 0;) {
      if (++loc[c] < prod.radices[c]) break;
      loc[c] = 0;
    }
  }

  prod.outgoing.resize(total);
  for (std::size_t s = 0; s < total; ++s) {
    const auto& here = prod.locations[s];
    std::set<std::string> done;
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t t : net.outgoing(c, here[c])) {
        const auto& tr = net.component(c).transitions[t];
        if (!net.is_shared(tr.label)) {
          auto next = here;
          next[c] = tr.target;
          prod.outgoing[s].push_back(prod.transitions.size());
          prod.transitions.push_back({s, prod.index(next), tr.label, {{c, t}}});
          continue;
        }
        if (!done.insert(tr.label).second) continue;
        // Every combination of label transitions of the sharing components.
        const auto& sharers = net.sharing_components(tr.label);
        Event ev;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
          if (i == sharers.size()) {
            auto next = here;
            for (const auto& p : ev) next[p.component] = net.component(p.component).transitions[p.transition].target;
            prod.outgoing[s].push_back(prod.transitions.size());
            prod.transitions.push_back({s, prod.index(next), tr.label, ev});
            return;
          }
          const std::size_t z = sharers[i];
          for (std::size_t u : net.outgoing(z, here[z])) {
            if (net.component(z).transitions[u].label != tr.label) continue;
            ev.push_back({z, u});
            rec(i + 1);
            ev.pop_back();
          }
        };
        rec(0);
      }
    }
  }
  return prod;
}

}  // namespace stepreach
