#pragma once

#include "chargemdp/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace chargemdp {

/// Reduces (preperiod, cycle) to the minimal cycle, then the minimal
/// preperiod for that cycle. The cycle must be nonempty.
template <class T>
void canonicalize_eventually_periodic(std::vector<T>& pre, std::vector<T>& cycle) {
  const std::uint64_t p = cycle.size();
  for (auto d : divisors(p)) {
    bool ok = true;
    for (std::uint64_t j = d; j < p && ok; ++j) ok = cycle[j] == cycle[j % d];
    if (ok) {
      cycle.resize(d);
      break;
    }
  }
  while (!pre.empty() && pre.back() == cycle.back()) {
    std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
    pre.pop_back();
  }
}

}  // namespace chargemdp
