// Materializes a window of the separated cover Z x X of the Lawvere Z4
// and checks it, radius by radius.

#include <iostream>

#include "vgrp/vgrp.hpp"

using namespace vgrp;

int main() {
  auto q = lawvere_chain(2);
  std::vector<Value> delta{q->element(0), q->element(1), q->element(2), q->element(1)};
  auto base = share(structure_from_delta(cyclic_group(4), q, delta));
  if (!validate_vgroup(*base).ok()) return 1;

  LazyVGroup cover = descent_cover(base);
  for (std::size_t n = 1; n <= 4; ++n) {
    Report r = verify_cover_window(cover, n);
    std::cout << "radius " << n << ": " << window(cover, n).elems.size() << " elements, "
              << (r.ok() ? "ok" : r.violations.front().law) << '\n';
  }
  EqFData e = eq_f(cover, 1);
  std::cout << "Eq(f) arrows at radius 1: " << e.arrows.size() << '\n';
  return 0;
}
