// Splits Z4 over the two-element quantale into its torsion part and
// separated reflection, then classifies the quotient map onto Z2.

#include <iostream>

#include "vgrp/vgrp.hpp"

using namespace vgrp;

int main() {
  auto q = boolean_quantale();
  std::vector<Value> delta{q->top(), q->bottom(), q->top(), q->bottom()};
  auto x = share(structure_from_delta(cyclic_group(4), q, delta));

  TorsionDecomposition d = decompose(x);
  std::cout << "torsion part:";
  for (Elem e : d.torsion.inclusion.map) std::cout << ' ' << e;
  std::cout << "\nquotient order " << d.quotient.object->order() << ", discrete "
            << std::boolalpha << is_discrete(*d.quotient.object) << '\n';

  MorphismClassReport r = classify_morphism(d.quotient.projection);
  std::cout << "E " << r.in_E << ", M " << r.in_M << ", E' " << r.in_E_prime << ", M* " << r.in_M_star << '\n';
  std::cout << "covering " << is_covering(d.quotient.projection) << '\n';
  return 0;
}
