#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vgrp/error.hpp"
#include "vgrp/group.hpp"
#include "vgrp/quantale.hpp"
#include "vgrp/vgroup.hpp"

namespace vgrp {

enum class SuiteLevel { smoke, full };

/// All V-homomorphisms between two suite objects. A truncated set was
/// refused by the enumeration guard and is empty.
struct HomSet {
  std::size_t dom = 0;
  std::size_t cod = 0;
  std::vector<VHom> homs;
  bool truncated = false;
};

struct Suite {
  std::vector<QuantalePtr> quantales;
  std::vector<FiniteGroup> groups;
  std::vector<VGroupRef> objects;
  std::vector<HomSet> morphisms;
  std::size_t cap = kEnumerationCap;
  std::vector<std::string> notes;

  /// Objects over quantale `q`, in suite order.
  [[nodiscard]] std::vector<std::size_t> objects_over(const Quantale& q) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i]->q().same_as(q)) out.push_back(i);
    return out;
  }
};

inline std::vector<QuantalePtr> suite_quantales(SuiteLevel level) {
  if (level == SuiteLevel::smoke) return {boolean_quantale(), lawvere_chain(2)};
  return {boolean_quantale(), lawvere_chain(2), ultrametric_chain(3), lawvere_chain(3)};
}

inline std::vector<FiniteGroup> suite_groups(SuiteLevel level) {
  std::vector<FiniteGroup> g{trivial_group(), cyclic_group(2), cyclic_group(3), cyclic_group(4)};
  if (level == SuiteLevel::full) {
    g.push_back(klein_group());
    g.push_back(cyclic_group(5));
    g.push_back(cyclic_group(6));
    g.push_back(symmetric_group3());
  }
  return g;
}

/// Every structure on every suite group over every suite quantale, and every
/// hom-set between objects sharing a quantale. Order is quantale, group,
/// then delta; hom-sets run over (dom, cod) pairs in object order.
inline Suite standard_suite(SuiteLevel level, bool with_morphisms = true, std::size_t cap = kEnumerationCap) {
  Suite s;
  s.cap = cap;
  s.quantales = suite_quantales(level);
  s.groups = suite_groups(level);
  for (const QuantalePtr& q : s.quantales) {
    for (const FiniteGroup& g : s.groups) {
      try {
        for (VGroup& obj : enumerate_structures(g, q, cap)) s.objects.push_back(share(std::move(obj)));
      } catch (const CapacityError&) {
        s.notes.push_back("structures on " + g.name() + " over " + q->name() + " skipped: capacity");
      }
    }
  }
  if (!with_morphisms) return s;
  for (const QuantalePtr& q : s.quantales) {
    const std::vector<std::size_t> idx = s.objects_over(*q);
    for (std::size_t i : idx) {
      for (std::size_t j : idx) {
        HomSet h{i, j, {}, false};
        try {
          h.homs = enumerate_homs(s.objects[i], s.objects[j], cap);
        } catch (const CapacityError&) {
          h.truncated = true;
        }
        s.morphisms.push_back(std::move(h));
      }
    }
  }
  return s;
}

}  // namespace vgrp
