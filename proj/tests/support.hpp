#pragma once

// Conversions between library objects and the plain oracle representation.

#include <string>
#include <vector>

#include "oracle.hpp"
#include "vgrp/vgrp.hpp"

namespace support {

inline oracle::Q oracle_of(const vgrp::Quantale& q) {
  const auto& b = q.builtin();
  if (!b || b->kind == vgrp::BuiltinSpec::Kind::boolean) return {oracle::Q::boolean, 1};
  return {b->kind == vgrp::BuiltinSpec::Kind::lawvere_chain ? oracle::Q::lawvere : oracle::Q::ultrametric,
          static_cast<int>(b->m)};
}

inline oracle::Mat mat_of(const vgrp::VGroup& g) {
  oracle::Mat a(g.order(), std::vector<int>(g.order()));
  for (vgrp::Elem x = 0; x < g.order(); ++x)
    for (vgrp::Elem y = 0; y < g.order(); ++y) a[x][y] = g.a(x, y).index;
  return a;
}

inline oracle::Table table_of(const vgrp::FiniteGroup& g) { return g.table(); }

/// Elements of `q` by label, in order.
inline std::vector<vgrp::Value> values(const vgrp::Quantale& q, const std::vector<std::string>& labels) {
  std::vector<vgrp::Value> out;
  for (const std::string& l : labels) out.push_back(*q.find(l));
  return out;
}

inline vgrp::VGroupRef from_delta(const vgrp::FiniteGroup& g, const vgrp::QuantalePtr& q,
                                  const std::vector<std::string>& delta) {
  return vgrp::share(vgrp::structure_from_delta(g, q, values(*q, delta)));
}

/// (Z₄, δ = (⊤,⊥,⊤,⊥)) over the boolean quantale.
inline vgrp::VGroupRef z4_boolean() {
  return from_delta(vgrp::cyclic_group(4), vgrp::boolean_quantale(), {"top", "bot", "top", "bot"});
}

/// (Z₄, δ = (0,1,2,2)) over lawvere_chain(2).
inline vgrp::VGroupRef z4_lawvere() {
  return from_delta(vgrp::cyclic_group(4), vgrp::lawvere_chain(2), {"0", "1", "2", "2"});
}

inline vgrp::VGroupRef z2_discrete() {
  return vgrp::share(vgrp::discrete_vgroup(vgrp::cyclic_group(2), vgrp::boolean_quantale()));
}

inline vgrp::VGroupRef z2_indiscrete() {
  return vgrp::share(vgrp::indiscrete_vgroup(vgrp::cyclic_group(2), vgrp::boolean_quantale()));
}

/// The quotient map Z₄ → Z₂ discrete.
inline vgrp::VHom q_map() { return vgrp::VHom(z4_boolean(), z2_discrete(), {0, 1, 0, 1}); }

}  // namespace support
