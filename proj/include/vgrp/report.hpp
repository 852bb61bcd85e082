#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vgrp {

/// One failed law together with the tuple that breaks it.
struct Violation {
  std::string law;
  std::vector<std::int64_t> witness;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

/// Outcome of a validation pass. Empty violations means every law held.
struct Report {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }

  void fail(std::string law, std::vector<std::int64_t> witness, std::string detail = {}) {
    violations.push_back({std::move(law), std::move(witness), std::move(detail)});
  }

  void note(std::string text) { notes.push_back(std::move(text)); }

  void absorb(const Report& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations) {
      violations.push_back({prefix + v.law, v.witness, v.detail});
    }
    for (const auto& n : other.notes) notes.push_back(prefix + n);
  }

  [[nodiscard]] bool violates(const std::string& law) const {
    for (const auto& v : violations) {
      if (v.law == law) return true;
    }
    return false;
  }

  [[nodiscard]] const Violation* first(const std::string& law) const {
    for (const auto& v : violations) {
      if (v.law == law) return &v;
    }
    return nullptr;
  }
};

template <class... Ix>
std::vector<std::int64_t> witness_of(Ix... ix) {
  return {static_cast<std::int64_t>(ix)...};
}

}  // namespace vgrp
