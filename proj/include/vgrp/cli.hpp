#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vgrp/battery.hpp"
#include "vgrp/builders.hpp"
#include "vgrp/descent.hpp"
#include "vgrp/document.hpp"
#include "vgrp/error.hpp"
#include "vgrp/factorization.hpp"
#include "vgrp/torsion.hpp"
#include "vgrp/vgroup.hpp"

namespace vgrp::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kBadInput = 2, kCapacity = 3 };

struct Options {
  std::string command;
  std::vector<std::string> inputs;
  std::string morphism;
  std::size_t window = kDefaultWindow;
  std::string suite_level = "smoke";
  std::string format = "text";
  std::string seed_order = "canonical";
};

namespace detail {

inline Json class_to_json(const ObjectClass& c) {
  return {{"discrete", c.discrete}, {"indiscrete", c.indiscrete}, {"separated", c.separated}, {"symmetric", c.symmetric}};
}

inline Json hom_class_to_json(const HomClass& c) {
  Json j{{"epi", c.epi}, {"mono", c.mono}, {"normal_mono", c.normal_mono}, {"regular_epi", c.regular_epi}};
  if (c.normal_epi) j["normal_epi"] = *c.normal_epi;
  return j;
}

inline Json vgroup_check_to_json(const VGroupCheck& c) {
  Json j = report_to_json(c.report);
  j["routes_agree"] = c.routes_agree();
  return j;
}

/// Flattens nested objects, and arrays of objects, into "a.b: value" lines.
inline void render_text(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array() && !j.empty() && j.front().is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "." + std::to_string(i), out);
    return;
  }
  out << prefix << ": " << j.dump() << "\n";
}

/// The document's object, required to satisfy the V-group axioms.
inline VGroupRef valid_object(const WorkbenchDocument& doc) {
  VGroupCheck c = validate_vgroup(*doc.object);
  if (!c.ok()) {
    throw PreconditionError("input structure is not a V-group: " + c.report.violations.front().law);
  }
  return doc.object;
}

inline VHom valid_morphism(const WorkbenchDocument& doc, const std::string& name) {
  if (name.empty()) throw StructuralError("this command needs --morphism NAME");
  valid_object(doc);
  VHom f = resolve_morphism(doc, name);
  if (!validate_vgroup(*f.cod).ok()) throw PreconditionError("target of " + name + " is not a V-group");
  Report r = validate_hom(f);
  if (!r.ok()) throw PreconditionError("morphism " + name + " is not a V-homomorphism: " + r.violations.front().law);
  return f;
}

inline Json cmd_validate(const Options& o, bool& ok) {
  Json docs = Json::array();
  for (const std::string& path : o.inputs) {
    Json d;
    try {
      WorkbenchDocument doc = load_document(path);
      d["quantale"] = report_to_json(Report{});
      VGroupCheck c = validate_vgroup(*doc.object);
      d["structure"] = vgroup_check_to_json(c);
      ok = ok && c.ok();
      Json ms = Json::array();
      for (const MorphismRef& m : doc.morphisms) {
        VHom f = resolve_morphism(doc, m.name);
        Report r = validate_hom(f);
        VGroupCheck tc = validate_vgroup(*f.cod);
        if (!tc.ok()) r.fail("target-is-V-group", {});
        ok = ok && r.ok();
        ms.push_back({{"name", m.name}, {"report", report_to_json(r)}});
      }
      d["morphisms"] = std::move(ms);
    } catch (const Quantale::Invalid& e) {
      d["quantale"] = report_to_json(e.report());
      ok = false;
    }
    docs.push_back(std::move(d));
  }
  return {{"command", "validate"}, {"documents", std::move(docs)}, {"ok", ok}};
}

inline Json cmd_classify(const Options& o, const WorkbenchDocument& doc) {
  Json j{{"command", "classify"}, {"object", class_to_json(classify_object(*valid_object(doc)))}};
  if (!o.morphism.empty()) {
    VHom f = valid_morphism(doc, o.morphism);
    Json m{{"hom_class", hom_class_to_json(classify_hom(f))}, {"name", o.morphism}};
    if (f.dom->q().is_integral()) {
      MorphismClassReport c = classify_morphism(f, {o.window, true});
      m["classes"] = {{"in_E", c.in_E}, {"in_E_prime", c.in_E_prime}, {"in_M", c.in_M}, {"in_M_star", c.in_M_star}};
      m["cross_checks"] = c.cross_checks;
      m["witnesses"] = report_to_json(c.witnesses);
      m["covering"] = is_covering(f);
    } else {
      m["classes"] = nullptr;
    }
    j["morphism"] = std::move(m);
  }
  return j;
}

inline Json cmd_decompose(const WorkbenchDocument& doc) {
  TorsionDecomposition d = decompose(valid_object(doc));
  return {{"command", "decompose"},
          {"injection", d.torsion.inclusion.map},
          {"projection", d.quotient.projection.map},
          {"quotient", object_to_json(*d.quotient.object)},
          {"torsion", object_to_json(*d.torsion.object)},
          {"torsion_part", d.torsion.inclusion.map},
          {"verification", report_to_json(d.report)}};
}

inline Json cmd_pretorsion(const WorkbenchDocument& doc, bool& ok) {
  PretorsionDecomposition d = pretorsion_decompose(valid_object(doc));
  ok = d.report.ok();
  return {{"command", "pretorsion"},
          {"comparison", d.comparison.map},
          {"projection", d.quotient.projection.map},
          {"quotient", object_to_json(*d.quotient.object)},
          {"symmetric_part", object_to_json(*d.symmetric_part)},
          {"torsion_part", torsion_part(*d.object)},
          {"verification", report_to_json(d.report)}};
}

inline Json cmd_factorize(const Options& o, const WorkbenchDocument& doc, bool ml) {
  VHom f = valid_morphism(doc, o.morphism);
  ClassifyOptions opt{o.window, true};
  Factorization fz = ml ? ml_factorize(f, opt) : em_factorize(f, opt);
  return {{"command", ml ? "ml-factorize" : "factorize"},
          {"e", fz.e.map},
          {"m", fz.m.map},
          {"middle", object_to_json(*fz.middle)},
          {"morphism", o.morphism},
          {"system", ml ? "ML" : "EM"},
          {"verified", true}};
}

inline Json cmd_cover(const Options& o, const WorkbenchDocument& doc) {
  VHom f = valid_morphism(doc, o.morphism);
  Subobject k = kernel(f);
  const bool covering = is_covering(f);
  return {{"command", "cover"},
          {"covering", covering},
          {"kernel",
           {{"class", class_to_json(classify_object(*k.object))},
            {"elements", k.inclusion.map},
            {"object", object_to_json(*k.object)}}},
          {"locally_semisimple", covering},
          {"morphism", o.morphism}};
}

inline Json cmd_descent(const Options& o, const WorkbenchDocument& doc, bool& ok) {
  LazyVGroup l = descent_cover(valid_object(doc));
  Report cover = verify_cover_window(l, o.window);
  EqFData e = eq_f(l, o.window);
  ok = cover.ok() && e.report.ok();
  Json j{{"command", "descent"},
         {"cover", report_to_json(cover)},
         {"eq_f", {{"arrows", e.arrows.size()}, {"report", report_to_json(e.report)}}},
         {"window", o.window}};
  if (!o.morphism.empty()) {
    VHom alpha = valid_morphism(doc, o.morphism);
    ActionData a = action_of_covering(alpha, descent_cover(alpha.cod), o.window);
    ok = ok && a.report.ok();
    j["action"] = {{"carrier", a.carrier.size()}, {"morphism", o.morphism}, {"report", report_to_json(a.report)}};
  }
  return j;
}

inline Json cmd_suite(const Options& o, bool& ok) {
  BatteryResult b = run_battery(o.suite_level == "full" ? SuiteLevel::full : SuiteLevel::smoke);
  ok = b.ok();
  Json checks = Json::array();
  for (const CheckResult& c : b.checks) {
    checks.push_back({{"cases", c.cases},
                      {"failures", c.failures},
                      {"name", c.name},
                      {"notes", c.notes},
                      {"samples", c.samples}});
  }
  return {{"checks", std::move(checks)}, {"command", "suite"}, {"level", o.suite_level}, {"ok", ok}};
}

inline void emit(const Json& j, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << canonical(j);
  } else {
    render_text(j, "", out);
  }
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite quantales and V-groups: validation, torsion theories, factorizations, descent"};
  app.add_option("command", o.command, "Subcommand")
      ->required()
      ->check(CLI::IsMember({"validate", "classify", "decompose", "pretorsion", "factorize", "ml-factorize", "cover",
                             "descent", "suite"}));
  app.add_option("--input", o.inputs, "Workbench document (repeatable)");
  app.add_option("--morphism", o.morphism, "Morphism name declared in the first input");
  app.add_option("--window", o.window, "Descent window radius")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  app.add_option("--suite-level", o.suite_level, "smoke or full")->check(CLI::IsMember({"smoke", "full"}));
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed-order", o.seed_order, "Enumeration order")->check(CLI::IsMember({"canonical"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (o.command != "suite" && o.inputs.empty()) throw StructuralError(o.command + " needs --input PATH");
    bool ok = true;
    Json result;
    if (o.command == "validate") {
      result = detail::cmd_validate(o, ok);
    } else if (o.command == "suite") {
      result = detail::cmd_suite(o, ok);
    } else {
      const WorkbenchDocument doc = load_document(o.inputs.front());
      if (o.command == "classify") result = detail::cmd_classify(o, doc);
      if (o.command == "decompose") result = detail::cmd_decompose(doc);
      if (o.command == "pretorsion") result = detail::cmd_pretorsion(doc, ok);
      if (o.command == "factorize") result = detail::cmd_factorize(o, doc, false);
      if (o.command == "ml-factorize") result = detail::cmd_factorize(o, doc, true);
      if (o.command == "cover") result = detail::cmd_cover(o, doc);
      if (o.command == "descent") result = detail::cmd_descent(o, doc, ok);
    }
    detail::emit(result, o, out);
    return ok ? kOk : kCheckFailed;
  } catch (const Quantale::Invalid& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const TheoremCheckFailure& e) {
    err << "theorem check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace vgrp::cli
