#include "perp/report.hpp"

#include <cstdio>

namespace perp::report {

namespace {

Json formatted(Module const &m, std::span<Code const> codes)
{
  Json out = Json::array();
  for (Code c : codes) { out.push_back(m->format(c)); }
  return out;
}

Json formatted_ring(FiniteRing const &ring, std::span<Elem const> elems)
{
  Json out = Json::array();
  for (Elem e : elems) { out.push_back(ring.label(e)); }
  return out;
}

std::string scalar_text(Json const &v)
{
  if (v.is_string()) { return v.get<std::string>(); }
  if (v.is_null()) { return "none"; }
  return v.dump();
}

bool is_flat(Json const &v)
{
  if (!v.is_array()) { return !v.is_object(); }
  for (auto const &x : v) {
    if (x.is_object() || x.is_array()) { return false; }
  }
  return true;
}

void render(Json const &v, std::string const &indent, std::string &out)
{
  for (auto it = v.begin(); it != v.end(); ++it) {
    std::string const key = v.is_object() ? it.key() : "-";
    auto const       &x   = *it;
    if (!is_flat(x)) {
      out += indent + key + (v.is_object() ? ":" : "") + "\n";
      render(x, indent + "  ", out);
    } else if (x.is_array()) {
      std::string line;
      for (std::size_t i = 0; i < x.size(); ++i) { line += (i ? ", " : "") + scalar_text(x[i]); }
      out += indent + key + (v.is_object() ? ": " : " ") + "[" + line + "]\n";
    } else {
      out += indent + key + (v.is_object() ? ": " : " ") + scalar_text(x) + "\n";
    }
  }
}

Json verdict_json(StatementVerdict const &s)
{
  Json out{{"holds", s.holds}, {"scope", s.scope}};
  out["witness"] = s.witness ? witness_json(*s.witness) : Json(nullptr);
  return out;
}

} // namespace

std::string hex_hash(std::uint64_t h)
{
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string vectors_text(Module const &m, std::span<Code const> codes)
{
  std::string out = "[";
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (i) { out += "; "; }
    auto const coords = m->coordinates(codes[i]);
    for (std::size_t j = 0; j < coords.size(); ++j) { out += (j ? ", " : "") + m->ring().base().label(coords[j]); }
  }
  return out + "]";
}

std::string module_spec(Module const &m)
{
  std::string out = "free " + std::to_string(m->rank());
  if (m->relations().size() <= 1) { return out; }
  auto const free = free_module(m->ring(), m->rank(), m->side(), m->guards());
  auto const k    = submodule_from_elements(free, {m->relations().begin(), m->relations().end()});
  return out + " / " + vectors_text(free, k.generators());
}

Json ring_json(FiniteRing const &ring)
{
  return {{"name", ring.name()},
          {"hash", hex_hash(ring.fingerprint())},
          {"order", ring.order()},
          {"commutative", ring.is_commutative()},
          {"division_ring", ring.is_division_ring()}};
}

Json module_json(Module const &m)
{
  Json out{{"side", to_string(m->side())}, {"rank", m->rank()}, {"size", m->size()}, {"hash", hex_hash(m->fingerprint())}};
  if (m->full_carrier()) { out["spec"] = module_spec(m); }
  out["description"] = m->describe();
  return out;
}

Json submodule_json(Module const &owner, Submodule const &x)
{
  return {{"generators", vectors_text(owner, x.generators())},
          {"size", x.size()},
          {"elements", formatted(owner, x.elements())}};
}

Json audit_json(AuditReport const &audit)
{
  Json violations = Json::array();
  for (auto const &v : audit.violations) {
    violations.push_back({{"axiom", v.axiom}, {"elements", {v.elements[0], v.elements[1], v.elements[2]}}});
  }
  return {{"order", audit.order}, {"instances_checked", audit.instances_checked}, {"violations", violations}};
}

Json witness_json(Witness const &w)
{
  Json out{{"module", w.module_label}, {"module_spec", module_spec(w.module)}, {"side", to_string(w.module->side())},
           {"in_dual", w.in_dual}};
  if (w.in_dual) {
    auto const dual = dual_module(w.module);
    out["dual_generators"] = vectors_text(w.module, dual.generators());
    out["submodule"]       = submodule_json(dual.module(), w.submodule);
    out["double_perp"]     = submodule_json(dual.module(), w.double_perp);
    out["discrepancy"]     = formatted(dual.module(), w.discrepancy);
  } else {
    out["submodule"]   = submodule_json(w.module, w.submodule);
    out["double_perp"] = submodule_json(w.module, w.double_perp);
    out["discrepancy"] = formatted(w.module, w.discrepancy);
  }
  return out;
}

Json injectivity_json(InjectivityResult const &r)
{
  Json out{{"holds", r.holds}, {"ideals_checked", r.ideals_checked}, {"homs_checked", r.homs_checked}};
  if (r.witness) {
    auto const &w        = *r.witness;
    auto const &ring     = w.ideal.module()->ring().base();
    out["witness"] = {{"kind", "baer"},
                      {"ideal", submodule_json(w.ideal.module(), w.ideal)},
                      {"images", formatted_ring(ring, w.images)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json kasch_json(KaschResult const &r)
{
  Json out{{"holds", r.holds}, {"maximal_ideals", r.maximal_ideals}};
  if (r.witness) {
    auto const &ideal = r.witness->maximal_ideal;
    out["witness"]    = {{"kind", "kasch"}, {"maximal_ideal", submodule_json(ideal.module(), ideal)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json pf_json(PFReport const &pf)
{
  return {{"is_pf", pf.is_pf},
          {"ring_hash", hex_hash(pf.ring_hash)},
          {"right_self_injective", injectivity_json(pf.right_injective)},
          {"left_self_injective", injectivity_json(pf.left_injective)},
          {"right_kasch", kasch_json(pf.right_kasch)},
          {"left_kasch", kasch_json(pf.left_kasch)}};
}

Json theorem_json(TheoremReport const &t)
{
  Json statements = Json::object();
  for (auto const &[key, s] : t.statements) { statements[key] = verdict_json(s); }
  return {{"consistent", t.consistent}, {"is_pf", t.pf.is_pf}, {"statements", statements}};
}

Json lemma_f8_json(LemmaF8Report const &r)
{
  auto side = [](LemmaF8Side const &s) {
    return Json{{"free_holds", s.free_holds},
                {"quotients_hold", s.quotients_hold},
                {"quotients", s.quotients},
                {"agree", s.agree()}};
  };
  return {{"rank", r.rank}, {"agree", r.agree()}, {"right", side(r.right)}, {"left", side(r.left)}};
}

Json phi_iso_json(PhiIsoReport const &r)
{
  return {{"ring_pf", r.ring_pf},
          {"modules", r.modules},
          {"all_bijective", r.all_bijective},
          {"counterexample", r.counterexample ? Json(*r.counterexample) : Json(nullptr)},
          {"counterexample_kernel", r.counterexample_kernel},
          {"expectation_met", r.expectation_met}};
}

Json cogeneration_json(CogenerationReport const &r)
{
  return {{"modules", r.modules},
          {"disagreements", r.disagreements},
          {"quotient_disagreements", r.quotient_disagreements},
          {"class_level_agree", r.class_level_agree},
          {"ok", r.ok()}};
}

Json gallery_json(gallery::GalleryReport const &r)
{
  Json checks = Json::array();
  for (auto const &c : r.checks) {
    checks.push_back({{"name", c.name}, {"bound", c.bound}, {"passed", c.passed}, {"detail", c.detail}});
  }
  Json horizons = Json::object();
  for (auto const &[k, v] : r.horizons) { horizons[k] = v; }
  return {{"example", r.example},  {"field", r.field}, {"bounds", r.bounds}, {"p_max", r.p_max},
          {"passed", r.passed()}, {"checks", checks}, {"horizons", horizons}, {"notes", r.notes}};
}

Json crosscheck_json(oracle::CrossCheckReport const &r)
{
  Json mismatches = Json::array();
  for (auto const &m : r.mismatches) { mismatches.push_back({{"check", m.check}, {"main", m.main}, {"oracle", m.oracle}}); }
  return {{"target", r.target}, {"checks", r.checks}, {"pass", r.pass()}, {"mismatches", mismatches}};
}

Report::Report(std::string verb, Json command)
{
  doc_["schema_version"] = schema_version;
  doc_["command"]        = {{"verb", std::move(verb)}, {"arguments", std::move(command)}};
  doc_["targets"]        = Json::object();
  doc_["guards"]         = Json::object();
  doc_["status"]         = "ok";
  doc_["results"]        = Json::array();
}

void Report::set_target(std::string const &key, Json value) { doc_["targets"][key] = std::move(value); }

void Report::set_guards(Json guards) { doc_["guards"] = std::move(guards); }

void Report::add_result(std::string name, Json verdict, Json details)
{
  doc_["results"].push_back({{"name", std::move(name)}, {"verdict", std::move(verdict)}, {"details", std::move(details)}});
}

void Report::set_status(std::string status, std::string message)
{
  doc_["status"] = std::move(status);
  if (!message.empty()) { doc_["message"] = std::move(message); }
}

void Report::set_timing(std::string const &name, double ms) { doc_["timings"][name] = ms; }

std::string Report::json() const { return doc_.dump(2) + "\n"; }

std::string Report::text() const { return render_text(doc_); }

std::string render_text(Json const &doc)
{
  std::string out;
  render(doc, "", out);
  return out;
}

} // namespace perp::report
