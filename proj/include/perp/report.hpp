#pragma once

#include "perp/gallery.hpp"
#include "perp/oracle.hpp"
#include "perp/pf.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace perp::report {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

std::string hex_hash(std::uint64_t h);

/// "free N" or "free N / [v1; ...]" with the relation generators; accepted by
/// parse_module_spec. Only meaningful for full-carrier presentations.
std::string module_spec(Module const &m);

/// "[v1; v2; ...]" in the syntax of parse_vectors.
std::string vectors_text(Module const &m, std::span<Code const> codes);

Json ring_json(FiniteRing const &ring);
Json module_json(Module const &m);
/// Generators (as parseable text) and formatted elements of x, an element of `owner`.
Json submodule_json(Module const &owner, Submodule const &x);

Json audit_json(AuditReport const &audit);
Json witness_json(Witness const &w);
Json injectivity_json(InjectivityResult const &r);
Json kasch_json(KaschResult const &r);
Json pf_json(PFReport const &pf);
Json theorem_json(TheoremReport const &t);
Json lemma_f8_json(LemmaF8Report const &r);
Json phi_iso_json(PhiIsoReport const &r);
Json cogeneration_json(CogenerationReport const &r);
Json gallery_json(gallery::GalleryReport const &r);
Json crosscheck_json(oracle::CrossCheckReport const &r);

/// A report under construction. Results are appended in execution order so an
/// aborted run still carries everything finished before the abort.
class Report
{
public:
  Report(std::string verb, Json command);

  void set_target(std::string const &key, Json value);
  void set_guards(Json guards);
  void add_result(std::string name, Json verdict, Json details = Json::object());
  void set_status(std::string status, std::string message = {});
  void set_timing(std::string const &name, double ms);

  Json const &document() const { return doc_; }
  std::string json() const;
  std::string text() const;

private:
  Json doc_;
};

/// Line-oriented rendering of any report document.
std::string render_text(Json const &doc);

} // namespace perp::report
