#include "perp/cli.hpp"

#include "perp/cache.hpp"
#include "perp/error.hpp"
#include "perp/gallery.hpp"
#include "perp/oracle.hpp"
#include "perp/report.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <iostream>
#include <memory>
#include <optional>

namespace perp::cli {

namespace {

using report::Json;
using report::Report;

struct Options
{
  bool                       json    = false;
  bool                       timings = false;
  std::string                cache_dir;
  Guards                     guards;
  std::optional<unsigned>    timeout_secs;

  std::string                ring;
  std::string                module = "free 1";
  std::string                side   = "right";
  std::optional<std::string> of;
  std::optional<std::string> dual_of;
  bool                       module_given = false;

  std::string                example;
  unsigned                   field = 2;
  std::optional<std::size_t> truncation;
  std::size_t                p_max = 8;
};

Side parse_side(std::string const &s) { return s == "left" ? Side::left : Side::right; }

double elapsed_ms(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

Json element_list(Module const &m, std::span<Code const> codes)
{
  Json out = Json::array();
  for (Code c : codes) { out.push_back(m->format(c)); }
  return out;
}

int ring_info(Ring const &ring, Report &rep)
{
  auto const &R = ring.base();
  Json        labels = Json::array();
  Json        units  = Json::array();
  for (Elem a = 0; a < R.order(); ++a) {
    labels.push_back(R.label(a));
    if (R.is_unit(a)) { units.push_back(R.label(a)); }
  }
  auto const op_mul = ring.opposite().mul_table();
  auto const mul    = R.mul_table();
  Json       details{{"elements", labels}, {"units", units}, {"opposite_equal", std::equal(mul.begin(), mul.end(), op_mul.begin())}};
  rep.add_result("ring", true, std::move(details));
  return success;
}

int ring_audit(Ring const &ring, Report &rep)
{
  auto const audit    = ring_axiom_audit(ring.base());
  auto const op_audit = ring_axiom_audit(ring.opposite());
  rep.add_result("axioms", audit.ok(), report::audit_json(audit));
  rep.add_result("opposite_axioms", op_audit.ok(), report::audit_json(op_audit));
  return audit.ok() && op_audit.ok() ? success : check_failed;
}

int pf_check(Ring const &ring, Options const &opt, Guards const &guards, Report &rep)
{
  auto const pf = is_pf(ring, guards);
  rep.add_result("is_pf", pf.is_pf, report::pf_json(pf));
  if (opt.timings) {
    for (auto const &[name, ms] : pf.timings) { rep.set_timing(name, ms); }
  }
  return success;
}

int perp_verb(Ring const &ring, Options const &opt, Guards const &guards, Report &rep)
{
  auto const m    = parse_module_spec(ring, parse_side(opt.side), opt.module, guards);
  auto const dual = dual_module(m);
  rep.set_target("module", report::module_json(m));
  rep.add_result("dual", true,
                 {{"size", dual.module()->size()},
                  {"generators", report::vectors_text(m, dual.generators())},
                  {"elements", element_list(dual.module(), dual.module()->elements())}});

  if (opt.of) {
    auto const codes = parse_vectors(m, *opt.of);
    auto const x     = submodule_generated(m, codes);
    auto const p     = perp_of_submodule(dual, x);
    auto const back  = perp_of_dual_submodule(dual, p);
    rep.add_result("perp", back == x,
                   {{"submodule", report::submodule_json(m, x)},
                    {"perp", report::submodule_json(dual.module(), p)},
                    {"double_perp", report::submodule_json(m, back)},
                    {"closed", back == x}});
  }
  if (opt.dual_of) {
    auto const codes = parse_vectors(dual.module(), *opt.dual_of);
    auto const y     = submodule_generated(dual.module(), codes);
    auto const p     = perp_of_dual_submodule(dual, y);
    auto const back  = perp_of_submodule(dual, p);
    auto const cl    = closure(dual, y);
    rep.add_result("dual_perp", back == y,
                   {{"submodule", report::submodule_json(dual.module(), y)},
                    {"perp", report::submodule_json(m, p)},
                    {"double_perp", report::submodule_json(dual.module(), back)},
                    {"closure", report::submodule_json(dual.module(), cl.closure)},
                    {"closure_certified", cl.certified},
                    {"closed", back == y}});
  }
  if (!opt.of && !opt.dual_of) {
    Json rows = Json::array();
    bool all  = true;
    for (auto const &x : enumerate_submodules(m)) {
      auto const p    = perp_of_submodule(dual, x);
      auto const back = perp_of_dual_submodule(dual, p);
      all             = all && back == x;
      rows.push_back({{"generators", report::vectors_text(m, x.generators())},
                      {"size", x.size()},
                      {"perp_size", p.size()},
                      {"double_perp_size", back.size()},
                      {"closed", back == x}});
    }
    rep.add_result("submodules", all, {{"count", rows.size()}, {"table", rows}});
  }
  return success;
}

int theorem_verify(Ring const &ring, Options const &opt, Guards const &guards, Report &rep)
{
  auto       start = std::chrono::steady_clock::now();
  auto const pf    = is_pf(ring, guards);
  rep.add_result("is_pf", pf.is_pf, report::pf_json(pf));
  if (opt.timings) { rep.set_timing("pf", elapsed_ms(start)); }

  start            = std::chrono::steady_clock::now();
  auto const scope = analyze_scope(ring, 2, guards);
  if (opt.timings) { rep.set_timing("scope", elapsed_ms(start)); }
  rep.add_result("scope", true,
                 {{"rank", scope.rank},
                  {"right_modules", scope.right.modules.size()},
                  {"left_modules", scope.left.modules.size()}});

  auto const theorem = verify_main_theorem(ring, pf, scope);
  rep.add_result("main_theorem", theorem.consistent, report::theorem_json(theorem));
  auto const f8 = verify_lemma_f8(scope);
  rep.add_result("lemma_f8", f8.agree(), report::lemma_f8_json(f8));
  auto const phi = verify_phi_iso_fg(pf.is_pf, scope);
  rep.add_result("phi_iso", phi.expectation_met, report::phi_iso_json(phi));
  auto const cog = verify_cogeneration_equivalences(scope);
  rep.add_result("cogeneration", cog.ok(), report::cogeneration_json(cog));
  return theorem_exit_code(theorem, f8, phi, cog);
}

int witness_find(Ring const &ring, Guards const &guards, Report &rep)
{
  auto const pf = is_pf(ring, guards);
  rep.add_result("is_pf", pf.is_pf, report::pf_json(pf));
  auto const w = find_witness(ring, guards);
  rep.add_result("witness", w.has_value(), w ? report::witness_json(*w) : Json::object());
  if (w && pf.is_pf) {
    rep.set_status("check-failed", "double-perp witness found over a PF ring");
    return check_failed;
  }
  return success;
}

int gallery_verb(Options const &opt, Report &rep)
{
  gallery::GalleryParams params;
  params.p     = opt.field;
  params.p_max = opt.p_max;
  if (opt.truncation) { params.bounds = {*opt.truncation}; }
  auto const r = gallery::run_example(opt.example, params);
  rep.add_result("example " + opt.example, r.passed(), report::gallery_json(r));
  return r.passed() ? success : check_failed;
}

int crosscheck_verb(Ring const &ring, Options const &opt, Guards const &guards, Report &rep)
{
  std::vector<std::pair<std::string, Module>> targets;
  if (opt.module_given) {
    auto const m = parse_module_spec(ring, parse_side(opt.side), opt.module, guards);
    targets.emplace_back(opt.side + " " + report::module_spec(m), m);
  } else {
    for (Side side : {Side::right, Side::left}) {
      targets.emplace_back(std::string(to_string(side)) + " free 1", free_module(ring, 1, side, guards));
      auto const free = free_module(ring, 2, side, guards);
      if (free->size() > guards.max_module_order) { continue; }
      for (auto const &k : enumerate_submodules(free)) {
        auto const q = quotient_module(free, k).module;
        targets.emplace_back(std::string(to_string(side)) + " " + report::module_spec(q), q);
      }
    }
  }
  bool all     = true;
  Json skipped = Json::array();
  for (auto const &[label, m] : targets) {
    if (m->size() > oracle::bound) {
      skipped.push_back(label);
      continue;
    }
    auto const r = oracle::cross_check(m, label);
    all          = all && r.pass();
    rep.add_result("crosscheck", r.pass(), report::crosscheck_json(r));
  }
  rep.add_result("skipped", skipped.empty(), {{"over_bound", skipped}, {"bound", oracle::bound}});
  return all ? success : check_failed;
}

struct CacheInstall
{
  explicit CacheInstall(std::shared_ptr<LatticeCache> cache) { set_lattice_cache(std::move(cache)); }
  ~CacheInstall() { set_lattice_cache(nullptr); }
};

struct DeadlineInstall
{
  explicit DeadlineInstall(std::optional<unsigned> secs)
  {
    if (secs) { set_deadline(std::chrono::steady_clock::now() + std::chrono::seconds(*secs)); }
  }
  ~DeadlineInstall() { set_deadline(std::nullopt); }
};

} // namespace

int theorem_exit_code(TheoremReport const &theorem, LemmaF8Report const &f8, PhiIsoReport const &phi,
                      CogenerationReport const &cogeneration)
{
  return theorem.consistent && f8.agree() && phi.expectation_met && cogeneration.ok() ? success : check_failed;
}

int run_command(std::vector<std::string> args, std::ostream &out, std::ostream &err)
{
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "oracle" && args[i + 1] == "crosscheck") {
      args[i] = "oracle-crosscheck";
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      break;
    }
  }

  Options  opt;
  CLI::App app{"Perp calculus on duals of modules over finite rings", "perpcalc"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_flag("--json", opt.json, "Write the JSON report instead of text");
  app.add_flag("--timings", opt.timings, "Include wall-clock timings (not deterministic)");
  app.add_option("--cache-dir", opt.cache_dir, "Directory for cached submodule lattices");
  app.add_option("--max-ring-order", opt.guards.max_ring_order, "Largest ring to materialize")->check(CLI::PositiveNumber);
  app.add_option("--max-module-order", opt.guards.max_module_order, "Largest module to enumerate")
      ->check(CLI::PositiveNumber);
  app.add_option("--timeout-secs", opt.timeout_secs, "Abort long enumerations after this many seconds")
      ->check(CLI::PositiveNumber);

  auto ring_verb = [&](std::string const &name, std::string const &help) {
    auto *sub = app.add_subcommand(name, help);
    sub->add_option("ring", opt.ring, "Ring spec, e.g. \"zmod 4\"")->required();
    return sub;
  };
  auto *info     = ring_verb("ring-info", "Order, units and commutativity of a ring");
  auto *audit    = ring_verb("ring-audit", "Exhaustive ring axiom audit");
  auto *pf       = ring_verb("pf-check", "Self-injectivity and Kasch tests on both sides");
  auto *perp     = ring_verb("perp", "Perps and double perps in a module and its dual");
  auto *theorem  = ring_verb("theorem-verify", "Check the PF equivalences over all quotients of R^2");
  auto *witness  = ring_verb("witness-find", "Search for a submodule whose double perp differs");
  auto *oracle   = ring_verb("oracle-crosscheck", "Compare the main path against the brute-force oracle");
  auto *gallery  = app.add_subcommand("gallery", "Infinite-dimensional examples by truncation");

  for (auto *sub : {perp, oracle}) {
    sub->add_option("--side", opt.side, "right or left")->check(CLI::IsMember({"right", "left"}));
  }
  perp->add_option("--module", opt.module, "Module spec, e.g. \"free 2 / [2, 0]\"");
  oracle->add_option("--module", opt.module, "Module spec; default: R and all quotients of R^2");
  perp->add_option("--of", opt.of, "Generators of X <= M, e.g. \"[2, 0]\"");
  perp->add_option("--dual-of", opt.dual_of, "Generators of Y <= M* in dual coordinates");
  gallery->add_option("example", opt.example, "i, ii or iii")->required()->check(CLI::IsMember({"i", "ii", "iii"}));
  gallery->add_option("--field", opt.field, "Prime field size")->check(CLI::PositiveNumber);
  gallery->add_option("--truncation", opt.truncation, "Truncation bound")->check(CLI::PositiveNumber);
  gallery->add_option("--p-max", opt.p_max, "Largest window length in example iii")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const &) {
    out << app.help();
    return success;
  } catch (CLI::CallForAllHelp const &) {
    out << app.help("", CLI::AppFormatMode::All);
    return success;
  } catch (CLI::ParseError const &e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  opt.module_given = oracle->count("--module") > 0;

  auto *active = app.get_subcommands().front();
  Json  command = Json::object();
  if (active != gallery) { command["ring"] = opt.ring; }
  if (active == perp || (active == oracle && opt.module_given)) {
    command["module"] = opt.module;
    command["side"]   = opt.side;
  }
  if (opt.of) { command["of"] = *opt.of; }
  if (opt.dual_of) { command["dual_of"] = *opt.dual_of; }
  if (active == gallery) {
    command["example"] = opt.example;
    command["field"]   = opt.field;
    command["truncation"] = opt.truncation ? Json(*opt.truncation) : Json(nullptr);
    command["p_max"]   = opt.p_max;
  }

  Report rep(active->get_name(), command);
  rep.set_guards({{"max_ring_order", opt.guards.max_ring_order},
                  {"max_module_order", opt.guards.max_module_order},
                  {"timeout_secs", opt.timeout_secs ? Json(*opt.timeout_secs) : Json(nullptr)}});

  std::shared_ptr<LatticeCache> cache;
  if (!opt.cache_dir.empty()) { cache = std::make_shared<FileLatticeCache>(opt.cache_dir, &err); }
  CacheInstall    cache_guard(cache);
  DeadlineInstall deadline_guard(opt.timeout_secs);

  auto emit = [&](int code) {
    out << (opt.json ? rep.json() : rep.text());
    return code;
  };

  std::optional<Ring> ring;
  try {
    if (active != gallery) {
      ring.emplace(make_ring(opt.ring, opt.guards));
      rep.set_target("ring", report::ring_json(ring->base()));
    }
  } catch (GuardExceeded const &e) {
    rep.set_status("guard-exceeded", e.what());
    return emit(guard_exceeded);
  } catch (Error const &e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }

  int code = success;
  try {
    if (active == info) {
      code = ring_info(*ring, rep);
    } else if (active == audit) {
      code = ring_audit(*ring, rep);
    } else if (active == pf) {
      code = pf_check(*ring, opt, opt.guards, rep);
    } else if (active == perp) {
      code = perp_verb(*ring, opt, opt.guards, rep);
    } else if (active == theorem) {
      code = theorem_verify(*ring, opt, opt.guards, rep);
    } else if (active == witness) {
      code = witness_find(*ring, opt.guards, rep);
    } else if (active == oracle) {
      code = crosscheck_verb(*ring, opt, opt.guards, rep);
    } else {
      code = gallery_verb(opt, rep);
    }
  } catch (Timeout const &e) {
    rep.set_status("timeout", e.what());
    return emit(guard_exceeded);
  } catch (GuardExceeded const &e) {
    rep.set_status("guard-exceeded", e.what());
    return emit(guard_exceeded);
  } catch (ParseError const &e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (SpecError const &e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (PreconditionError const &e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (Error const &e) {
    rep.set_status("internal-error", e.what());
    return emit(check_failed);
  }
  if (code == check_failed && rep.document()["status"] == "ok") { rep.set_status("check-failed"); }
  return emit(code);
}

int run_command(int argc, char const *const *argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_command(std::move(args), std::cout, std::cerr);
}

} // namespace perp::cli
