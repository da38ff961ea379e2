// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Usage: acceptance <path-to-perpcalc>

#include "support.hpp"

#include "perp/duality.hpp"
#include "perp/gallery.hpp"
#include "perp/oracle.hpp"
#include "perp/pf.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include <unistd.h>

using namespace perp;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome
{
  bool               pass = true;
  std::ostringstream detail;

  void require(bool ok, std::string const &what)
  {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::vector<Elem> left_ann(FiniteRing const &R, std::vector<Elem> const &s)
{
  std::vector<Elem> out;
  for (Elem a = 0; a < R.order(); ++a) {
    bool all = true;
    for (Elem x : s) { all = all && R.mul(a, x) == 0; }
    if (all) { out.push_back(a); }
  }
  return out;
}

std::vector<Elem> right_ann(FiniteRing const &R, std::vector<Elem> const &s)
{
  std::vector<Elem> out;
  for (Elem r = 0; r < R.order(); ++r) {
    bool all = true;
    for (Elem a : s) { all = all && R.mul(a, r) == 0; }
    if (all) { out.push_back(r); }
  }
  return out;
}

bool all_statements(TheoremReport const &t, bool value)
{
  for (auto const &[key, s] : t.statements) {
    if (s.holds != value) { return false; }
  }
  return !t.statements.empty();
}

void criterion_1(Outcome &o)
{
  double slowest = 0;
  for (auto const *spec : test::pf_corpus) {
    auto const t0 = Clock::now();
    auto const r  = test::ring(spec);
    auto const pf = is_pf(r);
    auto const t  = verify_main_theorem(r);
    bool const eq = has_perp_equivalence(free_module(r, 2, Side::right)).holds() &&
                    has_perp_equivalence(free_module(r, 2, Side::left)).holds();
    double const s = seconds_since(t0);
    slowest        = std::max(slowest, s);
    o.require(pf.is_pf, std::string(spec) + " is_pf");
    o.require(t.consistent && all_statements(t, true), std::string(spec) + " theorem");
    o.require(eq, std::string(spec) + " R^2 perp equivalence");
    o.require(s < 60, std::string(spec) + " time");
  }
  o.detail << "7 rings, slowest " << slowest << " s";
}

void criterion_2(Outcome &o)
{
  for (auto const *spec : {test::local_ring, test::tri_ring}) {
    auto const r  = test::ring(spec);
    auto const pf = is_pf(r);
    bool const concrete = (pf.right_injective.witness || pf.left_injective.witness || pf.right_kasch.witness ||
                           pf.left_kasch.witness);
    auto const t = verify_main_theorem(r);
    auto const w = find_witness(r);
    o.require(!pf.is_pf && concrete, std::string(spec) + " Baer/Kasch witness");
    o.require(t.consistent && all_statements(t, false), std::string(spec) + " theorem");
    o.require(w && w->submodule != w->double_perp, std::string(spec) + " double-perp witness");
  }
  auto const  r = test::ring(test::local_ring);
  auto const &R = r.base();
  auto const  w = find_witness(r);
  Elem const  x = test::elem(r, "x");
  auto const  back = right_ann(R, left_ann(R, {x}));
  bool const  exact = w && w->module_label == "R_R" && test::codes(w->submodule.elements()) == std::vector<Code>{0, x} &&
                     test::codes(w->double_perp.elements()) == std::vector<Code>(back.begin(), back.end()) &&
                     back == std::vector<Elem>{0, x, test::elem(r, "y"), test::elem(r, "x+y")};
  o.require(exact, "local witness against annihilator brute force");
  o.detail << "local X=(x), X^perp^perp has " << back.size() << " elements";
}

void criterion_3(Outcome &o)
{
  auto const  t0        = Clock::now();
  std::size_t instances = 0;
  for (auto const *spec : test::corpus) {
    auto const r = test::ring(spec);
    for (Side side : {Side::right, Side::left}) {
      for (std::size_t n : {1u, 2u}) {
        auto const m   = free_module(r, n, side);
        auto       rep = check_galois_laws(m);
        rep.merge(check_sum_intersect_laws(m, LawHypotheses{}));
        for (auto const &[law, k] : rep.instances) { instances += k; }
        o.require(rep.ok(), std::string(spec) + " R^" + std::to_string(n));
      }
    }
  }
  double const s = seconds_since(t0);
  o.require(s < 600, "time");
  o.detail << instances << " instances, 0 violations required, " << s << " s";
}

void criterion_4(Outcome &o)
{
  std::size_t with_equalities = 0;
  for (auto const *spec : test::corpus) {
    auto const r  = test::ring(spec);
    auto const pf = is_pf(r);
    for (Side side : {Side::right, Side::left}) {
      LawHypotheses h;
      h.coefficient_injective = (side == Side::right ? pf.right_injective : pf.left_injective).holds;
      h.ring_pf               = pf.is_pf;
      if (!h.coefficient_injective && !h.ring_pf) { continue; }
      ++with_equalities;
      for (std::size_t n : {1u, 2u}) {
        auto const m = free_module(r, n, side);
        o.require(check_sum_intersect_laws(m, h).ok(), std::string(spec) + " families R^" + std::to_string(n));
        if (pf.is_pf) { o.require(has_perp_equivalence(m).holds(), std::string(spec) + " closedness"); }
      }
    }
  }
  auto const  local  = test::ring(test::local_ring);
  std::size_t strict = 0;
  for (Side side : {Side::right, Side::left}) {
    strict += check_sum_intersect_laws(free_module(local, 2, side), LawHypotheses{}).strict.size();
  }
  bool const lemma_strict = !has_perp_equivalence(free_module(local, 1, Side::right)).holds();
  o.require(strict > 0 || lemma_strict, "strict instance on the local ring");
  o.detail << with_equalities << " ring sides with equality hypotheses; local ring strict sum/intersection instances "
           << strict << ", strict double perp " << (lemma_strict ? "yes" : "no");
}

void criterion_5(Outcome &o)
{
  std::size_t modules = 0;
  for (auto const *spec : test::corpus) {
    auto const r     = test::ring(spec);
    bool const pf    = is_pf(r).is_pf;
    auto const scope = analyze_scope(r);
    for (Side side : {Side::right, Side::left}) {
      for (auto const &m : scope.on(side).modules) {
        ++modules;
        o.require(m.kernel_matches && m.phi_verified, std::string(spec) + " " + m.label + " kernel");
        if (pf) { o.require(m.phi_injective && m.phi_surjective, std::string(spec) + " " + m.label + " bijective"); }
      }
    }
  }
  auto const scope = analyze_scope(test::ring(test::local_ring));
  bool       found = false;
  for (Side side : {Side::right, Side::left}) {
    auto const k = test::span_of(scope.on(side).free, "[x, 0; 0, 1]");
    for (auto const &m : scope.on(side).modules) {
      if (m.relations != k) { continue; }
      found = true;
      o.require(m.phi_kernel == 2, "R/(x) kernel size");
      o.require(!m.phi_injective && !m.embeds_in_power && m.zero_double_perp != 1, "R/(x) verdicts all false");
    }
  }
  o.require(found, "R/(x) located");
  o.detail << modules << " scope modules; local R/(x) kernel 2, three verdicts false";
}

void criterion_6(Outcome &o)
{
  for (auto const *spec : test::corpus) {
    auto const f8 = verify_lemma_f8(analyze_scope(test::ring(spec)));
    o.require(f8.agree(), spec);
  }
  o.detail << "9 rings, n = 2, both sides";
}

void criterion_7(Outcome &o)
{
  std::size_t targets = 0, checks = 0, skipped = 0;
  for (auto const *spec : test::corpus) {
    for (auto const &m : test::scope_modules(test::ring(spec))) {
      if (m->size() > oracle::bound) {
        ++skipped;
        continue;
      }
      auto const rep = oracle::cross_check(m, m->describe());
      ++targets;
      checks += rep.checks;
      o.require(rep.pass(), std::string(spec) + " " + m->describe());
    }
  }
  o.detail << targets << " modules, " << checks << " comparisons, " << skipped << " over the bound";
}

void criterion_8(Outcome &o)
{
  std::map<std::string, std::vector<std::tuple<std::string, std::size_t, bool, std::string>>> by_field[2];
  std::size_t k = 0;
  double      slowest = 0;
  for (gallery::Scalar p : {2u, 3u}) {
    for (auto const *which : {"i", "ii", "iii"}) {
      gallery::GalleryParams params;
      params.p      = p;
      auto const t0 = Clock::now();
      auto const r  = gallery::run_example(which, params);
      double const s = seconds_since(t0);
      slowest        = std::max(slowest, s);
      o.require(r.passed(), std::string("example ") + which + " p=" + std::to_string(p));
      o.require(s < 5, std::string("example ") + which + " time");
      for (auto const &c : r.checks) { by_field[k][which].emplace_back(c.name, c.bound, c.passed, c.detail); }
    }
    for (std::size_t m : {8u, 16u, 32u}) {
      using gallery::FunctionalFamily;
      auto const hl = gallery::family_perp(FunctionalFamily::standard_duals(1), m, p);
      o.require(gallery::family_perp(FunctionalFamily::standard_duals(), m, p).empty(), "H^perp");
      o.require(gallery::family_perp(FunctionalFamily::l_with_all_ones(), m, p).empty(), "L^perp");
      o.require(hl.size() == 1 && hl[0] == gallery::FinSuppVector::basis(0), "(H∩L)^perp");
    }
    ++k;
  }
  o.require(by_field[0] == by_field[1], "GF(2) and GF(3) results identical");
  o.detail << "examples i, ii, iii over GF(2) and GF(3), slowest " << slowest << " s";
}

std::string capture(std::string const &command)
{
  std::string out;
  FILE       *pipe = ::popen(command.c_str(), "r");
  if (!pipe) { return "<popen failed>"; }
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) { out.append(buf, n); }
  int const status = ::pclose(pipe);
  return out + "\n<exit " + std::to_string(status) + ">";
}

void criterion_9(Outcome &o, std::string const &binary)
{
  auto const dir = std::filesystem::temp_directory_path() / ("perpcalc-acceptance-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::vector<std::string> const commands{
      "ring-info 'zmod 6'",
      "ring-audit 'tri 2 over gf 2 1'",
      "pf-check 'quot gf2 [x,y]/(x^2,xy,y^2)'",
      "perp 'zmod 8' --module 'free 2'",
      "perp 'quot gf2 [x,y]/(x^2,xy,y^2)' --of '[x]'",
      "perp 'tri 2 over gf 2 1' --side left --module 'free 2 / [(1 0 0), (0 0 1)]'",
      "theorem-verify 'zmod 9'",
      "theorem-verify 'tri 2 over gf 2 1'",
      "witness-find 'quot gf2 [x,y]/(x^2,xy,y^2)'",
      "gallery ii --field 3",
      "oracle crosscheck 'gf 2 2 x^2+x+1'",
  };
  std::size_t runs = 0;
  for (auto const &cmd : commands) {
    for (std::string const format : {"", " --json"}) {
      auto const base  = "'" + binary + "' " + cmd + format;
      auto const cache = base + " --cache-dir '" + dir.string() + "'";
      auto const a     = capture(base + " 2>/dev/null");
      auto const b     = capture(base + " 2>/dev/null");
      auto const c     = capture(cache + " 2>/dev/null");
      auto const d     = capture(cache + " 2>/dev/null");
      runs += 4;
      o.require(a == b && a == c && a == d, cmd + format);
      o.require(a.size() > 20, cmd + format + " produced output");
    }
  }
  std::filesystem::remove_all(dir);
  o.detail << runs << " runs of " << commands.size() * 2 << " reports, without cache, cold cache and warm cache";
}

} // namespace

int main(int argc, char **argv)
{
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-perpcalc>\n";
    return 3;
  }
  std::string const binary = argv[1];

  std::vector<std::pair<std::string, std::function<void(Outcome &)>>> const criteria{
      {"PF positives", criterion_1},
      {"PF negatives", criterion_2},
      {"unconditional Galois laws", criterion_3},
      {"conditional laws", criterion_4},
      {"evaluation map kernel and bijectivity", criterion_5},
      {"free module versus quotients", criterion_6},
      {"oracle equivalence", criterion_7},
      {"gallery", criterion_8},
      {"determinism", [&](Outcome &o) { criterion_9(o, binary); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome    o;
    auto const t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (std::exception const &e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failed += o.pass ? 0 : 1;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): " << (o.pass ? "PASS" : "FAIL") << " - "
              << o.detail.str() << " (" << seconds_since(t0) << " s)" << std::endl;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : "acceptance: all criteria pass")
            << std::endl;
  return failed ? 1 : 0;
}
