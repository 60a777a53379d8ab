// wedge: exact computations in exterior and square-zero quotient algebras.
//
// Usage:  wedge <subcommand> <session.ring> [flags]
// Subcommands: gb hilbert betti koszul qform filtration oracle crossval
//
// Exit codes: 0 success / positive verdict; 1 error, oracle mismatch, or
// cross-validation disagreement; 2 certificate failed to verify; 3 no
// filtration found; 10 certified non-Koszul; 20 inconclusive.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wedge/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "wedge: Groebner bases, Hilbert series, minimal free resolutions, and "
      "Koszulness certificates for exterior and square-zero algebras"};
  app.require_subcommand(1);
  wedge::CommandSpec spec;

  auto add_session = [&](CLI::App* sub) {
    sub->add_option("session", spec.session_path, "session file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_order = [&](CLI::App* sub) {
    sub->add_option("--order", spec.order, "term order")
        ->check(CLI::IsMember({"deglex", "degrevlex"}))
        ->capture_default_str();
    sub->add_option("--vars", spec.vars,
                    "variable priority for the order, comma-separated "
                    "(default: declaration order)");
  };
  auto add_ideal = [&](CLI::App* sub) {
    sub->add_option("--ideal", spec.ideal,
                    "ideal name (default: the session's only ideal, or the "
                    "zero ideal if none is declared)");
  };
  auto add_json = [&](CLI::App* sub) {
    sub->add_flag("--json", spec.json, "emit JSON instead of text");
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", spec.threads,
                    "worker threads (accepted for interface stability; "
                    "execution is single-threaded)")
        ->capture_default_str();
  };

  CLI::App* gb = app.add_subcommand("gb", "reduced Groebner basis");
  add_session(gb), add_order(gb), add_ideal(gb), add_json(gb), add_threads(gb);

  CLI::App* hilbert =
      app.add_subcommand("hilbert", "Hilbert series and Froberg obstruction");
  add_session(hilbert), add_order(hilbert), add_ideal(hilbert),
      add_json(hilbert), add_threads(hilbert);
  hilbert->add_option("--depth", spec.depth,
                      "obstruction depth for 1/H(-t) (default: 2n)");

  CLI::App* betti =
      app.add_subcommand("betti", "graded Betti table of a resolution");
  add_session(betti), add_order(betti), add_ideal(betti), add_json(betti),
      add_threads(betti);
  betti->add_option("--imax", spec.imax,
                    "number of resolution steps (default: 5)");
  betti->add_option("--jmax", spec.jmax,
                    "degree truncation (default: 2*imax+2)");
  betti
      ->add_option("--module", spec.module,
                   "resolve k over ring/I ('k') or ring/I over the ambient "
                   "ring ('cyclic')")
      ->check(CLI::IsMember({"k", "cyclic"}))
      ->capture_default_str();

  CLI::App* koszul =
      app.add_subcommand("koszul", "Koszulness certificate or obstruction");
  add_session(koszul), add_order(koszul), add_ideal(koszul), add_json(koszul),
      add_threads(koszul);
  koszul->add_option("--imax", spec.imax,
                     "resolution window for the Betti scan (default: 5)");
  koszul->add_option("--jmax", spec.jmax,
                     "degree truncation for the scan (default: 2*imax+2)");
  koszul->add_option("--depth", spec.depth,
                     "Froberg obstruction depth (default: 2n)");
  koszul->add_option("--pool", spec.pool,
                     "comma-separated linear forms for the filtration search "
                     "(default: the variables)");
  koszul
      ->add_option("--max-ideals", spec.max_ideals,
                   "filtration search budget: distinct ideals considered")
      ->capture_default_str();

  CLI::App* qform =
      app.add_subcommand("qform", "classify or normalize a quadratic form");
  qform->add_option("action", spec.action, "classify | normalform | factor")
      ->required()
      ->check(CLI::IsMember({"classify", "normalform", "factor"}));
  add_session(qform), add_json(qform);
  qform->add_option("--form", spec.form,
                    "element name (default: the session's only element)");

  CLI::App* filtration =
      app.add_subcommand("filtration", "find or verify a Koszul filtration");
  filtration->add_option("action", spec.action, "find | verify")
      ->required()
      ->check(CLI::IsMember({"find", "verify"}));
  add_session(filtration), add_order(filtration), add_ideal(filtration),
      add_json(filtration);
  filtration->add_option("--pool", spec.pool,
                         "comma-separated linear forms to build ideals from "
                         "(default: the variables)");
  filtration
      ->add_option("--max-ideals", spec.max_ideals,
                   "search budget: distinct ideals considered")
      ->capture_default_str();
  filtration->add_option("--cert", spec.cert,
                         "JSON certificate to verify (with 'verify')");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "per-degree quotient dimensions from two independent methods");
  add_session(oracle), add_order(oracle), add_ideal(oracle), add_json(oracle);
  oracle->add_option("--dmax", spec.dmax,
                     "largest degree to check (default: n)");

  CLI::App* crossval = app.add_subcommand(
      "crossval",
      "rank-based classification vs. Koszul certificates on random quadrics");
  add_session(crossval), add_json(crossval), add_threads(crossval);
  crossval->add_option("--count", spec.count, "number of random quadrics")
      ->capture_default_str();
  crossval->add_option("--seed", spec.seed, "random seed")
      ->capture_default_str();
  crossval->add_option("--imax", spec.imax,
                       "resolution window per case (default: 6)");
  crossval->add_option("--depth", spec.depth,
                       "Froberg obstruction depth (default: 12)");
  crossval->add_flag("--normal-forms", spec.normal_forms,
                     "also test every alternating normal form for this n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  spec.command = app.get_subcommands().front()->get_name();
  return wedge::run_command(spec, std::cout, std::cerr);
}
