// nilnf: normal forms of vector fields with nilpotent linear part.
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "nilnf/commands.hpp"

namespace cli = nilnf::cli;

namespace {

const std::map<std::string, cli::Format> kFormats{{"json", cli::Format::kJson}, {"text", cli::Format::kText}};

void add_output_flags(CLI::App* sub, cli::Format& format, std::string& output) {
  sub->add_option("--format", format, "json or text")->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  sub->add_option("--output,-o", output, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal forms of vector fields with nilpotent linear part"};
  app.require_subcommand(1);

  cli::SpectrumArgs spectrum;
  auto* sp = app.add_subcommand("spectrum", "spectra of the box operator, grade by grade");
  auto* blocks_opt = sp->add_option("--blocks", spectrum.blocks, "Jordan block parameters (block size k+1)");
  sp->add_option("--matrix", spectrum.matrix_file, "JSON file with a nilpotent linear_part")->excludes(blocks_opt);
  sp->add_option("--max-degree", spectrum.max_degree, "highest grade reported")->capture_default_str();
  sp->add_option("--tolerance", spectrum.tolerance, "integer-snap tolerance")->capture_default_str();
  add_output_flags(sp, spectrum.format, spectrum.output);

  cli::NormalFormArgs nf;
  auto* nfc = app.add_subcommand("normal-form", "normalize a polynomial vector field");
  nfc->add_option("input", nf.input, "vector-field document")->required()->check(CLI::ExistingFile);
  nfc->add_option("--order,-p", nf.order, "highest polynomial degree")->capture_default_str();
  nfc->add_option("--tolerance", nf.tolerance, "homological residual tolerance")->capture_default_str();
  nfc->add_flag("--emit-original-coordinates", nf.original_coordinates, "report U and R' in the input coordinates");
  nfc->add_option("--t-samples", nf.t_samples, "times for the equivariance check");
  add_output_flags(nfc, nf.format, nf.output);

  cli::DiagnosticsArgs diag;
  auto* dg = app.add_subcommand("diagnostics", "small denominators and Gevrey growth");
  auto* diag_in = dg->add_option("input", diag.input, "normal-form result, document or {\"norms\": [...]}");
  dg->add_option("--blocks", diag.blocks, "frame given by Jordan block parameters")->excludes(diag_in);
  dg->add_option("--max-grade", diag.max_grade, "highest grade for a_delta")->capture_default_str();
  add_output_flags(dg, diag.format, diag.output);

  cli::OptOrderArgs opt;
  auto* oo = app.add_subcommand("opt-order", "optimal truncation order and remainder bound");
  oo->add_option("--c", opt.c, "analytic bound constant c")->capture_default_str();
  oo->add_option("--rho", opt.rho, "radius rho")->capture_default_str();
  oo->add_option("--m", opt.m, "dimension")->capture_default_str();
  oo->add_option("--qnorm", opt.q_norm, "||Q||")->capture_default_str();
  oo->add_option("--qinvnorm", opt.q_inverse_norm, "||Q^-1||")->capture_default_str();
  oo->add_option("--tau", opt.tau, "Siegel exponent")->capture_default_str();
  oo->add_option("--gamma", opt.gamma, "Siegel constant")->capture_default_str();
  oo->add_option("--epsilon", opt.epsilons, "extra radii for the bound table");
  add_output_flags(oo, opt.format, opt.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsageError;
  }

  if (sp->parsed()) return cli::cmd_spectrum(spectrum, std::cout, std::cerr);
  if (nfc->parsed()) return cli::cmd_normal_form(nf, std::cout, std::cerr);
  if (dg->parsed()) return cli::cmd_diagnostics(diag, std::cout, std::cerr);
  return cli::cmd_opt_order(opt, std::cout, std::cerr);
}
