#include "nilnf/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nilnf/document.hpp"
#include "nilnf/errors.hpp"
#include "nilnf/gevrey.hpp"
#include "nilnf/nilframe.hpp"
#include "nilnf/normalform.hpp"
#include "nilnf/reports.hpp"

namespace nilnf::cli {

using nlohmann::json;

namespace {

void emit(const json& report, const std::string& text, Format format, const std::string& output,
          std::ostream& out) {
  const std::string body = format == Format::kJson ? report.dump(2) + "\n" : text;
  if (output.empty()) {
    out << body;
    return;
  }
  std::ofstream file(output);
  if (!file) throw DocumentError(output, "cannot open output file");
  file << body;
}

RationalMatrix linear_part_from_json(const json& j) {
  if (j.contains("dimension")) return parse_document(j).linear_part;
  if (!j.is_object() || !j.contains("linear_part") || !j["linear_part"].is_array())
    throw DocumentError("linear_part", "missing field");
  // Bare matrix file: infer the dimension from the row count.
  json doc = {{"dimension", j["linear_part"].size()}, {"linear_part", j["linear_part"]}};
  if (j["linear_part"].empty()) throw DocumentError("linear_part", "empty matrix");
  return parse_document(doc).linear_part;
}

std::string format_double(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const NotNilpotent& e) {
    err << "error: NotNilpotent: " << e.what() << " (p = " << e.power() << ")\n";
    return kNotNilpotent;
  } catch (const DocumentError& e) {
    err << "error: invalid input at '" << e.field() << "': " << e.what() << '\n';
    return kUsageError;
  } catch (const ResidualTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kGateFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace

int cmd_spectrum(const SpectrumArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.max_degree < 0) throw DomainError("--max-degree must be nonnegative");
    NilpotentFrame frame = !args.blocks.empty()
                               ? build_normalized_nilpotent(BlockStructure(args.blocks))
                               : args.matrix_file.empty()
                                     ? throw DomainError("either --blocks or --matrix is required")
                                     : jordan_normalize(linear_part_from_json(read_json_file(args.matrix_file)));

    json grades = json::array();
    json warnings = json::array();
    std::ostringstream text;
    text << "blocks:";
    for (int k : frame.blocks.params()) text << ' ' << k;
    text << '\n';
    bool all_agree = true;
    for (int delta = 0; delta <= args.max_degree; ++delta) {
      const SpectralData data = analyze_grade(frame, delta);
      json g = spectrum_report(data, args.tolerance);
      if (g["agreement"].is_boolean() && !g["agreement"].get<bool>()) all_agree = false;
      if (std::isinf(data.a_delta))
        warnings.push_back("grade " + std::to_string(delta) + ": no nonzero eigenvalue (Lambda* empty)");
      if (!data.numeric_spectrum)
        warnings.push_back("grade " + std::to_string(delta) + ": dimension " + std::to_string(data.dimension) +
                           " above dense limit, numeric cross-check skipped");
      text << "delta=" << delta << " dim=" << data.dimension << " kernel=" << data.kernel_dim
           << " a_delta=" << format_double(data.a_delta) << " spectrum={";
      for (std::size_t i = 0; i < data.predicted_spectrum.size(); ++i)
        text << (i ? "," : "") << data.predicted_spectrum[i];
      text << "} agreement=" << (g["agreement"].is_null() ? "skipped" : g["agreement"].get<bool>() ? "yes" : "NO")
           << '\n';
      grades.push_back(std::move(g));
    }
    for (const auto& w : warnings) err << "warning: " << w.get<std::string>() << '\n';
    const json report = {{"frame", frame_to_json(frame)}, {"grades", std::move(grades)},
                         {"all_agree", all_agree}, {"warnings", std::move(warnings)}};
    emit(report, text.str(), args.format, args.output, out);
    return all_agree ? kSuccess : kGateFailure;
  });
}

int cmd_normal_form(const NormalFormArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.order < 2) {
      err << "error: --order must be at least 2\n";
      return static_cast<int>(kUsageError);
    }
    const VectorFieldDocument doc = read_document(args.input);
    const NilpotentFrame frame = jordan_normalize(doc.linear_part);

    GradedVectorField x = to_canonical_coordinates(frame, to_field(doc, args.order));
    const double drift = (x.grade(0).linear_matrix() - frame.n.cast<Complex>()).cwiseAbs().maxCoeff();
    if (drift > 1e-10) throw InvariantViolation("Q L Q^-1 differs from N by " + std::to_string(drift));
    x.set_grade(frame.n_field());

    NormalFormOptions options;
    options.tolerance = args.tolerance;
    const NormalFormResult result = normal_form(frame, x, args.order, options);
    const ConjugacyReport conjugacy = verify_conjugacy(frame, x, result, args.order);
    EquivarianceSummary equivariance;
    equivariance.t_samples = args.t_samples;
    equivariance.max_deviation = equivariance_check(frame, result, args.t_samples);
    const ResonanceSummary resonance = check_resonance(result);

    const json report = normal_form_report(result, conjugacy, equivariance, resonance, args.original_coordinates);
    std::ostringstream text;
    text << "order " << result.order << ", blocks:";
    for (int k : frame.blocks.params()) text << ' ' << k;
    text << "\nlinearizable: " << (result.linearizable ? "yes" : "no") << '\n';
    for (const DegreeNorms& n : result.norms)
      text << "degree " << n.degree << ": |U|=" << format_double(n.u_fischer)
           << " |R'|=" << format_double(n.r_fischer) << '\n';
    text << "conjugacy residual " << format_double(conjugacy.max_residual) << " (threshold "
         << format_double(conjugacy.threshold) << ")\n"
         << "equivariance deviation " << format_double(equivariance.max_deviation) << '\n'
         << "resonance residual " << format_double(resonance.max_residual) << '\n';
    emit(report, text.str(), args.format, args.output, out);
    if (!report["passed"].get<bool>()) {
      err << "error: residual gate failed\n";
      return static_cast<int>(kGateFailure);
    }
    return static_cast<int>(kSuccess);
  });
}

int cmd_diagnostics(const DiagnosticsArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    json report = json::object();
    json warnings = json::array();
    std::optional<NilpotentFrame> frame;
    std::vector<double> u_norms;
    std::vector<double> r_norms;
    int max_grade = args.max_grade;

    if (!args.blocks.empty()) {
      frame = build_normalized_nilpotent(BlockStructure(args.blocks));
    } else {
      if (args.input.empty()) throw DomainError("diagnostics needs an input file or --blocks");
      const json in = read_json_file(args.input);
      if (in.contains("norms") && in["norms"].is_array() && !in.contains("frame")) {
        for (const json& v : in["norms"]) {
          if (!v.is_number()) throw DocumentError("norms", "expected an array of numbers");
          u_norms.push_back(v.get<double>());
        }
      } else if (in.contains("frame")) {
        const json& f = in["frame"];
        if (!f.contains("blocks") || !f["blocks"].is_array()) throw DocumentError("frame.blocks", "missing field");
        frame = build_normalized_nilpotent(BlockStructure(f["blocks"].get<std::vector<int>>()));
        if (!in.contains("norms") || !in["norms"].is_array() || in["norms"].empty())
          throw DocumentError("norms", "missing norms");
        for (const json& n : in["norms"]) {
          if (!n.contains("degree") || !n.contains("u_coefficient") || !n.contains("r_coefficient"))
            throw DocumentError("norms", "each entry needs degree, u_coefficient and r_coefficient");
          const auto degree = n["degree"].get<std::size_t>();
          if (u_norms.size() <= degree) {
            u_norms.resize(degree + 1, 0.0);
            r_norms.resize(degree + 1, 0.0);
          }
          u_norms[degree] = n["u_coefficient"].get<double>();
          r_norms[degree] = n["r_coefficient"].get<double>();
        }
        if (in.contains("order")) max_grade = std::max(max_grade, in["order"].get<int>() - 1);
      } else {
        frame = jordan_normalize(linear_part_from_json(in));
      }
    }

    std::ostringstream text;
    if (frame) {
      const DenominatorSeq seq = small_denominators(*frame, std::max(max_grade, 1));
      report["frame_blocks"] = frame->blocks.params();
      report.update(denominators_to_json(seq));
      text << "a_delta:";
      for (double a : seq.a_delta) text << ' ' << format_double(a);
      text << '\n';
      if (seq.has_infinite) {
        warnings.push_back("some a_delta are infinite (no nonzero eigenvalue); eta sequence skipped");
        report["eta_delta"] = nullptr;
        report["diophantine_unit"] = nullptr;
      } else {
        const std::vector<double> eta = eta_sequence(seq.a_delta);
        bool bounded = true;
        for (double v : eta) bounded = bounded && v <= 1.0 + 1e-12;
        report["eta_delta"] = eta;
        report["diophantine_unit"] = bounded;
        text << "eta_delta:";
        for (double v : eta) text << ' ' << format_double(v);
        text << '\n';
      }
    }

    auto fit = [&](const std::vector<double>& norms, const char* what) -> json {
      try {
        GevreyReport g = gevrey_fit(norms);
        text << what << ": beta=" << format_double(g.beta) << " r=" << format_double(g.r) << '\n';
        return gevrey_to_json(g);
      } catch (const DomainError& e) {
        warnings.push_back(std::string(what) + ": " + e.what());
        return nullptr;
      }
    };
    if (!u_norms.empty()) {
      report["gevrey"] = fit(u_norms, r_norms.empty() ? "norms" : "transformation");
      report["gevrey_beta"] = report["gevrey"].is_null() ? json(nullptr) : report["gevrey"]["gevrey_beta"];
      report["gevrey_r"] = report["gevrey"].is_null() ? json(nullptr) : report["gevrey"]["gevrey_r"];
    }
    if (!r_norms.empty()) report["normal_form_gevrey"] = fit(r_norms, "normal form");
    for (const auto& w : warnings) err << "warning: " << w.get<std::string>() << '\n';
    report["warnings"] = std::move(warnings);
    emit(report, text.str(), args.format, args.output, out);
    return static_cast<int>(kSuccess);
  });
}

int cmd_opt_order(const OptOrderArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const AnalyticBounds bounds{args.c, args.rho, args.m, args.q_norm, args.q_inverse_norm};
    const OptOrderResult result = opt_order(bounds, args.tau, args.gamma);
    std::vector<double> epsilons{1e-1, 1e-2, 1e-3};
    for (double e : args.epsilons) {
      if (!(e > 0.0)) throw DomainError("epsilon values must be positive");
      epsilons.push_back(e);
    }
    json report = opt_order_report(result, epsilons);
    if (result.w == 0.0) report["warnings"].push_back("w = 0: bound reduces to M_tau eps^2");
    for (const auto& w : report["warnings"]) err << "warning: " << w.get<std::string>() << '\n';

    std::ostringstream text;
    text << "C=" << format_double(result.c_constant) << " b=" << format_double(result.b)
         << " w=" << format_double(result.w) << " p_opt=" << result.p_opt << " M_tau=" << format_double(result.m_tau)
         << '\n';
    for (double e : epsilons)
      text << "eps=" << format_double(e) << " bound=" << format_double(remainder_bound(result, e)) << '\n';
    emit(report, text.str(), args.format, args.output, out);
    return static_cast<int>(kSuccess);
  });
}

}  // namespace nilnf::cli
