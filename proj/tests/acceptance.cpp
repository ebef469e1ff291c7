// Acceptance suite: one PASS/FAIL line per criterion; exit status 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "nilnf/errors.hpp"
#include "nilnf/gevrey.hpp"
#include "nilnf/homology.hpp"
#include "nilnf/nilframe.hpp"
#include "nilnf/normalform.hpp"
#include "oracles.hpp"

using namespace nilnf;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail << "first failure: " << what << "; ";
    passed = passed && ok;
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string blocks_str(const BlockStructure& b) {
  std::string s = "[";
  for (std::size_t i = 0; i < b.params().size(); ++i) s += (i ? "," : "") + std::to_string(b.params()[i]);
  return s + "]";
}

// 1. sl(2) triple for every block structure with m <= 7; exact alpha system.
void criterion1(Outcome& o) {
  double worst = 0.0;
  int frames = 0;
  for (int m = 1; m <= 7; ++m)
    for (const auto& b : all_block_structures(m)) {
      const double r = verify_sl2(build_normalized_nilpotent(b)).max();
      worst = std::max(worst, r);
      ++frames;
      o.require(r <= 1e-12, "verify_sl2 on " + blocks_str(b));
    }
  for (int n = 1; n <= 12; ++n) {
    const auto a = solve_alpha_system(n);
    for (int i = 1; i <= n; ++i)
      o.require(a[i - 1] == Rational(i * (n + 1 - i)), "alpha system n=" + std::to_string(n));
  }
  o.detail << frames << " frames, max residual " << sci(worst) << "; alpha system exact for n <= 12";
}

// 2. [D, d0] = 2 d0 and [D, d0*] = -2 d0* for m <= 5, delta <= 4.
void criterion2(Outcome& o) {
  double worst = 0.0;
  int cases = 0;
  for (int m = 1; m <= 5; ++m)
    for (const auto& b : all_block_structures(m)) {
      const auto f = build_normalized_nilpotent(b);
      for (int delta = 0; delta <= 4; ++delta) {
        const OperatorMatrices ops = build_operators(f, delta);
        const Eigen::MatrixXcd d = ops.d0 * ops.d0star - ops.d0star * ops.d0;
        const double r1 = (d * ops.d0 - ops.d0 * d - 2.0 * ops.d0).cwiseAbs().maxCoeff();
        const double r2 = (d * ops.d0star - ops.d0star * d + 2.0 * ops.d0star).cwiseAbs().maxCoeff();
        worst = std::max({worst, r1, r2});
        ++cases;
        o.require(r1 <= 1e-10 && r2 <= 1e-10, blocks_str(b) + " delta=" + std::to_string(delta));
      }
    }
  o.detail << cases << " (frame, delta) cases, max residual " << sci(worst);
}

// 3. Integer spectrum for m <= 4, delta <= 5.
void criterion3(Outcome& o) {
  double worst = 0.0;
  int cases = 0;
  long min_nonzero = -1;
  for (int m = 1; m <= 4; ++m)
    for (const auto& b : all_block_structures(m)) {
      const auto f = build_normalized_nilpotent(b);
      for (int delta = 0; delta <= 5; ++delta) {
        const std::vector<double> numeric = numeric_spectrum(build_operators(f, delta));
        const SpectralData oracle_data = spectrum_oracle(f, delta);
        std::vector<long> snapped;
        for (double v : numeric) {
          const long k = std::lround(v);
          worst = std::max(worst, std::abs(v - static_cast<double>(k)));
          o.require(std::abs(v - static_cast<double>(k)) <= 1e-8 && k >= 0, "near-integer " + blocks_str(b));
          snapped.push_back(k);
          if (k != 0) {
            o.require(k >= 1, "nonzero eigenvalue >= 1");
            min_nonzero = min_nonzero < 0 ? k : std::min(min_nonzero, k);
          }
        }
        std::sort(snapped.begin(), snapped.end());
        o.require(snapped == oracle_data.predicted_spectrum,
                  "snapped multiset = oracle for " + blocks_str(b) + " delta=" + std::to_string(delta));
        ++cases;
      }
    }
  o.detail << cases << " cases, max snap error " << sci(worst) << ", smallest nonzero eigenvalue " << min_nonzero;
}

// 4. Adjoint formula = conjugate transpose of d0.
void criterion4(Outcome& o) {
  double worst = 0.0;
  const auto planar = build_normalized_nilpotent(BlockStructure({1}));
  for (int delta = 0; delta <= 4; ++delta) {
    const OperatorMatrices ops = build_operators(planar, delta);
    const Eigen::MatrixXcd hand = oracle::planar_d0(ops.basis);
    const double r = std::max((ops.d0star - hand.adjoint()).cwiseAbs().maxCoeff(),
                              (ops.d0star - ops.d0.adjoint()).cwiseAbs().maxCoeff());
    worst = std::max(worst, r);
    o.require(r <= 1e-12, "worked example delta=" + std::to_string(delta));
  }
  std::mt19937 rng(4);
  int random_frames = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int m = 2 + trial % 4;
    const auto structures = all_block_structures(m);
    const BlockStructure b = structures[rng() % structures.size()];
    // Frames reached through jordan_normalize of a disguised matrix.
    RationalMatrix j(m, m);
    for (int blk = 0; blk < b.block_count(); ++blk)
      for (int i = 0; i < b.params()[blk]; ++i) j(b.offset(blk) + i, b.offset(blk) + i + 1) = 1;
    RationalMatrix p = RationalMatrix::identity(m);
    for (int r = 0; r < m; ++r)
      for (int c = r + 1; c < m; ++c) p(r, c) = static_cast<int>(rng() % 5) - 2;
    const auto f = jordan_normalize(p * j * p.inverse());
    const int delta = static_cast<int>(rng() % 4);
    const OperatorMatrices ops = build_operators(f, delta);
    const double r = (ops.d0star - ops.d0.adjoint()).cwiseAbs().maxCoeff();
    worst = std::max(worst, r);
    ++random_frames;
    o.require(r <= 1e-12, "random frame " + blocks_str(f.blocks));
  }
  o.detail << "worked example delta<=4 and " << random_frames << " random frames, max mismatch " << sci(worst);
}

// 5. Normal-form correctness on random polynomial fields.
void criterion5(Outcome& o) {
  std::mt19937 rng(2025);
  const std::vector<std::vector<int>> frames{{1}, {2}, {1, 0}};
  const std::vector<double> ts{0.5, 1.0, 2.0};
  double worst_conj = 0.0, worst_res = 0.0, worst_eq = 0.0;
  int fields = 0;
  for (int trial = 0; trial < 24; ++trial) {
    const auto f = build_normalized_nilpotent(BlockStructure(frames[trial % frames.size()]));
    const int order = 2 + trial % 4;  // p in 2..5
    const GradedVectorField x = oracle::random_system(rng, f, order);
    const NormalFormResult result = normal_form(f, x, order);
    const ConjugacyReport conj = verify_conjugacy(f, x, result, order);
    worst_conj = std::max(worst_conj, conj.max_residual);
    o.require(conj.max_residual <= 1e-7, "conjugacy");
    for (const auto& [g, rp] : result.normal_form.grades()) {
      const double r = fischer_norm(lie_bracket(rp, f.m_field()));
      worst_res = std::max(worst_res, r);
      o.require(r <= 1e-8, "bracket(R', N*) = 0");
    }
    const double eq = equivariance_check(f, result, ts);
    worst_eq = std::max(worst_eq, eq);
    o.require(eq <= 1e-7, "equivariance");
    ++fields;
  }
  o.detail << fields << " fields (m=2,3; p<=5): conjugacy " << sci(worst_conj) << ", resonance " << sci(worst_res)
           << ", equivariance " << sci(worst_eq);
}

// 6. Planar nilpotent normal form has two free functions: dim Ker(d0*) = 2.
void criterion6(Outcome& o) {
  const auto f = build_normalized_nilpotent(BlockStructure({1}));
  std::string dims;
  for (int delta = 0; delta <= 6; ++delta) {
    const OperatorMatrices ops = build_operators(f, delta);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ops.d0star);
    svd.setThreshold(1e-9);
    const int kernel = ops.basis.size() - static_cast<int>(svd.rank());
    int irreps = 0;
    for (const auto& [w, c] : spectrum_oracle(f, delta).irrep_multiplicity) irreps += c;
    o.require(kernel == 2 && irreps == 2, "delta=" + std::to_string(delta));
    dims += (delta ? "," : "") + std::to_string(kernel);
  }
  o.detail << "dim Ker(d0*) for delta=0..6: " << dims;
}

// 7. eta recursion and the diophantine bound.
void criterion7(Outcome& o) {
  const std::vector<double> ones(16, 1.0);
  for (double v : eta_sequence(ones)) o.require(std::abs(v - 1.0) <= 1e-15, "a = 1 gives eta = 1");
  const double eta2 = eta_sequence(std::vector<double>{1.0, 1.0, 0.5})[2];
  o.require(std::abs(eta2 - 2.0) <= 1e-15, "eta_2 = 2 for a_2 = 1/2");
  int frames = 0;
  double worst = 0.0;
  for (int m = 1; m <= 5; ++m)
    for (const auto& b : all_block_structures(m)) {
      const DenominatorSeq seq = small_denominators(build_normalized_nilpotent(b), 6);
      if (seq.has_infinite) continue;
      for (double v : eta_sequence(seq.a_delta)) {
        worst = std::max(worst, v);
        o.require(v <= 1.0, "eta_delta <= 1 on " + blocks_str(b));
      }
      ++frames;
    }
  o.detail << "eta(1)=1, eta_2=" << eta2 << ", max eta over " << frames << " frames (delta<=6) = " << worst;
}

// 8. nu, M_0, (C, w, p_opt) and the remainder bound.
void criterion8(Outcome& o) {
  constexpr double e = std::numbers::e;
  const auto [nu, argmax] = nu_constant();
  o.require(std::abs(nu - std::exp(3.0)) <= 1e-9 && argmax == 1, "nu = e^3 at p = 1");
  const OptOrderResult base = opt_order({1.0, 1.0, 2, 1.0, 1.0}, 0.0, 1.0);
  const double m0 = 10.0 / 9.0 * (std::exp(3.0) * std::sqrt(27.0 / (8.0 * e)) + std::pow(2.0 * e, 2.0));
  o.require(std::abs(base.m_tau - m0) <= 1e-9, "M_0 closed form");

  struct Set {
    int m;
    double c, rho, q, qi;
  };
  for (const Set& s : {Set{2, 1.0, 1.0, 1.0, 1.0}, Set{3, 0.5, 2.0, 2.0, 1.5}, Set{2, 0.01, 100.0, 1.0, 1.0}}) {
    const OptOrderResult r = opt_order({s.c, s.rho, s.m, s.q, s.qi}, 0.0, 1.0);
    const double c = std::sqrt(s.m) / (s.rho * s.rho) *
                     ((2.5 * s.m + 2.0) * s.c * s.q * s.q * s.qi * s.qi + 3.0 * s.rho * s.q * s.qi);
    const double w = 1.0 / (e * c);
    o.require(std::abs(r.c_constant - c) <= 1e-12 * c && std::abs(r.w - w) <= 1e-12 * w &&
                  r.p_opt == static_cast<long>(std::floor(w)),
              "(C, w, p_opt) for m=" + std::to_string(s.m));
    for (double eps : {0.5, 0.1, 0.02}) {
      const double expected = m0 * eps * eps * std::exp(-r.w / eps);
      const double got = remainder_bound(r, eps);
      o.require(std::abs(got - expected) <= 4 * std::numeric_limits<double>::epsilon() * expected,
                "remainder bound at eps=" + std::to_string(eps));
    }
  }
  o.detail << "nu=" << nu << " (p=" << argmax << "), M_0=" << base.m_tau << ", three parameter sets";
}

// 9. Gevrey fit on synthetic sequences; computed normal forms reported only.
void criterion9(Outcome& o) {
  std::ostringstream betas;
  for (double beta : {0.0, 1.0, 2.0})
    for (double r : {0.5, 2.0, 3.0}) {
      std::vector<double> s;
      for (int l = 0; l <= 16; ++l) s.push_back(std::exp(beta * std::lgamma(l + 1.0) + l * std::log(r)));
      const double got = gevrey_fit(s).beta;
      o.require(std::abs(got - beta) <= 0.1, "beta=" + std::to_string(beta));
      if (r == 2.0) betas << "beta " << beta << " -> " << got << "; ";
    }
  // Report-only: fit on a computed planar normal form.
  std::mt19937 rng(1);
  const auto f = build_normalized_nilpotent(BlockStructure({1}));
  const int order = 9;
  GradedVectorField x(2, order);
  x.set_grade(f.n_field());
  x.set_grade(oracle::random_field(rng, 2, 1));  // quadratic terms only
  const NormalFormResult nf = normal_form(f, x, order);
  std::vector<double> s(order + 1, 0.0);
  for (const DegreeNorms& n : nf.norms) s[n.degree] = n.u_coefficient;
  try {
    betas << "computed planar U (reported, not gated): beta " << gevrey_fit(s).beta;
  } catch (const DomainError& e) {
    betas << "computed planar U: " << e.what();
  }
  o.detail << betas.str();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"sl(2) triple and alpha system", criterion1},
      {"representation lift [D,d0]=2d0, [D,d0*]=-2d0*", criterion2},
      {"integer spectrum of box (Siegel tau=0, gamma=1)", criterion3},
      {"adjoint identity", criterion4},
      {"normal-form correctness", criterion5},
      {"planar structure: dim Ker(d0*) = 2", criterion6},
      {"small denominators and eta", criterion7},
      {"optimal order constants", criterion8},
      {"Gevrey fit", criterion9},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s  %s -- %s (%.1fs)\n", k + 1, o.passed ? "PASS" : "FAIL", criteria[k].first.c_str(),
                o.detail.str().c_str(), secs);
    failures += o.passed ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
