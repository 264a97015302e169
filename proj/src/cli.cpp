#include "atorus/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "atorus/algebra.hpp"
#include "atorus/expr.hpp"
#include "atorus/forms.hpp"
#include "atorus/prolong.hpp"
#include "atorus/report.hpp"
#include "atorus/spectral.hpp"

namespace atorus::cli {

namespace {

StructureConstants load(const RunConfig& cfg) {
  return cfg.spec_path.empty() ? preset(cfg.preset) : load_algebra_spec(cfg.spec_path);
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  out << text;
  if (!cfg.out_path.empty()) {
    std::ofstream file(cfg.out_path);
    file << text;
  }
}

std::string monomial_text(const std::vector<int>& exps, const StructureConstants& alg,
                          const StandardBasisInfo& info) {
  std::string s;
  for (std::size_t l = 0; l < exps.size(); ++l) {
    if (exps[l] == 0) continue;
    if (!s.empty()) s += "*";
    s += alg.labels()[info.pseudobasis[l]];
    if (exps[l] > 1) s += "^" + std::to_string(exps[l]);
  }
  return s;
}

Element chop(Eigen::VectorXd v) {
  const double floor = 1e-13 * std::max(1.0, v.cwiseAbs().maxCoeff());
  for (auto& c : v) {
    if (std::abs(c) < floor) c = 0.0;
  }
  return Element(std::move(v));
}

std::string label_set(const std::vector<int>& indices, const StructureConstants& alg) {
  std::string s = "{";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    s += (i ? "," : "") + alg.labels()[indices[i]];
  }
  return s + "}";
}

int cmd_algebra(const RunConfig& cfg, std::ostream& out) {
  const StructureConstants input = load(cfg);
  const auto violations = validate_algebra(input);
  std::ostringstream text;
  text << "algebra " << cfg.source() << "\n";
  text << "n = " << input.dim() << "\n";
  Report rep;
  rep.set("ALGEBRA", cfg.source());
  rep.set("N_DIM", input.dim());
  if (!violations.empty()) {
    for (const auto& v : violations) text << "VIOLATION " << to_string(v.kind) << " " << v.message << "\n";
    rep.set("VALID", 0);
    rep.set("VIOLATIONS", static_cast<int>(violations.size()));
    emit(cfg, text.str() + rep.render(), out);
    return kInvalidAlgebra;
  }

  const LocalAlgebra la = make_local_algebra(input);
  const StructureConstants& alg = la.alg;
  const RadicalFiltration filt = radical_filtration(input);

  text << "radical basis (input coordinates):\n";
  for (const auto& r : radical_basis(input)) text << "  " << format_element(chop(r.coeffs), input) << "\n";
  std::string dims;
  for (int d : filt.dims()) dims += (dims.empty() ? "" : ",") + std::to_string(d);
  text << "filtration dims = " << dims << "\n";
  text << "nu = " << la.nu() << "\n";
  text << "pseudobasis = " << label_set(la.info.pseudobasis, alg) << "\n";
  text << "standard basis (input coordinates):\n";
  for (int k = 1; k < alg.dim(); ++k) {
    text << "  " << alg.labels()[k] << " = "
         << monomial_text(la.info.monomial.at(k), alg, la.info) << " = "
         << format_element(chop(la.input_info.basis.col(k)), input) << "\n";
  }
  text << "socle = " << label_set(la.info.socle, alg) << "\n";
  text << "breve = " << label_set(la.info.breve, alg) << "\n";

  rep.set("VALID", 1);
  rep.set("RADICAL_DIM", static_cast<int>(filt.powers.front().cols()));
  rep.set("FILTRATION", dims);
  rep.set("NU", la.nu());
  rep.set("PSEUDOBASIS", label_set(la.info.pseudobasis, alg));
  rep.set("SOCLE", label_set(la.info.socle, alg));
  rep.set("SOCLE_DIM", static_cast<int>(la.socle.cols()));
  rep.set("BREVE", label_set(la.info.breve, alg));
  emit(cfg, text.str() + rep.render(), out);
  return kOk;
}

struct LiftInputs {
  LocalAlgebra la;
  APoint point;
  Expr g;
};

LiftInputs lift_inputs(const RunConfig& cfg) {
  LiftInputs in{make_local_algebra(load(cfg)), {}, {}};
  if (cfg.at.empty()) throw Error("--at is required");
  if (cfg.expr.empty()) throw Error("--expr is required");
  in.point = parse_point(cfg.at, in.la.alg);
  in.g = parse(cfg.expr, in.point.m());
  return in;
}

int cmd_lift(const RunConfig& cfg, std::ostream& out) {
  const LiftInputs in = lift_inputs(cfg);
  const Element taylor = taylor_lift(in.g, in.point, in.la);
  const Element direct = lift_eval(in.g, in.point, in.la);
  const double gap = (taylor.coeffs - direct.coeffs).cwiseAbs().maxCoeff();
  std::ostringstream text;
  text << "taylor_lift = " << format_element(taylor, in.la.alg) << "\n";
  text << "lift_eval = " << format_element(direct, in.la.alg) << "\n";
  text << "diff = " << num(gap) << "\n";
  emit(cfg, text.str(), out);
  return kOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const LiftInputs in = lift_inputs(cfg);
  Report rep;
  const double defect =
      adiff_defect(lifted_map(in.g, in.la, in.point.m()), in.point, in.la.alg, 1e-5);
  rep.add("adiff_defect", defect <= 1e-5, defect);
  if (in.la.dim() > 1) {
    const double e1 = e1_component_identity(in.g, in.point, in.la);
    const double scale = 1.0 + taylor_lift(in.g, in.point, in.la).coeffs.cwiseAbs().maxCoeff();
    rep.add("e1_identity", e1 <= 1e-9 * scale, e1);
  }
  rep.set("ALGEBRA", cfg.source());
  rep.set("EXPR", print(in.g));
  emit(cfg, rep.render(), out);
  return rep.all_pass() ? kOk : kCheckFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const TorusConfig torus{make_local_algebra(load(cfg)), cfg.m};
  Report rep = run_verify(torus, cfg.degree, {cfg.tol, cfg.grid, cfg.cap});
  rep.set("ALGEBRA", cfg.source());
  rep.set("TOL", cfg.tol);
  emit(cfg, rep.render(), out);
  return rep.all_pass() ? kOk : kCheckFailed;
}

int cmd_forms(const RunConfig& cfg, std::ostream& out) {
  const TorusConfig torus{make_local_algebra(load(cfg)), cfg.m};
  Report rep = run_forms(torus, cfg.degree, {cfg.tol, cfg.cap});
  rep.set("ALGEBRA", cfg.source());
  rep.set("TOL", cfg.tol);
  emit(cfg, rep.render(), out);
  return rep.all_pass() ? kOk : kCheckFailed;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool torus, bool lift) {
  auto* p = sub->add_option("--preset", cfg.preset, "dual, trunc:k or square:r")
                ->capture_default_str();
  auto* s = sub->add_option("--spec", cfg.spec_path, "algebra spec file");
  p->excludes(s);
  sub->add_option("--m", cfg.m, "A-dimension of the torus")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", cfg.out_path, "also write the report to this file");
  if (torus) {
    sub->add_option("--degree", cfg.degree, "trig ansatz degree")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", cfg.tol, "relative nullspace tolerance")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0) & CLI::PositiveNumber);
    sub->add_option("--grid", cfg.grid, "transversal grid points per axis")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--cap", cfg.cap, "maximum number of unknown columns")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }
  if (lift) {
    sub->add_option("--expr", cfg.expr, "expression in x1..xm")->required();
    sub->add_option("--at", cfg.at, "point literal, e.g. '3 + 2 e1; 1'")->required();
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local algebras, A-differentiable lifts and checks on A-tori", "atorus"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto* algebra = app.add_subcommand("algebra", "structure of a local algebra");
  auto* lift = app.add_subcommand("lift", "lift an expression via both routes");
  auto* check = app.add_subcommand("check", "A-differentiability checks of a lift");
  auto* verify = app.add_subcommand("verify", "constancy and decomposition checks on an A-torus");
  auto* forms = app.add_subcommand("forms", "closed A-differentiable 1-forms on an A-torus");
  add_common(algebra, cfg, false, false);
  add_common(lift, cfg, false, true);
  add_common(check, cfg, false, true);
  add_common(verify, cfg, true, false);
  add_common(forms, cfg, true, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (algebra->parsed()) return cmd_algebra(cfg, out);
    if (lift->parsed()) return cmd_lift(cfg, out);
    if (check->parsed()) return cmd_check(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (forms->parsed()) return cmd_forms(cfg, out);
  } catch (const SizeCapExceeded& e) {
    err << "SizeCapExceeded: " << e.what() << "\n";
    return kSizeCap;
  } catch (const SpecParseError& e) {
    err << "SpecParseError: " << e.what() << "\n";
    return kInvalidAlgebra;
  } catch (const DomainError& e) {
    err << "DomainError: " << e.what() << "\n";
    return kInputError;
  } catch (const NonUnit& e) {
    err << "NonUnit: " << e.what() << "\n";
    return kInputError;
  } catch (const UnknownVariable& e) {
    err << "UnknownVariable: " << e.what() << "\n";
    return kInputError;
  } catch (const SyntaxError& e) {
    err << "SyntaxError: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return (lift->parsed() || check->parsed()) ? kInputError : kInvalidAlgebra;
  }
  return kOk;
}

}  // namespace atorus::cli
