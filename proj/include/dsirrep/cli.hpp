#pragma once

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "backbone_solver.hpp"
#include "io.hpp"
#include "representation.hpp"
#include "verifier.hpp"

namespace dsirrep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Format { Json, Pretty };

struct Options {
  Algebra algebra = Algebra::dS;
  double tolerance = 1e-10;
  std::string out_path; // empty: write to the output stream
  Format format = Format::Pretty;
};

/// Nearest fraction with denominator up to max_den, if v is within tol of it.
inline std::optional<Rat> as_fraction(double v, int max_den = 64, double tol = 1e-9) {
  for (int d = 1; d <= max_den; ++d) {
    const double n = std::round(v * d);
    if (std::abs(v - n / d) < tol) return Rat(static_cast<long long>(n), d);
  }
  return std::nullopt;
}

inline std::string format_number(double v) {
  if (const auto f = as_fraction(v)) return to_string(*f);
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

inline std::string format_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

/// sqrt of a non-negative rational, written exactly: "1/2", "sqrt(5/4)".
inline std::string surd_string(const Rat &square) {
  Rat root;
  if (exact_sqrt(square, root)) return to_string(root);
  return "sqrt(" + to_string(square) + ")";
}

/// t with |t|^2 = |product|, e.g. "-sqrt(5/4)".
inline std::string signed_surd(double t, const Rat &product) {
  return (t < 0 ? "-" : "") + surd_string(abs(product));
}

inline std::string backbone_string(const BackboneGraph &g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? " + " : "") + g.blocks[i].to_string();
  return s;
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

inline int cmd_generate(const std::string &family, int n, const Options &opt, std::ostream &out, std::ostream &err) {
  if (family != "a" && family != "b") {
    err << "error: family must be 'a' or 'b'\n";
    return kExitUsage;
  }
  if (n < 2) {
    err << "error: N = " << n << " is not allowed; a representation needs at least two blocks (a single block admits none)\n";
    return kExitUsage;
  }
  const CanonicalSpec spec{family == "a" ? Family::TypeA : Family::TypeB, n};
  const auto doc = io::representation_to_json(canonical_generators(spec, opt.algebra), spec);
  if (opt.out_path.empty()) {
    out << doc.dump(1) << '\n';
  } else {
    io::write_json_file(opt.out_path, doc);
    out << "wrote " << canonical_dimension(spec) << "-dimensional " << algebra_name(opt.algebra) << " Type"
        << family_name(spec.family) << " N=" << n << " to " << opt.out_path << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyResult {
  VerificationReport report;
  std::optional<double> consistency; // stored matrices vs. rebuild from backbone and t
  ResidualList rebuilt_failures;     // relations failing on the rebuild, when inconsistent
  bool passed = false;
};

inline VerifyResult run_verify(const io::RepresentationDocument &doc, const Options &opt) {
  VerifyResult r;
  VerifyOptions vo;
  vo.cr_tolerance = opt.tolerance;
  vo.hermiticity_tolerance = opt.tolerance;
  r.report = verify(doc.generators, vo);
  r.passed = r.report.ok();

  if (doc.has_couplings) {
    const auto &g = doc.generators;
    try {
      const auto rebuilt = assemble(g.backbone, g.couplings, g.algebra, SignPolicy::Allow);
      double diff = rebuilt.dim() == g.dim() ? 0.0 : INFINITY;
      if (std::isfinite(diff))
        for (auto name : kGeneratorNames) diff = std::max(diff, max_abs(rebuilt.generator(name) - g.generator(name)));
      r.consistency = diff;
      if (!(diff < opt.tolerance)) {
        r.passed = false;
        if (rebuilt.dim() == g.dim()) {
          for (const auto &c : check_all_crs(rebuilt))
            if (c.residual >= opt.tolerance) r.rebuilt_failures.push_back(c);
          for (const auto &c : check_hermiticity(rebuilt))
            if (c.residual >= opt.tolerance) r.rebuilt_failures.push_back({"hermiticity " + c.name, c.residual});
        }
      }
    } catch (const std::exception &) {
      r.consistency = INFINITY;
      r.passed = false;
    }
  }
  return r;
}

inline io::json verify_to_json(const VerifyResult &r) {
  const auto &rep = r.report;
  io::json cr = io::json::object(), herm = io::json::object();
  for (const auto &c : rep.cr_residuals) cr[c.name] = c.residual;
  for (const auto &c : rep.hermiticity_residuals) herm[c.name] = c.residual;
  auto scalar = [](const std::optional<Complex> &s) -> io::json {
    if (!s) return nullptr;
    return {{"re", s->real()}, {"im", s->imag()}, {"negated", format_number(-s->real())}};
  };
  io::json out{{"algebra", algebra_name(rep.algebra)},
               {"dimension", rep.casimir1.rows()},
               {"cr_residuals", cr},
               {"hermiticity_residuals", herm},
               {"crs_ok", rep.crs_ok()},
               {"hermiticity_ok", rep.hermiticity_ok()},
               {"casimir1_forms_agreement", rep.casimir1_forms_agreement},
               {"casimir1_commutator", rep.casimir1_commutator},
               {"casimir1_scalar", scalar(rep.casimir1_scalar)},
               {"casimir2_scalar", scalar(rep.casimir2_scalar)},
               {"p", rep.p ? io::json(rep.p->to_string()) : io::json(nullptr)},
               {"q", rep.q ? io::json(rep.q->to_string()) : io::json(nullptr)},
               {"duplicates_present", rep.duplicates_present},
               {"passed", r.passed}};
  if (r.consistency) out["consistency_with_t"] = *r.consistency;
  if (!r.rebuilt_failures.empty()) {
    io::json f = io::json::object();
    for (const auto &c : r.rebuilt_failures) f[c.name] = c.residual;
    out["failures_from_t"] = f;
  }
  return out;
}

inline void print_verify(const VerifyResult &r, double tol, std::ostream &out) {
  const auto &rep = r.report;
  out << "algebra        " << algebra_name(rep.algebra) << '\n';
  out << "dimension      " << rep.casimir1.rows() << '\n';
  const auto *wc = worst_entry(rep.cr_residuals);
  out << "relations      " << rep.cr_residuals.size() << " checked, worst " << (wc ? wc->name : "-") << ' '
      << format_residual(wc ? wc->residual : 0.0) << (rep.crs_ok() ? "  ok" : "  FAIL") << '\n';
  for (const auto &c : rep.cr_residuals)
    if (c.residual >= tol) out << "  failing      " << c.name << ' ' << format_residual(c.residual) << '\n';
  const auto *wh = worst_entry(rep.hermiticity_residuals);
  out << "hermiticity    worst " << (wh ? wh->name : "-") << ' ' << format_residual(wh ? wh->residual : 0.0)
      << (rep.hermiticity_ok() ? "  ok" : "  FAIL") << '\n';
  for (const auto &c : rep.hermiticity_residuals)
    if (c.residual >= tol) out << "  failing      " << c.name << ' ' << format_residual(c.residual) << '\n';
  out << "-C1            " << (rep.casimir1_scalar ? format_number(-rep.casimir1_scalar->real()) : "not scalar") << '\n';
  out << "-C2            " << (rep.casimir2_scalar ? format_number(-rep.casimir2_scalar->real()) : "not scalar") << '\n';
  out << "p              " << (rep.p ? rep.p->to_string() : "-") << '\n';
  out << "q              " << (rep.q ? rep.q->to_string() : "-") << (rep.q && rep.q->twice() == 0 ? "  (q = 1 gives the same invariants)" : "") << '\n';
  out << "duplicates     " << (rep.duplicates_present ? "yes" : "no") << '\n';
  if (r.consistency) {
    out << "matches t      " << format_residual(*r.consistency) << (*r.consistency < tol ? "  ok" : "  FAIL") << '\n';
    for (const auto &c : r.rebuilt_failures)
      out << "  t fails      " << c.name << ' ' << format_residual(c.residual) << '\n';
  }
  out << "result         " << (r.passed ? "PASS" : "FAIL") << '\n';
}

inline int cmd_verify(const std::string &path, const Options &opt, std::ostream &out, std::ostream &err) {
  io::RepresentationDocument doc;
  try {
    doc = io::representation_from_json(io::read_json_file(path));
  } catch (const io::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto r = run_verify(doc, opt);
  if (opt.format == Format::Json)
    out << verify_to_json(r).dump(1) << '\n';
  else
    print_verify(r, opt.tolerance, out);
  if (!opt.out_path.empty()) io::write_json_file(opt.out_path, verify_to_json(r));
  return r.passed ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// tables
// ---------------------------------------------------------------------------

struct TableRows {
  std::vector<std::string> table1, table4, table6;
};

/// Table 1 from the assembled irreps, the t coefficients from the on-BD
/// solve of each canonical backbone, and the Casimir scalars from the matrices.
inline TableRows compute_tables() {
  TableRows t;
  t.table1.push_back("rep\tdim\tbackbone");
  t.table4.push_back("rep\tt12\tt23\tt34\tt45\tt56");
  t.table6.push_back("rep\tp\tq\t-C1\t-C2");
  for (int ref = 1; ref <= 10; ++ref) {
    const auto spec = reference_irrep(ref);
    const auto g = canonical_generators(spec);
    t.table1.push_back(std::to_string(ref) + '\t' + std::to_string(g.dim()) + '\t' + backbone_string(g.backbone));

    const auto sol = solve_and_verify(g.backbone);
    std::string row = std::to_string(ref);
    for (int e = 0; e < 5; ++e) {
      row += '\t';
      if (sol.x_values && std::size_t(e) < sol.x_values->size())
        row += surd_string(abs((*sol.x_values)[std::size_t(e)]));
      else
        row += '-';
    }
    t.table4.push_back(row);

    const auto c1 = scalar_check(casimir1_matrix(g));
    const auto c2 = scalar_check(casimir2_matrix(g));
    std::optional<std::pair<HalfInt, HalfInt>> pq;
    if (c1 && c2) pq = identify_pq(-c1->real(), -c2->real());
    t.table6.push_back(std::to_string(ref) + '\t' + (pq ? pq->first.to_string() : "-") + '\t' +
                       (pq ? pq->second.to_string() : "-") + '\t' + (c1 ? format_number(-c1->real()) : "-") + '\t' +
                       (c2 ? format_number(-c2->real()) : "-"));
  }
  return t;
}

inline int cmd_tables(const Options &opt, std::ostream &out) {
  const auto t = compute_tables();
  if (opt.format == Format::Json) {
    out << io::json{{"table1", t.table1}, {"table4", t.table4}, {"table6", t.table6}}.dump(1) << '\n';
    return kExitOk;
  }
  auto section = [&](const char *title, const std::vector<std::string> &rows) {
    out << "# " << title << '\n';
    for (const auto &r : rows) out << r << '\n';
    out << '\n';
  };
  section("backbones of the first ten irreps", t.table1);
  section("t_{n,n+1} (TypeA: t_{n+1,n} = -t_{n,n+1}; TypeB: t_{n+1,n} = t_{n,n+1})", t.table4);
  section("Casimir scalars", t.table6);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

inline io::json outcome_to_json(const BackboneGraph &g, const SolverOutcome &o) {
  io::json comps = io::json::array();
  for (const auto &c : o.components) {
    io::json names = io::json::array();
    for (auto i : c.blocks) names.push_back(g.name(i));
    comps.push_back({{"label", c.label()}, {"blocks", names}});
  }
  io::json out{{"verdict", verdict_name(o.verdict)}, {"components", comps}};
  if (o.witness) {
    io::json blocks = io::json::array();
    for (auto i : o.witness->blocks) blocks.push_back(g.name(i));
    out["witness"] = {{"kind", witness_name(o.witness->kind)}, {"blocks", blocks}, {"detail", o.witness->detail}};
  }
  if (o.verdict == Verdict::Underdetermined) out["degrees_of_freedom"] = o.degrees_of_freedom;
  if (o.t_values) {
    io::json t = io::json::array();
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      t.push_back({{"edge", {g.name(g.edges[e].p), g.name(g.edges[e].q)}},
                   {"t_pq", (*o.t_values)[e].t_pq},
                   {"t_qp", (*o.t_values)[e].t_qp},
                   {"product", to_string((*o.x_values)[e])}});
    out["t"] = t;
  }
  io::json mult = io::json::object();
  for (const auto &[label, count] : o.multiplicities)
    if (count > 1) mult[label.to_string()] = count;
  out["duplicates"] = mult;
  return out;
}

inline void print_outcome(const BackboneGraph &g, const SolverOutcome &o, std::ostream &out) {
  out << "verdict      " << verdict_name(o.verdict) << '\n';
  if (o.witness) {
    out << "witness      " << witness_name(o.witness->kind);
    if (!o.witness->blocks.empty()) {
      out << " at";
      for (auto i : o.witness->blocks) out << ' ' << g.name(i);
    }
    out << "\n             " << o.witness->detail << '\n';
  }
  if (o.verdict == Verdict::Underdetermined) out << "free         " << o.degrees_of_freedom << '\n';
  out << "components   " << o.components.size() << '\n';
  for (const auto &c : o.components) {
    out << "  " << c.label() << ':';
    for (auto i : c.blocks) out << ' ' << g.name(i) << g.blocks[i].to_string();
    out << '\n';
  }
  if (o.t_values) {
    out << "t values\n";
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto [p, q] = g.edges[e];
      const Rat &x = (*o.x_values)[e];
      out << "  " << g.name(p) << '-' << g.name(q) << "  t_PQ " << signed_surd((*o.t_values)[e].t_pq, x) << "  t_QP "
          << signed_surd((*o.t_values)[e].t_qp, x) << "  t_PQ t_QP = " << to_string(x) << '\n';
    }
  }
  for (const auto &[label, count] : o.multiplicities)
    if (count > 1) out << "duplicate    " << label.to_string() << " x" << count << '\n';
}

inline int cmd_validate(const std::string &path, const Options &opt, std::ostream &out, std::ostream &err) {
  io::BackboneDocument doc;
  try {
    doc = io::backbone_document_from_json(io::read_json_file(path));
  } catch (const io::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  SolverOptions so;
  so.numeric_tolerance = opt.tolerance;
  const auto o = solve_and_verify(doc.graph, so);
  if (opt.format == Format::Json)
    out << outcome_to_json(doc.graph, o).dump(1) << '\n';
  else
    print_outcome(doc.graph, o, out);
  if (!opt.out_path.empty()) io::write_json_file(opt.out_path, outcome_to_json(doc.graph, o));
  return o.verdict == Verdict::Valid ? kExitOk : kExitFailed;
}

} // namespace dsirrep::cli
