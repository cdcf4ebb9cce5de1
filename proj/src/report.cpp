#include "koszul/report.hpp"

#include <json.hpp>
#include <sstream>

namespace koszul {

namespace {

const Derivation& named_der(const ModelFile& m, const std::string& name) {
  auto it = m.derivations.find(name);
  if (it == m.derivations.end()) throw kernel_error("unknown derivation '" + name + "'");
  return it->second;
}

const Polynomial& named_poly(const ModelFile& m, const std::string& name) {
  auto it = m.polys.find(name);
  if (it == m.polys.end()) throw kernel_error("unknown polynomial '" + name + "'");
  return it->second;
}

SuperLieAlgebra named_algebra(const ModelFile& m, const std::string& name) {
  auto it = m.consts.find(name);
  if (it == m.consts.end()) throw kernel_error("unknown structure-constant table '" + name + "'");
  return it->second.algebra();
}

PoissonBivector named_bivec(const ModelFile& m, const std::string& name) {
  auto it = m.bivecs.find(name);
  if (it == m.bivecs.end()) throw kernel_error("unknown bivector '" + name + "'");
  return it->second.bivector(m.ctx);
}

ConstantSymplecticForm named_form(const ModelFile& m, const std::string& name) {
  auto it = m.forms.find(name);
  if (it == m.forms.end()) throw kernel_error("unknown form '" + name + "'");
  return it->second.form(m.ctx);
}

std::vector<std::size_t> gen_list(const ModelFile& m, const std::string& csv) {
  std::vector<std::size_t> out;
  std::string cur;
  std::istringstream is(csv);
  while (std::getline(is, cur, ',')) {
    if (cur.empty()) continue;
    out.push_back(m.ctx->index_of(cur));
  }
  return out;
}

void print_derivation(Report& r, const ContextPtr& ctx, const Derivation& d,
                      const std::string& label) {
  r.output.push_back(label + " deg=" + d.degree().to_string());
  for (std::size_t i = 0; i < ctx->size(); ++i)
    if (!d.value(i).is_zero())
      r.output.push_back("  " + ctx->gen(i).name + " -> " + d.value(i).to_string());
}

void check_squares(Report& r, const Derivation& Q, const std::string& name) {
  CheckResult c{name, true, ""};
  for (std::size_t i = 0; i < Q.context()->size(); ++i) {
    Polynomial sq = Q.apply(Q.value(i));
    if (!sq.is_zero()) {
      c.pass = false;
      c.witness = "Q(Q(" + Q.context()->gen(i).name + ")) = " + sq.to_string();
      break;
    }
  }
  r.checks.push_back(std::move(c));
}

}  // namespace

Report run_command(const std::string& cmd, const ModelFile& m, const CommandFlags& f) {
  Report r;
  r.command = cmd;

  if (cmd == "print") {
    std::istringstream is(print_model(m));
    std::string line;
    while (std::getline(is, line)) r.output.push_back(line);
    return r;
  }
  if (cmd == "check-q") {
    const Derivation& Q = named_der(m, f.der);
    if (!Q.odd()) throw kernel_error("derivation '" + f.der + "' is not odd-total");
    check_squares(r, Q, "squares-to-zero(" + f.der + ")");
    return r;
  }
  if (cmd == "jacobi") {
    SuperLieAlgebra g = named_algebra(m, f.table);
    auto bad = jacobiator_oracle(g);
    CheckResult c{"jacobiator(" + f.table + ")", bad.empty(), ""};
    if (!bad.empty()) {
      const auto& e = bad.front();
      c.witness = "Jac(e" + std::to_string(e.b + 1) + ",e" + std::to_string(e.c + 1) + ",e" +
                  std::to_string(e.d + 1) + ")^" + std::to_string(e.a + 1) + " = " +
                  to_string(e.value);
    }
    r.checks.push_back(std::move(c));
    return r;
  }
  if (cmd == "psm-lift") {
    PsmLift lift = psm_lift(named_bivec(m, f.bivec));
    r.output.push_back("Pi = " + lift.hamiltonian.to_string());
    print_derivation(r, lift.cot.phase, lift.Q, "Q");
    check_squares(r, lift.Q, "squares-to-zero(X_Pi)");
    const bool schouten_ok = lift.pi.schouten_obstruction().empty();
    r.checks.push_back({"schouten-jacobi(" + f.bivec + ")", schouten_ok, ""});
    return r;
  }
  if (cmd == "hamiltonian") {
    ConstantSymplecticForm w = named_form(m, f.form);
    Derivation X = hamiltonian_vf(w, named_poly(m, f.poly));
    print_derivation(r, m.ctx, X, "X_" + f.poly);
    return r;
  }
  if (cmd == "bracket") {
    ConstantSymplecticForm w = named_form(m, f.form);
    Polynomial b = poisson_bracket(w, named_poly(m, f.poly), named_poly(m, f.poly2));
    r.output.push_back("(" + f.poly + "," + f.poly2 + ") = " + b.to_string());
    return r;
  }
  if (cmd == "master") {
    ConstantSymplecticForm w = named_form(m, f.form);
    const Polynomial& S = named_poly(m, f.poly);
    Polynomial bb = poisson_bracket(w, S, S);
    CheckResult c{"master-equation(" + f.poly + ")", bb.is_zero(), ""};
    if (!c.pass) c.witness = "(S,S) = " + bb.to_string();
    r.checks.push_back(std::move(c));
    return r;
  }
  if (cmd == "berezin") {
    auto mu = BerezinianMeasure::make(m.ctx, gen_list(m, f.gens));
    Polynomial b = berezin(named_poly(m, f.poly), mu);
    r.output.push_back("integral = " + b.to_string());
    return r;
  }
  if (cmd == "measure-check") {
    const Derivation& Q = named_der(m, f.der);
    std::vector<std::size_t> gens;
    if (f.gens.empty()) {
      // default measure: all odd generators of positive ghost degree
      for (std::size_t i = 0; i < m.ctx->size(); ++i)
        if (m.ctx->odd(i) && gh(m.ctx->gen(i).degree) > 0) gens.push_back(i);
    } else {
      gens = gen_list(m, f.gens);
    }
    auto res = measure_admissible(Q, BerezinianMeasure::make(m.ctx, gens));
    CheckResult c{"measure-admissible", res.admissible, ""};
    if (!res.admissible) {
      c.witness = res.reason;
      if (res.witness) c.witness += "; witness f = " + res.witness->to_string();
    }
    r.checks.push_back(std::move(c));
    return r;
  }
  if (cmd == "top-cohomology") {
    SuperLieAlgebra g = named_algebra(m, f.table);
    const bool ok = top_cohomology_is_line(g);
    r.checks.push_back({"top-cohomology-is-line(" + f.table + ")", ok, ""});
    return r;
  }
  if (cmd == "odd-lift") {
    PsmLift lift = psm_lift(named_bivec(m, f.bivec));
    OddSourceLift ol = odd_source_lift(lift.Q, lift.cot.omega, f.m);
    r.output.push_back("omega_ext = " + ol.omega_ext.function().to_string());
    print_derivation(r, ol.components, ol.Q_ext, "Q_ext");
    check_squares(r, ol.Q_ext, "squares-to-zero(Q_ext)");
    return r;
  }
  if (cmd == "susy-expand") {
    SusyExpansion ex = susy_expand(named_bivec(m, f.bivec), f.m);
    r.output.push_back("integrand = " + ex.result.to_string());
    return r;
  }
  if (cmd == "cs-extend") {
    SuperLieAlgebra g = cs_extend_algebra(named_algebra(m, f.table), f.m);
    r.output.push_back("dimension = " + std::to_string(g.dim()));
    auto bad = jacobiator_oracle(g);
    r.checks.push_back({"jacobiator(extension)", bad.empty(), ""});
    return r;
  }
  if (cmd == "defect") {
    if (!f.bivec.empty()) {
      PsmScenario sc = psm_scenario(named_bivec(m, f.bivec), false);
      auto defs = psm_eom_defect(sc);
      for (std::size_t q = 0; q < defs.size(); ++q)
        r.output.push_back("F(" + sc.lift.cot.phase->gen(q).name + ") = " +
                           defs[q].to_string());
    } else {
      CsScenario sc = cs_scenario(named_algebra(m, f.table));
      auto defs = cs_eom_defect(sc);
      for (std::size_t q = 0; q < defs.size(); ++q)
        r.output.push_back("F(" + sc.ce.ctx->gen(q).name + ") = " + defs[q].to_string());
    }
    return r;
  }
  if (cmd == "gauge-var") {
    if (!f.bivec.empty()) {
      PsmScenario sc = psm_scenario(named_bivec(m, f.bivec), true);
      PsmGaugeData gv = psm_gauge_variation(sc);
      for (std::size_t i = 0; i < gv.x.size(); ++i)
        r.output.push_back("delta(" + gv.total->gen(gv.x[i]).name + ") = " +
                           substitute(gv.variation.value(gv.x[i]), gv.to_fields).to_string());
      for (std::size_t i = 0; i < gv.p.size(); ++i)
        r.output.push_back("delta(" + gv.total->gen(gv.p[i]).name + ") = " +
                           substitute(gv.variation.value(gv.p[i]), gv.to_fields).to_string());
    } else {
      CsScenario sc = cs_scenario(named_algebra(m, f.table));
      CsGaugeData gv = cs_gauge_variation(sc);
      for (std::size_t a = 0; a < gv.xi.size(); ++a)
        r.output.push_back("delta(A" + std::to_string(a + 1) + ") = " +
                           gv.variation.value(gv.xi[a]).to_string());
    }
    return r;
  }
  if (cmd == "gauge-fix") {
    PoissonBivector pi = named_bivec(m, f.bivec);
    Matrix mat(pi.dim(), std::vector<Rational>(pi.dim(), Rational(0)));
    for (std::size_t i = 0; i < pi.dim(); ++i)
      for (std::size_t j = 0; j < pi.dim(); ++j) {
        const Polynomial& c = pi.comp(i, j);
        if (c.is_zero()) continue;
        if (c.term_count() != 1 || !c.terms().begin()->first.is_one())
          throw kernel_error("gauge-fix requires a constant bivector");
        mat[i][j] = c.terms().begin()->second;
      }
    GaugeFixResult res = source_susy_gauge_fix(mat);
    for (std::size_t i = 0; i < res.epsilon.size(); ++i)
      r.output.push_back("eps" + std::to_string(i + 1) + " = " + res.epsilon[i].to_string());
    CheckResult c{"residual-vanishes-mod-eom", res.residual_zero, ""};
    if (!res.residual_zero)
      for (const auto& p : res.residual)
        if (!p.is_zero()) c.witness = p.to_string();
    r.checks.push_back(std::move(c));
    return r;
  }
  throw kernel_error("unknown command '" + cmd + "'");
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << "command: " << r.command << "\n";
  for (const auto& line : r.output) os << line << "\n";
  for (const auto& c : r.checks) {
    os << (c.pass ? "PASS" : "FAIL") << " " << c.name;
    if (!c.witness.empty()) os << " [" << c.witness << "]";
    os << "\n";
  }
  os << "status: " << (r.all_pass() ? "pass" : "fail") << "\n";
  os << "# elapsed_ms: " << r.elapsed_ms << "\n";
  return os.str();
}

std::string report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["schema"] = "koszul-report/1";
  j["command"] = r.command;
  j["output"] = r.output;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["witness"] = c.witness;
    j["checks"].push_back(cj);
  }
  j["status"] = r.all_pass() ? "pass" : "fail";
  return j.dump(2) + "\n";
}

}  // namespace koszul
