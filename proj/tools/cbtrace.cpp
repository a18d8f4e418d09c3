#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cb/monopole.hpp"
#include "cb/trace.hpp"
#include "examples.hpp"
#include "parse.hpp"

using nlohmann::json;
using namespace cb;

namespace {

enum Exit { kOk = 0, kVerify = 2, kNonConvergent = 3, kSchema = 4 };

struct Options {
  std::string config;
  double tol = 1e-9;
  bool twist_real = false;
  bool force = false;
  std::string norm = "theorem";
  std::string out;
  bool pretty = false;
};

json cplx(ComplexF z) { return {z.real(), z.imag()}; }

TraceOptions trace_options(const Options& o) {
  TraceOptions t;
  t.tol = o.tol;
  t.force = o.force;
  t.twist = o.twist_real ? TwistConvention::Real : TwistConvention::Imaginary;
  t.norm = o.norm == "bare" ? MeasureNorm::Bare : MeasureNorm::Theorem;
  return t;
}

TheoryConfig need_theory(const Options& o) {
  if (o.config.empty()) throw SchemaError("--config", "this command needs a theory config");
  return load_theory(o.config);
}

json trace_report(const TheoryConfig& t, const TraceResult& r, const Options& o) {
  TraceResult c = r;
  c.convention_scale = twist_for(t, trace_options(o).twist).str();
  json j = c.to_json();
  j["measure_norm"] = to_string(trace_options(o).norm);
  return j;
}

int check_conical_cmd(const Options& o, json& rep) {
  TheoryConfig t = need_theory(o);
  auto c = check_conical(t);
  rep["theory"] = t.label;
  rep["conical"] = c.conical;
  if (!c.conical) rep["witness"] = c.witness;
  rep["margin"] = rational_str(c.margin);
  return kOk;
}

std::string lam_str(const std::vector<long>& l) {
  std::string s = "[";
  for (size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
  return s + "]";
}

int verify_cmd(const Options& o, json& rep) {
  TheoryConfig t = need_theory(o);
  int n = t.rank();
  bool ok = true;
  auto rel = verify_relations(n);
  json checks = json::array();
  for (const auto& c : rel.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  rep["relations"] = {{"ok", rel.ok}, {"checks", checks}, {"notes", rel.notes}};
  ok &= rel.ok;

  GammaState one = ground_state(t);
  if (t.abelian()) {
    json lem = json::array();
    for (int k = 0; k < n; ++k) {
      std::vector<long> e(n, 0), me(n, 0);
      e[k] = 1;
      me[k] = -1;
      for (auto [a, b] : {std::pair{e, me}, std::pair{me, e}}) {
        auto lhs = apply_atom(t, Atom::r(a, true), one);
        auto rhs = apply_atom(t, Atom::r(b, false), one);
        auto eq = state_equal(lhs, rhs);
        ok &= eq.exact;
        lem.push_back({{"relation", "alpha(r" + lam_str(a) + ")|1> = alphabar(r" + lam_str(b) + ")|1>"},
                       {"exact", eq.exact}});
      }
    }
    rep["adjoint_lemma"] = lem;
    if (check_conical(t).conical) {
      TwistAutomorphism g = twist_for(t, trace_options(o).twist);
      std::vector<long> e(n, 0), me(n, 0);
      e[0] = 1;
      me[0] = -1;
      OpExpr re = OpExpr::atom(Atom::r(e)), rme = OpExpr::atom(Atom::r(me));
      OpExpr mu = parse_expr("poly{u1}", n);
      TraceOptions to = trace_options(o);
      auto tw = verify_twisted_property(t, {{re, rme}, {re * mu, rme}, {mu, mu * mu}}, g, to);
      json pairs = json::array();
      for (const auto& p : tw.pairs)
        pairs.push_back({{"a", p.a}, {"b", p.b}, {"lhs", cplx(p.lhs)}, {"rhs", cplx(p.rhs)}, {"residual", p.residual},
                         {"ok", p.ok}});
      auto tr_e = trace_word(t, re, to);
      auto tr_me = trace_word(t, rme, to);
      bool zeros = tr_e.exact_zero && tr_me.exact_zero;
      rep["twisted_trace"] = {{"automorphism", g.str()},
                              {"pairs", pairs},
                              {"lines", tw.lines},
                              {"charged_traces_exactly_zero", zeros},
                              {"ok", tw.ok && zeros}};
      ok &= tw.ok && zeros;
    }
  } else {
    auto blocks = t.roots().block_sizes;
    json adj = json::array();
    int off = 0;
    for (int sz : blocks) {
      if (sz > 1) {
        std::vector<long> lam(n, 0);
        lam[off] = 1;
        auto a = check_w0_adjoint(t, lam, o.force);
        bool ok_here = a.ok;
        json jb = {{"lambda", lam}, {"ket", a.ket && a.ket_swapped}, {"lines", a.lines}};
        if (a.bra_lhs != ComplexF(0) || a.bra_rhs != ComplexF(0)) {
          jb["bra_direct"] = a.bra_direct;
          jb["bra_up_to_conjugation"] = a.bra_conjugate;
          ok_here &= a.bra_conjugate;
        }
        jb["ok"] = ok_here;
        ok &= ok_here;
        adj.push_back(jb);
      }
      off += sz;
    }
    rep["w0_adjoint"] = adj;
  }
  rep["ok"] = ok;
  return ok ? kOk : kVerify;
}

int apply_cmd(const Options& o, const std::string& text, json& rep) {
  TheoryConfig t = need_theory(o);
  OpExpr e = parse_expr(text, t.rank());
  rep["expression"] = e.str(t.rank());
  if (e.homogeneous(t.rank())) rep["charge"] = e.charge(t.rank());
  GammaState s = apply_expr(t, e, ground_state(t));
  rep["state"] = state_to_json(s);
  rep["display"] = s.str();
  return kOk;
}

int trace_cmd(const Options& o, const std::string& text, bool poly, json& rep) {
  TheoryConfig t = need_theory(o);
  TraceOptions to = trace_options(o);
  to.throw_on_nonconvergence = false;
  TraceResult r = poly ? trace_polynomial(t, parse_poly(text, t.rank()), to) : trace_word(t, parse_expr(text, t.rank()), to);
  rep = trace_report(t, r, o);
  rep["input"] = text;
  return r.quad.converged ? kOk : kNonConvergent;
}

int dump_measure_cmd(const Options& o, json& rep) {
  TheoryConfig t = need_theory(o);
  TraceOptions to = trace_options(o);
  Measure m = build_measure(t, to.twist, to.norm);
  rep["theory"] = theory_to_json(t);
  rep["measure"] = m.to_json();
  rep["display"] = m.str();
  auto c = check_conical(t);
  rep["conical"] = c.conical;
  if (!c.conical) rep["witness"] = c.witness;
  return kOk;
}

int reproduce_cmd(const Options& o, const std::string& id, json& rep) {
  Reproduction r;
  if (id == "gl2-example")
    r = reproduce_gl2(o.force, o.tol);
  else if (id == "mu-chain")
    r = reproduce_mu_chain(o.tol);
  else if (id == "abelian-measure")
    r = reproduce_abelian_measure(o.tol);
  else
    throw SchemaError("reproduce", "unknown example '" + id + "' (gl2-example, mu-chain, abelian-measure)");
  rep = r.report;
  rep["ok"] = r.ok;
  return r.ok ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coulomb branch operator actions and twisted traces"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "theory config (JSON)");
  app.add_option("--tol", o.tol, "relative tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--twist-real", o.twist_real, "use exp(2 pi zeta) instead of exp(2 pi i zeta)");
  app.add_option("--norm", o.norm, "measure normalization")->check(CLI::IsMember({"theorem", "bare"}));
  app.add_flag("--force", o.force, "integrate non-conical theories anyway");
  app.add_option("--out", o.out, "write the report here instead of stdout");
  app.add_flag("--pretty", o.pretty, "indented JSON");

  std::string arg;
  auto* c_con = app.add_subcommand("check-conical", "test the conical condition");
  auto* c_ver = app.add_subcommand("verify-relations", "operator relations and adjoint lemmas");
  auto* c_app = app.add_subcommand("apply", "apply an operator expression to |1> or |v'>");
  c_app->add_option("expr", arg)->required();
  auto* c_tr = app.add_subcommand("trace", "twisted trace of an operator expression");
  c_tr->add_option("expr", arg)->required();
  auto* c_tp = app.add_subcommand("trace-poly", "twisted trace of a Cartan polynomial");
  c_tp->add_option("poly", arg)->required();
  auto* c_rep = app.add_subcommand("reproduce", "worked examples: gl2-example, mu-chain, abelian-measure");
  c_rep->add_option("example", arg)->required();
  auto* c_dm = app.add_subcommand("dump-measure", "the trace measure of the theory");
  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kSchema;
  }

  json rep;
  int rc = kOk;
  try {
    if (c_con->parsed())
      rc = check_conical_cmd(o, rep);
    else if (c_ver->parsed())
      rc = verify_cmd(o, rep);
    else if (c_app->parsed())
      rc = apply_cmd(o, arg, rep);
    else if (c_tr->parsed())
      rc = trace_cmd(o, arg, false, rep);
    else if (c_tp->parsed())
      rc = trace_cmd(o, arg, true, rep);
    else if (c_rep->parsed())
      rc = reproduce_cmd(o, arg, rep);
    else if (c_dm->parsed())
      rc = dump_measure_cmd(o, rep);
  } catch (const NotConical& e) {
    rep = {{"error", e.what()}, {"conical", false}, {"witness", e.witness}};
    rc = kVerify;
  } catch (const NonConvergent& e) {
    rep = {{"error", e.what()}, {"converged", false}, {"abs_error", e.result.abs_error}};
    rc = kNonConvergent;
  } catch (const SchemaError& e) {
    rep = {{"error", e.what()}, {"path", e.path}};
    rc = kSchema;
  } catch (const ParseError& e) {
    rep = {{"error", e.what()}, {"position", e.pos}};
    rc = kSchema;
  } catch (const json::exception& e) {
    rep = {{"error", std::string("config: ") + e.what()}};
    rc = kSchema;
  } catch (const CancellationFailure& e) {
    rep = {{"error", e.what()}};
    rc = kVerify;
  } catch (const std::invalid_argument& e) {
    rep = {{"error", e.what()}};
    rc = kSchema;
  }

  std::string text = rep.dump(o.pretty ? 2 : -1) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "cannot write " << o.out << "\n";
      return kSchema;
    }
    f << text;
  }
  if (rc != kOk && rep.contains("error")) std::cerr << rep["error"].get<std::string>() << "\n";
  return rc;
}
