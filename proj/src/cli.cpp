#include "jetforge/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "jetforge/io.hpp"

namespace jetforge::cli {
namespace {

using io::json;

std::vector<double> parse_point(const std::string& text, const char* flag) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError(std::string(flag) + ": empty coordinate in '" + text + "'");
    item = item.substr(b, e - b + 1);
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (end != item.c_str() + item.size()) throw UsageError(std::string(flag) + ": malformed number '" + item + "'");
    v.push_back(x);
  }
  if (v.empty()) throw UsageError(std::string(flag) + ": no coordinates given");
  return v;
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(item);
  return v;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string text_matrix(const Eigen::MatrixXd& a) {
  std::string s = "[";
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    s += r ? ", [" : "[";
    for (Eigen::Index c = 0; c < a.cols(); ++c) s += (c ? ", " : "") + num(a(r, c));
    s += "]";
  }
  return s + "]";
}

std::string text_vector(const Eigen::VectorXd& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + ")";
}

std::string text_values(std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + "]";
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Collects the human-readable lines and the JSON report of one run.
struct Output {
  std::string text;
  json report;

  void line(const std::string& s) { text += s + "\n"; }
};

void emit(const Command& cmd, const Output& o, std::ostream& out) {
  if (cmd.json)
    out << o.report.dump(2) << "\n";
  else
    out << o.text;
  if (!cmd.out.empty()) {
    std::ofstream f(cmd.out);
    if (!f) throw UsageError("cannot write '" + cmd.out + "'");
    f << o.report.dump(2) << "\n";
  }
}

Eigen::VectorXd require_point(const Command& cmd, int m) {
  if (!cmd.point) throw UsageError("--point is required");
  if (static_cast<int>(cmd.point->size()) != m)
    throw UsageError("--point has " + std::to_string(cmd.point->size()) + " coordinates, expected " +
                     std::to_string(m));
  return to_vector(*cmd.point);
}

void text_jet(Output& o, const Jet2& j) {
  o.line("lin  = " + text_matrix(j.lin));
  o.line("quad = " + text_values(j.quad.data()));
}

int run_jet(const Command& cmd, Output& o) {
  Jet2 r;
  if (cmd.subverb == "at") {
    const PolyMap p = io::decode_polymap(io::load_file(cmd.map));
    r = jet_at(p, require_point(cmd, p.m()));
  } else if (cmd.subverb == "compose") {
    r = compose(io::decode_jet(io::load_file(cmd.a)), io::decode_jet(io::load_file(cmd.b)));
  } else {
    r = invert(io::decode_jet(io::load_file(cmd.in)));
  }
  o.report = io::encode(r);
  text_jet(o, r);
  return kExitOk;
}

bool is_gl1(const json& j) { return j.is_object() && j.contains("a") && j.contains("g"); }

int run_group(const Command& cmd, Output& o) {
  const auto text_d2 = [&](const D2Elem& e) {
    o.line("phi1 = " + text_matrix(e.phi1));
    o.line("phi2 = " + text_values(e.phi2.data()));
  };
  const auto text_gl1 = [&](const GL1Elem& e) {
    o.line("g = " + text_matrix(e.g));
    o.line("a = " + text_values(e.a.data()));
  };
  if (cmd.subverb == "mul" || cmd.subverb == "inv") {
    const json first = io::load_file(cmd.subverb == "mul" ? cmd.a : cmd.in);
    if (is_gl1(first)) {
      const GL1Elem r = cmd.subverb == "mul" ? gl1_mul(io::decode_gl1(first), io::decode_gl1(io::load_file(cmd.b)))
                                             : gl1_inv(io::decode_gl1(first));
      o.report = io::encode(r);
      text_gl1(r);
    } else {
      const D2Elem r = cmd.subverb == "mul" ? d2_mul(io::decode_d2(first), io::decode_d2(io::load_file(cmd.b)))
                                            : d2_inv(io::decode_d2(first));
      o.report = io::encode(r);
      text_d2(r);
    }
  } else if (cmd.subverb == "to-alg") {
    const AlgebraicCoords c = to_algebraic(io::decode_d2(io::load_file(cmd.in)));
    o.report = io::encode(c);
    o.line("g = " + text_matrix(c.g));
    o.line("t = " + text_values(c.t.data()));
  } else {
    const D2Elem r = from_algebraic(io::decode_algebraic(io::load_file(cmd.in)));
    o.report = io::encode(r);
    text_d2(r);
  }
  return kExitOk;
}

int run_prolong(const Command& cmd, Output& o) {
  if (cmd.subverb == "algebra") {
    if (cmd.in.empty() == cmd.builtin.empty()) throw UsageError("prolong algebra: give exactly one of --in, --builtin");
    if (!cmd.builtin.empty() && cmd.builtin_m < 1) throw UsageError("prolong algebra: --builtin needs --m >= 1");
    const MatrixLieAlgebra g = cmd.in.empty() ? MatrixLieAlgebra::builtin(cmd.builtin, cmd.builtin_m)
                                              : io::decode_algebra(io::load_file(cmd.in));
    const ProlongationBasis p = first_prolongation(g);
    o.report = io::encode(p);
    o.report["kind"] = "prolongation";
    o.report["algebra_dim"] = g.dim();
    o.report["closure_defect"] = g.closure_defect();
    o.line("m = " + std::to_string(g.m()));
    o.line("algebra dim = " + std::to_string(g.dim()));
    o.line("dim = " + std::to_string(p.dim()));
    for (int i = 0; i < p.dim(); ++i)
      o.line("t[" + std::to_string(i) + "] = " + text_values(p.elements[static_cast<std::size_t>(i)].data()));
    return kExitOk;
  }
  const auto grp = std::make_shared<const GroupDescriptor>(io::decode_group(io::load_file(cmd.group)));
  const int m = grp->m();
  const int alg = grp->algebra().dim();
  const int second = grp->holonomic() ? grp->prolongation().dim() : m * alg;
  o.report = io::encode(*grp);
  o.report["kind"] = "group_prolongation";
  o.report["algebra_dim"] = alg;
  o.report["prolongation_dim"] = grp->prolongation().dim();
  o.report["g1_dim"] = alg + second;
  o.report["warnings"] = grp->warnings();
  o.line("group = " + to_string(grp->kind()) + "(" + std::to_string(m) + ")" +
         (grp->holonomic() ? " holonomic" : " nonholonomic"));
  o.line("dim g = " + std::to_string(alg));
  o.line("dim g(1) = " + std::to_string(grp->prolongation().dim()));
  o.line("dim G1 = " + std::to_string(alg + second));
  for (const auto& w : grp->warnings()) o.line("warning: " + w);
  if (!cmd.element.empty()) {
    const D2Elem e = io::decode_d2(io::load_file(cmd.element));
    const bool member = g1_membership(e, *grp, effective_tol(cmd, kMemberTol));
    o.report["element_member"] = member;
    o.line(std::string("element in G1: ") + (member ? "yes" : "no"));
  }
  return kExitOk;
}

int run_bundle(const Command& cmd, Output& o) {
  const PolyAtlas atlas = io::decode_atlas(io::load_file(cmd.atlas));
  const std::uint64_t seed = cmd.seed.value_or(0);
  if (cmd.subverb == "glue") {
    if (cmd.from.empty() || cmd.to.empty()) throw UsageError("bundle glue: --from and --to are required");
    const D2Elem g = gluing_jet(atlas, cmd.from, cmd.to, require_point(cmd, atlas.m()));
    o.report = io::encode(g);
    o.line("phi1 = " + text_matrix(g.phi1));
    o.line("phi2 = " + text_values(g.phi2.data()));
    return kExitOk;
  }
  if (cmd.subverb == "cocycle") {
    const double tol = effective_tol(cmd, kTestEps);
    std::vector<CocycleReport> reps;
    if (!cmd.charts.empty()) {
      if (cmd.charts.size() != 3) throw UsageError("--charts needs three chart ids");
      reps.push_back(cocycle_check(atlas, cmd.charts[0], cmd.charts[1], cmd.charts[2], cmd.samples, seed, tol));
    } else {
      reps = cocycle_check_all(atlas, cmd.samples, seed, tol);
    }
    double worst = 0.0;
    bool ok = true;
    json all = json::array();
    for (const auto& r : reps) {
      worst = std::max(worst, r.max_residual);
      ok = ok && r.passed();
      all.push_back(io::encode(r));
      o.line(r.a + "," + r.b + "," + r.c + ": " +
             (r.skipped ? "skipped (" + r.notice + ")" : "max residual " + num(r.max_residual)));
    }
    o.report = {{"kind", "cocycle_summary"}, {"triples", std::move(all)}, {"max_residual", worst}, {"passed", ok}};
    o.line("max residual = " + num(worst));
    o.line(std::string("cocycle ") + (ok ? "holds" : "FAILS") + " at tol " + num(tol));
    return ok ? kExitOk : kExitMath;
  }
  const GroupDescriptor grp = io::decode_group(io::load_file(cmd.group));
  const ReductionReport r = reduction_check(atlas, grp, cmd.samples, seed, effective_tol(cmd, kMemberTol));
  o.report = io::encode(r);
  for (const auto& ov : r.overlaps)
    o.line(ov.from + "->" + ov.to + ": " +
           (ov.skipped ? "skipped" : (ov.passed ? "pass" : "FAIL")) + " (member residual " +
           num(ov.max_member_residual) + ", slot residual " + num(ov.max_slot_residual) + ")");
  o.line("integrable " + r.group + "(" + std::to_string(grp.m()) + "): " + (r.integrable() ? "yes" : "no"));
  return kExitOk;
}

struct Located {
  ZeroSearch zero;
  std::optional<SingularityReport> report;
};

Located locate_and_analyze(const PolyVectorField& v, const json& file, const std::optional<std::vector<double>>& seed) {
  Located l;
  if (!seed && file.contains("point")) {
    l.zero.x = io::decode_vector(file["point"], "point");
    if (l.zero.x.size() != v.m()) throw UsageError("field 'point' has the wrong dimension");
    l.zero.converged = true;
    l.zero.message = "point given in field file";
  } else {
    Eigen::VectorXd s = seed ? to_vector(*seed) : Eigen::VectorXd::Zero(v.m());
    if (s.size() != v.m()) throw UsageError("seed has the wrong dimension");
    l.zero = find_zero(v, s);
  }
  if (l.zero.converged) l.report = analyze(v, l.zero.x);
  return l;
}

void text_report(Output& o, const SingularityReport& r, const std::string& prefix) {
  o.line(prefix + "x0 = " + text_vector(r.x0));
  o.line(prefix + "|V(x0)| = " + num(r.residual));
  if (r.regular) {
    o.line(prefix + r.note);
    return;
  }
  o.line(prefix + "L = " + text_matrix(r.linearization));
  o.line(prefix + "charpoly = " + text_values(r.charpoly));
  o.line(prefix + "trace = " + num(r.trace));
  o.line(prefix + "det = " + num(r.det));
}

json failure(const std::string& kind, const std::string& message) {
  return {{"kind", "failure"}, {"error", kind}, {"message", message}};
}

int run_singularity(const Command& cmd, Output& o) {
  o.line(std::string("# convention: ") + kActionConvention);
  if (cmd.subverb == "analyze") {
    const json file = io::load_file(cmd.field);
    const PolyVectorField v(io::decode_polymap(file));
    const Located l = locate_and_analyze(v, file, cmd.point);
    if (!l.report) {
      o.report = failure("no_convergence", l.zero.message);
      o.report["zero_search"] = io::encode(l.zero);
      o.line("no zero found: " + l.zero.message + " (last residual " + num(l.zero.residual) + ")");
      return kExitMath;
    }
    o.report = io::encode(*l.report);
    o.report["zero_search"] = io::encode(l.zero);
    text_report(o, *l.report, "");
    return kExitOk;
  }
  const json fa = io::load_file(cmd.a);
  const json fb = io::load_file(cmd.b);
  const PolyVectorField va(io::decode_polymap(fa));
  const PolyVectorField vb(io::decode_polymap(fb));
  if (va.m() != vb.m()) throw UsageError("compare: fields have different dimensions");
  const Located la = locate_and_analyze(va, fa, cmd.seed_a);
  const Located lb = locate_and_analyze(vb, fb, cmd.seed_b);
  if (!la.report || !lb.report) {
    o.report = failure("no_convergence", !la.report ? "field a: " + la.zero.message : "field b: " + lb.zero.message);
    o.line("no zero found: " + o.report["message"].get<std::string>());
    return kExitMath;
  }
  o.report = {{"kind", "comparison_report"}, {"a", io::encode(*la.report)}, {"b", io::encode(*lb.report)}};
  text_report(o, *la.report, "a: ");
  text_report(o, *lb.report, "b: ");
  if (la.report->regular || lb.report->regular) {
    const bool both = la.report->regular && lb.report->regular;
    const Comparison c{both ? Verdict::NotDistinguishedAtOrder1 : Verdict::Distinguished,
                       both ? "both points regular: locally equivalent to d/dx1"
                            : "one point is regular and the other singular"};
    o.report["comparison"] = io::encode(c);
    o.line("verdict: " + to_string(c.verdict) + " (" + c.reason + ")");
    return kExitOk;
  }
  const Comparison c = distinguishable(la.report->linearization, lb.report->linearization);
  o.report["comparison"] = io::encode(c);
  o.line("verdict: " + to_string(c.verdict) + " (" + c.reason + ")");
  return kExitOk;
}

}  // namespace

Command parse_args(const std::vector<std::string>& argv) {
  Command cmd;
  CLI::App app{"jetforge: second-order jets, prolonged groups and singularity invariants", "jetforge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::string tol_text, seed_text, point_text, seed_a_text, seed_b_text, charts_text;
  auto common = [&](CLI::App* s) {
    s->add_option("--tol", tol_text, "Comparison tolerance (overrides JETFORGE_TOL)");
    s->add_option("--out", cmd.out, "Also write the JSON report to this file");
    s->add_flag("--json", cmd.json, "Print the JSON report instead of text");
  };
  auto existing = [](CLI::App* s, const std::string& flag, std::string& target, const std::string& help) {
    return s->add_option(flag, target, help)->check(CLI::ExistingFile);
  };

  auto* jet = app.add_subcommand("jet", "2-jet arithmetic")->require_subcommand(1);
  auto* jet_at_cmd = jet->add_subcommand("at", "2-jet of a polynomial map at a point");
  existing(jet_at_cmd, "--map", cmd.map, "PolyMap file")->required();
  jet_at_cmd->add_option("--point", point_text, "x1,x2,...")->required();
  auto* jet_compose = jet->add_subcommand("compose", "a o b");
  existing(jet_compose, "--a", cmd.a, "outer jet")->required();
  existing(jet_compose, "--b", cmd.b, "inner jet")->required();
  auto* jet_invert = jet->add_subcommand("invert", "inverse jet");
  existing(jet_invert, "--in", cmd.in, "jet")->required();

  auto* group = app.add_subcommand("group", "D2(m) and GL1(m) arithmetic")->require_subcommand(1);
  auto* g_mul = group->add_subcommand("mul", "product a * b");
  existing(g_mul, "--a", cmd.a, "element")->required();
  existing(g_mul, "--b", cmd.b, "element")->required();
  auto* g_inv = group->add_subcommand("inv", "inverse");
  auto* g_to = group->add_subcommand("to-alg", "natural -> algebraic coordinates");
  auto* g_from = group->add_subcommand("from-alg", "algebraic -> natural coordinates");
  for (auto* s : {g_inv, g_to, g_from}) existing(s, "--in", cmd.in, "element")->required();

  auto* prolong = app.add_subcommand("prolong", "first prolongation")->require_subcommand(1);
  auto* p_alg = prolong->add_subcommand("algebra", "prolongation of a matrix Lie algebra");
  existing(p_alg, "--in", cmd.in, "algebra file");
  p_alg->add_option("--builtin", cmd.builtin, "gl, sl, o, co, diag or zero")
      ->check(CLI::IsMember({"gl", "sl", "o", "co", "diag", "zero"}));
  p_alg->add_option("--m", cmd.builtin_m, "dimension for --builtin");
  auto* p_grp = prolong->add_subcommand("group", "prolonged group summary");
  existing(p_grp, "--in", cmd.group, "group descriptor file")->required();
  existing(p_grp, "--element", cmd.element, "D2 element to test for membership in G1");

  auto* bundle = app.add_subcommand("bundle", "coframe bundle over a polynomial atlas")->require_subcommand(1);
  auto* b_glue = bundle->add_subcommand("glue", "gluing jet of a chart change at a point");
  auto* b_cocycle = bundle->add_subcommand("cocycle", "cocycle identity on triple overlaps");
  auto* b_reduce = bundle->add_subcommand("reduce", "integrable G-structure check");
  for (auto* s : {b_glue, b_cocycle, b_reduce}) existing(s, "--atlas", cmd.atlas, "atlas file")->required();
  b_glue->add_option("--from", cmd.from)->required();
  b_glue->add_option("--to", cmd.to)->required();
  b_glue->add_option("--point", point_text, "x1,x2,...")->required();
  b_cocycle->add_option("--charts", charts_text, "a,b,c (default: all triples)");
  existing(b_reduce, "--group", cmd.group, "group descriptor file")->required();
  for (auto* s : {b_cocycle, b_reduce}) {
    s->add_option("--samples", cmd.samples, "sample points per overlap")->check(CLI::PositiveNumber);
    s->add_option("--seed", seed_text, "sampling seed (unsigned integer)");
  }

  auto* sing = app.add_subcommand("singularity", "invariants at zeros of vector fields")->require_subcommand(1);
  auto* s_an = sing->add_subcommand("analyze", "locate a zero and report its invariants");
  existing(s_an, "--field", cmd.field, "field file")->required();
  s_an->add_option("--seed", point_text, "Newton start x1,x2,...");
  auto* s_cmp = sing->add_subcommand("compare", "compare the singularities of two fields");
  existing(s_cmp, "--a", cmd.a, "field file")->required();
  existing(s_cmp, "--b", cmd.b, "field file")->required();
  s_cmp->add_option("--seed-a", seed_a_text, "Newton start for field a");
  s_cmp->add_option("--seed-b", seed_b_text, "Newton start for field b");

  for (auto* top : {jet, group, prolong, bundle, sing})
    for (auto* s : top->get_subcommands({})) common(s);

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    cmd.help = true;
    cmd.help_text = app.help();
    return cmd;
  } catch (const CLI::CallForAllHelp&) {
    cmd.help = true;
    cmd.help_text = app.help("", CLI::AppFormatMode::All);
    return cmd;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (auto* top : {jet, group, prolong, bundle, sing}) {
    if (!*top) continue;
    cmd.verb = top->get_name();
    for (auto* s : top->get_subcommands({}))
      if (*s) cmd.subverb = s->get_name();
  }

  if (!tol_text.empty()) {
    char* end = nullptr;
    const double t = std::strtod(tol_text.c_str(), &end);
    if (end != tol_text.c_str() + tol_text.size() || !(t > 0.0)) throw UsageError("--tol must be a positive number");
    cmd.tol = t;
  }
  if (!seed_text.empty()) {
    std::uint64_t s = 0;
    auto [ptr, ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), s);
    if (ec != std::errc() || ptr != seed_text.data() + seed_text.size())
      throw UsageError("--seed must be an unsigned integer");
    cmd.seed = s;
  }
  if (!point_text.empty()) cmd.point = parse_point(point_text, cmd.verb == "singularity" ? "--seed" : "--point");
  if (!seed_a_text.empty()) cmd.seed_a = parse_point(seed_a_text, "--seed-a");
  if (!seed_b_text.empty()) cmd.seed_b = parse_point(seed_b_text, "--seed-b");
  if (!charts_text.empty()) cmd.charts = split_ids(charts_text);
  return cmd;
}

double effective_tol(const Command& cmd, double fallback) {
  if (cmd.tol) return *cmd.tol;
  if (const char* env = std::getenv("JETFORGE_TOL"); env && *env) {
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    if (*end != '\0' || !(t > 0.0)) throw UsageError("JETFORGE_TOL must be a positive number");
    return t;
  }
  return fallback;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  if (cmd.help) {
    out << cmd.help_text;
    return kExitOk;
  }
  Output o;
  int status = kExitOk;
  try {
    effective_tol(cmd, kTestEps);  // validate the environment override early
    if (cmd.verb == "jet")
      status = run_jet(cmd, o);
    else if (cmd.verb == "group")
      status = run_group(cmd, o);
    else if (cmd.verb == "prolong")
      status = run_prolong(cmd, o);
    else if (cmd.verb == "bundle")
      status = run_bundle(cmd, o);
    else if (cmd.verb == "singularity")
      status = run_singularity(cmd, o);
    else
      throw UsageError("unknown verb '" + cmd.verb + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SingularityError& e) {
    o = Output{};
    o.report = failure("singular", e.what());
    o.report["det"] = e.det();
    o.line("error: " + std::string(e.what()));
    status = kExitMath;
  } catch (const ConsistencyError& e) {
    o = Output{};
    o.report = failure("consistency", e.what());
    o.report["residual"] = e.residual();
    o.line("error: " + std::string(e.what()));
    status = kExitMath;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    emit(cmd, o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return status;
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Command cmd;
  try {
    cmd = parse_args(argv);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return run(cmd, out, err);
}

}  // namespace jetforge::cli
