#include "jetforge/io.hpp"

#include <fstream>

#include "jetforge/errors.hpp"
#include "jetforge/poly_parser.hpp"

namespace jetforge::io {
namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw DomainError(std::string("expected a JSON object holding '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) throw DomainError(std::string("missing field '") + name + "'");
  return *it;
}

int get_int(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) throw DomainError(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

double get_number(const json& v, const char* what) {
  if (!v.is_number()) throw DomainError(std::string(what) + ": expected a number");
  return v.get<double>();
}

std::vector<double> get_numbers(const json& v, const char* what) {
  if (!v.is_array()) throw DomainError(std::string(what) + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(get_number(x, what));
  return out;
}

std::vector<std::string> get_strings(const json& v, const char* what) {
  if (!v.is_array()) throw DomainError(std::string(what) + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw DomainError(std::string(what) + ": expected strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

void require_m(const json& j, int expected, const char* what) {
  if (get_int(j, "m") != expected) throw DomainError(std::string(what) + ": 'm' does not match the data");
}

}  // namespace

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

json encode(const Eigen::MatrixXd& a) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json encode_vector(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json encode(const SymCube& t) {
  return {{"m", t.m()}, {"n", t.n()}, {"data", std::vector<double>(t.data().begin(), t.data().end())}};
}

json encode(const Cube& c) {
  return {{"m", c.m()}, {"n", c.n()}, {"data", std::vector<double>(c.data().begin(), c.data().end())}};
}

json encode(const Jet2& j) { return {{"m", j.m()}, {"n", j.n()}, {"lin", encode(j.lin)}, {"quad", encode(j.quad)}}; }

json encode(const D2Elem& e) { return {{"m", e.m()}, {"phi1", encode(e.phi1)}, {"phi2", encode(e.phi2)}}; }

json encode(const GL1Elem& e) { return {{"m", e.m()}, {"g", encode(e.g)}, {"a", encode(e.a)}}; }

json encode(const AlgebraicCoords& c) {
  return {{"m", static_cast<int>(c.g.rows())}, {"g", encode(c.g)}, {"t", encode(c.t)}};
}

json encode(const PolyMap& p) { return {{"m", p.m()}, {"components", p.to_strings()}}; }

json encode(const MatrixLieAlgebra& g) {
  json basis = json::array();
  for (const auto& b : g.basis()) basis.push_back(encode(b));
  return {{"m", g.m()}, {"basis", std::move(basis)}};
}

json encode(const ProlongationBasis& p) {
  json el = json::array();
  for (const auto& e : p.elements) el.push_back(encode(e));
  return {{"m", p.m}, {"dim", p.dim()}, {"elements", std::move(el)}};
}

json encode(const GroupDescriptor& g) {
  json j = {{"name", to_string(g.kind())}, {"m", g.m()}, {"holonomic", g.holonomic()}};
  if (g.kind() == GroupKind::CUSTOM) j["algebra"] = encode(g.algebra());
  return j;
}

json encode(const ZeroSearch& z) {
  return {{"converged", z.converged},
          {"x", encode_vector(z.x)},
          {"residual", z.residual},
          {"iterations", z.iterations},
          {"message", z.message}};
}

json encode(const SingularityReport& r) {
  json j = {{"kind", "singularity_report"},
            {"convention", kActionConvention},
            {"x0", encode_vector(r.x0)},
            {"residual", r.residual},
            {"regular", r.regular},
            {"note", r.note}};
  if (!r.regular) {
    j["L"] = encode(r.linearization);
    j["charpoly"] = r.charpoly;
    j["trace"] = r.trace;
    j["det"] = r.det;
  }
  return j;
}

json encode(const Comparison& c) {
  return {{"kind", "comparison"}, {"verdict", to_string(c.verdict)}, {"reason", c.reason}};
}

json encode(const CocycleReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back(encode_vector(p));
  json j = {{"kind", "cocycle_report"},
            {"charts", {r.a, r.b, r.c}},
            {"tol", r.tol},
            {"skipped", r.skipped},
            {"points", std::move(pts)},
            {"residuals", r.residuals},
            {"max_residual", r.max_residual},
            {"passed", r.passed()}};
  if (!r.notice.empty()) j["notice"] = r.notice;
  return j;
}

json encode(const ReductionReport& r) {
  json ov = json::array();
  for (const auto& o : r.overlaps) {
    json e = {{"from", o.from},
              {"to", o.to},
              {"points", o.points},
              {"max_member_residual", o.max_member_residual},
              {"max_slot_residual", o.max_slot_residual},
              {"skipped", o.skipped},
              {"passed", o.passed}};
    if (!o.notice.empty()) e["notice"] = o.notice;
    ov.push_back(std::move(e));
  }
  return {{"kind", "reduction_report"},
          {"group", r.group},
          {"tol", r.tol},
          {"overlaps", std::move(ov)},
          {"integrable", r.integrable()}};
}

Eigen::MatrixXd decode_matrix(const json& j, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXd a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = get_numbers(j[static_cast<std::size_t>(r)], what);
    if (static_cast<Eigen::Index>(row.size()) != cols) throw DomainError(std::string(what) + ": ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) a(r, c) = row[static_cast<std::size_t>(c)];
  }
  return a;
}

Eigen::VectorXd decode_vector(const json& j, const char* what) {
  const auto v = get_numbers(j, what);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

SymCube decode_symcube(const json& j) {
  return SymCube(get_int(j, "m"), get_int(j, "n"), get_numbers(field(j, "data"), "data"));
}

Cube decode_cube(const json& j) { return Cube(get_int(j, "m"), get_int(j, "n"), get_numbers(field(j, "data"), "data")); }

Jet2 decode_jet(const json& j) {
  Jet2 jet(decode_matrix(field(j, "lin"), "lin"), decode_symcube(field(j, "quad")));
  if (get_int(j, "m") != jet.m() || get_int(j, "n") != jet.n()) throw DomainError("jet: m/n do not match the data");
  return jet;
}

D2Elem decode_d2(const json& j) {
  D2Elem e(decode_matrix(field(j, "phi1"), "phi1"), decode_symcube(field(j, "phi2")));
  require_m(j, e.m(), "D2 element");
  return e;
}

GL1Elem decode_gl1(const json& j) {
  GL1Elem e(decode_matrix(field(j, "g"), "g"), decode_cube(field(j, "a")));
  require_m(j, e.m(), "GL1 element");
  return e;
}

AlgebraicCoords decode_algebraic(const json& j) {
  AlgebraicCoords c{decode_matrix(field(j, "g"), "g"), decode_symcube(field(j, "t"))};
  require_m(j, static_cast<int>(c.g.rows()), "algebraic coordinates");
  return c;
}

PolyMap decode_polymap(const json& j, int max_degree) {
  return parse_polymap(get_strings(field(j, "components"), "components"), get_int(j, "m"), max_degree);
}

MatrixLieAlgebra decode_algebra(const json& j) {
  const int m = get_int(j, "m");
  const json& b = field(j, "basis");
  if (!b.is_array()) throw DomainError("basis: expected an array of matrices");
  std::vector<Eigen::MatrixXd> basis;
  for (const auto& x : b) basis.push_back(decode_matrix(x, "basis"));
  return MatrixLieAlgebra(m, std::move(basis));
}

ProlongationBasis decode_prolongation(const json& j) {
  ProlongationBasis p;
  p.m = get_int(j, "m");
  for (const auto& e : field(j, "elements")) p.elements.push_back(decode_symcube(e));
  return p;
}

GroupDescriptor decode_group(const json& j) {
  const json& name = field(j, "name");
  if (!name.is_string()) throw DomainError("group: 'name' must be a string");
  const bool holonomic = j.value("holonomic", true);
  const GroupKind kind = group_kind_from_string(name.get<std::string>());
  if (kind == GroupKind::CUSTOM) {
    MatrixLieAlgebra alg = decode_algebra(field(j, "algebra"));
    if (j.contains("m") && get_int(j, "m") != alg.m()) throw DomainError("group: 'm' does not match the algebra");
    return GroupDescriptor(std::move(alg), holonomic);
  }
  return GroupDescriptor(kind, get_int(j, "m"), holonomic);
}

PolyAtlas decode_atlas(const json& j, int max_degree) {
  const int m = get_int(j, "m");
  std::vector<Chart> charts;
  for (const auto& c : field(j, "charts")) {
    Chart ch;
    const json& id = field(c, "id");
    if (!id.is_string()) throw DomainError("chart 'id' must be a string");
    ch.id = id.get<std::string>();
    for (const auto& b : field(c, "box")) {
      const auto lh = get_numbers(b, "box");
      if (lh.size() != 2) throw DomainError("box: each axis needs [lo, hi]");
      ch.domain.bounds.emplace_back(lh[0], lh[1]);
    }
    ch.map = parse_polymap(get_strings(field(c, "map"), "map"), m, max_degree);
    charts.push_back(std::move(ch));
  }
  std::vector<Overlap> overlaps;
  if (j.contains("overlaps")) {
    for (const auto& o : j["overlaps"]) {
      const json& from = field(o, "from");
      const json& to = field(o, "to");
      if (!from.is_string() || !to.is_string()) throw DomainError("overlap 'from'/'to' must be strings");
      overlaps.push_back(Overlap{from.get<std::string>(), to.get<std::string>(),
                                 parse_polymap(get_strings(field(o, "transition"), "transition"), m, max_degree)});
    }
  }
  return PolyAtlas(m, std::move(charts), std::move(overlaps));
}

SingularityReport decode_singularity_report(const json& j) {
  SingularityReport r;
  r.x0 = decode_vector(field(j, "x0"), "x0");
  r.residual = get_number(field(j, "residual"), "residual");
  r.regular = field(j, "regular").get<bool>();
  r.note = field(j, "note").get<std::string>();
  if (!r.regular) {
    r.linearization = decode_matrix(field(j, "L"), "L");
    r.charpoly = get_numbers(field(j, "charpoly"), "charpoly");
    r.trace = get_number(field(j, "trace"), "trace");
    r.det = get_number(field(j, "det"), "det");
  }
  return r;
}

}  // namespace jetforge::io
