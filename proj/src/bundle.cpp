#include "jetforge/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "jetforge/linalg.hpp"

namespace jetforge {

bool Box::contains(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    const auto [lo, hi] = bounds[static_cast<std::size_t>(i)];
    if (!(x[i] >= lo && x[i] <= hi)) return false;
  }
  return true;
}

bool Box::empty() const noexcept {
  return std::any_of(bounds.begin(), bounds.end(), [](const auto& b) { return !(b.first <= b.second); });
}

Box Box::intersect(const Box& other) const {
  if (other.dim() != dim()) throw DomainError("Box::intersect: dimension mismatch");
  Box r;
  for (std::size_t i = 0; i < bounds.size(); ++i)
    r.bounds.emplace_back(std::max(bounds[i].first, other.bounds[i].first),
                          std::min(bounds[i].second, other.bounds[i].second));
  return r;
}

std::vector<Eigen::VectorXd> sample_points(const Box& box, int count, std::uint64_t seed) {
  if (count < 0) throw DomainError("sample_points: negative count");
  if (box.empty()) return {};
  const int m = box.dim();
  int q = 1;
  auto cells = [m](int side) {
    double c = 1.0;
    for (int i = 0; i < m; ++i) c *= side;
    return c;
  };
  while (cells(q) < count) ++q;

  SplitMix64 rng(seed);
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(static_cast<std::size_t>(count));
  std::vector<int> cell(static_cast<std::size_t>(m), 0);
  for (int n = 0; n < count; ++n) {
    // lexicographic cell index, last axis fastest
    int rest = n;
    for (int i = m - 1; i >= 0; --i) {
      cell[static_cast<std::size_t>(i)] = rest % q;
      rest /= q;
    }
    Eigen::VectorXd x(m);
    for (int i = 0; i < m; ++i) {
      const auto [lo, hi] = box.bounds[static_cast<std::size_t>(i)];
      const double w = (hi - lo) / q;
      x[i] = lo + w * (cell[static_cast<std::size_t>(i)] + rng.uniform());
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

namespace {

std::vector<Eigen::VectorXd> grid_points(const Box& box, int per_axis) {
  const int m = box.dim();
  std::vector<Eigen::VectorXd> pts;
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  for (;;) {
    Eigen::VectorXd x(m);
    for (int i = 0; i < m; ++i) {
      const auto [lo, hi] = box.bounds[static_cast<std::size_t>(i)];
      x[i] = per_axis == 1 ? lo : lo + (hi - lo) * idx[static_cast<std::size_t>(i)] / (per_axis - 1);
    }
    pts.push_back(std::move(x));
    int i = m - 1;
    while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == per_axis) idx[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
  }
  return pts;
}

double det_abs(const Eigen::MatrixXd& a) { return a.size() == 0 ? 1.0 : std::abs(a.determinant()); }

}  // namespace

PolyAtlas::PolyAtlas(int m, std::vector<Chart> charts, std::vector<Overlap> overlaps)
    : m_(m), charts_(std::move(charts)), overlaps_(std::move(overlaps)) {
  if (m < 1) throw DomainError("PolyAtlas: m must be positive");
  for (std::size_t i = 0; i < charts_.size(); ++i) {
    const Chart& c = charts_[i];
    for (std::size_t j = 0; j < i; ++j)
      if (charts_[j].id == c.id) throw DomainError("PolyAtlas: duplicate chart id '" + c.id + "'");
    if (c.domain.dim() != m || c.map.m() != m || c.map.n() != m)
      throw DomainError("PolyAtlas: chart '" + c.id + "' has wrong dimension");
    if (c.domain.empty()) throw DomainError("PolyAtlas: chart '" + c.id + "' has an empty domain");
    for (const auto& x : grid_points(c.domain, 5))
      if (!(det_abs(c.map.jacobian(x)) > kInvertEps))
        throw DomainError("PolyAtlas: chart '" + c.id + "' has a singular Jacobian inside its domain");
  }
  for (const Overlap& o : overlaps_) {
    const Chart& from = chart(o.from);
    const Chart& to = chart(o.to);
    if (o.transition.m() != m || o.transition.n() != m)
      throw DomainError("PolyAtlas: transition " + o.from + "->" + o.to + " has wrong dimension");
    const Box common = from.domain.intersect(to.domain);
    if (common.empty()) continue;
    for (const auto& x : sample_points(common, kDefaultSamples, 0)) {
      const Eigen::VectorXd u = from.map.evaluate(x);
      const Eigen::VectorXd v = o.transition.evaluate(u);
      if ((v - to.map.evaluate(x)).cwiseAbs().maxCoeff() > kTransitionInverseTol)
        throw DomainError("PolyAtlas: transition " + o.from + "->" + o.to + " disagrees with the chart maps");
      if (!(det_abs(o.transition.jacobian(u)) > kInvertEps))
        throw DomainError("PolyAtlas: transition " + o.from + "->" + o.to + " is singular on the overlap");
    }
  }
  for (const Overlap& o : overlaps_) {
    auto back = transition(o.to, o.from);
    if (!back || o.from == o.to) continue;
    const Box common = chart(o.from).domain.intersect(chart(o.to).domain);
    if (common.empty()) continue;
    for (const auto& x : sample_points(common, kDefaultSamples, 0)) {
      const Eigen::VectorXd u = chart(o.from).map.evaluate(x);
      if ((back->evaluate(o.transition.evaluate(u)) - u).cwiseAbs().maxCoeff() > kTransitionInverseTol)
        throw DomainError("PolyAtlas: transitions " + o.from + "<->" + o.to + " are not mutually inverse");
    }
  }
}

const Chart& PolyAtlas::chart(const std::string& id) const {
  for (const Chart& c : charts_)
    if (c.id == id) return c;
  throw DomainError("PolyAtlas: no chart '" + id + "'");
}

std::optional<PolyMap> PolyAtlas::transition(const std::string& from, const std::string& to) const {
  for (const Overlap& o : overlaps_)
    if (o.from == from && o.to == to) return o.transition;
  if (from == to) {
    chart(from);
    return PolyMap::identity(m_);
  }
  return std::nullopt;
}

CoframePoint natural_section(const PolyAtlas& atlas, const std::string& chart, const Eigen::VectorXd& x,
                             CoordMode mode) {
  if (!atlas.chart(chart).domain.contains(x)) throw DomainError("natural_section: point outside chart '" + chart + "'");
  const int m = atlas.m();
  return CoframePoint{chart, x, mode, Eigen::MatrixXd::Identity(m, m), SymCube(m, m)};
}

namespace {

void require_same_dim(const CoframePoint& b, int m, const char* what) {
  if (b.m() != m || b.first.cols() != m || b.second.m() != m || b.second.n() != m)
    throw DomainError(std::string(what) + ": dimension mismatch");
}

// q_i = p_s g_si,  q_ij = g~ p_lm g_li g_mj + t_ij
CoframePoint algebraic_action(const CoframePoint& b, const AlgebraicCoords& c) {
  const int m = b.m();
  const Eigen::MatrixXd g_inv = checked_inverse(c.g, "group element");
  SymCube w(m, m);
  for (int s = 0; s < m; ++s)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double v = 0.0;
        for (int l = 0; l < m; ++l)
          for (int n = 0; n < m; ++n) v += b.second(s, l, n) * c.g(l, i) * c.g(n, j);
        w(s, i, j) = v;
      }
  SymCube q(m, m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double v = 0.0;
        for (int s = 0; s < m; ++s) v += g_inv(k, s) * w(s, i, j);
        q(k, i, j) = v + c.t(k, i, j);
      }
  return CoframePoint{b.chart, b.x, CoordMode::Algebraic, b.first * c.g, std::move(q)};
}

}  // namespace

CoframePoint d2_action(const CoframePoint& b, const D2Elem& phi) {
  require_same_dim(b, phi.m(), "d2_action");
  if (b.mode == CoordMode::Algebraic) return algebraic_action(b, to_algebraic(phi));
  const Jet2 r = compose(Jet2(b.first, b.second), phi.to_jet());
  return CoframePoint{b.chart, b.x, CoordMode::Natural, r.lin, r.quad};
}

CoframePoint convert_coords(const CoframePoint& b, CoordMode target) {
  if (b.mode == target) return b;
  const int m = b.m();
  require_same_dim(b, m, "convert_coords");
  // natural -> algebraic: p_ij = u~ u_ij; algebraic -> natural: u_ij = p p_ij
  const Eigen::MatrixXd inv = checked_inverse(b.first, "coframe linear slot");
  const Eigen::MatrixXd& factor = target == CoordMode::Algebraic ? inv : b.first;
  SymCube out(m, m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double v = 0.0;
        for (int s = 0; s < m; ++s) v += factor(k, s) * b.second(s, i, j);
        out(k, i, j) = v;
      }
  return CoframePoint{b.chart, b.x, target, b.first, std::move(out)};
}

namespace {

// out^k_ij = -x^k_lm y^l_i y^m_j
SymCube negated_pullback(const SymCube& x, const Eigen::MatrixXd& y) {
  const int m = x.m();
  SymCube out(m, m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double v = 0.0;
        for (int l = 0; l < m; ++l)
          for (int n = 0; n < m; ++n) v += x(k, l, n) * y(l, i) * y(n, j);
        out(k, i, j) = -v;
      }
  return out;
}

}  // namespace

AlgebraicCoords chart_derivatives_to_algebraic(const Eigen::MatrixXd& f1, const SymCube& f2) {
  Eigen::MatrixXd inv = checked_inverse(f1, "chart derivative matrix");
  SymCube p2 = negated_pullback(f2, inv);
  return {std::move(inv), std::move(p2)};
}

std::pair<Eigen::MatrixXd, SymCube> algebraic_to_chart_derivatives(const Eigen::MatrixXd& p1, const SymCube& p2) {
  Eigen::MatrixXd inv = checked_inverse(p1, "algebraic linear slot");
  SymCube f2 = negated_pullback(p2, inv);
  return {std::move(inv), std::move(f2)};
}

D2Elem gluing_jet(const PolyAtlas& atlas, const std::string& from, const std::string& to, const Eigen::VectorXd& x) {
  const Chart& a = atlas.chart(from);
  const Chart& b = atlas.chart(to);
  if (!a.domain.contains(x) || !b.domain.contains(x))
    throw DomainError("gluing_jet: point is not in the overlap of '" + from + "' and '" + to + "'");
  const auto t = atlas.transition(from, to);
  if (!t) throw DomainError("gluing_jet: no transition " + from + "->" + to);
  return D2Elem::from_jet(jet_at(*t, a.map.evaluate(x)));
}

CoframePoint change_chart(const PolyAtlas& atlas, const CoframePoint& b, const std::string& to) {
  const CoordMode mode = b.mode;
  const CoframePoint nat = convert_coords(b, CoordMode::Natural);
  const D2Elem glue = gluing_jet(atlas, b.chart, to, b.x);
  const Jet2 r = compose(glue.to_jet(), Jet2(nat.first, nat.second));
  return convert_coords(CoframePoint{to, b.x, CoordMode::Natural, r.lin, r.quad}, mode);
}

namespace {

// Runs kernel(i) for i in [0, n) and returns per-item results in order.
// Exceptions are captured per item so the OpenMP region never throws.
template <class Result, class Kernel>
std::vector<Result> for_each_item(std::size_t n, Exec exec, Kernel kernel, std::vector<std::string>& errors) {
  std::vector<Result> out(n);
  errors.assign(n, {});
  const auto body = [&](std::size_t i) {
    try {
      out[i] = kernel(i);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
  return out;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(seed ^ (0xD1B54A32D192ED03ull * (stream + 1))).next();
}

void rethrow_first(const std::vector<std::string>& errors) {
  for (const auto& e : errors)
    if (!e.empty()) throw DomainError(e);
}

}  // namespace

CocycleReport cocycle_check(const PolyAtlas& atlas, const std::string& a, const std::string& b, const std::string& c,
                            int samples, std::uint64_t seed, double tol, Exec exec) {
  CocycleReport r;
  r.a = a;
  r.b = b;
  r.c = c;
  r.tol = tol;
  const Box common = atlas.chart(a).domain.intersect(atlas.chart(b).domain).intersect(atlas.chart(c).domain);
  if (common.empty()) {
    r.skipped = true;
    r.notice = "empty triple overlap " + a + "," + b + "," + c;
    return r;
  }
  if (!atlas.transition(a, b) || !atlas.transition(b, c) || !atlas.transition(a, c)) {
    r.skipped = true;
    r.notice = "missing transition among " + a + "," + b + "," + c;
    return r;
  }
  // Stream keyed on the triple's chart positions keeps reports stable under reordering of checks.
  std::uint64_t key = 0;
  for (const auto* id : {&a, &b, &c}) {
    std::size_t pos = 0;
    while (atlas.charts()[pos].id != *id) ++pos;
    key = key * 1000003u + pos;
  }
  r.points = sample_points(common, samples, stream_seed(seed, key));
  std::vector<std::string> errors;
  r.residuals = for_each_item<double>(
      r.points.size(), exec,
      [&](std::size_t i) {
        const auto& x = r.points[i];
        const D2Elem lhs = d2_mul(gluing_jet(atlas, b, c, x), gluing_jet(atlas, a, b, x));
        return max_abs_diff(lhs, gluing_jet(atlas, a, c, x));
      },
      errors);
  rethrow_first(errors);
  for (double v : r.residuals) r.max_residual = std::max(r.max_residual, v);
  return r;
}

std::vector<CocycleReport> cocycle_check_all(const PolyAtlas& atlas, int samples, std::uint64_t seed, double tol,
                                             Exec exec) {
  std::vector<CocycleReport> out;
  for (const auto& a : atlas.charts())
    for (const auto& b : atlas.charts())
      for (const auto& c : atlas.charts()) {
        if (a.id == b.id || b.id == c.id || a.id == c.id) continue;
        if (!atlas.transition(a.id, b.id) || !atlas.transition(b.id, c.id) || !atlas.transition(a.id, c.id))
          continue;
        out.push_back(cocycle_check(atlas, a.id, b.id, c.id, samples, seed, tol, exec));
      }
  return out;
}

bool ReductionReport::integrable() const noexcept {
  return std::all_of(overlaps.begin(), overlaps.end(), [](const OverlapReduction& o) { return o.passed; });
}

ReductionReport reduction_check(const PolyAtlas& atlas, const GroupDescriptor& grp, int samples, std::uint64_t seed,
                                double tol, Exec exec) {
  if (grp.m() != atlas.m()) throw DomainError("reduction_check: group and atlas dimensions differ");
  ReductionReport rep;
  rep.group = to_string(grp.kind());
  rep.tol = tol;
  for (std::size_t oi = 0; oi < atlas.overlaps().size(); ++oi) {
    const Overlap& o = atlas.overlaps()[oi];
    OverlapReduction r;
    r.from = o.from;
    r.to = o.to;
    const Box common = atlas.chart(o.from).domain.intersect(atlas.chart(o.to).domain);
    if (common.empty()) {
      r.skipped = true;
      r.notice = "empty overlap";
      rep.overlaps.push_back(std::move(r));
      continue;
    }
    const auto pts = sample_points(common, samples, stream_seed(seed, 0x5EED0000u + oi));
    std::vector<std::string> errors;
    const auto res = for_each_item<std::pair<double, double>>(
        pts.size(), exec,
        [&](std::size_t i) {
          const D2Elem glue = gluing_jet(atlas, o.from, o.to, pts[i]);
          const AlgebraicCoords c = to_algebraic(glue);
          return std::pair{grp.member_residual(c.g), distance(grp.prolongation(), c.t)};
        },
        errors);
    rethrow_first(errors);
    r.points = pts.size();
    for (const auto& [mr, sr] : res) {
      r.max_member_residual = std::max(r.max_member_residual, mr);
      r.max_slot_residual = std::max(r.max_slot_residual, sr);
    }
    r.passed = r.max_member_residual <= tol && r.max_slot_residual <= tol;
    rep.overlaps.push_back(std::move(r));
  }
  return rep;
}

}  // namespace jetforge
