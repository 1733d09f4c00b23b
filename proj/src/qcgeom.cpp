#include "ballpot/qcgeom.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ballpot/random.hpp"

namespace ballpot {

DistortionReport distortion(const SmoothMap& u, VecRef x) {
  if (u.m != u.n) throw std::invalid_argument("distortion: map must be square");
  Mat g = u.gradient(x);
  DistortionReport rep;
  rep.grad_norm = operator_norm(g);
  rep.min_stretch = min_stretch(g);
  rep.jacobian = g.determinant();
  const double aj = std::abs(rep.jacobian);
  if (aj < 1e-14 * pow_int(rep.grad_norm, u.n) || rep.min_stretch <= 0.0) {
    rep.degenerate = true;
    rep.K_estimate = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.K_estimate = std::max(pow_int(rep.grad_norm, u.n) / aj,
                            aj / pow_int(rep.min_stretch, u.n));
  return rep;
}

double linear_distortion(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("linear_distortion: square matrices only");
  const int n = static_cast<int>(a.rows());
  const double det = std::abs(a.determinant());
  if (det <= 0.0) return std::numeric_limits<double>::infinity();
  return std::max(pow_int(operator_norm(a), n) / det, det / pow_int(min_stretch(a), n));
}

EstimateReport cross_inequality_check(const Mat& a, const std::vector<Vec>& vs, double K) {
  const int n = static_cast<int>(a.rows());
  if (static_cast<int>(vs.size()) != n - 1)
    throw std::invalid_argument("cross_inequality_check: needs n-1 vectors");
  const double actual = linear_distortion(a);
  if (K < actual - 1e-9)
    throw std::invalid_argument("cross_inequality_check: K below the map's distortion");

  Vec plain = cross_product(vs);
  std::vector<Vec> mapped(vs.size());
  for (size_t i = 0; i < vs.size(); ++i) mapped[i] = a * vs[i];
  Vec image = cross_product(mapped);

  const double an = pow_int(operator_norm(a), n - 1);
  const double lower = std::pow(K, 1.0 - n) * an * plain.norm();
  const double mid = image.norm();
  const double upper = an * plain.norm();

  EstimateReport r;
  r.name = "cross_inequality";
  r.n = n;
  r.lhs = std::max(lower - mid, mid - upper);
  r.rhs = 0.0;
  r.tol = 1e-9 * std::max(1.0, upper);
  r.with("K", K).with("lower", lower).with("mid", mid).with("upper", upper);
  return r.finalize();
}

Mat tangent_basis(VecRef normal) {
  const int n = static_cast<int>(normal.size());
  Vec v = normal / normal.norm();
  // Householder reflector sending e1 to v; its remaining columns span the
  // tangent space.
  Vec w = v;
  w(0) += (v(0) >= 0.0 ? 1.0 : -1.0);
  w /= w.norm();
  Mat q = Mat::Identity(n, n) - 2.0 * w * w.transpose();
  Mat basis(n, n - 1);
  for (int c = 1; c < n; ++c) basis.col(c - 1) = q.col(c);
  return basis;
}

C2Domain ball_domain(int n, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("ball_domain: radius must be positive");
  C2Domain dom;
  dom.kind = "ball";
  dom.n = n;
  dom.params = Vec::Constant(1, radius);
  dom.convex = true;
  dom.kappa_max = 1.0 / radius;
  dom.reach = 0.9 * radius;
  dom.signed_distance = [radius](VecRef x) { return radius - x.norm(); };
  dom.boundary_projection = [n, radius](VecRef x) -> Vec {
    const double r = x.norm();
    if (r < 1e-14) {
      Vec y = Vec::Zero(n);
      y(0) = radius;
      return y;
    }
    return (radius / r) * x;
  };
  dom.inward_normal = [](VecRef y) -> Vec { return -y / y.norm(); };
  dom.principal_curvatures = [n, radius](VecRef) -> Vec {
    return Vec::Constant(n - 1, 1.0 / radius);
  };
  dom.principal_basis = [](VecRef y) -> Mat { return tangent_basis(y / y.norm()); };
  return dom;
}

namespace {

// Nearest boundary point of the ellipsoid sum(y_i^2/a_i^2) = 1 from an
// interior x, through the multiplier form y_i = a_i^2 x_i / (a_i^2 + t)
// with the root of g(t) = sum a_i^2 x_i^2/(a_i^2+t)^2 - 1 in (-a_min^2, 0].
Vec ellipsoid_project(const Vec& a2, VecRef x) {
  const int n = static_cast<int>(a2.size());
  const double amin2 = a2.minCoeff();

  auto g = [&](double t) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = a2(i) + t;
      s += a2(i) * x(i) * x(i) / (d * d);
    }
    return s - 1.0;
  };

  double hi = 0.0;
  if (g(hi) >= 0.0) {  // boundary point already
    Vec y = x;
    return y;
  }
  double lo = -amin2 * (1.0 - 1e-12);
  if (g(lo) <= 0.0) {
    // Degenerate (medial) case: the components along the minimal axes
    // vanish; put the residual mass on the first minimal axis.
    Vec y(n);
    double used = 0.0;
    int imin = 0;
    for (int i = 0; i < n; ++i)
      if (a2(i) == amin2) { imin = i; break; }
    for (int i = 0; i < n; ++i) {
      if (std::abs(a2(i) - amin2) < 1e-14) {
        y(i) = 0.0;
      } else {
        y(i) = a2(i) * x(i) / (a2(i) - amin2);
        used += y(i) * y(i) / a2(i);
      }
    }
    if (used > 1.0) throw std::runtime_error("ellipsoid_project: no valid projection (medial point)");
    y(imin) = std::sqrt(std::max(0.0, (1.0 - used) * amin2));
    return y;
  }

  // Safeguarded Newton with a bisection bracket; g is strictly decreasing.
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double val = g(t);
    if (val > 0.0) lo = t; else hi = t;
    double dg = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = a2(i) + t;
      dg += -2.0 * a2(i) * x(i) * x(i) / (d * d * d);
    }
    double next = (dg != 0.0) ? t - val / dg : t;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) < 1e-16 * std::max(1.0, std::abs(t))) { t = next; break; }
    t = next;
  }
  Vec y(n);
  for (int i = 0; i < n; ++i) y(i) = a2(i) * x(i) / (a2(i) + t);
  return y;
}

// Principal curvatures/directions from the shape operator of the level set
// F(y) = sum y_i^2/a_i^2, restricted to the tangent space.
void ellipsoid_curvature(const Vec& a2, VecRef y, Vec* kappas, Mat* basis) {
  const int n = static_cast<int>(a2.size());
  Vec w(n);
  for (int i = 0; i < n; ++i) w(i) = y(i) / a2(i);
  const double wn = w.norm();
  Vec nrm = w / wn;  // outward
  Mat p = Mat::Identity(n, n) - nrm * nrm.transpose();
  Mat d = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = 1.0 / a2(i);
  Mat shape = p * d * p / wn;
  Eigen::SelfAdjointEigenSolver<Mat> es(shape);

  // Drop the eigenpair aligned with the normal (eigenvalue ~ 0).
  int drop = 0;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double align = std::abs(es.eigenvectors().col(i).dot(nrm));
    if (align > best) { best = align; drop = i; }
  }
  kappas->resize(n - 1);
  basis->resize(n, n - 1);
  int c = 0;
  for (int i = 0; i < n; ++i) {
    if (i == drop) continue;
    (*kappas)(c) = es.eigenvalues()(i);
    basis->col(c) = es.eigenvectors().col(i);
    ++c;
  }
}

}  // namespace

C2Domain ellipsoid_domain(const Vec& semiaxes) {
  const int n = static_cast<int>(semiaxes.size());
  if (n < 3) throw std::invalid_argument("ellipsoid_domain: needs n >= 3 semiaxes");
  for (int i = 0; i < n; ++i)
    if (semiaxes(i) <= 0.0) throw std::invalid_argument("ellipsoid_domain: semiaxes must be positive");

  Vec a2(n);
  for (int i = 0; i < n; ++i) a2(i) = semiaxes(i) * semiaxes(i);

  C2Domain dom;
  dom.kind = "ellipsoid";
  dom.n = n;
  dom.params = semiaxes;
  dom.convex = true;

  auto inside_check = [a2, n](VecRef x) {
    double f = 0.0;
    for (int i = 0; i < n; ++i) f += x(i) * x(i) / a2(i);
    if (f > 1.0 + 1e-9)
      throw std::domain_error("ellipsoid_domain: exterior points are not supported");
  };

  dom.signed_distance = [a2, inside_check](VecRef x) {
    inside_check(x);
    Vec y = ellipsoid_project(a2, x);
    return (x - y).norm();
  };
  dom.boundary_projection = [a2, inside_check](VecRef x) {
    inside_check(x);
    return ellipsoid_project(a2, x);
  };
  dom.inward_normal = [a2](VecRef y) -> Vec {
    Vec w(y.size());
    for (int i = 0; i < y.size(); ++i) w(i) = y(i) / a2(i);
    return -w / w.norm();
  };
  dom.principal_curvatures = [a2](VecRef y) -> Vec {
    Vec k;
    Mat b;
    ellipsoid_curvature(a2, y, &k, &b);
    return k;
  };
  dom.principal_basis = [a2](VecRef y) -> Mat {
    Vec k;
    Mat b;
    ellipsoid_curvature(a2, y, &k, &b);
    return b;
  };

  // kappa bound from the axis tips plus random boundary samples
  double kmax = 0.0;
  Rng rng(2718281828u);
  for (int s = 0; s < 512 + 2 * n; ++s) {
    Vec dir;
    if (s < 2 * n) {
      dir = Vec::Zero(n);
      dir(s / 2) = (s % 2 == 0) ? 1.0 : -1.0;
    } else {
      dir = rng.unit_vector(n);
    }
    double f = 0.0;
    for (int i = 0; i < n; ++i) f += dir(i) * dir(i) / a2(i);
    Vec y = dir / std::sqrt(f);
    Vec k;
    Mat b;
    ellipsoid_curvature(a2, y, &k, &b);
    kmax = std::max(kmax, k.cwiseAbs().maxCoeff());
  }
  dom.kappa_max = kmax;
  dom.reach = 0.9 / kmax;
  return dom;
}

C2Domain parse_domain(int n, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("parse_domain: expected 'ball:R' or 'ellipsoid:a1,...,an'");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  std::vector<double> vals;
  std::stringstream ss(rest);
  std::string cell;
  while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
  if (kind == "ball") {
    if (vals.size() != 1) throw std::invalid_argument("parse_domain: ball takes one radius");
    return ball_domain(n, vals[0]);
  }
  if (kind == "ellipsoid") {
    if (static_cast<int>(vals.size()) != n)
      throw std::invalid_argument("parse_domain: ellipsoid needs n semiaxes");
    Vec a(n);
    for (int i = 0; i < n; ++i) a(i) = vals[i];
    return ellipsoid_domain(a);
  }
  throw std::invalid_argument("parse_domain: unknown domain kind '" + kind + "'");
}

Mat distance_hessian(const C2Domain& dom, VecRef x) {
  const double d = dom.signed_distance(x);
  if (!(d > 0.0) || d >= dom.reach)
    throw std::domain_error("distance_hessian: point outside the reach collar");
  Vec y = dom.boundary_projection(x);
  Vec kappas = dom.principal_curvatures(y);
  Mat basis = dom.principal_basis(y);
  Mat h = Mat::Zero(dom.n, dom.n);
  for (int i = 0; i < dom.n - 1; ++i) {
    const double k = kappas(i);
    h += (-k / (1.0 - k * d)) * basis.col(i) * basis.col(i).transpose();
  }
  return h;
}

EstimateReport distance_identities(const C2Domain& dom, VecRef x) {
  const int n = dom.n;
  const double d = dom.signed_distance(x);
  if (!(d > 0.0) || d >= dom.reach)
    throw std::domain_error("distance_identities: point outside the reach collar");

  const double h = 1e-4;
  Mat hess(n, n);
  Vec xp(n);
  const double center = dom.signed_distance(x);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (i == j) {
        xp = x;
        xp(i) += h;
        const double up = dom.signed_distance(xp);
        xp(i) = x(i) - h;
        const double um = dom.signed_distance(xp);
        hess(i, i) = (up + um - 2.0 * center) / (h * h);
      } else {
        xp = x;
        xp(i) += h; xp(j) += h;
        const double upp = dom.signed_distance(xp);
        xp(j) = x(j) - h;
        const double upm = dom.signed_distance(xp);
        xp(i) = x(i) - h; xp(j) = x(j) + h;
        const double ump = dom.signed_distance(xp);
        xp(j) = x(j) - h;
        const double umm = dom.signed_distance(xp);
        hess(i, j) = hess(j, i) = (upp - upm - ump + umm) / (4.0 * h * h);
      }
    }
  }

  Vec y = dom.boundary_projection(x);
  Vec kappas = dom.principal_curvatures(y);
  Vec expected(n);
  for (int i = 0; i < n - 1; ++i) expected(i) = -kappas(i) / (1.0 - kappas(i) * d);
  expected(n - 1) = 0.0;
  std::sort(expected.data(), expected.data() + n);

  Eigen::SelfAdjointEigenSolver<Mat> es(hess);
  double eig_dev = 0.0;
  for (int i = 0; i < n; ++i) eig_dev = std::max(eig_dev, std::abs(es.eigenvalues()(i) - expected(i)));

  // null direction must follow the normal
  int zi = 0;
  double zbest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    if (std::abs(es.eigenvalues()(i)) < zbest) { zbest = std::abs(es.eigenvalues()(i)); zi = i; }
  Vec nu = dom.inward_normal(y);
  const double align_dev = 1.0 - std::abs(es.eigenvectors().col(zi).dot(nu));

  const double trace_formula = expected.sum();
  const double trace_dev = std::abs(hess.trace() - trace_formula);

  EstimateReport r;
  r.name = "distance_identities";
  r.n = n;
  r.lhs = std::max({eig_dev, align_dev, trace_dev});
  r.rhs = 0.0;
  r.tol = 1e-3;
  r.with("d", d).with("eig_dev", eig_dev).with("align_dev", align_dev)
      .with("trace_fd", hess.trace()).with("trace_formula", trace_formula);
  return r.finalize();
}

SmoothMap chi_compose(const SmoothMap& u, const C2Domain& dom) {
  if (u.m != dom.n) throw std::invalid_argument("chi_compose: target dimension mismatch");
  auto dom_ptr = std::make_shared<C2Domain>(dom);
  auto u_ptr = std::make_shared<SmoothMap>(u);

  SmoothMap chi;
  chi.n = u.n;
  chi.m = 1;
  chi.value = [u_ptr, dom_ptr](VecRef x) -> Vec {
    Vec out(1);
    out(0) = -dom_ptr->signed_distance(u_ptr->eval(x));
    return out;
  };
  chi.gradient_fn = [u_ptr, dom_ptr](VecRef x) -> Mat {
    Vec w = u_ptr->eval(x);
    const double d = dom_ptr->signed_distance(w);
    if (!(d > 0.0) || d >= dom_ptr->reach)
      throw std::domain_error("chi_compose: image outside the reach collar");
    Vec grad_d = dom_ptr->inward_normal(dom_ptr->boundary_projection(w));
    Mat g = u_ptr->gradient(x);
    Mat out(1, u_ptr->n);
    out.row(0) = -(g.transpose() * grad_d).transpose();
    return out;
  };
  chi.laplacian_fn = [u_ptr, dom_ptr](VecRef x) -> Vec {
    Vec w = u_ptr->eval(x);
    const double d = dom_ptr->signed_distance(w);
    if (!(d > 0.0) || d >= dom_ptr->reach)
      throw std::domain_error("chi_compose: image outside the reach collar");
    Vec grad_d = dom_ptr->inward_normal(dom_ptr->boundary_projection(w));
    Mat g = u_ptr->gradient(x);
    Mat hd = distance_hessian(*dom_ptr, w);
    Vec out(1);
    out(0) = -(g.transpose() * hd * g).trace() - grad_d.dot(u_ptr->laplacian(x));
    return out;
  };
  return chi;
}

EstimateReport gradient_sandwich_check(const SmoothMap& u, const C2Domain& dom, double K,
                                       VecRef x) {
  SmoothMap chi = chi_compose(u, dom);
  const double gchi = chi.gradient(x).row(0).norm();
  const double gu = operator_norm(u.gradient(x));
  const double upper = std::pow(K, 2.0 / u.n) * gchi;

  EstimateReport r;
  r.name = "gradient_sandwich";
  r.n = u.n;
  r.lhs = std::max(gchi - gu, gu - upper);
  r.rhs = 0.0;
  r.tol = 1e-9 * std::max(1.0, gu);
  r.with("K", K).with("grad_chi", gchi).with("grad_u", gu).with("upper", upper);
  return r.finalize();
}

EstimateReport laplacian_transfer_check(const SmoothMap& u, double a, double b,
                                        const C2Domain& dom, double K, VecRef x) {
  SmoothMap chi = chi_compose(u, dom);
  const double lap = std::abs(chi.laplacian(x)(0));
  const double gchi = chi.gradient(x).row(0).norm();
  const double kappa0 = dom.kappa_max;
  const double mu = dom.reach;
  const double coeff = std::pow(K, 4.0 / u.n) * (a + u.n * kappa0 / (1.0 - mu * kappa0));
  const double rhs = coeff * gchi * gchi + b;

  EstimateReport r;
  r.name = "laplacian_transfer";
  r.n = u.n;
  r.lhs = lap;
  r.rhs = rhs;
  r.tol = 1e-6 * std::max(1.0, rhs);
  r.with("K", K).with("a", a).with("b", b).with("kappa0", kappa0).with("mu", mu)
      .with("grad_chi", gchi);
  return r.finalize();
}

EstimateReport boundary_jacobian_bound(const SmoothMap& u, double K, const C2Domain& dom,
                                       VecRef t) {
  if (!dom.convex)
    throw std::invalid_argument("boundary_jacobian_bound: convex target domains only");
  if (u.m != u.n) throw std::invalid_argument("boundary_jacobian_bound: map must be square");
  const int n = u.n;
  const double r = 1.0 - 1e-3;
  Vec tt = t / t.norm();
  const double jac = u.gradient(r * tt).determinant();
  const double dist0 = dom.signed_distance(u.eval(Vec::Zero(n)));
  const double bound = pow_int(dist0, n) / pow_int(2.0 * K, n * n - n);

  EstimateReport rep;
  rep.name = "boundary_jacobian";
  rep.n = n;
  rep.lhs = bound;
  rep.rhs = jac;
  rep.tol = 1e-9 * std::max(1.0, bound);
  rep.with("K", K).with("dist0", dist0).with("r", r);
  return rep.finalize();
}

EstimateReport mori_exponent_probe(const SmoothMap& u, double K, int pairs, uint64_t seed) {
  if (K < 1.0) throw std::invalid_argument("mori_exponent_probe: K must be >= 1");
  const int n = u.n;
  const double exponent = std::pow(K, 1.0 / (1.0 - n));
  Rng rng(seed);
  double m1 = 0.0;
  for (int i = 0; i < pairs; ++i) {
    Vec x = rng.ball_point(n, 0.999);
    Vec y = rng.ball_point(n, 0.999);
    const double dist = (x - y).norm();
    if (dist < 1e-9) continue;
    m1 = std::max(m1, (u.eval(x) - u.eval(y)).norm() / std::pow(dist, exponent));
  }

  EstimateReport r;
  r.name = "mori_exponent";
  r.n = n;
  r.lhs = exponent;
  r.rhs = 1.0;
  r.tol = 1e-12;
  r.with("K", K).with("M1", m1);
  r.pass = (exponent <= 1.0 + r.tol) && std::isfinite(m1);
  return r;
}

}  // namespace ballpot
