#include "pact/fdcstar.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <stdexcept>

#include "pact/error.hpp"

namespace pact {

namespace {

Combination single(int index) { return {Term{index, Rational(1)}}; }

Vector<Rational> unit(int n, int i) {
  Vector<Rational> v = Vector<Rational>::Zero(n);
  v(i) = 1;
  return v;
}

}  // namespace

StarAlgebra::StarAlgebra(std::vector<std::string> labels, std::vector<Combination> products,
                         std::vector<Combination> stars)
    : labels_(std::move(labels)), products_(std::move(products)), stars_(std::move(stars)) {
  const std::size_t n = labels_.size();
  if (products_.size() != n * n || stars_.size() != n)
    throw Error(ErrorCode::ShapeMismatch, "structure constants do not match the basis size");
}

Vector<Rational> StarAlgebra::multiply(const Vector<Rational>& a, const Vector<Rational>& b) const {
  const int n = dimension();
  Vector<Rational> out = Vector<Rational>::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b(j) == 0) continue;
      const Rational ab = a(i) * b(j);
      for (const auto& t : product(i, j)) out(t.index) += ab * t.coeff;
    }
  }
  return out;
}

Vector<Rational> StarAlgebra::adjoint(const Vector<Rational>& a) const {
  Vector<Rational> out = Vector<Rational>::Zero(dimension());
  for (int i = 0; i < dimension(); ++i) {
    if (a(i) == 0) continue;
    for (const auto& t : star(i)) out(t.index) += a(i) * t.coeff;
  }
  return out;
}

CheckResult StarAlgebra::check_axioms() const {
  const int n = dimension();
  std::vector<Vector<Rational>> e;
  for (int i = 0; i < n; ++i) e.push_back(unit(n, i));
  std::vector<Vector<Rational>> prod(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) prod[i * n + j] = multiply(e[i], e[j]);
  for (int i = 0; i < n; ++i) {
    if (adjoint(adjoint(e[i])) != e[i])
      return {false, "star is not involutive at " + labels_[i]};
    for (int j = 0; j < n; ++j) {
      if (adjoint(prod[i * n + j]) != multiply(adjoint(e[j]), adjoint(e[i])))
        return {false, "star is not an anti-homomorphism at (" + labels_[i] + "," + labels_[j] + ")"};
      if (prod[i * n + j].isZero()) continue;
      for (int k = 0; k < n; ++k)
        if (multiply(prod[i * n + j], e[k]) != multiply(e[i], prod[j * n + k]))
          return {false, "not associative at (" + labels_[i] + "," + labels_[j] + "," + labels_[k] + ")"};
    }
  }
  // triples with e_i e_j = 0 still need e_i (e_j e_k) = 0
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (prod[i * n + j].isZero())
        for (int k = 0; k < n; ++k)
          if (!multiply(e[i], prod[j * n + k]).isZero())
            return {false, "not associative at (" + labels_[i] + "," + labels_[j] + "," + labels_[k] + ")"};
  return {};
}

CrossedProduct crossed_product(const PartialAction& pa) {
  const FiniteGroup& G = pa.group();
  const int N = G.order();
  const int n = pa.size();
  std::vector<std::pair<int, int>> basis;
  std::vector<int> index(static_cast<std::size_t>(N) * n, -1);
  std::vector<std::string> labels;
  for (int g = 0; g < N; ++g) {
    for (int x : pa.domain(g)) {
      index[g * n + x] = static_cast<int>(basis.size());
      basis.emplace_back(x, g);
      labels.push_back("d" + pa.labels()[x] + "u" + std::to_string(g));
    }
  }
  const int dim = static_cast<int>(basis.size());
  std::vector<Combination> products(static_cast<std::size_t>(dim) * dim);
  std::vector<Combination> stars(dim);
  for (int i = 0; i < dim; ++i) {
    const auto [x, g] = basis[i];
    const int back = pa.apply(G.inv(g), x);
    stars[i] = single(index[G.inv(g) * n + back]);
    for (int j = 0; j < dim; ++j) {
      const auto [y, h] = basis[j];
      if (back == y) products[i * dim + j] = single(index[G.mul(g, h) * n + x]);
    }
  }
  return {StarAlgebra(std::move(labels), std::move(products), std::move(stars)), std::move(basis),
          std::move(index), n};
}

CrossedProduct group_algebra(const FiniteGroup& group) {
  std::vector<std::vector<int>> perm(group.order(), std::vector<int>{0});
  return crossed_product(PartialAction::global(group, perm));
}

FDCStarAlgebra block_structure(const StarAlgebra& alg, std::uint64_t seed) {
  using Eigen::MatrixXcd;
  using Eigen::MatrixXd;
  using Eigen::VectorXcd;
  using cd = std::complex<double>;
  const int n = alg.dimension();
  FDCStarAlgebra out;
  if (n == 0) return out;

  std::vector<MatrixXd> left(n, MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& t : alg.product(i, j)) left[i](t.index, j) += to_double(t.coeff);
  MatrixXd star = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (const auto& t : alg.star(i)) star(t.index, i) += to_double(t.coeff);

  // center: sum_k c_k (e_k e_i - e_i e_k) = 0 for every i
  MatrixXd commutation(static_cast<Eigen::Index>(n) * n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      commutation.block(static_cast<Eigen::Index>(i) * n, k, n, 1) =
          left[k].col(i) - left[i].col(k);
  Eigen::FullPivLU<MatrixXd> lu(commutation);
  lu.setThreshold(1e-10);
  const MatrixXd kernel = lu.kernel();
  const int c = static_cast<int>(kernel.cols());
  if (c == 0 || kernel.isZero())
    throw Error(ErrorCode::NotSemisimpleOrDegenerate, "trivial center");
  const MatrixXcd center = (Eigen::HouseholderQR<MatrixXd>(kernel).householderQ() *
                            MatrixXd::Identity(n, c)).cast<cd>();

  auto left_of = [&](const VectorXcd& a) {
    MatrixXcd m = MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      if (a(i) != 0.0) m += a(i) * left[i].cast<cd>();
    return m;
  };

  // Structure constants are real but the algebra is complex: conjugate
  // characters only separate under central elements with complex coefficients.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::string last_failure;
  for (int attempt = 0; attempt <= kBlockRetries; ++attempt) {
    out.attempts = attempt + 1;
    VectorXcd w(c);
    for (int k = 0; k < c; ++k) w(k) = cd(coeff(rng), coeff(rng));
    const VectorXcd a = center * w;
    const VectorXcd z = a + star.cast<cd>() * a.conjugate();
    if (z.norm() < 1e-12) {
      last_failure = "self-adjoint part vanished";
      continue;
    }
    const MatrixXcd on_center = center.adjoint() * left_of(z) * center;
    Eigen::ComplexEigenSolver<MatrixXcd> es(on_center);
    if (es.info() != Eigen::Success) {
      last_failure = "eigen decomposition failed";
      continue;
    }
    const VectorXcd values = es.eigenvalues();
    bool real = true;
    std::vector<double> sorted;
    for (int k = 0; k < c; ++k) {
      real = real && std::abs(values(k).imag()) < kEigenSeparation * std::max(1.0, std::abs(values(k)));
      sorted.push_back(values(k).real());
    }
    std::sort(sorted.begin(), sorted.end());
    bool separated = true;
    for (int k = 1; k < c; ++k) separated = separated && sorted[k] - sorted[k - 1] > kEigenSeparation;
    if (!real || !separated) {
      last_failure = real ? "eigenvalue collision" : "non-real spectrum";
      continue;
    }
    std::vector<int> blocks;
    double residual = 0.0;
    int total = 0;
    bool degenerate = false;
    for (int k = 0; k < c; ++k) {
      VectorXcd p = center * es.eigenvectors().col(k);
      const VectorXcd pp = left_of(p) * p;
      const cd scale = p.dot(pp) / p.squaredNorm();
      if (std::abs(scale) < 1e-12) {
        degenerate = true;
        break;
      }
      p /= scale;
      const MatrixXcd lp = left_of(p);
      if ((lp * p - p).norm() > kIntegralityTolerance * std::max(1.0, p.norm())) {
        degenerate = true;
        break;
      }
      const cd trace = lp.trace();
      const double ideal_dim = trace.real();
      const double rounded = std::round(ideal_dim);
      const int m = static_cast<int>(std::lround(std::sqrt(std::max(rounded, 0.0))));
      const double r = std::max({std::abs(ideal_dim - rounded), std::abs(trace.imag()),
                                 std::abs(std::sqrt(std::max(ideal_dim, 0.0)) - m)});
      residual = std::max(residual, r);
      if (m < 1 || m * m != static_cast<int>(rounded) || r >= kIntegralityTolerance)
        throw Error(ErrorCode::IntegralityFailure,
                    "ideal dimension " + std::to_string(ideal_dim) + " is not a square");
      blocks.push_back(m);
      total += m * m;
    }
    if (degenerate) {
      last_failure = "eigenprojection is not idempotent";
      continue;
    }
    if (total != n)
      throw Error(ErrorCode::IntegralityFailure,
                  "block dimensions sum to " + std::to_string(total) + ", expected " +
                      std::to_string(n));
    std::sort(blocks.begin(), blocks.end());
    out.blocks = std::move(blocks);
    out.integrality_residual = residual;
    return out;
  }
  throw Error(ErrorCode::NotSemisimpleOrDegenerate,
              last_failure + " after " + std::to_string(kBlockRetries) + " retries");
}

FDCStarAlgebra crossed_product_blocks_combinatorial(const PartialAction& pa, std::uint64_t seed) {
  const auto tg = translation_groupoid(pa);
  std::map<std::vector<int>, FDCStarAlgebra> cache;
  FDCStarAlgebra out;
  for (std::size_t o = 0; o < tg.orbits.size(); ++o) {
    const Subgroup& stab = tg.stabilizers[o];
    auto it = cache.find(stab.members);
    if (it == cache.end())
      it = cache.emplace(stab.members, block_structure(group_algebra(as_group(stab).group).algebra, seed))
               .first;
    const int size = static_cast<int>(tg.orbits[o].size());
    for (int d : it->second.blocks) out.blocks.push_back(size * d);
    out.integrality_residual = std::max(out.integrality_residual, it->second.integrality_residual);
    out.attempts = std::max(out.attempts, it->second.attempts);
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

std::vector<Vector<Rational>> fixed_point_basis(const PartialAction& pa) {
  const auto tg = translation_groupoid(pa);
  std::vector<Vector<Rational>> out;
  for (const auto& orbit : tg.orbits) {
    Vector<Rational> v = Vector<Rational>::Zero(pa.size());
    for (int x : orbit) v(x) = 1;
    out.push_back(std::move(v));
  }
  return out;
}

FDCStarAlgebra fixed_point_algebra(const PartialAction& pa) {
  const int n = pa.size();
  // alpha_g(x a) = x alpha_g(a) for a = delta_y, y in X_{g^-1}: x(y) = x(theta_g(y))
  std::vector<std::pair<int, int>> rows;
  for (int g = 0; g < pa.group().order(); ++g)
    for (int y : pa.domain(pa.group().inv(g)))
      if (pa.apply(g, y) != y) rows.emplace_back(y, pa.apply(g, y));
  Matrix<Rational> system = Matrix<Rational>::Zero(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    system(r, rows[r].first) += 1;
    system(r, rows[r].second) -= 1;
  }
  const Matrix<Rational> solutions = exact_nullspace<Rational>(system);
  const auto orbit_basis = fixed_point_basis(pa);
  // both routes must span the same space
  Matrix<Rational> joint(n, solutions.cols() + static_cast<Eigen::Index>(orbit_basis.size()));
  joint.leftCols(solutions.cols()) = solutions;
  for (std::size_t k = 0; k < orbit_basis.size(); ++k) {
    if (!(system * orbit_basis[k]).isZero())
      throw std::logic_error("orbit indicator violates the fixed point equations");
    joint.col(solutions.cols() + k) = orbit_basis[k];
  }
  if (solutions.cols() != static_cast<Eigen::Index>(orbit_basis.size()) ||
      exact_rank<Rational>(joint) != static_cast<int>(orbit_basis.size()))
    throw std::logic_error("fixed point algebra routes disagree");
  FDCStarAlgebra out;
  out.blocks.assign(orbit_basis.size(), 1);
  out.attempts = 1;
  return out;
}

bool morita_equivalent(const FDCStarAlgebra& a, const FDCStarAlgebra& b) {
  return a.blocks.size() == b.blocks.size();
}

bool isomorphic(const FDCStarAlgebra& a, const FDCStarAlgebra& b) {
  auto x = a.blocks, y = b.blocks;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

namespace {

using Fn = Vector<Rational>;

/// alpha_g(f 1_{g^-1}) as a function on X supported in X_g.
Fn alpha(const PartialAction& pa, int g, const Fn& f) {
  Fn out = Fn::Zero(pa.size());
  const int gi = pa.group().inv(g);
  for (int y : pa.domain(g)) out(y) = f(pa.apply(gi, y));
  return out;
}

Fn indicator(const PartialAction& pa, int g) {
  Fn out = Fn::Zero(pa.size());
  for (int x : pa.domain(g)) out(x) = 1;
  return out;
}

/// sum_g xi_g u_g -> crossed-product coordinates; xi_g must live on X_g.
Vector<Rational> to_cp(const CrossedProduct& cp, const PartialAction& pa,
                       const std::vector<Fn>& coefficients) {
  Vector<Rational> out = Vector<Rational>::Zero(cp.algebra.dimension());
  for (int g = 0; g < pa.group().order(); ++g)
    for (int x = 0; x < pa.size(); ++x) {
      if (coefficients[g](x) == 0) continue;
      const int i = cp.index_of(x, g);
      if (i < 0) throw std::logic_error("coefficient outside its domain");
      out(i) = coefficients[g](x);
    }
  return out;
}

Vector<Rational> right_inner(const CrossedProduct& cp, const PartialAction& pa, const Fn& x,
                             const Fn& y) {
  std::vector<Fn> coeff;
  for (int g = 0; g < pa.group().order(); ++g)
    coeff.push_back(x.cwiseProduct(alpha(pa, g, y)));  // x real, so x* = x
  return to_cp(cp, pa, coeff);
}

Fn left_inner(const PartialAction& pa, const Fn& x, const Fn& y) {
  Fn out = Fn::Zero(pa.size());
  for (int g = 0; g < pa.group().order(); ++g) out += alpha(pa, g, x.cwiseProduct(y));
  return out;
}

/// y . xi = sum_g alpha_{g^-1}(y xi(g))
Fn right_action(const CrossedProduct& cp, const PartialAction& pa, const Fn& y,
                const Vector<Rational>& xi) {
  Fn out = Fn::Zero(pa.size());
  for (int g = 0; g < pa.group().order(); ++g) {
    Fn part = Fn::Zero(pa.size());
    for (int x : pa.domain(g)) part(x) = y(x) * xi(cp.index_of(x, g));
    out += alpha(pa, pa.group().inv(g), part);
  }
  return out;
}

}  // namespace

BimoduleReport imprimitivity_bimodule_verify(const PartialAction& pa) {
  const int n = pa.size();
  const int N = pa.group().order();
  const CrossedProduct cp = crossed_product(pa);
  BimoduleReport rep;
  rep.algebra_dimension = cp.algebra.dimension();

  Fn x_alpha = Fn::Zero(n);
  for (int g = 0; g < N; ++g) x_alpha += indicator(pa, g);
  rep.central_unit = true;
  for (int x = 0; x < n; ++x) rep.central_unit = rep.central_unit && x_alpha(x) >= 1;
  for (int h = 0; h < N; ++h)
    rep.central_unit =
        rep.central_unit && alpha(pa, h, x_alpha) == x_alpha.cwiseProduct(indicator(pa, h));

  std::vector<Fn> family;
  for (int x = 0; x < n; ++x) {
    Fn d = Fn::Zero(n);
    d(x) = 1;
    family.push_back(d);
  }
  if (n > 0) {
    family.push_back(Fn::Ones(n));
    Fn mixed(n);
    for (int x = 0; x < n; ++x) mixed(x) = Rational((x % 2 ? -1 : 1) * (x + 1), 2);
    family.push_back(mixed);
  }
  rep.positivity = true;
  for (const Fn& x : family) {
    const Fn left = left_inner(pa, x, x);
    bool left_ok = !left.isZero();
    for (int k = 0; k < n; ++k) left_ok = left_ok && left(k) >= 0;
    const Vector<Rational> right = right_inner(cp, pa, x, x);
    const Matrix<Rational> rep_matrix = cp.algebra.left_regular<Rational>(right);
    bool right_ok = !right.isZero() && is_psd_exact<Rational>(rep_matrix);
    if (right_ok) {
      const Eigen::MatrixXd numeric = rep_matrix.unaryExpr([](const Rational& r) { return to_double(r); });
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(numeric, Eigen::EigenvaluesOnly);
      right_ok = es.eigenvalues().minCoeff() >= -1e-10;
    }
    rep.positivity = rep.positivity && left_ok && right_ok;
  }

  rep.compatibility = true;
  const int dim = cp.algebra.dimension();
  for (int a = 0; a < n && rep.compatibility; ++a) {
    for (int b = 0; b < n && rep.compatibility; ++b) {
      const Vector<Rational> ab = right_inner(cp, pa, family[a], family[b]);
      for (int k = 0; k < dim; ++k) {
        Vector<Rational> xi = Vector<Rational>::Zero(dim);
        xi(k) = 1;
        const Vector<Rational> lhs = cp.algebra.multiply(ab, xi);
        const Vector<Rational> rhs =
            right_inner(cp, pa, family[a], right_action(cp, pa, family[b], xi));
        if (lhs != rhs) {
          rep.compatibility = false;
          break;
        }
      }
    }
  }

  Fn inverse = Fn::Zero(n);
  for (int x = 0; x < n; ++x) inverse(x) = Rational(1) / x_alpha(x);
  rep.left_full = true;
  for (const Fn& x : fixed_point_basis(pa))
    rep.left_full = rep.left_full && left_inner(pa, x, inverse) == x;

  Matrix<Rational> span = Matrix<Rational>::Zero(static_cast<Eigen::Index>(n) * n, dim);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) span.row(a * n + b) = right_inner(cp, pa, family[a], family[b]).transpose();
  rep.span_dimension = dim == 0 ? 0 : exact_rank<Rational>(span);
  rep.right_full = rep.span_dimension == dim;
  return rep;
}

}  // namespace pact
