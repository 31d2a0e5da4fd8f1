#include "gor/mep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "gor/errors.hpp"
#include "gor/optimality.hpp"

namespace gor {

namespace {

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

template <typename Scalar, typename Vec>
Scalar monomial_value(const Monomial& alpha, const Vec& b) {
  Scalar v(1.0);
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (int p = 0; p < alpha[i]; ++p) v *= b[static_cast<Eigen::Index>(i)];
  return v;
}

void append_monomials(int q, int remaining, Monomial& prefix, std::vector<Monomial>& out) {
  if (static_cast<int>(prefix.size()) == q - 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    prefix.push_back(e);
    append_monomials(q, remaining - e, prefix, out);
    prefix.pop_back();
  }
}

// Polynomial of formal degree n whose coefficients are c shifted up by
// `shift` powers of z.
ModelPoly shifted(const ModelPoly& c, int shift, int n) {
  Vector v = Vector::Zero(n + 1);
  v.segment(shift, c.degree() + 1) = c.coeffs();
  return ModelPoly(std::move(v));
}

Monomial unit_monomial(int q, int j) {
  Monomial m(static_cast<std::size_t>(q), 0);
  if (j > 0) m[static_cast<std::size_t>(j - 1)] = 1;
  return m;
}

Monomial add(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

double rank_threshold(const Vector& sv, Eigen::Index rows, Eigen::Index cols) {
  return sv.size() ? sv.maxCoeff() * static_cast<double>(std::max(rows, cols)) * 1e-12 : 0.0;
}

}  // namespace

int MatrixPolynomial::degree() const {
  int d = 0;
  for (const auto& [alpha, block] : blocks)
    if (!block.isZero(0.0)) d = std::max(d, total_degree(alpha));
  return d;
}

int MatrixPolynomial::column_degree(Eigen::Index j) const {
  int d = 0;
  for (const auto& [alpha, block] : blocks)
    if (!block.col(j).isZero(0.0)) d = std::max(d, total_degree(alpha));
  return d;
}

Matrix MatrixPolynomial::evaluate(const Vector& b) const {
  Matrix a = Matrix::Zero(rows, cols);
  for (const auto& [alpha, block] : blocks) a += monomial_value<double>(alpha, b) * block;
  return a;
}

ComplexMatrix MatrixPolynomial::evaluate(const ComplexVector& b) const {
  ComplexMatrix a = ComplexMatrix::Zero(rows, cols);
  for (const auto& [alpha, block] : blocks)
    a += monomial_value<Complex>(alpha, b) * block.cast<Complex>();
  return a;
}

ComplexMatrix MatrixPolynomial::derivative(const ComplexVector& b, int i) const {
  ComplexMatrix d = ComplexMatrix::Zero(rows, cols);
  const auto idx = static_cast<std::size_t>(i);
  for (const auto& [alpha, block] : blocks) {
    if (alpha[idx] == 0) continue;
    Monomial lowered = alpha;
    --lowered[idx];
    d += static_cast<double>(alpha[idx]) * monomial_value<Complex>(lowered, b) *
         block.cast<Complex>();
  }
  return d;
}

MatrixPolynomial build_matrix_polynomial(const Signal& y, const ModelPoly& c, int q) {
  const Eigen::Index n_samples = y.size();
  const int m = c.degree();
  const int n = m + q;
  if (q < 1) throw InputError("build_matrix_polynomial: need at least one unknown coefficient");
  if (n_samples <= 2 * n) throw InputError("build_matrix_polynomial: need N > 2n samples");

  const Eigen::Index rows = n_samples - n;
  const Eigen::Index g_len = n_samples - 2 * n + m;

  // a = c * (z^q + b_1 z^{q-1} + ... + b_q) = sum_j b_j c z^{q-j}, b_0 = 1, so
  // T(a) = sum_j b_j T(c z^{q-j}) and likewise T(b) = sum_j b_j T(z^{q-j}).
  std::vector<Matrix> ta;
  std::vector<Matrix> tb;
  for (int j = 0; j <= q; ++j) {
    ta.push_back(toeplitz(shifted(c, q - j, n), rows));
    Vector unit = Vector::Zero(q + 1);
    unit[q - j] = 1.0;
    tb.push_back(toeplitz(ModelPoly(std::move(unit)), g_len));
  }

  MatrixPolynomial mp;
  mp.var_count = q;
  mp.rows = rows;
  mp.cols = g_len + 1;
  auto block = [&](const Monomial& alpha) -> Matrix& {
    auto it = mp.blocks.find(alpha);
    if (it == mp.blocks.end()) it = mp.blocks.emplace(alpha, Matrix::Zero(rows, mp.cols)).first;
    return it->second;
  };

  for (int j = 0; j <= q; ++j) block(unit_monomial(q, j)).col(0) += ta[j] * y.values();

  for (int i = 0; i <= q; ++i) {
    for (int j = 0; j <= q; ++j) {
      const Matrix gram = ta[i] * ta[j].transpose();
      const Monomial ij = add(unit_monomial(q, i), unit_monomial(q, j));
      for (int l = 0; l <= q; ++l) {
        block(add(ij, unit_monomial(q, l))).rightCols(g_len) += gram * tb[l].transpose();
      }
    }
  }
  return mp;
}

std::vector<Monomial> monomials_up_to(int q, int d) {
  std::vector<Monomial> out;
  Monomial prefix;
  for (int t = 0; t <= d; ++t) {
    if (q == 0) {
      if (t == 0) out.emplace_back();
      continue;
    }
    append_monomials(q, t, prefix, out);
  }
  return out;
}

BlockMacaulay build_block_macaulay(const MatrixPolynomial& mp, int degree) {
  const int deg_a = mp.degree();
  if (degree < deg_a) throw InputError("build_block_macaulay: degree below the polynomial degree");
  BlockMacaulay bm;
  bm.degree = degree;
  bm.row_monomials = monomials_up_to(mp.var_count, degree - deg_a);
  bm.col_monomials = monomials_up_to(mp.var_count, degree);
  for (std::size_t i = 0; i < bm.col_monomials.size(); ++i)
    bm.col_index.emplace(bm.col_monomials[i], static_cast<Eigen::Index>(i));

  const auto n_rows = static_cast<Eigen::Index>(bm.row_monomials.size());
  const auto n_cols = static_cast<Eigen::Index>(bm.col_monomials.size());
  bm.matrix = Matrix::Zero(n_rows * mp.rows, n_cols * mp.cols);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const Monomial& beta = bm.row_monomials[static_cast<std::size_t>(r)];
    for (const auto& [alpha, block] : mp.blocks) {
      const Eigen::Index col = bm.col_index.at(add(beta, alpha));
      bm.matrix.block(r * mp.rows, col * mp.cols, mp.rows, mp.cols) += block;
    }
  }
  return bm;
}

MepSpectrum solve_univariate(const MatrixPolynomial& mp) {
  if (mp.var_count != 1 || mp.rows != mp.cols) {
    throw InputError("solve_univariate: needs a square matrix polynomial in one variable");
  }
  const Eigen::Index k = mp.cols;

  std::vector<int> col_deg(static_cast<std::size_t>(k));
  std::vector<Eigen::Index> offset(static_cast<std::size_t>(k));
  Eigen::Index size = 0;
  for (Eigen::Index j = 0; j < k; ++j) {
    col_deg[j] = std::max(1, mp.column_degree(j));
    offset[j] = size;
    size += col_deg[j];
  }
  auto coeff_col = [&](int p, Eigen::Index j) -> Vector {
    auto it = mp.blocks.find(Monomial{p});
    return it == mp.blocks.end() ? Vector::Zero(mp.rows) : Vector(it->second.col(j));
  };

  // Unknowns v_{j,p} = b^p z_j, p < deg_j. Pencil rows: shift relations
  // v_{j,p} = b v_{j,p-1}, then the k rows of A(b) z = 0 written as
  //   sum_{p < deg_j} A_p[:, j] v_{j,p} = -b A_{deg_j}[:, j] v_{j,deg_j - 1}.
  Matrix lhs = Matrix::Zero(size, size);
  Matrix rhs = Matrix::Zero(size, size);
  Eigen::Index row = 0;
  for (Eigen::Index j = 0; j < k; ++j) {
    for (int p = 1; p < col_deg[j]; ++p, ++row) {
      lhs(row, offset[j] + p) = 1.0;
      rhs(row, offset[j] + p - 1) = 1.0;
    }
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    for (int p = 0; p < col_deg[j]; ++p) lhs.block(row, offset[j] + p, k, 1) = coeff_col(p, j);
    rhs.block(row, offset[j] + col_deg[j] - 1, k, 1) = -coeff_col(col_deg[j], j);
  }

  Eigen::GeneralizedEigenSolver<Matrix> ges(lhs, rhs, true);
  if (ges.info() != Eigen::Success) throw DegenerateError("solve_univariate: QZ iteration failed");

  const double scale = std::max(lhs.norm(), rhs.norm());
  const auto& alphas = ges.alphas();
  const auto& betas = ges.betas();
  const ComplexMatrix vecs = ges.eigenvectors();

  MepSpectrum spectrum;
  for (Eigen::Index e = 0; e < size; ++e) {
    const double abs_alpha = std::abs(alphas[e]);
    const double abs_beta = std::abs(betas[e]);
    if (abs_alpha <= 1e-13 * scale && abs_beta <= 1e-13 * scale) {
      throw DegenerateError("solve_univariate: linearization pencil is singular");
    }
    if (abs_beta <= 1e-10 * abs_alpha) {
      ++spectrum.infinite;
      continue;
    }
    AffineSolution s;
    s.b = ComplexVector::Constant(1, alphas[e] / betas[e]);
    s.z.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) s.z[j] = vecs(offset[j], e);
    spectrum.affine.push_back(std::move(s));
  }
  return spectrum;
}

MepSpectrum solve_block_macaulay(const MatrixPolynomial& mp, int max_degree,
                                 Eigen::Index max_columns) {
  const int q = mp.var_count;
  if (q < 1) throw InputError("solve_block_macaulay: needs at least one variable");
  const int deg_a = mp.degree();
  const Eigen::Index k = mp.cols;

  MepSpectrum spectrum;
  auto& diag = spectrum.macaulay;

  for (int d = deg_a; d <= max_degree; ++d) {
    const auto n_cols = static_cast<Eigen::Index>(monomials_up_to(q, d).size()) * k;
    if (n_cols > max_columns) {
      std::ostringstream msg;
      msg << "block Macaulay matrix at degree " << d << " would have " << n_cols
          << " columns (limit " << max_columns << ") before the null space stabilized";
      throw SolverError(msg.str(), diag.nullity_history);
    }
    const BlockMacaulay bm = build_block_macaulay(mp, d);
    Eigen::BDCSVD<Matrix> svd(bm.matrix, Eigen::ComputeFullV);
    const Vector& sv = svd.singularValues();
    const double tol = rank_threshold(sv, bm.matrix.rows(), bm.matrix.cols());
    const auto rank = static_cast<Eigen::Index>((sv.array() > tol).count());
    const Eigen::Index nullity = bm.matrix.cols() - rank;
    diag.nullity_history.push_back(static_cast<long>(nullity));
    diag.final_degree = d;
    diag.rank_gap_ratio = (rank > 0 && rank < sv.size())
                              ? sv[rank - 1] / std::max(sv[rank], 1e-300)
                              : std::numeric_limits<double>::infinity();
    if (nullity == 0) continue;

    const Matrix z = svd.matrixV().rightCols(nullity);

    // Rank of the null-space rows of degree <= t; the monomial order is
    // graded, so those rows form a prefix.
    std::vector<Eigen::Index> prefix_rows;
    diag.rank_profile.clear();
    Eigen::Index count = 0;
    for (int t = 0; t <= d; ++t) {
      while (count < static_cast<Eigen::Index>(bm.col_monomials.size()) &&
             total_degree(bm.col_monomials[static_cast<std::size_t>(count)]) <= t)
        ++count;
      prefix_rows.push_back(count * k);
      const Matrix top = z.topRows(count * k);
      const Vector tsv = top.bdcSvd().singularValues();
      diag.rank_profile.push_back(numerical_rank(tsv, top.rows(), top.cols()));
    }

    const auto& hist = diag.nullity_history;
    const std::size_t h = hist.size();
    const bool increments_settled =
        h >= 3 && hist[h - 1] - hist[h - 2] == hist[h - 2] - hist[h - 3];
    int gap = -1;
    for (int t = 1; t <= d; ++t) {
      if (diag.rank_profile[t] == diag.rank_profile[t - 1] && diag.rank_profile[t - 1] > 0) {
        gap = t;
        break;
      }
    }
    if (!increments_settled || gap < 0) continue;
    diag.gap_start = gap;

    const int affine_degree = gap - 1;
    const auto n_affine = static_cast<Eigen::Index>(diag.rank_profile[affine_degree]);
    const Eigen::Index top_rows = prefix_rows[gap];
    const Eigen::Index base_rows = prefix_rows[affine_degree];

    // Column compression onto the affine part of the null space.
    const Matrix z_top = z.topRows(top_rows);
    Eigen::BDCSVD<Matrix> top_svd(z_top, Eigen::ComputeThinV);
    const Matrix w = z_top * top_svd.matrixV().leftCols(n_affine);

    // Shift relations: row (mu, comp) of degree <= affine_degree times b_i
    // equals row (mu + e_i, comp).
    std::vector<Matrix> shifted_rows(static_cast<std::size_t>(q), Matrix(base_rows, n_affine));
    for (Eigen::Index r = 0; r < base_rows; ++r) {
      const Monomial& mu = bm.col_monomials[static_cast<std::size_t>(r / k)];
      for (int i = 0; i < q; ++i) {
        Monomial up = mu;
        ++up[static_cast<std::size_t>(i)];
        const Eigen::Index target = bm.col_index.at(up) * k + r % k;
        shifted_rows[static_cast<std::size_t>(i)].row(r) = w.row(target);
      }
    }
    const Matrix base = w.topRows(base_rows);
    Matrix combined = Matrix::Zero(base_rows, n_affine);
    for (int i = 0; i < q; ++i) {
      // Fixed, distinct weights keep the combined shift eigenvalues simple.
      const double weight = 1.0 + std::fmod(0.6180339887498949 * (i + 1), 1.0);
      combined += weight * shifted_rows[static_cast<std::size_t>(i)];
    }
    Eigen::ColPivHouseholderQR<Matrix> base_qr(base);
    const Matrix shift_op = base_qr.solve(combined);
    Eigen::EigenSolver<Matrix> es(shift_op, true);
    if (es.info() != Eigen::Success) throw SolverError("shift eigenproblem failed", hist);
    const ComplexMatrix vecs = es.eigenvectors();

    for (Eigen::Index e = 0; e < n_affine; ++e) {
      const ComplexVector t = vecs.col(e);
      const ComplexVector u = base.cast<Complex>() * t;
      const Complex uu = u.squaredNorm();
      AffineSolution s;
      s.b.resize(q);
      for (int i = 0; i < q; ++i) {
        const ComplexVector shifted_u = shifted_rows[static_cast<std::size_t>(i)].cast<Complex>() * t;
        s.b[i] = u.dot(shifted_u) / uu;
      }
      s.z = (w.topRows(k).cast<Complex>() * t);
      spectrum.affine.push_back(std::move(s));
    }
    if (diag.rank_gap_ratio < 1e3) {
      std::ostringstream msg;
      msg << "block Macaulay rank decision is ambiguous: singular value gap ratio "
          << diag.rank_gap_ratio << " < 1e3";
      spectrum.warnings.push_back(msg.str());
    }
    return spectrum;
  }

  std::ostringstream msg;
  msg << "block Macaulay null space did not stabilize up to degree " << max_degree
      << "; nullity history:";
  for (long v : diag.nullity_history) msg << ' ' << v;
  throw SolverError(msg.str(), diag.nullity_history);
}

double relative_residual(const MatrixPolynomial& mp, const AffineSolution& s) {
  const ComplexMatrix a = mp.evaluate(s.b);
  const double denom = a.norm() * s.z.norm();
  return denom > 0.0 ? (a * s.z).norm() / denom : 0.0;
}

AffineSolution polish(const MatrixPolynomial& mp, const AffineSolution& s) {
  const int q = mp.var_count;
  const Eigen::Index k = mp.cols;
  const Eigen::Index n_unknowns = q + k - 1;

  ComplexVector b = s.b;
  ComplexVector w;
  if (std::abs(s.z[0]) > 1e-8 * s.z.norm()) {
    w = s.z.tail(k - 1) / s.z[0];
  } else {
    const ComplexMatrix a = mp.evaluate(b);
    w = a.rightCols(k - 1).colPivHouseholderQr().solve(-a.col(0));
  }

  auto residual = [&](const ComplexVector& bb, const ComplexVector& ww) {
    const ComplexMatrix a = mp.evaluate(bb);
    return ComplexVector(a.col(0) + a.rightCols(k - 1) * ww);
  };
  auto scaled_norm = [&](const ComplexVector& bb, const ComplexVector& r) {
    const double scale = mp.evaluate(bb).norm();
    return scale > 0.0 ? r.norm() / scale : r.norm();
  };

  const ComplexVector b0 = b;
  ComplexVector r = residual(b, w);
  const double initial = scaled_norm(b, r);
  double current = initial;
  for (int iter = 0; iter < 20; ++iter) {
    ComplexMatrix jac(mp.rows, n_unknowns);
    ComplexVector zfull(k);
    zfull[0] = 1.0;
    zfull.tail(k - 1) = w;
    for (int i = 0; i < q; ++i) jac.col(i) = mp.derivative(b, i) * zfull;
    jac.rightCols(k - 1) = mp.evaluate(b).rightCols(k - 1);
    const ComplexVector step = jac.colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) break;
    const ComplexVector b_next = b + step.head(q);
    const ComplexVector w_next = w + step.tail(k - 1);
    const ComplexVector r_next = residual(b_next, w_next);
    const double next = scaled_norm(b_next, r_next);
    if (!(next < current)) break;
    b = b_next;
    w = w_next;
    r = r_next;
    current = next;
    if (step.head(q).norm() <= 1e-15 * (1.0 + b.norm())) break;
  }

  if (!(current <= initial) || (b - b0).norm() > 1e-5 * (1.0 + b0.norm())) {
    AffineSolution unchanged = s;
    if (std::abs(s.z[0]) > 0.0) unchanged.z = s.z / s.z[0];
    return unchanged;
  }
  AffineSolution out;
  out.b = b;
  out.z.resize(k);
  out.z[0] = 1.0;
  out.z.tail(k - 1) = w;
  return out;
}

}  // namespace gor
