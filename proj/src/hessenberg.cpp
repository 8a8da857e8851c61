#include "opshift/hessenberg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>

#include "dense.hpp"
#include "opshift/measure.hpp"

namespace opshift {

HessenbergMatrix::HessenbergMatrix(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "Hessenberg matrix of dimension 0");
  data_.assign((dim - 1) * (dim + 2) / 2 + dim, cplx(0.0));
}

std::size_t HessenbergMatrix::index(std::size_t j, std::size_t k) const {
  // Column k stores rows 1..min(k+1, dim); columns before it hold (k-1)(k+2)/2 entries.
  return (k - 1) * (k + 2) / 2 + (j - 1);
}

cplx HessenbergMatrix::operator()(std::size_t j, std::size_t k) const {
  if (j == 0 || k == 0 || j > dim_ || k > dim_) {
    throw Error(ErrorCode::IndexOutOfRange, "entry (" + std::to_string(j) + "," +
                                                std::to_string(k) + ") outside dimension " +
                                                std::to_string(dim_));
  }
  if (j > k + 1) return 0.0;
  return data_[index(j, k)];
}

void HessenbergMatrix::set(std::size_t j, std::size_t k, cplx value) {
  if (j == 0 || k == 0 || j > dim_ || k > dim_ || j > k + 1) {
    throw Error(ErrorCode::IndexOutOfRange,
                "cannot store entry (" + std::to_string(j) + "," + std::to_string(k) + ")");
  }
  data_[index(j, k)] = value;
}

double HessenbergMatrix::log_kappa(std::size_t n) const {
  if (log_kappa_.empty()) throw Error(ErrorCode::InvalidArgument, "no kappa attached");
  if (n >= log_kappa_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "kappa index " + std::to_string(n));
  }
  return log_kappa_[n];
}

double HessenbergMatrix::kappa(std::size_t n) const { return std::exp(log_kappa(n)); }

double HessenbergMatrix::kappa_ratio(std::size_t m, std::size_t n) const {
  return std::exp(log_kappa(m) - log_kappa(n));
}

std::vector<double> HessenbergMatrix::kappas() const {
  std::vector<double> out;
  for (double l : log_kappa_) out.push_back(std::exp(l));
  return out;
}

void HessenbergMatrix::attach_kappa(std::vector<double> kappa) {
  for (double k : kappa) {
    if (!(k > 0.0) || !std::isfinite(k)) {
      throw Error(ErrorCode::InvalidArgument, "kappa must be positive and finite");
    }
  }
  for (double& k : kappa) k = std::log(k);
  attach_log_kappa(std::move(kappa));
}

void HessenbergMatrix::attach_log_kappa(std::vector<double> log_kappa) {
  if (log_kappa.size() < dim_) {
    throw Error(ErrorCode::InvalidArgument, "kappa must cover kappa_0..kappa_{dim-1}");
  }
  for (double l : log_kappa) {
    if (!std::isfinite(l)) throw Error(ErrorCode::InvalidArgument, "log kappa must be finite");
  }
  log_kappa.resize(dim_);
  log_kappa_ = std::move(log_kappa);
}

HessenbergMatrix HessenbergMatrix::leading(std::size_t n) const {
  if (n == 0 || n > dim_) throw Error(ErrorCode::IndexOutOfRange, "leading block size");
  HessenbergMatrix out(n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t j = 1; j <= std::min(k + 1, n); ++j) out.set(j, k, (*this)(j, k));
  }
  if (has_kappa()) {
    out.attach_log_kappa({log_kappa_.begin(), log_kappa_.begin() + static_cast<long>(n)});
  }
  return out;
}

bool PathChain::valid() const {
  if (offsets.size() < 2) return false;
  const std::size_t k = offsets.size() - 2;
  if (offsets.front() != 0 || offsets.back() != 0) return false;
  for (std::size_t m = 0; m + 1 < offsets.size(); ++m) {
    if (offsets[m] > k) return false;
    if (offsets[m + 1] > offsets[m] + 1) return false;
  }
  return true;
}

std::vector<PathChain> enumerate_chains(std::size_t k) {
  std::vector<PathChain> out;
  PathChain current;
  current.offsets.assign(k + 2, 0);
  // Depth-first over i_1..i_k; i_{k+1} = 0 is always reachable since steps down are free.
  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    if (pos == k + 1) {
      out.push_back(current);
      return;
    }
    const std::size_t hi = std::min(k, current.offsets[pos - 1] + 1);
    for (std::size_t v = 0; v <= hi; ++v) {
      current.offsets[pos] = v;
      self(self, pos + 1);
    }
  };
  recurse(recurse, 1);
  return out;
}

cplx chain_product(const HessenbergMatrix& M, std::size_t n, const PathChain& chain) {
  if (!chain.valid()) throw Error(ErrorCode::BadPath, "chain is not in L(k)");
  cplx product = 1.0;
  for (std::size_t m = 0; m + 1 < chain.offsets.size(); ++m) {
    if (chain.offsets[m] >= n || chain.offsets[m + 1] >= n) return 0.0;
    product *= M(n - chain.offsets[m], n - chain.offsets[m + 1]);
  }
  return product;
}

namespace {

double max_pairwise_distance(std::span<const cplx> tail) {
  double r = 0.0;
  for (std::size_t a = 0; a < tail.size(); ++a) {
    for (std::size_t b = a + 1; b < tail.size(); ++b) r = std::max(r, std::abs(tail[a] - tail[b]));
  }
  return r;
}

// Least-squares fit of the tail by a polynomial of the given degree in s = n_last / n,
// evaluated at s = 0.
cplx extrapolate(std::span<const cplx> tail, std::size_t first_n, std::size_t degree) {
  const auto rows = static_cast<Eigen::Index>(tail.size());
  const auto cols = static_cast<Eigen::Index>(degree + 1);
  const double n_last = static_cast<double>(first_n + tail.size() - 1);
  Eigen::MatrixXd V(rows, cols);
  Eigen::MatrixXd rhs(rows, 2);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double s = n_last / static_cast<double>(first_n + static_cast<std::size_t>(r));
    double p = 1.0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      V(r, c) = p;
      p *= s;
    }
    rhs(r, 0) = tail[static_cast<std::size_t>(r)].real();
    rhs(r, 1) = tail[static_cast<std::size_t>(r)].imag();
  }
  const Eigen::MatrixXd coef = V.colPivHouseholderQr().solve(rhs);
  return {coef(0, 0), coef(0, 1)};
}

}  // namespace

LimitEstimate estimate_limit(std::span<const cplx> tail, std::size_t first_n, double tol,
                             LimitMethod method) {
  if (tail.empty()) throw Error(ErrorCode::InsufficientData, "empty sequence tail");
  LimitEstimate e;
  e.tail.assign(tail.begin(), tail.end());
  e.first_n = first_n;
  e.tol = tol;
  e.method = method;
  if (method == LimitMethod::Cauchy) {
    e.residual = max_pairwise_distance(tail);
    e.limit = tail.back();
  } else {
    if (tail.size() < 7) {
      throw Error(ErrorCode::InsufficientData, "extrapolation needs at least 7 samples");
    }
    if (first_n == 0) throw Error(ErrorCode::InvalidArgument, "extrapolation needs n >= 1");
    // The quartic fit serves only as the error estimate of the cubic one.
    const cplx cubic = extrapolate(tail, first_n, 3);
    const cplx quartic = extrapolate(tail, first_n, 4);
    e.limit = cubic;
    e.residual = std::abs(quartic - cubic);
  }
  e.converged = e.residual < tol;
  return e;
}

cplx char_poly(const HessenbergMatrix& M, std::size_t n, cplx z) {
  if (n > M.dim()) throw Error(ErrorCode::IndexOutOfRange, "char_poly beyond dimension");
  std::vector<cplx> p(n + 1);
  p[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    cplx acc = (z - M(k, k)) * p[k - 1];
    cplx chain = 1.0;  // h_{i+1,i} ... h_{k,k-1}
    for (std::size_t i = k - 1; i >= 1; --i) {
      chain *= M(i + 1, i);
      acc -= M(i, k) * chain * p[i - 1];
    }
    p[k] = acc;
  }
  return p[n];
}

cplx resolvent_corner(const HessenbergMatrix& M, std::size_t n, cplx z) {
  if (n == 0 || n > M.dim()) throw Error(ErrorCode::IndexOutOfRange, "resolvent size");
  // A = z - H, row-major; only rows c and c+1 are touched when clearing column c.
  std::vector<cplx> A(n * n, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> cplx& { return A[r * n + c]; };
  double scale = std::abs(z);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t j = 1; j <= std::min(k + 1, n); ++j) {
      const cplx h = M(j, k);
      at(j - 1, k - 1) = (j == k ? z : cplx(0.0)) - h;
      scale = std::max(scale, std::abs(h));
    }
  }
  std::vector<cplx> rhs(n, 0.0);
  rhs[n - 1] = 1.0;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    if (std::abs(at(c + 1, c)) > std::abs(at(c, c))) {
      for (std::size_t col = c; col < n; ++col) std::swap(at(c, col), at(c + 1, col));
      std::swap(rhs[c], rhs[c + 1]);
    }
    if (at(c + 1, c) == cplx(0.0)) continue;
    const cplx l = at(c + 1, c) / at(c, c);
    at(c + 1, c) = 0.0;
    for (std::size_t col = c + 1; col < n; ++col) at(c + 1, col) -= l * at(c, col);
    rhs[c + 1] -= l * rhs[c];
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (std::abs(at(r, r)) < 1e-13 * scale) {
      throw Error(ErrorCode::SingularShift, "z is numerically an eigenvalue of the truncation");
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t r = n; r-- > 0;) {
    cplx acc = rhs[r];
    for (std::size_t col = r + 1; col < n; ++col) acc -= at(r, col) * x[col];
    x[r] = acc / at(r, r);
  }
  return x[n - 1];
}

namespace {

// (W^j)_{n,n} for the dense window of M on rows/columns lo..hi.
cplx windowed_power(const HessenbergMatrix& M, std::size_t n, std::size_t j, std::size_t lo,
                    std::size_t hi) {
  const std::size_t s = hi - lo + 1;
  std::vector<cplx> v(s, 0.0);
  v[n - lo] = 1.0;
  std::vector<cplx> next(s);
  for (std::size_t step = 0; step < j; ++step) {
    std::fill(next.begin(), next.end(), cplx(0.0));
    for (std::size_t c = 0; c < s; ++c) {
      if (v[c] == cplx(0.0)) continue;
      const std::size_t col = lo + c;
      for (std::size_t row = lo; row <= std::min(col + 1, hi); ++row) {
        next[row - lo] += M(row, col) * v[c];
      }
    }
    std::swap(v, next);
  }
  return v[n - lo];
}

}  // namespace

cplx truncated_power_diagonal(const HessenbergMatrix& M, std::size_t n, std::size_t j) {
  if (n == 0 || n > M.dim()) throw Error(ErrorCode::IndexOutOfRange, "corner index");
  if (j == 0) return 1.0;
  const std::size_t lo = n >= j ? n - j + 1 : 1;
  return windowed_power(M, n, j, lo, n);
}

cplx full_power_diagonal(const HessenbergMatrix& M, std::size_t n, std::size_t j) {
  if (n == 0) throw Error(ErrorCode::IndexOutOfRange, "diagonal index");
  if (j == 0) return 1.0;
  const std::size_t hi = n + j - 1;
  if (hi > M.dim()) {
    throw Error(ErrorCode::WindowExceeded, "(M^" + std::to_string(j) + ")_{" + std::to_string(n) +
                                               "," + std::to_string(n) + "} needs dimension " +
                                               std::to_string(hi));
  }
  const std::size_t lo = n >= j ? n - j + 1 : 1;
  return windowed_power(M, n, j, lo, hi);
}

cplx block_power_diagonal(const HessenbergMatrix& M, std::size_t k, std::size_t j, std::size_t b) {
  if (k == 0 || k > b || b > M.dim()) throw Error(ErrorCode::IndexOutOfRange, "block index");
  if (j == 0) return 1.0;
  const std::size_t lo = k >= j ? k - j + 1 : 1;
  return windowed_power(M, k, j, lo, std::min(b, k + j - 1));
}

RepeatCheck lemma_repeat_check(const HessenbergMatrix& M, std::span<const std::size_t> path) {
  if (path.size() < 2 || path.front() != path.back()) {
    throw Error(ErrorCode::BadPath, "excursion must start and end at the same index");
  }
  if (!M.has_kappa()) throw Error(ErrorCode::InvalidArgument, "lemma check needs kappa");
  std::set<std::size_t> seen;
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    if (!seen.insert(path[t]).second) {
      throw Error(ErrorCode::BadPath, "indices before the return must be distinct");
    }
  }
  for (std::size_t t = 0; t < path.size(); ++t) {
    if (path[t] == 0 || path[t] > M.dim()) throw Error(ErrorCode::BadPath, "index out of range");
    if (t + 1 < path.size() && path[t + 1] + 1 < path[t]) {
      throw Error(ErrorCode::BadPath, "steps may go down by at most one");
    }
  }
  RepeatCheck out{1.0, 0.0};
  for (std::size_t t = 0; t + 1 < path.size(); ++t) out.product *= M(path[t], path[t + 1]);
  const auto [lo, hi] = std::minmax_element(path.begin(), path.end());
  out.collapsed = M.kappa_ratio(*lo - 1, *hi - 1) * M(*lo, *hi);
  return out;
}

cplx scaled_diagonal(const HessenbergMatrix& M, std::size_t n, std::ptrdiff_t j) {
  const auto sn = static_cast<std::ptrdiff_t>(n);
  if (j < -1 || sn - j < 1 || n == 0 || n > M.dim() ||
      sn - j > static_cast<std::ptrdiff_t>(M.dim())) {
    throw Error(ErrorCode::IndexOutOfRange,
                "scaled diagonal index (n=" + std::to_string(n) + ", j=" + std::to_string(j) + ")");
  }
  const auto row = static_cast<std::size_t>(sn - j);
  return M.kappa_ratio(row - 1, n - 1) * M(row, n);
}

std::vector<DiagonalSample> diagonal_sequence(const HessenbergMatrix& M, std::ptrdiff_t j,
                                              bool scaled) {
  if (j < -1) throw Error(ErrorCode::IndexOutOfRange, "diagonals below -1 are identically 0");
  std::vector<DiagonalSample> out;
  const auto dim = static_cast<std::ptrdiff_t>(M.dim());
  for (std::ptrdiff_t n = std::max<std::ptrdiff_t>(1, j + 1); n <= dim; ++n) {
    if (n - j > dim) continue;
    const auto un = static_cast<std::size_t>(n);
    const cplx v = scaled ? scaled_diagonal(M, un, j) : M(static_cast<std::size_t>(n - j), un);
    out.push_back({un, v});
  }
  return out;
}

LimitEstimate diagonal_limit(const HessenbergMatrix& M, std::ptrdiff_t j, bool scaled,
                             std::size_t window, double tol, LimitMethod method) {
  const auto seq = diagonal_sequence(M, j, scaled);
  if (window == 0 || seq.size() < window) {
    throw Error(ErrorCode::InsufficientData,
                "diagonal " + std::to_string(j) + " has " + std::to_string(seq.size()) +
                    " entries, window needs " + std::to_string(window));
  }
  std::vector<cplx> tail;
  for (std::size_t i = seq.size() - window; i < seq.size(); ++i) tail.push_back(seq[i].value);
  return estimate_limit(tail, seq[seq.size() - window].n, tol, method);
}

double max_singular_value(const HessenbergMatrix& M) {
  const Eigen::MatrixXcd D = detail::to_dense(M);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(D);
  return svd.singularValues()(0);
}

NormBound norm_bound(const HessenbergMatrix& M, double support_radius) {
  return {support_radius, max_singular_value(M)};
}

NormBound norm_bound(const HessenbergMatrix& M, const MeasureSpec& m) {
  return norm_bound(M, m.support_radius());
}

void write_csv(std::ostream& out, const HessenbergMatrix& M) {
  out << "j,k,re,im\n" << std::setprecision(17);
  for (std::size_t k = 1; k <= M.dim(); ++k) {
    for (std::size_t j = 1; j <= std::min(k + 1, M.dim()); ++j) {
      const cplx v = M(j, k);
      out << j << ',' << k << ',' << v.real() << ',' << v.imag() << "\n";
    }
  }
}

void write_diagonals_csv(std::ostream& out, const HessenbergMatrix& M,
                         std::span<const std::ptrdiff_t> js, bool scaled) {
  out << "j,n,re,im,scaled\n" << std::setprecision(17);
  for (const auto j : js) {
    for (const auto& s : diagonal_sequence(M, j, scaled)) {
      out << j << ',' << s.n << ',' << s.value.real() << ',' << s.value.imag() << ','
          << (scaled ? 1 : 0) << "\n";
    }
  }
}

void write_limit_row(std::ostream& out, std::ptrdiff_t j, const LimitEstimate& e) {
  out << std::setprecision(17) << j << ',' << (e.converged ? 1 : 0) << ',' << e.limit.real() << ','
      << e.limit.imag() << ',' << e.residual << ',' << e.tail.size() << ',' << e.tol << "\n";
}

}  // namespace opshift
