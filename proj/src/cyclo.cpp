#include "gesforge/cyclo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gesforge/elimination.hpp"

namespace gesforge {

bool is_prime(long long x) {
  if (x < 2) {
    return false;
  }
  if (x < 4) {
    return true;
  }
  if (x % 2 == 0) {
    return false;
  }
  for (long long f = 3; f * f <= x; f += 2) {
    if (x % f == 0) {
      return false;
    }
  }
  return true;
}

namespace {

long long mod_reduce(long long e, long long p) {
  const long long r = e % p;
  return r < 0 ? r + p : r;
}

// Folds a length-p coefficient vector over {1, ..., w^(p-1)} into the
// canonical basis by substituting w^(p-1) = -(1 + ... + w^(p-2)).
void fold_top(std::vector<Rational>& full) {
  const std::size_t top = full.size() - 1;
  if (sgn(full[top]) != 0) {
    for (std::size_t t = 0; t < top; ++t) {
      full[t] -= full[top];
    }
  }
  full.pop_back();
}

}  // namespace

CycNum::CycNum(Unchecked, int p) : order_(p), coeffs_(static_cast<std::size_t>(p - 1)) {}

CycNum::CycNum(int p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("cyclotomic order must be prime, got " + std::to_string(p));
  }
  order_ = p;
  coeffs_.assign(static_cast<std::size_t>(p - 1), Rational(0));
}

CycNum::CycNum(int p, std::vector<Rational> coeffs) : CycNum(p) {
  if (coeffs.size() != static_cast<std::size_t>(p - 1)) {
    throw std::invalid_argument("cyclotomic coefficient vector must have length p - 1");
  }
  coeffs_ = std::move(coeffs);
  for (auto& c : coeffs_) {
    c.canonicalize();
  }
}

CycNum CycNum::root_power(long long e, int p) {
  CycNum out(p);
  const long long r = mod_reduce(e, p);
  if (r == p - 1) {
    for (auto& c : out.coeffs_) {
      c = -1;
    }
  } else {
    out.coeffs_[static_cast<std::size_t>(r)] = 1;
  }
  return out;
}

CycNum CycNum::from_rational(const Rational& r, int p) {
  CycNum out(p);
  out.coeffs_[0] = r;
  out.coeffs_[0].canonicalize();
  return out;
}

bool CycNum::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) {
      return false;
    }
  }
  return true;
}

std::complex<double> CycNum::to_complex() const {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / order_;
    acc += coeffs_[t].get_d() * std::polar(1.0, angle);
  }
  return acc;
}

int CycNum::common_order(const CycNum& a, const CycNum& b) {
  if (a.order_ == 0) {
    return b.order_;
  }
  if (b.order_ != 0 && a.order_ != b.order_) {
    throw std::invalid_argument("cyclotomic orders differ: " + std::to_string(a.order_) + " vs " +
                                std::to_string(b.order_));
  }
  return a.order_;
}

void CycNum::bind(int p) {
  if (order_ == 0 && p != 0) {
    order_ = p;
    coeffs_.assign(static_cast<std::size_t>(p - 1), Rational(0));
  }
}

CycNum& CycNum::operator+=(const CycNum& rhs) {
  bind(common_order(*this, rhs));
  for (std::size_t t = 0; t < rhs.coeffs_.size(); ++t) {
    coeffs_[t] += rhs.coeffs_[t];
  }
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& rhs) {
  bind(common_order(*this, rhs));
  for (std::size_t t = 0; t < rhs.coeffs_.size(); ++t) {
    coeffs_[t] -= rhs.coeffs_[t];
  }
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& rhs) {
  const int p = common_order(*this, rhs);
  if (order_ == 0 || rhs.order_ == 0) {
    *this = p == 0 ? CycNum() : CycNum(Unchecked{}, p);
    return *this;
  }
  // Product in Q[x]/(x^p - 1), then fold the top coefficient.
  std::vector<Rational> full(static_cast<std::size_t>(p), Rational(0));
  const std::size_t len = coeffs_.size();
  for (std::size_t i = 0; i < len; ++i) {
    if (sgn(coeffs_[i]) == 0) {
      continue;
    }
    for (std::size_t j = 0; j < len; ++j) {
      if (sgn(rhs.coeffs_[j]) == 0) {
        continue;
      }
      std::size_t e = i + j;
      if (e >= static_cast<std::size_t>(p)) {
        e -= static_cast<std::size_t>(p);
      }
      full[e] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  fold_top(full);
  coeffs_ = std::move(full);
  return *this;
}

CycNum& CycNum::operator*=(const Rational& rhs) {
  for (auto& c : coeffs_) {
    c *= rhs;
  }
  return *this;
}

CycNum CycNum::operator-() const {
  CycNum out = *this;
  for (auto& c : out.coeffs_) {
    c = -c;
  }
  return out;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.order_ == 0 || b.order_ == 0) {
    return a.is_zero() && b.is_zero();
  }
  return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

CycNum CycNum::galois(long long t) const {
  if (order_ == 0) {
    return *this;
  }
  const long long p = order_;
  if (mod_reduce(t, p) == 0) {
    throw std::invalid_argument("Galois exponent must be coprime to the order");
  }
  std::vector<Rational> full(static_cast<std::size_t>(p), Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    full[static_cast<std::size_t>(mod_reduce(t * static_cast<long long>(k), p))] += coeffs_[k];
  }
  fold_top(full);
  CycNum out(Unchecked{}, order_);
  out.coeffs_ = std::move(full);
  return out;
}

CycNum CycNum::inverse() const {
  if (is_zero()) {
    throw std::domain_error("inverse of zero cyclotomic number");
  }
  // a^{-1} = prod_{t=2}^{p-1} sigma_t(a) / N(a), with N(a) = a * prod sigma_t(a) rational.
  CycNum conj_product = CycNum::root_power(0, order_);
  for (int t = 2; t < order_; ++t) {
    conj_product *= galois(t);
  }
  const CycNum norm = *this * conj_product;
  const Rational n = norm.coeffs_[0];
  for (std::size_t t = 1; t < norm.coeffs_.size(); ++t) {
    if (sgn(norm.coeffs_[t]) != 0) {
      throw std::logic_error("field norm is not rational");
    }
  }
  for (auto& c : conj_product.coeffs_) {
    c /= n;
  }
  return conj_product;
}

CycNum cyc_root_power(long long e, int p) { return CycNum::root_power(e, p); }
CycNum cyc_add(const CycNum& a, const CycNum& b) { return a + b; }
CycNum cyc_mul(const CycNum& a, const CycNum& b) { return a * b; }
CycNum cyc_neg(const CycNum& a) { return -a; }
bool cyc_is_zero(const CycNum& a) { return a.is_zero(); }
std::complex<double> cyc_to_float(const CycNum& a) { return a.to_complex(); }

Eigen::MatrixXcd cyc_to_float(const CycMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out(i, j) = m(i, j).to_complex();
    }
  }
  return out;
}

int cyc_matrix_order(const CycMatrix& m) {
  int p = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const int q = m(i, j).order();
      if (q == 0) {
        continue;
      }
      if (p == 0) {
        p = q;
      } else if (p != q) {
        throw std::invalid_argument("matrix mixes cyclotomic orders");
      }
    }
  }
  return p;
}

CycNum cyc_det(const CycMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("cyc_det requires a square matrix");
  }
  const int p = cyc_matrix_order(m);
  if (p == 0) {
    // All entries are unbound zeros; only the empty matrix has a nonzero determinant.
    if (m.rows() == 0) {
      throw std::invalid_argument("cyc_det of an empty matrix has no order");
    }
    return CycNum();
  }
  return exact_determinant(m, CycNum::root_power(0, p));
}

std::size_t cyc_rank(const CycMatrix& m) {
  cyc_matrix_order(m);
  return exact_rank(m);
}

CycMatrix dft_submatrix(int p, const std::vector<int>& rows, const std::vector<int>& cols) {
  CycMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          CycNum::root_power(static_cast<long long>(rows[i]) * cols[j], p);
    }
  }
  return out;
}

}  // namespace gesforge
