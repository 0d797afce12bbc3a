#include "gesforge/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace gesforge {

Bipartition Bipartition::of(int n, std::vector<int> parties) {
  std::sort(parties.begin(), parties.end());
  if (n < 2) {
    throw std::invalid_argument("bipartition needs at least two parties");
  }
  if (parties.empty() || parties.size() >= static_cast<std::size_t>(n)) {
    throw std::invalid_argument("bipartition side must be nonempty and proper");
  }
  if (std::adjacent_find(parties.begin(), parties.end()) != parties.end()) {
    throw std::invalid_argument("bipartition lists a party twice");
  }
  if (parties.front() < 0 || parties.back() >= n) {
    throw std::invalid_argument("bipartition party out of range");
  }
  return Bipartition{n, std::move(parties)};
}

std::vector<int> Bipartition::complement() const {
  std::vector<int> out;
  for (int m = 0; m < n; ++m) {
    if (!std::binary_search(parties.begin(), parties.end(), m)) {
      out.push_back(m);
    }
  }
  return out;
}

Bipartition Bipartition::canonical() const {
  if (!parties.empty() && parties.front() == 0) {
    return *this;
  }
  return Bipartition{n, complement()};
}

std::vector<Bipartition> enumerate_bipartitions(int n) {
  if (n < 2 || n > 30) {
    throw std::invalid_argument("party count out of range for bipartition enumeration");
  }
  std::vector<Bipartition> out;
  const unsigned full = (1U << n) - 1;
  for (unsigned mask = 1; mask < full; mask += 2) {
    Bipartition b{n, {}};
    for (int m = 0; m < n; ++m) {
      if ((mask >> m) & 1U) {
        b.parties.push_back(m);
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

long long flat_index(std::span<const int> digits, std::span<const int> dims) {
  if (digits.size() != dims.size()) {
    throw std::invalid_argument("digit tuple length must equal party count");
  }
  long long j = 0;
  for (std::size_t m = 0; m < dims.size(); ++m) {
    if (digits[m] < 0 || digits[m] >= dims[m]) {
      throw std::out_of_range("digit " + std::to_string(digits[m]) + " out of range for party " + std::to_string(m));
    }
    j = j * dims[m] + digits[m];
  }
  return j;
}

std::vector<int> unflatten(long long j, std::span<const int> dims) {
  std::vector<int> digits(dims.size());
  long long total = 1;
  for (int d : dims) {
    total *= d;
  }
  if (j < 0 || j >= total) {
    throw std::out_of_range("flat index out of range");
  }
  for (std::size_t m = dims.size(); m-- > 0;) {
    digits[m] = static_cast<int>(j % dims[m]);
    j /= dims[m];
  }
  return digits;
}

long long side_dimension(std::span<const int> dims, std::span<const int> parties) {
  long long d = 1;
  for (int m : parties) {
    d *= dims[static_cast<std::size_t>(m)];
  }
  return d;
}

std::vector<long long> column_offsets(std::span<const int> dims, std::span<const int> parties) {
  std::vector<int> local_dims;
  for (int m : parties) {
    local_dims.push_back(dims[static_cast<std::size_t>(m)]);
  }
  const long long count = side_dimension(dims, parties);
  std::vector<long long> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> full(dims.size(), 0);
  for (long long js = 0; js < count; ++js) {
    const auto local = unflatten(js, local_dims);
    for (std::size_t k = 0; k < parties.size(); ++k) {
      full[static_cast<std::size_t>(parties[k])] = local[k];
    }
    out.push_back(flat_index(full, dims));
  }
  return out;
}

std::vector<long long> bipartite_permutation(std::span<const int> dims, const Bipartition& b) {
  const auto s = b.parties;
  const auto sbar = b.complement();
  const long long dsbar = side_dimension(dims, sbar);
  const long long total = side_dimension(dims, s) * dsbar;
  std::vector<long long> perm(static_cast<std::size_t>(total));
  std::vector<int> ds_list;
  std::vector<int> dsbar_list;
  for (int m : s) {
    ds_list.push_back(dims[static_cast<std::size_t>(m)]);
  }
  for (int m : sbar) {
    dsbar_list.push_back(dims[static_cast<std::size_t>(m)]);
  }
  std::vector<int> ls(s.size());
  std::vector<int> lsbar(sbar.size());
  for (long long j = 0; j < total; ++j) {
    const auto digits = unflatten(j, dims);
    for (std::size_t k = 0; k < s.size(); ++k) {
      ls[k] = digits[static_cast<std::size_t>(s[k])];
    }
    for (std::size_t k = 0; k < sbar.size(); ++k) {
      lsbar[k] = digits[static_cast<std::size_t>(sbar[k])];
    }
    perm[static_cast<std::size_t>(j)] = flat_index(ls, ds_list) * dsbar + flat_index(lsbar, dsbar_list);
  }
  return perm;
}

CycMatrix side_matrix(const std::vector<ProductVector>& vectors, int p, std::span<const int> parties) {
  if (vectors.empty()) {
    return CycMatrix(0, 0);
  }
  std::vector<int> local_dims;
  for (int m : parties) {
    local_dims.push_back(static_cast<int>(vectors.front().locals.at(static_cast<std::size_t>(m)).exponents.size()));
  }
  long long cols = 1;
  for (int d : local_dims) {
    cols *= d;
  }
  CycMatrix out(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& v = vectors[i];
    for (long long js = 0; js < cols; ++js) {
      const auto digits = unflatten(js, local_dims);
      long long exponent = 0;
      Rational scale(1);
      for (std::size_t k = 0; k < parties.size(); ++k) {
        const auto& local = v.locals[static_cast<std::size_t>(parties[k])];
        const auto s = static_cast<std::size_t>(digits[k]);
        exponent += local.exponents[s];
        if (!local.scales[s].exact) {
          throw std::invalid_argument("scale factor has no exact rational value");
        }
        scale *= *local.scales[s].exact;
      }
      CycNum entry = CycNum::root_power(exponent, p);
      if (scale != 1) {
        entry *= scale;
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(js)) = std::move(entry);
    }
  }
  return out;
}

FlatMatrix assemble_M(const std::vector<ProductVector>& vectors, std::span<const int> dims, int p) {
  std::vector<int> all(dims.size());
  for (std::size_t m = 0; m < all.size(); ++m) {
    all[m] = static_cast<int>(m);
  }
  FlatMatrix out;
  out.dims.assign(dims.begin(), dims.end());
  out.p = p;
  out.entries = side_matrix(vectors, p, all);
  return out;
}

FlatMatrix assemble_M(const ConstructionParams& params) {
  return assemble_M(build_nupb(params), params.dims, params.p);
}

Eigen::MatrixXcd numeric_matrix(const std::vector<ProductState>& states) {
  if (states.empty()) {
    return Eigen::MatrixXcd(0, 0);
  }
  Eigen::Index cols = 1;
  for (const auto& l : states.front()) {
    cols *= l.size();
  }
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(states.size()), cols);
  for (std::size_t i = 0; i < states.size(); ++i) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Ones(1);
    for (const auto& l : states[i]) {
      Eigen::VectorXcd next = Eigen::kroneckerProduct(acc, l);
      acc = std::move(next);
    }
    if (acc.size() != cols) {
      throw std::invalid_argument("product states disagree on local dimensions");
    }
    out.row(static_cast<Eigen::Index>(i)) = acc.transpose();
  }
  return out;
}

Eigen::MatrixXcd numeric_matrix(const std::vector<ProductVector>& vectors) {
  std::vector<ProductState> states;
  states.reserve(vectors.size());
  for (const auto& v : vectors) {
    states.push_back(v.state());
  }
  return numeric_matrix(states);
}

std::pair<CycMatrix, CycMatrix> factor_matrices(const std::vector<ProductVector>& vectors, int p,
                                                const Bipartition& b) {
  const auto checked = Bipartition::of(b.n, b.parties);
  if (!vectors.empty() && vectors.front().locals.size() != static_cast<std::size_t>(b.n)) {
    throw std::invalid_argument("bipartition party count does not match the vectors");
  }
  const auto sbar = checked.complement();
  return {side_matrix(vectors, p, checked.parties), side_matrix(vectors, p, sbar)};
}

std::pair<CycMatrix, CycMatrix> factor_matrices(const ConstructionParams& params, const Bipartition& b) {
  return factor_matrices(build_nupb(params), params.p, b);
}

}  // namespace gesforge
