#pragma once

// Generating vectors, generalized anti-circulant structure and Hankel tensors.
//
// Index conventions: the generating vector v is 0-based (v_0 .. v_{(n-1)m}),
// tensor and matrix indices are 1-based, so a_{i_1...i_m} = v_{i_1+...+i_m-m}
// and the associated Hankel matrix has a_{ij} = v_{i+j-2}.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hankel/types.hpp"

namespace hankel {

inline Eigen::Index generating_length(int order, int dim) {
  return static_cast<Eigen::Index>(dim - 1) * order + 1;
}

/// n^m, saturating at cap + 1 so callers can compare against a cap without overflow.
inline long long dense_size(int order, int dim, long long cap = kDenseCap) {
  long long size = 1;
  for (int i = 0; i < order; ++i) {
    size *= dim;
    if (size > cap) return cap + 1;
  }
  return size;
}

template <typename Scalar = double>
class GeneratingVector {
 public:
  GeneratingVector(int order, int dim, Vector<Scalar> values)
      : order_(order), dim_(dim), values_(std::move(values)) {
    if (order < 2) throw std::invalid_argument("order m must be >= 2");
    if (dim < 2) throw std::invalid_argument("dimension n must be >= 2");
    if (values_.size() != generating_length(order, dim)) {
      throw std::invalid_argument("generating vector must have length (n-1)m+1 = " +
                                  std::to_string(generating_length(order, dim)) + ", got " +
                                  std::to_string(values_.size()));
    }
  }

  int order() const { return order_; }
  int dim() const { return dim_; }
  bool even() const { return order_ % 2 == 0; }
  int half_order() const { return order_ / 2; }
  Eigen::Index size() const { return values_.size(); }

  const Vector<Scalar>& values() const { return values_; }
  const Scalar& operator[](Eigen::Index s) const { return values_[s]; }

  template <typename To>
  GeneratingVector<To> cast() const {
    return GeneratingVector<To>(order_, dim_, values_.template cast<To>());
  }

 private:
  int order_;
  int dim_;
  Vector<Scalar> values_;
};

/// Compressed form of a generalized anti-circulant tensor: v_i = seed[i mod r].
///
/// The index r may exceed n (up to 2n-4) to cover the gcd(m, r) = 2 family,
/// but must leave v_i = v_{i+r} non-vacuous, i.e. r <= (n-1)m.
template <typename Scalar = double>
class CirculantSpec {
 public:
  CirculantSpec(int order, int dim, int index, Vector<Scalar> seed)
      : order_(order), dim_(dim), index_(index), seed_(std::move(seed)) {
    if (order < 2) throw std::invalid_argument("order m must be >= 2");
    if (dim < 2) throw std::invalid_argument("dimension n must be >= 2");
    if (index < 1) throw std::invalid_argument("circulant index r must be >= 1");
    if (index > (dim - 1) * order) {
      throw std::invalid_argument("circulant index r must satisfy r <= (n-1)m");
    }
    if (index > max_index(dim)) {
      throw std::invalid_argument("circulant index r must satisfy r <= max(n, 2n-4)");
    }
    if (seed_.size() != index) {
      throw std::invalid_argument("seed must have exactly r entries");
    }
  }

  static int max_index(int dim) { return std::max(dim, 2 * dim - 4); }

  int order() const { return order_; }
  int dim() const { return dim_; }
  int index() const { return index_; }
  const Vector<Scalar>& seed() const { return seed_; }

  /// v_s for any s >= 0.
  const Scalar& value(Eigen::Index s) const { return seed_[s % index_]; }

  GeneratingVector<Scalar> expand() const {
    Vector<Scalar> v(generating_length(order_, dim_));
    for (Eigen::Index s = 0; s < v.size(); ++s) v[s] = value(s);
    return GeneratingVector<Scalar>(order_, dim_, std::move(v));
  }

  template <typename To>
  CirculantSpec<To> cast() const {
    return CirculantSpec<To>(order_, dim_, index_, seed_.template cast<To>());
  }

 private:
  int order_;
  int dim_;
  int index_;
  Vector<Scalar> seed_;
};

template <typename Scalar>
GeneratingVector<Scalar> expand(const CirculantSpec<Scalar>& spec) {
  return spec.expand();
}

/// Smallest r with v_i = v_{i+r} for every valid i; the full length when aperiodic.
template <typename Scalar>
int minimal_period(const GeneratingVector<Scalar>& gen) {
  const Eigen::Index len = gen.size();
  for (Eigen::Index r = 1; r < len; ++r) {
    bool periodic = true;
    for (Eigen::Index i = 0; i + r < len && periodic; ++i) periodic = gen[i] == gen[i + r];
    if (periodic) return static_cast<int>(r);
  }
  return static_cast<int>(len);
}

/// Lazy order-m Hankel tensor; entries are looked up in the generating vector.
template <typename Scalar = double>
class HankelTensor {
 public:
  explicit HankelTensor(GeneratingVector<Scalar> gen) : gen_(std::move(gen)) {}

  const GeneratingVector<Scalar>& generator() const { return gen_; }
  int order() const { return gen_.order(); }
  int dim() const { return gen_.dim(); }

  /// Entry at a 1-based multi-index of length m.
  Scalar entry(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != order()) {
      throw std::invalid_argument("index tuple must have length m");
    }
    long long sum = 0;
    for (int i : idx) {
      if (i < 1 || i > dim()) throw std::out_of_range("tensor index out of range 1..n");
      sum += i;
    }
    return gen_[sum - order()];
  }

  Scalar entry(std::initializer_list<int> idx) const {
    return entry(std::span<const int>(idx.begin(), idx.size()));
  }

  /// Row-major dense copy of all n^m entries; first index varies slowest.
  std::vector<Scalar> materialize(long long cap = kDenseCap) const {
    const long long total = dense_size(order(), dim(), cap);
    if (total > cap) throw std::length_error("n^m exceeds the dense materialization cap");
    std::vector<Scalar> out(static_cast<std::size_t>(total));
    std::vector<int> idx(order(), 0);
    for (long long flat = 0; flat < total; ++flat) {
      const int sum = std::accumulate(idx.begin(), idx.end(), 0);
      out[static_cast<std::size_t>(flat)] = gen_[sum];
      for (int k = order() - 1; k >= 0; --k) {
        if (++idx[k] < dim()) break;
        idx[k] = 0;
      }
    }
    return out;
  }

 private:
  GeneratingVector<Scalar> gen_;
};

/// Associated (nk-k+1)-square Hankel matrix a_{ij} = v_{i+j-2}, m = 2k.
template <typename Scalar>
Matrix<Scalar> hankel_matrix(const GeneratingVector<Scalar>& gen) {
  if (!gen.even()) throw std::invalid_argument("associated Hankel matrix needs even order m");
  const int k = gen.half_order();
  const Eigen::Index size = static_cast<Eigen::Index>(gen.dim()) * k - k + 1;
  Matrix<Scalar> a(size, size);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j) a(i, j) = gen[i + j];
  return a;
}

// ---------------------------------------------------------------------------
// Witness vectors

struct WitnessVector {
  VectorXd x;
  std::string label;
};

enum class WitnessKind {
  UnitDifference,     // e_q - e_{q+1}
  StepTwoDifference,  // e_q - e_{q+2}
  Alpha,              // alpha e_{q-1} + e_q - alpha e_{q+1}
  Pattern,            // fixed prefix (p_1, ..., p_L, 0, ..., 0)
};

struct WitnessFamily {
  WitnessKind kind = WitnessKind::UnitDifference;
  double alpha = 1.0;
  std::vector<double> pattern;

  static WitnessFamily unit_difference() { return {WitnessKind::UnitDifference, 1.0, {}}; }
  static WitnessFamily step_two_difference() {
    return {WitnessKind::StepTwoDifference, 1.0, {}};
  }
  static WitnessFamily alpha_family(double alpha) { return {WitnessKind::Alpha, alpha, {}}; }
  static WitnessFamily fixed(std::vector<double> pattern) {
    return {WitnessKind::Pattern, 1.0, std::move(pattern)};
  }

  /// Minimum dimension for which the family is well defined.
  int min_dim() const {
    switch (kind) {
      case WitnessKind::UnitDifference: return 2;
      case WitnessKind::StepTwoDifference: return 3;
      case WitnessKind::Alpha: return 3;
      case WitnessKind::Pattern: return std::max<int>(2, static_cast<int>(pattern.size()));
    }
    return 2;
  }
};

/// Fixed patterns used by the necessity arguments for r = 2, 3 and 4.
inline const std::vector<std::vector<double>>& named_patterns() {
  static const std::vector<std::vector<double>> patterns = {
      {1, 1}, {1, -1}, {1, 1, -2}, {1, -3, 2}, {1, 2, -3}, {1, 0, -1}, {1, -1, -1, 1},
  };
  return patterns;
}

namespace detail {
inline int wrap(int i, int n) { return ((i % n) + n) % n; }

inline std::string format_vector(const VectorXd& x) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    const double xi = x[i];
    if (xi == static_cast<long long>(xi)) {
      s += std::to_string(static_cast<long long>(xi));
    } else {
      s += std::to_string(xi);
    }
  }
  return s + ")";
}
}  // namespace detail

/// All members of a witness family in R^n, with the cyclic conventions
/// e_{n+1} = e_1, e_{n+2} = e_2 and e_0 = e_n. Shifted families return one
/// vector per q = 1..n; a fixed pattern returns the single zero-padded vector.
inline std::vector<WitnessVector> witnesses(int dim, const WitnessFamily& family) {
  if (dim < family.min_dim()) {
    throw std::invalid_argument("witness family requires n >= " +
                                std::to_string(family.min_dim()));
  }
  std::vector<WitnessVector> out;
  if (family.kind == WitnessKind::Pattern) {
    VectorXd x = VectorXd::Zero(dim);
    for (std::size_t i = 0; i < family.pattern.size(); ++i) x[i] = family.pattern[i];
    if (x.isZero(0.0)) throw std::invalid_argument("witness pattern must be nonzero");
    out.push_back({x, "pattern " + detail::format_vector(x.head(family.pattern.size()))});
    return out;
  }
  for (int q = 0; q < dim; ++q) {
    VectorXd x = VectorXd::Zero(dim);
    std::string label;
    switch (family.kind) {
      case WitnessKind::UnitDifference:
        x[q] += 1.0;
        x[detail::wrap(q + 1, dim)] -= 1.0;
        label = "unit-difference q=" + std::to_string(q + 1);
        break;
      case WitnessKind::StepTwoDifference:
        x[q] += 1.0;
        x[detail::wrap(q + 2, dim)] -= 1.0;
        label = "step-two-difference q=" + std::to_string(q + 1);
        break;
      case WitnessKind::Alpha:
        x[detail::wrap(q - 1, dim)] += family.alpha;
        x[q] += 1.0;
        x[detail::wrap(q + 1, dim)] -= family.alpha;
        label = "alpha-family q=" + std::to_string(q + 1) + " alpha=" + std::to_string(family.alpha);
        break;
      case WitnessKind::Pattern:
        break;
    }
    out.push_back({std::move(x), std::move(label)});
  }
  return out;
}

template <typename Scalar>
std::vector<WitnessVector> witnesses(const CirculantSpec<Scalar>& spec,
                                     const WitnessFamily& family) {
  return witnesses(spec.dim(), family);
}

/// The line x(alpha) = base + alpha * slope traced by alpha e_{q-1} + e_q - alpha e_{q+1}.
struct AlphaLine {
  VectorXd base;
  VectorXd slope;

  VectorXd at(double alpha) const { return base + alpha * slope; }
};

/// q is 1-based.
inline AlphaLine alpha_line(int dim, int q) {
  if (dim < 3) throw std::invalid_argument("alpha family requires n >= 3");
  if (q < 1 || q > dim) throw std::out_of_range("shift q must lie in 1..n");
  AlphaLine line{VectorXd::Zero(dim), VectorXd::Zero(dim)};
  line.base[q - 1] = 1.0;
  line.slope[detail::wrap(q - 2, dim)] += 1.0;
  line.slope[detail::wrap(q, dim)] -= 1.0;
  return line;
}

}  // namespace hankel
