#pragma once

// Numerical ground truth, independent of the closed-form classifier.
//
// A homogeneous even-degree form is PSD iff its minimum on the unit sphere is
// nonnegative. sphere_min only ever reports values it evaluated, so its result
// is an upper bound on the true minimum: it can refute PSD, never prove it.

#include <cstdint>
#include <string>

#include "hankel/tensor_core.hpp"
#include "hankel/types.hpp"

namespace hankel {

/// SplitMix64:
///   state += 0x9E3779B97F4A7C15
///   z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
/// Uniforms take the top 53 bits; normals use Box-Muller on consecutive uniforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  VectorXd unit_vector(int dim);

 private:
  std::uint64_t state_;
};

struct SphereMinOptions {
  int starts = 64;
  std::uint64_t seed = 0;
  int max_iterations = 10000;
  double initial_step = 0.1;
  /// Evaluate witness families and {-1,0,1}^n sign patterns (n <= 6) as extra candidates.
  bool seeded_candidates = true;
};

struct DescentResult {
  VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Projected gradient descent x <- normalize(x - eta g) with backtracking
/// (halve eta until f decreases, at most 40 halvings; eta doubles after an
/// accepted step). Stops when the decrease falls below 1e-14 (1 + |f|).
DescentResult descend(const GeneratingVector<double>& gen, const VectorXd& start,
                      const SphereMinOptions& options = {});

struct SphereMinResult {
  double min_value = 0.0;
  VectorXd argmin;
  int starts = 0;
  int converged_starts = 0;
  std::uint64_t seed = 0;
  std::string source;
};

/// Best of `starts` random descents, the seeded candidates and one descent
/// polished from the best candidate. Ties go to the earliest in that order.
SphereMinResult sphere_min(const GeneratingVector<double>& gen, const SphereMinOptions& options = {});

/// f(x / |x|), i.e. f(x) / |x|^m.
double normalized_value(const GeneratingVector<double>& gen, const VectorXd& x);

/// Candidate points the oracle seeds: witness families, unit vectors and sign patterns.
std::vector<WitnessVector> seeded_candidates(int dim);

struct SymmetricEigen {
  VectorXd eigenvalues;   // ascending
  MatrixXd eigenvectors;  // columns match eigenvalues
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal norm drops below 1e-12 ||M||_F.
SymmetricEigen jacobi_eigen(const MatrixXd& m);

struct MatrixPsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;
  double max_abs = 0.0;
  SymmetricEigen eigen;
};

/// PSD iff the smallest Jacobi eigenvalue is >= -1e-9 max|M_ij|.
MatrixPsdResult matrix_psd(const MatrixXd& m);

}  // namespace hankel
