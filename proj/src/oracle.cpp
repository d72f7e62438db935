#include "hankel/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hankel/polyeval.hpp"

namespace hankel {

double SplitMix64::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

VectorXd SplitMix64::unit_vector(int dim) {
  VectorXd x(dim);
  do {
    for (int i = 0; i < dim; ++i) x[i] = normal();
  } while (x.norm() == 0.0);
  return x.normalized();
}

double normalized_value(const GeneratingVector<double>& gen, const VectorXd& x) {
  const double norm = x.norm();
  if (norm == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  return eval_fast(gen, VectorXd(x / norm));
}

DescentResult descend(const GeneratingVector<double>& gen, const VectorXd& start,
                      const SphereMinOptions& options) {
  DescentResult r;
  r.x = start.normalized();
  r.value = eval_fast(gen, r.x);
  const double max_step = options.initial_step * 1048576.0;
  double eta = options.initial_step;

  for (r.iterations = 0; r.iterations < options.max_iterations; ++r.iterations) {
    const VectorXd g = gradient(gen, r.x);
    bool accepted = false;
    VectorXd y;
    double fy = 0.0;
    for (int halving = 0; halving <= 40; ++halving) {
      y = r.x - eta * g;
      const double ny = y.norm();
      if (ny > 0.0) {
        y /= ny;
        fy = eval_fast(gen, y);
        if (fy < r.value) {
          accepted = true;
          break;
        }
      }
      eta *= 0.5;
    }
    if (!accepted) {
      r.converged = true;
      break;
    }
    const double decrease = r.value - fy;
    r.x = y;
    r.value = fy;
    if (decrease < 1e-14 * (1.0 + std::abs(r.value))) {
      r.converged = true;
      ++r.iterations;
      break;
    }
    eta = std::min(2.0 * eta, max_step);
  }
  return r;
}

std::vector<WitnessVector> seeded_candidates(int dim) {
  std::vector<WitnessVector> out;
  auto append = [&](const WitnessFamily& family) {
    if (dim < family.min_dim()) return;
    for (auto& w : witnesses(dim, family)) out.push_back(std::move(w));
  };

  for (int j = 0; j < dim; ++j) {
    VectorXd e = VectorXd::Zero(dim);
    e[j] = 1.0;
    out.push_back({e, "unit q=" + std::to_string(j + 1)});
  }
  append(WitnessFamily::unit_difference());
  append(WitnessFamily::step_two_difference());
  for (const auto& p : named_patterns()) append(WitnessFamily::fixed(p));
  for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
    append(WitnessFamily::alpha_family(alpha));
    append(WitnessFamily::alpha_family(-alpha));
  }

  if (dim <= 6) {
    std::vector<int> digits(dim, 0);
    int total = 1;
    for (int i = 0; i < dim; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
      int c = code;
      VectorXd x(dim);
      for (int i = 0; i < dim; ++i) {
        x[i] = static_cast<double>(c % 3) - 1.0;
        c /= 3;
      }
      if (x.isZero(0.0)) continue;
      out.push_back({x, "sign-pattern " + detail::format_vector(x)});
    }
  }
  return out;
}

SphereMinResult sphere_min(const GeneratingVector<double>& gen, const SphereMinOptions& options) {
  if (!gen.even()) throw std::invalid_argument("sphere minimization needs even order m");
  if (options.starts < 1) throw std::invalid_argument("starts must be >= 1");

  SphereMinResult best;
  best.min_value = std::numeric_limits<double>::infinity();
  best.starts = options.starts;
  best.seed = options.seed;

  auto offer = [&](const VectorXd& x, double value, std::string source) {
    if (value < best.min_value) {
      best.min_value = value;
      best.argmin = x;
      best.source = std::move(source);
    }
  };

  SplitMix64 rng(options.seed);
  for (int s = 0; s < options.starts; ++s) {
    const DescentResult d = descend(gen, rng.unit_vector(gen.dim()), options);
    if (d.converged) ++best.converged_starts;
    offer(d.x, d.value, "start " + std::to_string(s));
  }

  if (options.seeded_candidates) {
    const auto candidates = seeded_candidates(gen.dim());
    double best_candidate = std::numeric_limits<double>::infinity();
    const WitnessVector* polish_from = nullptr;
    for (const auto& w : candidates) {
      const VectorXd x = w.x.normalized();
      const double value = eval_fast(gen, x);
      offer(x, value, w.label);
      if (value < best_candidate) {
        best_candidate = value;
        polish_from = &w;
      }
    }
    if (polish_from != nullptr) {
      const DescentResult d = descend(gen, polish_from->x, options);
      offer(d.x, d.value, "polished " + polish_from->label);
    }
  }

  // Re-evaluate so the reported value is exactly f at the reported point.
  best.argmin.normalize();
  best.min_value = eval_fast(gen, best.argmin);
  return best;
}

SymmetricEigen jacobi_eigen(const MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  const Eigen::Index size = m.rows();
  MatrixXd a = m;
  MatrixXd v = MatrixXd::Identity(size, size);
  const double target = 1e-12 * m.norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < size; ++i)
      for (Eigen::Index j = 0; j < size; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  SymmetricEigen out;
  constexpr int kMaxSweeps = 100;
  while (out.sweeps < kMaxSweeps && off_norm() > target) {
    ++out.sweeps;
    for (Eigen::Index p = 0; p + 1 < size; ++p) {
      for (Eigen::Index q = p + 1; q < size; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < size; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < size; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < size; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(size);
  for (Eigen::Index i = 0; i < size; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  out.eigenvalues.resize(size);
  out.eigenvectors.resize(size, size);
  for (Eigen::Index k = 0; k < size; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

MatrixPsdResult matrix_psd(const MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  MatrixPsdResult r;
  r.max_abs = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, r.max_abs)) {
    throw std::invalid_argument("matrix is not symmetric");
  }
  r.eigen = jacobi_eigen(m);
  r.min_eigenvalue = r.eigen.eigenvalues.size() ? r.eigen.eigenvalues[0] : 0.0;
  r.psd = r.min_eigenvalue >= -1e-9 * r.max_abs;
  return r;
}

}  // namespace hankel
