#include "dickeforce/dicke_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dickeforce {

namespace {

constexpr Complex kI{0.0, 1.0};

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void require_dim(const DickeOperators& ops, const CMatrix& rho) {
  if (rho.rows() != ops.dim() || rho.cols() != ops.dim()) {
    throw std::invalid_argument("density matrix is " +
                                std::to_string(rho.rows()) + "x" +
                                std::to_string(rho.cols()) + ", expected " +
                                std::to_string(ops.dim()) + "x" +
                                std::to_string(ops.dim()));
  }
}

// Coupling operator π21 G - π12 G* of the rotating-frame drive.
CMatrix drive_operator(const DickeOperators& ops,
                       const CollectiveParams& params) {
  const Complex drive = params.complex_rabi();
  return ops.pi21 * drive - ops.pi12 * std::conj(drive);
}

}  // namespace

CMatrix DickeOperators::pi22() const {
  return pi3 + 0.5 * n_atoms * CMatrix::Identity(dim(), dim());
}

DickeOperators build_collective_ops(int n_atoms) {
  if (n_atoms < 1) {
    throw std::invalid_argument("build_collective_ops: n_atoms must be >= 1");
  }
  const Eigen::Index dim = n_atoms + 1;
  const double j = 0.5 * n_atoms;

  DickeOperators ops;
  ops.n_atoms = n_atoms;
  ops.pi21 = CMatrix::Zero(dim, dim);
  ops.pi3 = CMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double k = static_cast<double>(i) - j;
    ops.pi3(i, i) = k;
    if (i + 1 < dim) {
      ops.pi21(i + 1, i) = std::sqrt((j - k) * (j + k + 1.0));
    }
  }
  ops.pi12 = ops.pi21.adjoint();
  return ops;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  return a * b - b * a;
}

CMatrix liouvillian_action(const DickeOperators& ops,
                           const CollectiveParams& params, const CMatrix& rho) {
  params.validate();
  require_dim(ops, rho);
  const CMatrix pi22 = ops.pi22();
  const CMatrix coupling = drive_operator(ops, params);
  const CMatrix decay = ops.pi21 * ops.pi12;

  return -kI * params.detuning_ratio * commutator(pi22, rho) -
         commutator(coupling, rho) +
         (2.0 * ops.pi12 * rho * ops.pi21 - decay * rho - rho * decay);
}

CMatrix liouvillian_matrix(const DickeOperators& ops,
                           const CollectiveParams& params) {
  params.validate();
  const Eigen::Index d = ops.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix pi22 = ops.pi22();
  const CMatrix coupling = drive_operator(ops, params);
  const CMatrix decay = ops.pi21 * ops.pi12;

  // vec(A X B) = (Bᵀ ⊗ A) vec(X) for column stacking.
  const auto left = [&](const CMatrix& a) { return kron(id, a); };
  const auto right = [&](const CMatrix& b) {
    return kron(b.transpose(), id);
  };

  return -kI * params.detuning_ratio * (left(pi22) - right(pi22)) -
         (left(coupling) - right(coupling)) +
         2.0 * kron(ops.pi21.transpose(), ops.pi12) - left(decay) -
         right(decay);
}

SteadyStateDensity steady_state_bruteforce(const DickeOperators& ops,
                                           const CollectiveParams& params,
                                           const BruteForceOptions& options) {
  params.validate();
  if (params.n_atoms != ops.n_atoms) {
    throw std::invalid_argument(
        "steady_state_bruteforce: params and operators disagree on N");
  }
  if (ops.n_atoms > options.max_atoms) {
    throw std::invalid_argument("steady_state_bruteforce: N = " +
                                std::to_string(ops.n_atoms) +
                                " exceeds the brute-force cap of " +
                                std::to_string(options.max_atoms));
  }

  const Eigen::Index d = ops.dim();
  const CMatrix lmat = liouvillian_matrix(ops, params);
  Eigen::BDCSVD<CMatrix> svd(lmat, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const Eigen::Index n = sv.size();

  const double floor =
      std::max(sv(n - 1), std::numeric_limits<double>::epsilon() * sv(0));
  const double gap = sv(n - 2) / floor;
  if (!(gap >= options.min_singular_gap)) {
    throw NumericalError(
        "steady_state_bruteforce: null space is not one-dimensional "
        "(singular-value gap " +
        std::to_string(gap) + ")");
  }

  const Eigen::VectorXcd null = svd.matrixV().col(n - 1);
  CMatrix rho = Eigen::Map<const CMatrix>(null.data(), d, d);
  const Complex trace = rho.trace();
  if (std::abs(trace) < 1e-300) {
    throw NumericalError("steady_state_bruteforce: null vector is traceless");
  }
  rho /= trace;

  const double hermitian_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (hermitian_defect > 1e-10) {
    throw NumericalError("steady_state_bruteforce: steady state not Hermitian (" +
                         std::to_string(hermitian_defect) + ")");
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-9) {
    throw NumericalError("steady_state_bruteforce: steady state not positive");
  }

  SteadyStateDensity out;
  out.residual = liouvillian_action(ops, params, rho).cwiseAbs().maxCoeff();
  if (out.residual > options.residual_tolerance) {
    throw NumericalError("steady_state_bruteforce: residual " +
                         std::to_string(out.residual) + " above tolerance");
  }
  out.singular_gap = std::min(gap, 1e300);
  out.rho = std::move(rho);
  return out;
}

CoherencePair coherences(const DickeOperators& ops, const CMatrix& rho) {
  require_dim(ops, rho);
  return {(rho * ops.pi21).trace(), (rho * ops.pi12).trace()};
}

ForceVector forces_from_expectations(const DickeOperators& ops,
                                     const CollectiveParams& params,
                                     const CMatrix& rho,
                                     const CylVector& grad_amp,
                                     const CylVector& grad_theta) {
  params.validate();
  const auto [raising, lowering] = coherences(ops, rho);
  const Complex phase = std::polar(1.0, params.phase);
  const Complex rotated = phase * raising;
  const Complex counter = std::conj(phase) * lowering;

  // (rotated - counter) is purely imaginary, (rotated + counter) purely real.
  const Complex dipole_bracket = kI * (rotated - counter);
  const Complex diss_bracket = rotated + counter;
  constexpr double kTol = 1e-10;
  if (std::abs(dipole_bracket.imag()) > kTol ||
      std::abs(diss_bracket.imag()) > kTol) {
    throw NumericalError(
        "forces_from_expectations: coherence brackets are not real; the "
        "density matrix is not a steady state of a Hermitian problem");
  }

  ForceVector out;
  out.dipole = dipole_bracket.real() * grad_amp;
  out.dissipative = -params.rabi_ratio * diss_bracket.real() * grad_theta;
  return out;
}

ForceVector bruteforce_forces(const CollectiveParams& params,
                              const CylVector& grad_amp,
                              const CylVector& grad_theta) {
  const DickeOperators ops = build_collective_ops(params.n_atoms);
  const SteadyStateDensity ss = steady_state_bruteforce(ops, params);
  return forces_from_expectations(ops, params, ss.rho, grad_amp, grad_theta);
}

}  // namespace dickeforce
