#include "dickeforce/types.hpp"

#include <cmath>

namespace dickeforce {

double CylVector::norm() const { return std::sqrt(r * r + phi * phi + z * z); }

void CollectiveParams::validate() const {
  if (n_atoms < 1) {
    throw std::invalid_argument("n_atoms must be >= 1");
  }
  if (!(rabi_ratio >= 0.0) || !std::isfinite(rabi_ratio)) {
    throw std::invalid_argument("rabi_ratio must be finite and >= 0");
  }
  if (!std::isfinite(detuning_ratio) || !std::isfinite(phase)) {
    throw std::invalid_argument("detuning_ratio and phase must be finite");
  }
}

}  // namespace dickeforce
