#pragma once

#include <Eigen/Dense>

#include "ntcorr/pauli.hpp"
#include "ntcorr/statevector.hpp"

namespace ntcorr {

/// Dense matrix of a Pauli string / sum via Kronecker products (qubit 0 is
/// the leftmost factor). Intended for small systems only.
Eigen::MatrixXcd dense_matrix(const PauliString& p);
Eigen::MatrixXcd dense_matrix(const PauliSum& o);

Eigen::VectorXcd dense_vector(const StateVector& s);
StateVector state_from_dense(const Eigen::VectorXcd& v);

}  // namespace ntcorr
