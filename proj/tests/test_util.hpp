// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "ctcsim/circuit.hpp"
#include "ctcsim/linalg.hpp"

namespace ctcsim::testutil {

inline Vector ket_minus() {
  Vector v(2);
  const double s = 1.0 / std::sqrt(2.0);
  v << s, -s;
  return v;
}

inline Vector ket_plus() {
  Vector v(2);
  const double s = 1.0 / std::sqrt(2.0);
  v << s, s;
  return v;
}

inline Matrix projector(const Vector& v) { return v * v.adjoint(); }

// Independent partial trace used as an oracle against the library routine:
// walks the flattened index arithmetic in the opposite nesting order.
inline Matrix partial_trace_oracle(const Matrix& m, Index da, Index db,
                                   bool keep_first) {
  const Index dkeep = keep_first ? da : db;
  const Index dsum = keep_first ? db : da;
  Matrix out = Matrix::Zero(dkeep, dkeep);
  for (Index s = 0; s < dsum; ++s) {
    for (Index i = 0; i < dkeep; ++i) {
      for (Index j = 0; j < dkeep; ++j) {
        const Index row = keep_first ? i * db + s : s * db + i;
        const Index col = keep_first ? j * db + s : s * db + j;
        out(i, j) += m(row, col);
      }
    }
  }
  return out;
}

// Riemann quadrature over the Bloch sphere with the invariant measure
// sin(2 theta) d(2 theta) d phi, theta in [0, pi/2]. Integrates a
// matrix-valued function of the CV state |phi(theta, az)>.
template <typename F>
Matrix bloch_quadrature(Index out_dim, int grid, F&& integrand) {
  Matrix acc = Matrix::Zero(out_dim, out_dim);
  double weight_sum = 0.0;
  for (int ti = 0; ti < grid; ++ti) {
    const double theta = (ti + 0.5) * (M_PI / 2.0) / grid;
    const double weight = std::sin(2.0 * theta);
    for (int pi_idx = 0; pi_idx < grid; ++pi_idx) {
      const double az = (pi_idx + 0.5) * 2.0 * M_PI / grid;
      Vector phi(2);
      phi << std::sin(theta), std::polar(std::cos(theta), az);
      acc += weight * integrand(phi);
      weight_sum += weight;
    }
  }
  return acc / weight_sum;
}

// Quadrature oracle for the T-CTC integral (m = 1 only):
// rho_f propto integral d[phi] U_phi |psi><psi| U_phi^dag.
inline Matrix tctc_quadrature_oracle(const StandardFormCircuit& circuit,
                                     const Vector& psi, int grid = 400) {
  const Matrix u = compile_unitary(circuit).mat;
  const Index dcr = circuit.cr_dim();
  Matrix raw = bloch_quadrature(dcr, grid, [&](const Vector& phi) {
    Matrix u_phi = Matrix::Zero(dcr, dcr);
    for (Index r = 0; r < dcr; ++r) {
      for (Index rp = 0; rp < dcr; ++rp) {
        Complex sum = 0.0;
        for (Index a = 0; a < 2; ++a) {
          for (Index b = 0; b < 2; ++b) {
            sum += std::conj(phi(a)) * u(r * 2 + a, rp * 2 + b) * phi(b);
          }
        }
        u_phi(r, rp) = sum;
      }
    }
    const Vector mapped = u_phi * psi;
    return Matrix(mapped * mapped.adjoint());
  });
  return raw / raw.trace().real();
}

// Quadrature oracle for the partial-trace transition theory (m = 1 only):
// rho_f propto integral d[phi] p(phi) Tr_CV[U (psi psi^dag (x) phi phi^dag) U^dag].
inline Matrix ptrace_quadrature_oracle(const StandardFormCircuit& circuit,
                                       const Vector& psi, int grid = 400) {
  const Matrix u = compile_unitary(circuit).mat;
  const Index dcr = circuit.cr_dim();
  Matrix raw = bloch_quadrature(dcr, grid, [&](const Vector& phi) {
    Vector joint = Vector::Zero(dcr * 2);
    for (Index r = 0; r < dcr; ++r) {
      for (Index a = 0; a < 2; ++a) {
        joint(r * 2 + a) = psi(r) * phi(a);
      }
    }
    joint = u * joint;
    Vector contracted = Vector::Zero(dcr);
    for (Index r = 0; r < dcr; ++r) {
      contracted(r) = std::conj(phi(0)) * joint(r * 2) +
                      std::conj(phi(1)) * joint(r * 2 + 1);
    }
    const double weight = contracted.squaredNorm();
    Matrix reduced(dcr, dcr);
    for (Index r = 0; r < dcr; ++r) {
      for (Index rp = 0; rp < dcr; ++rp) {
        reduced(r, rp) = joint(r * 2) * std::conj(joint(rp * 2)) +
                         joint(r * 2 + 1) * std::conj(joint(rp * 2 + 1));
      }
    }
    return Matrix(weight * reduced);
  });
  return raw / raw.trace().real();
}

}  // namespace ctcsim::testutil
