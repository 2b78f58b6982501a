#pragma once

#include "lmg/banded.hpp"
#include "lmg/types.hpp"

namespace lmg {

// Dense spin-S operators in the S_z eigenbasis.  The basis ordering is fixed
// globally: index k corresponds to m = S - k, so index 0 is the maximal-m
// state |S,S>.  Every module assumes this ordering.
struct SpinOperators {
  MatrixXcd sx, sy, sz;
};

SpinOperators spin_operators(double S);

// Banded storage of the same operators (tridiagonal); used wherever the
// Hilbert space is large enough that dense products hurt.
struct SpinBands {
  BandedMatrix sx, sy, sz;
};

SpinBands spin_bands(double S);

// Sx^2 + Sy^2 + Sz^2 = S(S+1) * Identity.
MatrixXcd casimir(double S);

// P = exp(i pi S_z), diagonal with entries exp(i pi m).
MatrixXcd parity_operator(double S);
VectorXcd parity_diagonal(double S);

// R_y(theta) = exp(-i theta S_y), built from the eigendecomposition of S_y.
MatrixXcd rotation_y(double S, double theta);

}  // namespace lmg
