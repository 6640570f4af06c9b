#pragma once

// Floquet topological invariants of a periodically quenched non-Hermitian
// chain with long-range, complex hopping amplitudes.
//
//   params     drive parameters and the complex hopping gamma0 e^{i theta}
//   mat2       2x2 complex matrices, Pauli algebra, closed-form exponential
//   bloch      Bloch Hamiltonians, Floquet operator, symmetric time frames
//   winding    adaptive loop windings and the (W0, Wpi) invariant pair
//   realspace  open chains, complex quasienergy spectra, edge-mode counts
//   sweep      parameter-plane phase diagrams, CSV and PPM serialization

#include "floquet/errors.hpp"
#include "floquet/rational.hpp"
#include "floquet/params.hpp"
#include "floquet/mat2.hpp"
#include "floquet/bloch.hpp"
#include "floquet/winding.hpp"
#include "floquet/realspace.hpp"
#include "floquet/sweep.hpp"
