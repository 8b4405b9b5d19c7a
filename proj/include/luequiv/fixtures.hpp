#ifndef LUEQUIV_FIXTURES_HPP
#define LUEQUIV_FIXTURES_HPP

#include <string>
#include <vector>

#include "luequiv/linalg.hpp"
#include "luequiv/witness.hpp"

namespace luequiv::fixtures {

// Named operators generated in code from exact constants.
//   paper.rho1          2x2 NPT state with an entangled spectrum
//   paper.rho3prime     2x2 separable rank-3 state
//   paper.crlu.rho      diagonal product-basis mixture
//   paper.crlu.sigma    Bell-basis mixture with the same spectrum
//   paper.tiles_upb_state  3x3 PPT entangled state from the tiles UPB
//   paper.cex.P1..P3 / paper.cex.Q1..Q3  4x4 projector tuples
//   paper.alpha1 / paper.alpha2          the two-projector mixtures discussed
//                                        alongside the spectral criterion
BipartiteOperator get(const std::string& name);

std::vector<std::string> names();

bool has(const std::string& name);

UpbSpec tiles_upb();

// Bell and helper vectors on 2x2
CVec phi_plus();   // (|00> + |11>)/sqrt 2
CVec phi_minus();  // (|00> - |11>)/sqrt 2
CVec psi_plus();   // (|01> + |10>)/sqrt 2
CVec psi_minus();  // (|01> - |10>)/sqrt 2

}  // namespace luequiv::fixtures

#endif
