// Orbit decompositions of the model point sets under the relevant symmetry
// groups, unitary-group structure over the quadratic extension, fixed-space
// dimensions over explicit orbit stabilizers, and the Borel-invariant
// analysis in the cubic model.
#pragma once

#include <string>

#include "models.hpp"

namespace weil {

struct OrbitInfo {
  std::uint32_t rep = 0;  // point index in the model's codec
  std::uint64_t size = 0;
  std::uint64_t stab_order = 0;  // group_order / size (divisibility checked)
  std::string description;
};

struct OrbitScan {
  std::string variant;
  std::uint64_t group_order = 0;
  std::vector<OrbitInfo> orbits;  // sorted by (size, rep)
};

// variant: "triple" (G x G on pairs (m, psi)), "fxe" (GL2(E) on hermitian
// pairs), "cubicN" (unipotent group of GL2(K)), "cubicT" (diagonal torus of
// GL2(K)).  The model case must match the variant.
OrbitScan orbit_scan(const Model& m, const std::string& variant);

struct U2Structure {
  std::uint64_t u2_order = 0;
  std::uint64_t u2_expected = 0;         // (q-1) q (q+1)^2
  bool param_matches = false;            // explicit parameterization check
  bool borel_meet_matches = false;       // B' cap U2 = {diag(u a, a^q)}
  bool g0_outside = false;               // g0 not in B' U2
  std::uint64_t coset1 = 0, coset2 = 0;  // |B' U2| and |B' g0 U2|
  bool partition_ok = false;             // disjoint union is all of GL2(E)
  bool pass = false;
};
U2Structure u2_structure(const Context& ctx);

// Fixed-space dimensions via averaging over explicitly enumerated orbit
// stabilizers (intended for q = 3; larger q is out of scope here).
struct HomDims {
  std::vector<long long> total;                   // flattened label table
  std::vector<std::vector<long long>> per_orbit;  // same layout, per orbit
  double residual = 0.0;                          // distance from integers
};
// Pairs (pi1, pi2) of GL2(F) irreducibles; table is nF x nF, row-major.
HomDims hom_dims_triple(const Context& ctx);
std::vector<long long> predicted_hom_dims_triple(const Context& ctx);
// Single GL2(E) irreducible; table has one entry per label of tabE.
HomDims hom_dims_fxe(const Context& ctx);
std::vector<long long> predicted_hom_dims_fxe(const Context& ctx);

// Borel-invariant vectors in the cubic model, twisted by the character
// chi_j of F^x composed with norm and determinant (j = 0: untwisted).
// Value lists run over the T-orbit representatives x00, x01, x10 and then
// y_k for k = gen^0 .. gen^{q-2}.
struct BorelInvariantReport {
  bool n_equation_ok = false;
  std::vector<cplx> A_vals, B_vals, wA_vals, wB_vals;
  std::vector<cplx> expect_A, expect_B, expect_wA, expect_wB;
  double max_err = 0.0;         // asserted cells only (wB at y_k is recorded)
  double invariance_err = 0.0;  // q A - (q-1) B under the Fourier generator
  bool pass = false;
};
BorelInvariantReport k_borel_invariants(const Model& cubic,
                                        std::uint32_t chi_j);

}  // namespace weil
