#pragma once
#include "spark.hpp"

namespace sparkforge {

/// F^0 = E^0 = Q, I^0 = Z, psi = inclusion; Hhat^0 = Q/Z.
SparkComplexTriple point_triple();

/// F* = Q<u,v> -> Q<w> with du = 0, dv = w; E = Q<u> in degree 0;
/// I = Z<alpha> -> Z<beta> (d = 0) with psi(alpha) = u, psi(beta) = w.
/// Hhat^0 = Q/Z + Z.
SparkComplexTriple synthetic_t1_triple();

/// synthetic-T1 with E^1 = Q<w> added: violates axiom 1 with witness w.
SparkComplexTriple synthetic_t1_broken_triple();

/// I: Z --2--> Z resolved into an acyclic F; Hhat^0 = Z/2 (torsion exercise).
SparkComplexTriple synthetic_torsion_triple();

/// F = E = 0, I = 0: every grid group vanishes.
SparkComplexTriple acyclic_triple();

/// F = E the contractible complex Q --id--> Q, I = 0: cohomology vanishes but the
/// form-level grid corners are Q (Hhat^0 = dE^0 = Z_I^1(E) = Q); rows stay exact.
SparkComplexTriple contractible_triple();

}  // namespace sparkforge
