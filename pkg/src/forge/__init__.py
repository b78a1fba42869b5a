"""Exact verification of corings, entwinings and their Galois comodules.

Every object is finite dimensional and given by structure constants over
Q or a prime field; every check reduces to exact rank computations in
``forge.kernel``.
"""
from .kernel import BACKEND, Field, Matrix, Q
from .algebra import (AModule, Algebra, algebra_from_table, check_algebra, find_dual_basis,
                      group_algebra, module_hom, regular_module, tensor_over_A)
from .coalgebra import (Coalgebra, Cointegral, check_coalgebra, coalgebra_from_table,
                        find_cointegral, group_coalgebra, matrix_coalgebra, verify_grouplike)
from .entwining import (Entwining, HopfAlgebra, PreconditionError, check_bowtie, doi_koppinen,
                        flip_entwining, invert_psi)
from .coring import (Coring, CoringMorphism, check_coring, check_coring_morphism,
                     coring_from_entwining, counit_morphism, identity_morphism, sweedler_coring,
                     trivial_coring)
from .comodule import (Comodule, EndoRing, check_comodule, coinvariants, colinear_hom, cotensor,
                       dual_left_comodule, endomorphism_ring, gamma_iso, induced_comodule,
                       is_relatively_injective, is_simple, regular_comodule)
from .galois import (GaloisDatum, canonical_map, comatrix_coring, evaluation_map, galois_datum,
                     is_galois, is_principal_via_colinear_section, is_principal_via_splitting,
                     simple_galois_check, strong_connection)
from .descent import (associated_modules, duality_iso, faithful_flatness_verdict,
                      fgp_associated_check, gamma_tilde_split, induce_principal, induction_datum,
                      split_extension_check, theta_map)

__all__ = [name for name in dir() if not name.startswith("_")]
