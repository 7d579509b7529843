"""Supercharacters of algebra groups G(q^n) = 1 + A(q^n) and Shintani descent.

Typical use::

    from superdescent import build_tower, builtin_algebra, get_level, supercharacter_table

    F = build_tower(2, 1, [1, 2])
    A = builtin_algebra("ut", [3], F)
    table = supercharacter_table(get_level(A, 1))
"""

from .algebra import (AlgebraElement, GroupElement, NilpotentAlgebra, alg_mul, builtin_algebra,
                      enumerate_group, frobenius_alg, group_element, group_inv, group_mul)
from .cyclotomic import CycValue, cyc_arith, cyc_conj, parse, render, root_of_unity
from .errors import (AmbiguousLanding, AssocViolation, InputError, LevelMismatch, NoLanding,
                     NotNilpotent, NotSuperclassFunction, NotTwistedClassFunction,
                     SizeBoundExceeded, SuperdescentError, VerificationError)
from .field_tower import FieldTower, build_tower
from .orbits import (AdditiveCharacter, DualOrbit, FClass, Level, Superclass, dual_orbits,
                     f_classes, get_level, left_centraliser, right_centraliser, superclasses)
from .shintani import (NormCorrespondence, descend_supercharacters, dual_trace_lift,
                       f_action_on_supercharacters, isometry_check, linear_descent_check,
                       norm_correspondence, norm_element, norm_map, norm_pullback,
                       shintani_descend, twisted_extension, twisted_induction_check)
from .superdual import (LevelLattice, SerreDualClass, SuperdualClass, orbit_intersection_check,
                        psi_basis_check, scalar_action, serre_dual_classes, superdual_classes,
                        transition)
from .supercharacters import (ClassFunction, Supercharacter, SuperclassFunction,
                              induced_character_oracle, inner_product, normalize,
                              regular_decomposition, supercharacter_by_class_sum,
                              supercharacter_table, supercharacter_value, supercharacters,
                              twisted_induction)

__version__ = "0.1.0"
