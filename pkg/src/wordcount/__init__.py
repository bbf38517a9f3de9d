"""Exact solution counts of generalized commutator word equations in
finite groups, cross-verified along three independent paths: brute-force
enumeration, character-theoretic formulas over exact cyclotomic integers,
and closed forms for special group families.
"""

from .chartab import (CharacterTable, ClassFunction, character_table,
                      inner_product, inner_product_on)
from .counting import (DomainSpec, is_measure_preserving, nilpotency_degree,
                       probability, zeta_brute, zeta_element_counts)
from .cyclotomic import Cyclotomic
from .errors import WordcountError
from .formulas import (CaminaInvariants, GroupClassReport, c_wn, classify,
                       closed_camina3, closed_camina_gcp_tower,
                       closed_gcp_center, invariants_of,
                       unique_nonlinear_recursion, zeta_mixed_theorem21,
                       zeta_w2_frobenius, zeta_wn_char)
from .groups import (GroupTable, Subgroup, builtin, conjugacy_classes,
                     direct_product, from_cayley_table,
                     from_permutation_generators, parse_builtin_spec)
from .isoclinism import IsoclinismWitness, find_isoclinism, verify_scaling
from .words import Word, evaluate, make_word, parse, wn

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
