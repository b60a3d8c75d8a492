"""Exact certification of local indistinguishability for orthogonal product states."""

from .certifier import (INCONCLUSIVE, INDISTINGUISHABLE, NONTRIVIAL, TRIVIAL, ALICE, BOB,
                        build_constraints, certify_locc, decide_triviality, derivation_trace,
                        make_witness_povm)
from .exact import RMatrix, gershgorin_bounds, is_psd, nullspace, rank, rref
from .extendibility import (BUDGET_EXCEEDED, EXTENDIBLE, UPB, check_completion_basis,
                            find_product_extension, separable_discriminate, verify_extension)
from .families import (completion_states, extension_witness, gen_bennett9, gen_eq1, gen_eq2,
                       gen_eq3)
from .states import Ket, ProductState, StateSet, inner, ket_lin, load_json, save_json, validate

__version__ = "0.1.0"
