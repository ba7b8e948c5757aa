"""Exact strength and partition rank of small forms and tensors over finite fields."""

from .certificate import (INF, PARTITION, STRENGTH, Decomposition, PartitionTerm, RankCertificate,
                          StrengthTerm, check_certificate, check_decomposition, reassemble)
from .derivspace import (DerivativeSpace, SlotSplit, coeff_extract, df_experiment, dspace,
                         subalgebra_member)
from .descent import blowup_bound, descend, ext_degree_needed
from .eqmine import (LocusSpec, MinedEquation, degree_bound, mine_equation, min_n, prk_bound,
                     sample_image)
from .errors import PrankError
from .fields import FieldCtx, arith, ext_coords, make_field
from .poly import Form, form_eval, form_mul, form_partial, monomials, parse_form
from .search import (ALG_CLOSED, FINITE_ODD, REAL_DIAGONAL, SearchBudget, easy_cap, prk_exact,
                     quad_strength, strength_exact)
from .symmetrize import dconst, polarize_iota, sym_pi
from .tensor import Tensor, concise_reduce, contract, flatten, flattening_rank, outer

__version__ = "0.1.0"
