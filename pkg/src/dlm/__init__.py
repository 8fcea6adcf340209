r"""Decision procedures for distributive ℓ-monoids and ℓ-groups.

>>> decide_dlm("x /\\ y <= x \\/ y").is_valid
True
>>> v = decide_dlm("x*y <= y*x")
>>> v.is_valid, v.countermodel.check()
(False, True)
"""

from .decide import CertificateError, Verdict, decide_dlm, decide_lg_inverse_free
from .invelim import JoinForm, decide_lg, density_step, eliminate_inverses
from .lift import PreconditionError, lift_preorder, verify_preorder
from .models import ChainEndo, Countermodel, ModelError, PLBijection, build_end_countermodel, build_pl_countermodel
from .normalform import BasicIneq, NormalizationBlowup, to_basic_inequalities
from .oracle import enumerate_endomorphisms, enumerate_ordered_monoids, oracle_dlm_validity
from .preorder import Budget, BudgetExceeded, PairSet, PreorderRel, SubtermSet, search_preorder
from .rightorder import FiniteMonoid, OrderQuery, right_order_exists_finite_monoid, right_order_exists_free
from .terms import E, Eq, Leq, Statement, TermSyntaxError, parse_statement, parse_term, render_statement

__version__ = "0.1.0"
