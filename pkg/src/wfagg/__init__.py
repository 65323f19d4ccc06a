"""Well-founded semantics for logic programs with monotone and antimonotone aggregates."""
from .answer_sets import enumerate_answer_sets, is_answer_set, is_answer_set_by_reduct, reduct
from .analysis import check_safety, check_stratified, classify_monotonicity
from .engine import gus, is_unfounded_set, phi_step, t_p, w_p, well_founded_model, wfs_sequence
from .evaluation import Interpretation, TruthValue, eval_aggregate_partial, eval_aggregate_total, is_model
from .grounder import ground
from .mae import compile_program, trm_program, trm_translate
from .parser import parse_atoms, parse_program, parse_rule
from .solve import solve_text
from .syntax import Aggregate, Atom, GroundSet, Literal, MonotonicityClass, Program, Rule, SymbolicSet, Var

__version__ = "0.1.0"
