from .config import EvalConfig, EvalError
from .gmc import eval_gmc, eval_gmc_graph
from .msol import compile_msol, denot_msol, eval_msol
from .restrict import VarRoles, one_step_sim, restrict_assignment, restrict_component
from .temporal import cctl_denotation, eval_cctl, eval_path, eval_stl, stl_denotation
