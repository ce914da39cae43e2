"""Non-overlapping (cross-bifix-free) codes: construction, counting, bounds and search."""
from .bounds import (exact_value_n2, exact_value_n3, headline_upper_bound,
                     lower_bound_lemma2, ratio_report, upper_bound)
from .constructions import (ConstructionParams, ConstructionResult, construct_c1,
                            construct_c2, select_params_best, select_params_lemma2,
                            select_params_thm6)
from .errors import CapacityError, ParameterError, RecipeInfeasible
from .oracle import SearchResult, check_conjecture1, check_conjecture2, exact_search
from .sfree import PatternSet, count_sfree, is_sfree, sfree_lower_bound
from .sync_sim import StreamConfig, detect, generate_stream, run_trials
from .words import (Code, Word, cyclic_occurrences, is_bifix_free,
                    is_overlapping_pair, verify_code)

__version__ = "0.1.0"
