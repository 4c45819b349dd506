"""Exact Stackelberg values of bi-weighted graph games.

Mean-payoff adversarial values with witness certificates, discounted-sum
cooperative and adversarial values with gap deciders, the two reduction
gadgets, and brute-force oracles.  All arithmetic is exact.
"""

from .arena import (Arena, ExtendedArena, Lasso, MealyStrategy, build_extended, load_arena,
                    parse_arena, product_with_strategy, serialize_arena)
from .asv_mp import (asv_threshold, asv_value, asv_value_details, best_response_mp,
                     check_witness, lambda_region, phi_region, synthesize_leader_strategy)
from .checker import verify_certificate
from .ds_stackelberg import (compute_horizon, ds_best_response, evaluate_asv, evaluate_csv,
                             gap_decide)
from .errors import ArenaError, ArenaParseError, BudgetExceeded, StackvalError
from .graphs import enumerate_simple_cycles, max_mean_cycle, payoff_of_lasso, scc_decompose
from .reductions import (PartitionInstance, TdsInstance, build_partition_reduction,
                         build_tds_reduction)
from .zerosum import conj_player1_wins, ds_game_value, mp_game_value

__all__ = [
    "Arena", "ExtendedArena", "Lasso", "MealyStrategy", "build_extended", "load_arena",
    "parse_arena", "product_with_strategy", "serialize_arena",
    "asv_threshold", "asv_value", "asv_value_details", "best_response_mp", "check_witness",
    "lambda_region", "phi_region", "synthesize_leader_strategy", "verify_certificate",
    "compute_horizon", "ds_best_response", "evaluate_asv", "evaluate_csv", "gap_decide",
    "ArenaError", "ArenaParseError", "BudgetExceeded", "StackvalError",
    "enumerate_simple_cycles", "max_mean_cycle", "payoff_of_lasso", "scc_decompose",
    "PartitionInstance", "TdsInstance", "build_partition_reduction", "build_tds_reduction",
    "conj_player1_wins", "ds_game_value", "mp_game_value",
]
