"""Shuffling decks of cards with ordered labels."""
from .core import (BudgetExceeded, Deck, DeckFormatError, Orbit, ParamsError, PreconditionError,
                   ShuffleError, ShuffleParams, brute_force_fixed_decks, brute_force_periodic_decks,
                   find_orbit, format_deck, make_params, max_settle, parse_deck, shuffle_once)
from .posets import (build_fixed_poset, build_periodic_poset, build_shuffling_poset,
                     complement_symmetry_check, cycle_length_stats, mapping_rule_gcd1, mult_order,
                     poset_shuffle, verify_cycle_theorem)
from .stacks import (ConstructionError, construct_period_stack, count_fixed, enumerate_fixed,
                     enumerate_periodic, possible_periods)
from .weights import (InvalidWeightFunction, WeightFunction, algorithm_down, algorithm_up,
                      base_k_weight, conjecture_scan, generalized_weight, is_symmetric,
                      symmetric_weight, validate, weight_function)

__version__ = "0.1.0"
