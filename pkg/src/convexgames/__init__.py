"""Exact least core and nucleolus of convex cooperative games."""

__version__ = "0.1.0"

from .errors import (ConvexityError, DomainError, GameError, InputError, SizeError,
                     VerificationError)
from .games import (Game, TableGame, additive_game, convex_power_game, counterexample_game, gen_airport,
                    gen_bankruptcy, gen_random_convex, greedy_core_point, is_crossing_supermodular,
                    is_intersecting_supermodular,
                    is_supermodular, zero_game)
from .sfm import BruteForceSFM, SetFunction, maximize_supermodular, minimize, minimize_constrained
from .cover import superadditive_cover
from .least_core import bound_M, core_nonempty_test, farkas_certificate, least_core, min_excess
from .nucleolus import (ReducedGameView, kuipers_theorem12_check, nucleolus_divide_conquer,
                        nucleolus_per_player, reduced_value)
from .oracle import (brute_essential, brute_least_core, brute_nucleolus,
                     brute_superadditive_cover, system_p_feasible)

__all__ = [name for name in dir() if not name.startswith("_")]
