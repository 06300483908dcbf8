"""Winning words for finite-state games.

Games are deterministic automata with an absorbing win state.  The package
synthesizes words that win from every state, finds shortest ones exactly
for small games, drives games with letter streams, and determinizes games
that consult a random number generator.
"""
__version__ = "0.1.0"

from syncwin._backend import COMPILED
from syncwin.errors import (
    BaseMismatch,
    LetterOutOfRange,
    MalformedTable,
    NotWinReducible,
    RangeMismatch,
    SyncwinError,
    TooLarge,
    Unreachable,
)
from syncwin.game import (
    Game,
    StateSet,
    ValidationReport,
    apply_letter,
    apply_word,
    format_game,
    format_word,
    image_set,
    load_game,
    parse_game,
    parse_word,
    validate,
)
from syncwin.reachability import INF, WinningWordTable, analyze, is_win_reducible, winning_word
from syncwin.synchronizer import (
    BoundReport,
    Order,
    SyncResult,
    Target,
    concatenation_bound,
    shortest_sync_word_exact,
    synchronizes,
    synthesize_greedy,
    universal_sequence,
)
from syncwin.streams import (
    Champernowne,
    CoverageReport,
    DigitStream,
    FileDigits,
    LetterStream,
    Mapped,
    Periodic,
    SimulationReport,
    UniversalStream,
    champernowne,
    coverage_audit,
    find_factor,
    simulate_on_stream,
)
from syncwin.rng_game import (
    Lcg,
    MonteCarloReport,
    RngGame,
    hull_dobell,
    monte_carlo,
    product,
    simulate_true_rng,
)
