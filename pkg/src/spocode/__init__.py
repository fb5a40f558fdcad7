"""Coded subshifts built from SPO-codes: parsing, derived codes, synchronization."""

from .words import Alphabet, DomainError, ResourceError, fmt, word
from .automaton import Automaton
from .presentation import (SFT, Coded, ExclusionCoded, MarkovCoded, Presentation,
                           PresentationParseError, Sofic, SpoCoded)
from .language import (LanguageTable, entropy_estimate, enumerate_language, follower_set,
                       is_admissible, predecessor_set)
from .blockmap import BlockMap, apply_block_map, compose
from .spo import (BifixCode, ConstructionError, Factorization, MarkedWord, SpoCode,
                  chainable, check_unambiguous, ostar, ostar_product, parse_window, ring)
from .derived import (build_edge_shift, build_hat_code, build_markov_code, edge_shift_entropy,
                      entropy_gap_report, phi_index, spectral_radius)
from .synchro import (condition_h_report, extract_canonical_code, is_synchronizing_at_depth,
                      j_profile, markov_boundary_test, omega_set_bounded)
from .fileformat import load_presentation, parse_presentation

__all__ = [name for name in dir() if not name.startswith("_")]
