"""Derived codes, their Markov codes, edge shifts and entropy estimates.

Given an SPO-code C, the derived code collects the chained products
``c_1 (*) ... (*) c_{Q-1} (*) c`` whose last factor is a bullet word and
whose earlier factors are not.  Removing the F-suffix of each derived word
gives the states of a Markov code; expanding every state d into
``len(d)`` positions gives an edge shift.  Everything here is a finite
truncation, parameterised by a maximal word length.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .language import enumerate_language
from .presentation import MarkovCoded, SpoCoded
from .spo import Factorization, MarkedWord, SpoCode, ostar, parse_window
from .words import Alphabet, DomainError, Word, fmt

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DerivedCode:
    base: SpoCode
    max_len: int
    words: Tuple[MarkedWord, ...]
    provenance: Dict[Word, Tuple[int, ...]]
    diagnostics: Tuple[str, ...] = ()

    def __len__(self):
        return len(self.words)

    def as_spo_code(self) -> SpoCode:
        return SpoCode(self.base.bifix, self.words, name="derived")


def build_hat_code(code: SpoCode, max_len: int) -> DerivedCode:
    if max_len < code.max_len:
        raise DomainError(f"max_len={max_len} is below the longest code word ({code.max_len})")
    words = code.words
    diagnostics = []
    if not any(c.is_bullet for c in words):
        diagnostics.append("code has no bullet word; derived code is empty")
        log.warning("no bullet words in %s", code.name or "code")
        return DerivedCode(code, max_len, (), {}, tuple(diagnostics))
    found: Dict[Word, Tuple[MarkedWord, Tuple[int, ...]]] = {}

    def emit(mw, chain):
        prev = found.get(mw.word)
        if prev is None:
            found[mw.word] = (mw, chain)
        elif prev[1] != chain:
            diagnostics.append(f"word {fmt(mw.word)} produced by chains {prev[1]} and {chain}")
            if (len(chain), chain) < (len(prev[1]), prev[1]):
                found[mw.word] = (mw, chain)

    stack = []
    for i, c in enumerate(words):
        if c.is_bullet:
            emit(c, (i,))
        else:
            stack.append(((i,), c))
    while stack:
        chain, prod = stack.pop()
        for j in code.successors(chain[-1]):
            nxt = ostar(prod, words[j])
            if len(nxt) > max_len:
                continue
            if words[j].is_bullet:
                emit(nxt, chain + (j,))
            else:
                stack.append((chain + (j,), nxt))
    ordered = sorted(found.values(), key=lambda t: (len(t[0]), t[0].word))
    return DerivedCode(code, max_len, tuple(m for m, _ in ordered),
                       {m.word: ch for m, ch in ordered}, tuple(diagnostics))


@dataclass(frozen=True)
class MarkovCode:
    states: Tuple[Word, ...]
    prefixes: Tuple[Word, ...]
    transitions: frozenset
    collisions: Tuple[str, ...] = ()

    def matrix(self) -> np.ndarray:
        n = len(self.states)
        T = np.zeros((n, n), dtype=np.int64)
        for i, j in self.transitions:
            T[i, j] = 1
        return T

    def components(self) -> List[List[int]]:
        n = len(self.states)
        if n == 0:
            return []
        rows = [i for i, _ in self.transitions]
        cols = [j for _, j in self.transitions]
        g = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        k, labels = connected_components(g, directed=True, connection="strong")
        comps: Dict[int, List[int]] = {}
        for i, lab in enumerate(labels):
            comps.setdefault(int(lab), []).append(i)
        return sorted(comps.values())

    @property
    def irreducible(self) -> bool:
        return len(self.components()) == 1 and bool(self.transitions)

    def presentation(self, alphabet: Alphabet, margin="auto") -> MarkovCoded:
        return MarkovCoded(alphabet, self.states, self.transitions, margin=margin)


def build_markov_code(hat: DerivedCode) -> MarkovCode:
    if not hat.words:
        raise DomainError("derived code is empty")
    states: List[Word] = []
    prefixes: List[Word] = []
    index: Dict[Word, int] = {}
    collisions = []
    for c in hat.words:  # already in (length, word) order of the derived words
        d = c.ring
        if d in index:
            collisions.append(f"ring {fmt(d)} shared by several derived words")
            continue
        index[d] = len(states)
        states.append(d)
        prefixes.append(c.prefix)
    # canonical state order: length, then word
    order = sorted(range(len(states)), key=lambda i: (len(states[i]), states[i]))
    states = [states[i] for i in order]
    prefixes = [prefixes[i] for i in order]
    members = {c.word for c in hat.words}
    trans = frozenset((i, j) for i, d in enumerate(states) for j in range(len(states))
                      if d + prefixes[j] in members)
    return MarkovCode(tuple(states), tuple(prefixes), trans, tuple(collisions))


@dataclass(frozen=True)
class EdgeShift:
    markov: MarkovCode
    states: Tuple[Tuple[int, int], ...]  # (index into markov.states, l), 1 <= l <= len(d)
    matrix: csr_matrix

    def index(self, d: int, l: int) -> int:
        return self._index[(d, l)]

    @property
    def _index(self):
        return {s: k for k, s in enumerate(self.states)}


def build_edge_shift(mc: MarkovCode) -> EdgeShift:
    states = [(i, l) for i, d in enumerate(mc.states) for l in range(1, len(d) + 1)]
    pos = {s: k for k, s in enumerate(states)}
    rows, cols = [], []
    for i, d in enumerate(mc.states):
        for l in range(1, len(d)):
            rows.append(pos[(i, l)])
            cols.append(pos[(i, l + 1)])
    for i, j in sorted(mc.transitions):
        rows.append(pos[(i, len(mc.states[i]))])
        cols.append(pos[(j, 1)])
    n = len(states)
    m = csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(n, n))
    return EdgeShift(mc, tuple(states), m)


# -- spectral radius -----------------------------------------------------

def charpoly(A) -> List[int]:
    """Integer characteristic polynomial det(xI - A), highest degree first."""
    M = [[Fraction(int(x)) for x in row] for row in np.asarray(A)]
    n = len(M)
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Faddeev-LeVerrier: M_k = A (M_{k-1} + c_{k-1} I)
        prev = [[Mk[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(M[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(Mk[i][i] for i in range(n)) / k)
    return [int(c) for c in coeffs]


def _perron_root_from_poly(coeffs: Sequence[int]) -> float:
    roots = np.roots(coeffs) if len(coeffs) > 1 else np.array([])
    if roots.size == 0:
        return 0.0
    r = float(max(abs(roots)))
    if r == 0.0:
        return 0.0
    # polish on the exact polynomial: Newton from the right of the root
    p = np.poly1d(np.array(coeffs, dtype=float))
    dp = p.deriv()
    x = r
    for _ in range(50):
        d = dp(x)
        if d == 0:
            break
        nx = x - p(x) / d
        if abs(nx - x) <= 1e-15 * max(1.0, abs(x)):
            x = nx
            break
        x = nx
    return float(x) if abs(x - r) < 1e-6 * max(1.0, r) else r


def _power_radius(B: csr_matrix, tol: float, max_iter: int) -> Tuple[float, bool]:
    """Perron root of an irreducible nonnegative matrix, by power iteration on B + I."""
    n = B.shape[0]
    S = B + csr_matrix(np.eye(n))
    x = np.ones(n) / n
    for _ in range(max_iter):
        y = S @ x
        ratio = y / x
        lo, hi = ratio.min(), ratio.max()
        rho_lo, rho_hi = lo - 1.0, hi - 1.0
        if rho_hi - rho_lo <= tol * max(rho_hi, 1e-300):
            return 0.5 * (rho_lo + rho_hi), True
        x = y / y.sum()
    return 0.5 * (rho_lo + rho_hi), False


def spectral_radius(A, tol: float = 1e-10, max_iter: int = 20000) -> Tuple[float, str]:
    """Spectral radius of a nonnegative matrix and the method used."""
    M = csr_matrix(A)
    n = M.shape[0]
    if n == 0:
        return 0.0, "empty"
    if n <= 8:
        return _perron_root_from_poly(charpoly(M.toarray())), "charpoly"
    k, labels = connected_components(M, directed=True, connection="strong")
    best, method = 0.0, "power"
    for lab in range(k):
        idx = np.flatnonzero(labels == lab)
        sub = M[idx][:, idx]
        if sub.nnz == 0:
            continue
        if len(idx) <= 8:
            r = _perron_root_from_poly(charpoly(sub.toarray()))
        else:
            r, ok = _power_radius(sub.astype(float), tol, max_iter)
            if not ok:
                r = float(max(abs(np.linalg.eigvals(sub.toarray().astype(float)))))
                method = "power+dense-fallback"
        best = max(best, r)
    return best, method


@dataclass
class EntropySequence:
    sizes: List[int]
    values: List[float]
    methods: List[str]
    flags: List[str] = field(default_factory=list)

    def to_dict(self):
        return {"base": "e", "rows": [{"states": s, "entropy": v, "method": m}
                                      for s, v, m in zip(self.sizes, self.values, self.methods)],
                "flags": self.flags}


def edge_shift_entropy(es: EdgeShift, ordering: Optional[Sequence[int]] = None) -> EntropySequence:
    """log spectral radius of nested truncations by Markov-code state.

    Truncation k keeps every edge-shift state (d, l) of the first k Markov
    states in ``ordering`` (default: length, then word).
    """
    mc = es.markov
    if ordering is None:
        ordering = sorted(range(len(mc.states)), key=lambda i: (len(mc.states[i]), mc.states[i]))
    pos = {s: k for k, s in enumerate(es.states)}
    out = EntropySequence([], [], [])
    keep: List[int] = []
    for d in ordering:
        keep.extend(pos[(d, l)] for l in range(1, len(mc.states[d]) + 1))
        sub = es.matrix[keep][:, keep]
        r, method = spectral_radius(sub)
        if r <= 0.0:
            out.flags.append(f"truncation {len(keep)}: nilpotent matrix, entropy reported as 0")
            val = 0.0
        else:
            val = max(0.0, math.log(r))
        out.sizes.append(len(keep))
        out.values.append(val)
        out.methods.append(method)
    return out


# -- conjugacy indexing and bullet sets ----------------------------------

def phi_index(fact: Factorization, origin: int = 0) -> Tuple[Word, int]:
    """(ring word covering ``origin``, offset of ``origin`` inside it)."""
    for s, c in zip(fact.starts, fact.words):
        if s <= origin < s + len(c.ring):
            return c.ring, origin - s
    raise DomainError(f"position {origin} is not covered by a ring of the factorization")


def edge_state(mc: MarkovCode, fact: Factorization, origin: int = 0) -> Tuple[int, int]:
    d, off = phi_index(fact, origin)
    try:
        return mc.states.index(d), off + 1
    except ValueError:
        raise DomainError(f"{fmt(d)} is not a Markov-code state") from None


def bullet_index_set(fact: Factorization) -> List[int]:
    return fact.bullet_indices()


# -- entropy gap heuristic -----------------------------------------------

@dataclass
class GapReport:
    n: int
    count_in: int
    count_out: int
    h_in: Optional[float]
    h_out: Optional[float]

    def to_dict(self):
        return {"n": self.n, "count_in": self.count_in, "count_out": self.count_out,
                "h_in": self.h_in, "h_out": self.h_out,
                "note": "heuristic window estimate of the entropy gap; not a decision procedure"}


def entropy_gap_report(code: SpoCode, n: int, alphabet: Optional[Alphabet] = None,
                       cap: int = 10_000_000) -> GapReport:
    """Split admissible n-words by whether some parse has a complete factor inside."""
    if n < 2 * code.max_len:
        raise DomainError(f"n={n} must be at least twice the longest code word ({code.max_len})")
    p = SpoCoded(code, alphabet)
    table = enumerate_language(p, n, cap=cap)
    cin = cout = 0
    for w in table.words(n):
        if any(f.full_factor_indices() for f in parse_window(code, w)):
            cin += 1
        else:
            cout += 1
    h = lambda c: math.log(c) / n if c else None
    return GapReport(n, cin, cout, h(cin), h(cout))
