"""Synchronizing words, J-profiles, canonical codes and boundary evidence.

Two certification levels exist.  ``"automaton"``: the word is tested
against every left context at once on the subset automaton of the
presentation, comparing follower languages exactly (Moore equivalence).
For SFT and sofic presentations this is a proof about the shift; for the
code-based variants it is exact for their window-scale language.
``"depth"``: only contexts of bounded length are tried, which can miss
refutations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .automaton import Automaton
from .language import enumerate_language, follower_set, is_admissible, predecessor_set
from .presentation import Presentation
from .spo import BifixCode, MarkedWord, SpoCode
from .words import DomainError, ResourceError, Word, fmt, occurrences, word


@dataclass(frozen=True)
class SynchroVerdict:
    word: Word
    depth: int
    synchronizing: bool
    exact: bool
    certification: str
    witness: Optional[Tuple[Word, Word]] = None

    def to_dict(self):
        d = {"word": fmt(self.word), "depth": self.depth,
             "verdict": "synchronizing-at-depth" if self.synchronizing else "refuted",
             "exact": self.exact, "certification": self.certification}
        if self.witness is not None:
            d["witness"] = {"left": fmt(self.witness[0]), "right": fmt(self.witness[1])}
        return d


class _SubsetAnalysis:
    """Reachable subsets of a presentation's automaton and their classes."""

    _cache: Dict[int, "_SubsetAnalysis"] = {}

    def __init__(self, aut: Automaton):
        self.aut = aut
        self.subsets, self.parent = aut.reachable_subsets()
        self.cls = aut.equivalence_classes(self.subsets)

    @classmethod
    def of(cls, p: Presentation) -> "_SubsetAnalysis":
        aut = p.automaton()
        hit = cls._cache.get(id(aut))
        if hit is None or hit.aut is not aut:
            hit = cls(aut)
            cls._cache[id(aut)] = hit
        return hit

    def check(self, c: Word) -> Optional[Tuple[Word, Word]]:
        aut = self.aut
        target = aut.run(c)
        tcls = self.cls[target]
        for s in self.subsets:  # BFS order: shortest left context first
            t = aut.run(c, s)
            if t and self.cls[t] != tcls:
                left = aut.path_to(self.parent, s)
                right = aut.distinguishing_word(t, target)
                return left, right
        return None


def _depth_check(p: Presentation, c: Word, depth: int) -> Optional[Tuple[Word, Word]]:
    aut = p.automaton()
    target = aut.run(c)
    full = set(aut.extensions(target, depth))
    memo = {}
    for u in predecessor_set(p, c, depth):
        t = aut.run(c, aut.run(u))
        if t == target:
            continue
        if t not in memo:
            memo[t] = set(aut.extensions(t, depth))
        missing = full - memo[t]
        if missing:
            return u, p.alphabet.sorted(missing)[0]
    return None


def is_synchronizing_at_depth(p: Presentation, c: Sequence[str], depth: int,
                              mode: str = "auto") -> SynchroVerdict:
    c = p.alphabet.check(word(c))
    if not c or not is_admissible(p, c):
        raise DomainError(f"word {fmt(c)} is not admissible")
    if mode in ("auto", "automaton"):
        try:
            witness = _SubsetAnalysis.of(p).check(c)
            return SynchroVerdict(c, depth, witness is None, p.exact_shift, "automaton", witness)
        except ResourceError:
            if mode == "automaton":
                raise
    witness = _depth_check(p, c, depth)
    return SynchroVerdict(c, depth, witness is None, False, "depth", witness)


class SyncOracle:
    """Memoized synchronization tests for one presentation."""

    def __init__(self, p: Presentation, depth: int, mode: str = "auto"):
        self.p, self.depth, self.mode = p, depth, mode
        self._memo: Dict[Word, bool] = {}
        self.certification = None

    def __call__(self, c: Word) -> bool:
        c = tuple(c)
        hit = self._memo.get(c)
        if hit is None:
            v = is_synchronizing_at_depth(self.p, c, self.depth, self.mode)
            self.certification = v.certification
            hit = self._memo[c] = v.synchronizing
        return hit

    @property
    def closed_under_extension(self) -> bool:
        return self.certification == "automaton"


@dataclass(frozen=True)
class JProfile:
    window: Word
    values: Tuple[Optional[int], ...]

    @property
    def increases(self) -> List[int]:
        """Positions i with J_i > J_{i-1} (both defined)."""
        v = self.values
        return [i for i in range(1, len(v))
                if v[i] is not None and v[i - 1] is not None and v[i] > v[i - 1]]

    def monotone_violations(self) -> List[int]:
        v = self.values
        return [i for i in range(len(v) - 1)
                if v[i] is not None and v[i + 1] is not None and v[i + 1] < v[i]]

    def normalized_increases(self, origin: int) -> List[int]:
        """Increase positions relative to ``origin``, indexed so I_0 <= 0 < I_1."""
        return [i - origin for i in self.increases]

    def to_dict(self):
        return {"window": fmt(self.window),
                "values": [x if x is not None else "undefined" for x in self.values],
                "increases": self.increases}


def j_profile(p: Presentation, w: Sequence[str], depth: int, mode: str = "auto",
              oracle: Optional[SyncOracle] = None) -> JProfile:
    w = p.alphabet.check(word(w))
    if not is_admissible(p, w):
        raise DomainError(f"window {fmt(w)} is not admissible")
    sync = oracle or SyncOracle(p, depth, mode)
    values: List[Optional[int]] = []
    for i in range(len(w)):
        J = None
        for j in range(i, -1, -1):
            if sync(w[j:i + 1]):
                J = j
                break
        values.append(J)
    return JProfile(w, tuple(values))


@dataclass
class CanonicalCodeResult:
    bifix: Optional[BifixCode]
    code: Optional[SpoCode]
    search_bounds: Tuple[int, int]
    certification: str
    diagnostics: List[str] = field(default_factory=list)

    def to_dict(self):
        return {"bifix": [fmt(f) for f in self.bifix] if self.bifix else [],
                "code": [str(c) for c in self.code.words] if self.code else [],
                "search_bounds": {"max_len": self.search_bounds[0], "depth": self.search_bounds[1]},
                "certification": self.certification, "diagnostics": self.diagnostics}


def extract_canonical_code(p: Presentation, max_len: int, depth: int,
                           mode: str = "auto") -> CanonicalCodeResult:
    table = enumerate_language(p, max_len)
    sync = SyncOracle(p, depth, mode)
    status: Dict[Word, bool] = {}
    minimal: List[Word] = []
    for w in table.all_words():  # shortlex order
        if len(w) > 1 and (status[w[1:]] or status[w[:-1]]):
            status[w] = True if sync.closed_under_extension else sync(w)
            continue
        status[w] = sync(w)
        if status[w] and (len(w) == 1 or not (status[w[1:]] or status[w[:-1]])):
            minimal.append(w)
    diagnostics = []
    cert = sync.certification or "none"
    if not minimal:
        diagnostics.append(f"no synchronizing word up to length {max_len}")
        return CanonicalCodeResult(None, None, (max_len, depth), cert, diagnostics)
    F = BifixCode.__new__(BifixCode)
    object.__setattr__(F, "words", frozenset(minimal))
    diagnostics.extend(F.violations())
    Fset = set(minimal)
    code = []
    for w in table.all_words():
        if len(w) < 2:
            continue
        occ = [(i, f) for f in minimal for i in occurrences(f, w)]
        pre = [(i, f) for i, f in occ if i == 0 and len(f) < len(w)]
        suf = [(i, f) for i, f in occ if i + len(f) == len(w) and i > 0]
        if len(pre) != 1 or len(suf) != 1:
            continue
        if len(occ) != 2:
            continue
        code.append(MarkedWord(w, len(pre[0][1]), len(suf[0][1])))
    spo = SpoCode(F, tuple(code), name="canonical") if code else None
    if spo is None:
        diagnostics.append(f"no code word up to length {max_len}")
    return CanonicalCodeResult(F, spo, (max_len, depth), cert, diagnostics)


@dataclass
class ConditionHReport:
    gaps: List[Tuple[str, int]]
    lengths: List[int]
    running_max: List[Optional[int]]

    @property
    def consistent_with_h(self) -> bool:
        rm = self.running_max
        return len(rm) >= 3 and all(x is not None for x in rm) and \
            all(b > a for a, b in zip(rm, rm[1:]))

    def to_dict(self):
        return {"lengths": self.lengths, "running_max": self.running_max,
                "consistent_with_H": self.consistent_with_h,
                "gaps": [{"word": w, "gap": g} for w, g in self.gaps]}


def condition_h_report(code: Union[SpoCode, CanonicalCodeResult],
                       lengths: Sequence[int]) -> ConditionHReport:
    """Gap len(c) - len(f-) - len(f+) and its maximum over words of length <= n."""
    if isinstance(code, CanonicalCodeResult):
        words = code.code.words if code.code else ()
    else:
        words = code.words
    lengths = sorted(lengths)
    gaps = [(fmt(c.word), c.gap) for c in words if len(c) <= lengths[-1]]
    rm = []
    for n in lengths:
        g = [c.gap for c in words if len(c) <= n]
        rm.append(max(g) if g else None)
    return ConditionHReport(gaps, list(lengths), rm)


@dataclass
class BoundaryReport:
    word: Word
    ctx_depth: int
    counts: List[int]

    @property
    def strictly_growing(self) -> bool:
        return all(b > a for a, b in zip(self.counts, self.counts[1:]))

    def to_dict(self):
        return {"word": fmt(self.word), "ctx_depth": self.ctx_depth,
                "distinct_follower_counts": self.counts, "strictly_growing": self.strictly_growing}


def markov_boundary_test(p: Presentation, a: Sequence[str], pred_len: int,
                         ctx_depth: int) -> BoundaryReport:
    a = p.alphabet.check(word(a))
    aut = p.automaton()
    preds = predecessor_set(p, a, pred_len)
    memo: Dict[frozenset, frozenset] = {}
    seen = set()
    counts = []
    by_len: Dict[int, List[Word]] = {}
    for b in preds:
        by_len.setdefault(len(b), []).append(b)
    for m in range(1, pred_len + 1):
        for b in by_len.get(m, ()):
            s = aut.run(b + a)
            if s not in memo:
                memo[s] = frozenset(aut.extensions(s, ctx_depth))
            seen.add(memo[s])
        counts.append(len(seen))
    return BoundaryReport(a, ctx_depth, counts)


def omega_set_bounded(p: Presentation, a: Sequence[str], depth: int, side: str = "+") -> List[Word]:
    """Words on one side of ``a`` compatible with every bounded context on the other."""
    a = p.alphabet.check(word(a))
    if side not in "+-":
        raise DomainError("side must be '+' or '-'")
    if side == "+":
        result = set(follower_set(p, a, depth))
        for u in predecessor_set(p, a, depth):
            result &= set(follower_set(p, u + a, depth))
    else:
        result = set(predecessor_set(p, a, depth))
        for u in follower_set(p, a, depth):
            result &= set(predecessor_set(p, a + u, depth))
    return p.alphabet.sorted(result)
