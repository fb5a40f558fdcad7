"""Finite-scale languages: enumeration, admissibility, contexts, entropy."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence

from .presentation import Presentation
from .words import Alphabet, DomainError, ResourceError, Word, fmt, word

DEFAULT_CAP = 10_000_000


@dataclass(frozen=True)
class LanguageTable:
    alphabet: Alphabet
    max_length: int
    words_by_length: Dict[int, FrozenSet[Word]]

    def __contains__(self, w):
        w = tuple(w)
        return w in self.words_by_length.get(len(w), ())

    def words(self, n: int) -> List[Word]:
        return self.alphabet.sorted(self.words_by_length.get(n, ()))

    def all_words(self) -> List[Word]:
        return self.alphabet.sorted(w for ws in self.words_by_length.values() for w in ws)

    def counts(self) -> List[int]:
        return [len(self.words_by_length.get(k, ())) for k in range(1, self.max_length + 1)]

    def __len__(self):
        return sum(self.counts())

    def factor_closure_violations(self) -> List[Word]:
        bad = []
        for w in self.all_words():
            if len(w) > 1 and (w[1:] not in self or w[:-1] not in self):
                bad.append(w)
        return bad

    def non_extendable(self) -> List[Word]:
        """Stored words (below max_length) with no one-symbol right extension."""
        out = []
        for n in range(1, self.max_length):
            longer = {w[:-1] for w in self.words_by_length.get(n + 1, ())}
            out.extend(w for w in self.words(n) if w not in longer)
        return out

    def to_lines(self) -> str:
        return "".join(f"{len(w)}\t{fmt(w)}\n" for w in self.all_words())

    @classmethod
    def from_lines(cls, alphabet: Alphabet, text: str) -> "LanguageTable":
        table: Dict[int, set] = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            n, w = line.split("\t")
            w = word(w)
            if len(w) != int(n):
                raise ValueError(f"length mismatch in line {line!r}")
            table.setdefault(len(w), set()).add(alphabet.check(w))
        m = max(table, default=0)
        return cls(alphabet, m, {k: frozenset(table.get(k, ())) for k in range(1, m + 1)})


def enumerate_language(p: Presentation, n: int, cap: int = DEFAULT_CAP) -> LanguageTable:
    if n < 1:
        raise DomainError("n must be >= 1")
    aut = p.automaton()
    words = aut.extensions(aut.initial, n, cap=cap) if aut.n_states else []
    table: Dict[int, set] = {k: set() for k in range(1, n + 1)}
    for w in words:
        table[len(w)].add(w)
    return LanguageTable(p.alphabet, n, {k: frozenset(v) for k, v in table.items()})


def is_admissible(p: Presentation, w: Sequence[str]) -> bool:
    w = p.alphabet.check(word(w))
    if not w:
        return True
    return p.automaton().accepts(w)


def _require(p, w):
    w = p.alphabet.check(word(w))
    if not is_admissible(p, w):
        raise DomainError(f"word {fmt(w)} is not admissible")
    return w


def follower_set(p: Presentation, w: Sequence[str], depth: int, cap: int = DEFAULT_CAP) -> List[Word]:
    """Nonempty b with len(b) <= depth and wb admissible, shortlex order."""
    if depth < 1:
        raise DomainError("depth must be >= 1")
    w = _require(p, w)
    aut = p.automaton()
    return aut.extensions(aut.run(w), depth, cap=cap)


def predecessor_set(p: Presentation, w: Sequence[str], depth: int, cap: int = DEFAULT_CAP) -> List[Word]:
    """Nonempty b with len(b) <= depth and bw admissible, shortlex order."""
    if depth < 1:
        raise DomainError("depth must be >= 1")
    w = _require(p, w)
    aut = p.automaton()
    return aut.extensions(aut.run(w, backward=True), depth, backward=True, cap=cap)


@dataclass(frozen=True)
class EntropyEstimate:
    counts: tuple
    estimates: tuple

    def to_dict(self):
        return {"base": "e",
                "rows": [{"k": k + 1, "count": c, "estimate": e}
                         for k, (c, e) in enumerate(zip(self.counts, self.estimates))]}


def entropy_estimate(p: Presentation, n: int) -> EntropyEstimate:
    """log|L_k| / k for k = 1..n, natural logarithm, from exact word counts."""
    if n < 1:
        raise DomainError("n must be >= 1")
    aut = p.automaton()
    counts = aut.count_words(n) if aut.n_states else [0] * n
    est = tuple((math.log(c) / k) if c > 0 else float("-inf")
                for k, c in enumerate(counts, start=1))
    return EntropyEstimate(tuple(counts), est)


def inclusion_counterexample(p: Presentation, q: Presentation, n: int) -> Optional[Word]:
    """Shortest word of length <= n admissible in ``p`` but not in ``q`` (None if none).

    Runs the two subset automata in lockstep; a pair of subsets seen before
    has the same future, so each pair is expanded once.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if tuple(p.alphabet.symbols) != tuple(q.alphabet.symbols):
        symbols = [s for s in p.alphabet.symbols if s in q.alphabet]
        missing = [s for s in p.alphabet.symbols if s not in q.alphabet]
    else:
        symbols, missing = list(p.alphabet.symbols), []
    ap, aq = p.automaton(), q.automaton()
    for s in missing:
        if ap.step(ap.initial, s):
            return (s,)
    start = (ap.initial, aq.initial)
    seen = {start}
    frontier = [(start, ())]
    for _ in range(n):
        nxt = []
        for (sp, sq), w in frontier:
            for a in symbols:
                tp = ap.step(sp, a)
                if not tp:
                    continue
                tq = aq.step(sq, a)
                if not tq:
                    return w + (a,)
                key = (tp, tq)
                if key not in seen:
                    seen.add(key)
                    nxt.append((key, w + (a,)))
        frontier = nxt
        if not frontier:
            break
    return None
