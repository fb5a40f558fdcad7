"""Finite descriptions of subshifts and their compilation to automata.

Five user-facing variants exist (SFT, Sofic, Coded, SpoCoded,
ExclusionCoded) plus MarkovCoded, used for derived codes.  SFT and Sofic
presentations are read with the exact shift language.  The code-based
variants use window semantics: a word is admissible when it occurs in a
legal finite concatenation with at least ``margin`` symbols on each side
(``margin`` defaults to the longest code word).  ``margin=None`` switches
to closure semantics, the language of bi-infinite concatenations of the
finite code.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional, Sequence

from .automaton import AhoCorasick, Automaton
from .spo import SpoCode
from .words import Alphabet, DomainError, Word, fmt, is_factor, word

AUTO = "auto"


class Presentation:
    kind = "abstract"
    exact_shift = False

    def __init__(self, alphabet):
        self.alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
        self._automaton = None

    def automaton(self) -> Automaton:
        if self._automaton is None:
            self._automaton = self._build()
        return self._automaton

    def _build(self) -> Automaton:  # pragma: no cover - abstract
        raise NotImplementedError

    def describe(self) -> dict:
        return {"variant": self.kind, "alphabet": list(self.alphabet.symbols)}


def _resolve_margin(margin, longest):
    return longest if margin == AUTO else margin


class SFT(Presentation):
    kind = "sft"
    exact_shift = True

    def __init__(self, alphabet, forbidden: Iterable[Sequence[str]] = ()):
        super().__init__(alphabet)
        self.forbidden = tuple(sorted({self.alphabet.check(word(f)) for f in forbidden}))
        if any(len(f) == 0 for f in self.forbidden):
            raise DomainError("forbidden words must be nonempty")

    @property
    def step(self) -> int:
        return max((len(f) for f in self.forbidden), default=1) - 1

    def _build(self):
        k = self.step
        syms = self.alphabet.symbols
        bad = set(self.forbidden)

        def ok(w):
            return not any(w[i:j] in bad for i in range(len(w)) for j in range(i + 1, len(w) + 1))

        if k == 0:
            edges = [((), a, ()) for a in syms if ok((a,))]
            return Automaton(self.alphabet, edges)
        blocks = [()]
        for _ in range(k):
            blocks = [b + (a,) for b in blocks for a in syms if ok(b + (a,))]
        edges = []
        for b in blocks:
            for a in syms:
                w = b + (a,)
                if ok(w):
                    edges.append((b, a, w[1:]))
        return Automaton(self.alphabet, edges)

    def describe(self):
        d = super().describe()
        d["forbidden"] = [fmt(f) for f in self.forbidden]
        return d


class Sofic(Presentation):
    kind = "sofic"
    exact_shift = True

    def __init__(self, alphabet, edges: Iterable[tuple]):
        super().__init__(alphabet)
        self.edges = tuple(sorted((str(s), str(a), str(t)) for s, a, t in edges))
        outs = {s for s, _, _ in self.edges}
        ins = {t for _, _, t in self.edges}
        for v in sorted(outs | ins):
            if v not in outs or v not in ins:
                raise DomainError(f"vertex {v!r} needs an incoming and an outgoing edge")
        for _, a, _ in self.edges:
            self.alphabet.check((a,))

    def _build(self):
        return Automaton(self.alphabet, self.edges)

    def describe(self):
        d = super().describe()
        d["edges"] = [list(e) for e in self.edges]
        return d


def _plain_code_edges(code: Sequence[Word]):
    edges = []
    for i, c in enumerate(code):
        prev = "hub"
        for p, a in enumerate(c):
            nxt = "hub" if p == len(c) - 1 else ("w", i, p + 1)
            edges.append((prev, a, nxt))
            prev = nxt
    return edges


class Coded(Presentation):
    kind = "coded"

    def __init__(self, alphabet, code: Iterable[Sequence[str]], margin=AUTO):
        super().__init__(alphabet)
        self.code = tuple(self.alphabet.sorted({self.alphabet.check(word(c)) for c in code}))
        if not self.code or any(not c for c in self.code):
            raise DomainError("code must contain nonempty words")
        self.margin = _resolve_margin(margin, max(len(c) for c in self.code))

    def _build(self):
        return Automaton(self.alphabet, _plain_code_edges(self.code), ["hub"], ["hub"], self.margin)

    def describe(self):
        d = super().describe()
        d.update(code=[fmt(c) for c in self.code], margin=self.margin)
        return d


class SpoCoded(Presentation):
    kind = "spo"

    def __init__(self, code: SpoCode, alphabet=None, margin=AUTO):
        super().__init__(alphabet if alphabet is not None else code.symbols())
        self.code = code
        for c in code.words:
            self.alphabet.check(c.word)
        self.margin = _resolve_margin(margin, code.max_len)

    def _build(self):
        edges = []
        words = self.code.words
        for i, c in enumerate(words):
            r = len(c.ring)
            succ = self.code.successors(i)
            for p in range(r):
                a = c.word[p]
                if p + 1 < r:
                    edges.append((("r", i, p), a, ("r", i, p + 1)))
                    continue
                for j in succ:
                    edges.append((("r", i, p), a, ("r", j, 0)))
                # finish the word: read its F-suffix and stop
                edges.append((("r", i, p), a, ("t", i, r)))
            for p in range(r, len(c)):
                nxt = ("t", i, p + 1) if p + 1 < len(c) else "end"
                edges.append((("t", i, p), c.word[p], nxt))
        starts = [("r", i, 0) for i in range(len(words))]
        return Automaton(self.alphabet, _dedupe(edges), starts, ["end"], self.margin)

    def describe(self):
        d = super().describe()
        d.update(bifix=[fmt(f) for f in self.code.bifix], code=[str(c) for c in self.code.words],
                 margin=self.margin)
        return d


def _dedupe(edges):
    return sorted(set(edges), key=repr)


def minimal_patterns(patterns: Iterable[Word]) -> list:
    """Drop patterns that contain another pattern as a factor."""
    ps = sorted(set(patterns), key=lambda p: (len(p), p))
    keep = []
    for p in ps:
        if not any(is_factor(q, p) for q in keep):
            keep.append(p)
    return keep


class ExclusionCoded(Presentation):
    """Coded system with a (generated) family of excluded words."""

    kind = "exclusion"

    def __init__(self, alphabet, code: Iterable[Sequence[str]],
                 excluded: Callable[[int], Iterable[Sequence[str]]],
                 window: Optional[int] = None, margin=AUTO, name: str = ""):
        super().__init__(alphabet)
        self.code = tuple(self.alphabet.sorted({self.alphabet.check(word(c)) for c in code}))
        self.excluded_generator = excluded
        longest = max(len(c) for c in self.code)
        self.margin = _resolve_margin(margin, longest)
        self.window = window if window is not None else 3 * longest
        self.name = name

    def excluded(self, max_len: Optional[int] = None) -> list:
        bound = self.window if max_len is None else max_len
        return self.alphabet.sorted(
            {self.alphabet.check(word(w)) for w in self.excluded_generator(bound) if len(w) <= bound})

    def _build(self):
        ac = AhoCorasick(minimal_patterns(self.excluded()), self.alphabet)
        base = _plain_code_edges(self.code)
        by_src = {}
        for s, a, t in base:
            by_src.setdefault(s, []).append((a, t))
        edges = []
        seen = {("hub", 0)}
        todo = [("hub", 0)]
        while todo:
            q, m = todo.pop()
            for a, t in by_src.get(q, ()):
                m2 = ac.delta[m][a]
                if ac.terminal[m2]:
                    continue
                edges.append(((q, m), a, (t, m2)))
                if (t, m2) not in seen:
                    seen.add((t, m2))
                    todo.append((t, m2))
        hubs = [s for s in seen if s[0] == "hub"]
        return Automaton(self.alphabet, edges, [("hub", 0)], hubs, self.margin)

    def describe(self):
        d = super().describe()
        d.update(name=self.name, code=[fmt(c) for c in self.code], margin=self.margin,
                 window=self.window,
                 excluded_minimal=[fmt(w) for w in minimal_patterns(self.excluded())])
        return d


class MarkovCoded(Presentation):
    """Concatenations d_1 d_2 ... of states with T(d_k, d_{k+1}) = 1."""

    kind = "markov"

    def __init__(self, alphabet, states: Sequence[Word], transitions: Iterable[tuple], margin=AUTO):
        super().__init__(alphabet)
        self.states = tuple(tuple(d) for d in states)
        self.transitions = frozenset(transitions)
        self.margin = _resolve_margin(margin, max(len(d) for d in self.states))

    def _build(self):
        edges = []
        succ = {}
        for i, j in self.transitions:
            succ.setdefault(i, []).append(j)
        for i, d in enumerate(self.states):
            for p, a in enumerate(d):
                if p + 1 < len(d):
                    edges.append((("s", i, p), a, ("s", i, p + 1)))
                else:
                    for j in succ.get(i, ()):
                        edges.append((("s", i, p), a, ("s", j, 0)))
                    edges.append((("s", i, p), a, "end"))
        starts = [("s", i, 0) for i in range(len(self.states))]
        return Automaton(self.alphabet, edges, starts, ["end"], self.margin)


class PresentationParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column, self.message = line, column, message
