"""Builders and verifiers for the concrete systems.

* Example 1: markers ``g d^n g`` around blocks of periodic points.
* Example 2: markers around blocks of the points ``p^(k)`` (period k).
* Excluded-word system: the coded system on {-1, 0, 1} with words ``a 0^k a`` and
  excluded pairs and nested words.

Symbols: ``g`` and ``d`` stand for the two marker letters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .language import is_admissible
from .presentation import ExclusionCoded, SpoCoded
from .spo import BifixCode, MarkedWord, SpoCode, find_marks
from .words import Alphabet, DomainError, Word, fmt, is_factor, occurrences, power

G, D = "g", "d"


def marker(n: int) -> Word:
    return (G,) + power(D, n) + (G,)


def least_period(p: Sequence[str]) -> int:
    p = tuple(p)
    n = len(p)
    for d in range(1, n + 1):
        if n % d == 0 and p[:d] * (n // d) == p:
            return d
    return n


def periodic_block(p: Sequence[str], length: int) -> Word:
    p = tuple(p)
    return tuple(p[i % len(p)] for i in range(length))


# -- Example 1 -------------------------------------------------------------

@dataclass(frozen=True)
class Example1Config:
    periods: Tuple[Word, ...]

    def __post_init__(self):
        ps = tuple(tuple(p) for p in self.periods)
        if not ps:
            raise DomainError("P must be nonempty")
        for p in ps:
            if not p or least_period(p) != len(p):
                raise DomainError(f"{fmt(p)} is not a least period")
            if G in p or D in p:
                raise DomainError("periodic points must avoid the marker letters")
        object.__setattr__(self, "periods", ps)

    @property
    def R(self) -> int:
        return reduce(lambda x, y: x * y, (len(p) for p in self.periods), 1)


@dataclass
class ExampleSystem:
    code: SpoCode
    presentation: SpoCoded
    flagged: List[Tuple[Word, str]] = field(default_factory=list)
    params: dict = field(default_factory=dict)


def _alphabet(extra: Iterable[str]) -> Alphabet:
    syms = []
    for s in list(extra) + [G, D]:
        if s not in syms:
            syms.append(s)
    return Alphabet(syms)


def example1_words(cfg: Example1Config, k_max: int):
    """The three families, each as a list of (params, word)."""
    R = cfg.R
    fam1, fam2, fam3 = [], [], []
    for p in cfg.periods:
        for q in range(2, k_max + 1):
            fam1.append(((fmt(p), q), marker(1) + periodic_block(p, 2 * q * R) + marker(1)))
        for n in range(1, k_max + 1):
            for q in range(n, k_max + 1):
                fam2.append(((fmt(p), n, q), marker(n) + periodic_block(p, 2 * q * R) + marker(n + 1)))
        for n in range(2, k_max + 1):
            for q in range(n, k_max + 1):
                fam3.append(((fmt(p), n, q), marker(n) + periodic_block(p, 2 * q * R) + power(D, n - 1)))
    return fam1, fam2, fam3


def build_example1(cfg: Example1Config, k_max: int, margin="auto") -> ExampleSystem:
    F = BifixCode([marker(n) for n in range(1, k_max + 2)])
    fam1, fam2, fam3 = example1_words(cfg, k_max)
    marked, flagged = [], []
    for _, w in fam1 + fam2:
        m = find_marks(F, w)
        if m is None:
            raise DomainError(f"{fmt(w)} lacks marks")
        marked.append(m)
    for _, w in fam3:
        flagged.append((w, "no F-suffix: word ends in d^(n-1); kept out of the SPO pipeline"))
    code = SpoCode(F, tuple(marked), name=f"example1(k_max={k_max})")
    alphabet = _alphabet(s for p in cfg.periods for s in p)
    return ExampleSystem(code, SpoCoded(code, alphabet, margin), flagged,
                         {"R": cfg.R, "k_max": k_max, "periods": [fmt(p) for p in cfg.periods]})


# -- Example 2 -------------------------------------------------------------

def R_k(k: int) -> int:
    return 1 + k * (k - 1) // 2


def p_k(k: int, length: int) -> Word:
    """Prefix of the period-k point 0^(k-1) 1 0^(k-1) 1 ..."""
    return tuple("1" if i % k == k - 1 else "0" for i in range(length))


@dataclass(frozen=True)
class Example2Config:
    K: int

    def __post_init__(self):
        if self.K < 1:
            raise DomainError("K must be >= 1")


def example2_words(K: int):
    fam1 = [((k,), marker(k) + p_k(1, 2 * k) + marker(R_k(k))) for k in range(1, K + 1)]
    fam2 = [((k, m), marker(k) + p_k(m, 2 * m * k) + marker(k + m - 1))
            for k in range(1, K + 1) for m in range(2, k + 1)]
    return fam1, fam2


def build_example2(cfg: Example2Config, margin="auto") -> ExampleSystem:
    fam1, fam2 = example2_words(cfg.K)
    top = max([R_k(cfg.K), 2 * cfg.K - 1, cfg.K])
    F = BifixCode([marker(n) for n in range(1, top + 1)])
    marked = []
    for _, w in fam1 + fam2:
        m = find_marks(F, w)
        if m is None:
            raise DomainError(f"{fmt(w)} lacks marks")
        marked.append(m)
    code = SpoCode(F, tuple(marked), name=f"example2(K={cfg.K})")
    return ExampleSystem(code, SpoCoded(code, _alphabet(["0", "1"]), margin), [], {"K": cfg.K})


# -- boundary displays -----------------------------------------------------

@dataclass
class DisplayCheck:
    instance: dict
    context: Word
    follower: Word
    claimed: bool
    oracle: Optional[bool]
    note: str = ""

    @property
    def agrees(self) -> Optional[bool]:
        return None if self.oracle is None else self.oracle == self.claimed

    def to_dict(self):
        return {"instance": self.instance, "context": fmt(self.context),
                "follower": fmt(self.follower), "claimed": self.claimed,
                "oracle": self.oracle, "agrees": self.agrees, "note": self.note}


@dataclass
class DisplayReport:
    which: str
    checks: List[DisplayCheck]
    skipped: List[str]

    @property
    def discrepancies(self) -> List[DisplayCheck]:
        return [c for c in self.checks if c.agrees is False]

    def to_dict(self):
        return {"which": self.which, "checks": [c.to_dict() for c in self.checks],
                "skipped": self.skipped,
                "discrepancies": len(self.discrepancies)}


def example1_display_instances(cfg: Example1Config, n_values: Iterable[int]):
    R = cfg.R
    for p in cfg.periods:
        for n in n_values:
            ctx = power(D, n + 1) + (G,) + periodic_block(p, R)
            inst = {"p": fmt(p), "n": n}
            yield inst, ctx, periodic_block(p, n * R) + (G,), True
            yield inst, ctx, periodic_block(p, (n + 1) * R) + (G,), False


def example2_display_instances(bound: int, extra: int = 1):
    """(instance, context, follower, expected) for both Example 2 displays."""
    rng = range(1, bound + 1)
    for q, k, m in product(rng, rng, rng):
        if q <= k:
            K0 = k - q if q < k else 0
            for K in range(K0, K0 + extra + 1):
                ctx = (G,) + power(D, K) + power(D, q) + (G,) + p_k(k, 2 * m * k)
                inst = {"display": "b-", "q": q, "k": k, "m": m, "K": K}
                yield inst, ctx, p_k(m, 2 * m * k) + (G,), True
                yield inst, ctx, p_k(m, 2 * m * (K + 1)) + (G,), False
        M0 = q - m if q > m else 0
        for M in range(M0, M0 + extra + 1):
            top = max(q, m) + M - M0
            E = R_k(top) + top - 1 - q
            ctx = (G,) + p_k(k, 2 * k * M) + power(D, q) + (G,) + p_k(k, 2 * k * m)
            inst = {"display": "b+", "q": q, "k": k, "m": m, "M": M}
            if E < 0:
                continue
            yield inst, ctx, power(D, E) + (G,), True
            yield inst, ctx, power(D, E + 1), False


def verify_boundary_displays(system: ExampleSystem, which: str, bounds: dict,
                             admissible=None) -> DisplayReport:
    """Evaluate each displayed containment with ``admissible`` (default: the presentation)."""
    p = system.presentation
    check = admissible or (lambda w: is_admissible(p, w))
    checks, skipped = [], []
    if which == "ex1":
        cfg = Example1Config(tuple(tuple(x.split(",")) for x in system.params["periods"]))
        k_max = system.params["k_max"]
        items = []
        for n in range(1, bounds.get("n_max", 0) + 1):
            if n + 2 > k_max:
                skipped.append(f"n={n}: needs k_max >= {n + 2}")
                continue
            items.extend(example1_display_instances(cfg, [n]))
    elif which == "ex2":
        K = system.params["K"]
        items = []
        for inst, ctx, fol, exp in example2_display_instances(bounds.get("bound", 0), bounds.get("extra", 1)):
            need = max(inst["k"], inst["m"], inst["q"]) + inst.get("K", inst.get("M", 0)) + 1
            if need > K:
                skipped.append(f"{inst}: needs K >= {need}")
                continue
            items.append((inst, ctx, fol, exp))
    else:
        raise DomainError(f"unknown display family {which!r}")
    for inst, ctx, fol, expected in items:
        note = "" if check(ctx) else "context itself is not admissible"
        checks.append(DisplayCheck(inst, ctx, fol, expected, bool(check(ctx + fol)), note))
    return DisplayReport(which, checks, skipped)


# -- Excluded-word system -------------------------------------------------

ALPHA = ("-1", "1")
SIGMA6 = Alphabet(("-1", "0", "1"))


def neg(alpha: str) -> str:
    return "1" if alpha == "-1" else "-1"


def g_minus(k: int, alpha: str) -> Word:
    return power("0", k) + (alpha,)


def g_plus(k: int, alpha: str) -> Word:
    return (alpha,) + power("0", k)


def c_word(k: int, alpha: str) -> Word:
    return (alpha,) + power("0", k) + (alpha,)


def d_sets(m_max: int, max_len: int) -> Dict[int, List[Word]]:
    """D<1..m_max>, each truncated to words of length <= max_len."""
    D_ = {1: [c_word(1, a) for a in ALPHA if 3 <= max_len]}
    for m in range(1, m_max):
        pool = sorted({w for l in range(1, m + 1) for w in D_[l]}, key=lambda w: (len(w), w))
        inner_max = max_len - 2
        concat = set()
        frontier = {()}
        while frontier:
            nxt = set()
            for u in frontier:
                for w in pool:
                    v = u + w
                    if len(v) <= inner_max and v not in concat:
                        concat.add(v)
                        nxt.add(v)
            frontier = nxt
        D_[m + 1] = sorted({(a,) + v + (a,) for a in ALPHA for v in concat},
                           key=lambda w: (len(w), w))
    return D_


def pair_exclusions(k_max: int, max_len: int) -> List[Word]:
    out = []
    for k in range(1, k_max + 1):
        for m in range(2, k_max - k + 1):
            for a1, a2 in product(ALPHA, ALPHA):
                w = c_word(k, a1) + c_word(k + m, a2)
                if len(w) <= max_len:
                    out.append(w)
    return out


@dataclass
class Section6System:
    k_max: int
    m_max: int
    window: Optional[int] = None
    margin: object = "auto"

    def __post_init__(self):
        if self.k_max < 2 or self.m_max < 1:
            raise DomainError("need k_max >= 2 and m_max >= 1")
        if self.window is None:
            self.window = 2 * self.k_max + 4
        self.code = [c_word(k, a) for k in range(1, self.k_max + 1) for a in ALPHA]
        self.presentation = ExclusionCoded(SIGMA6, self.code, self.excluded, self.window,
                                           self.margin, name="section6")

    def excluded(self, max_len: int) -> List[Word]:
        words = set(pair_exclusions(self.k_max, max_len))
        for ws in d_sets(self.m_max, max_len).values():
            words.update(ws)
        return sorted(words, key=lambda w: (len(w), w))

    def admissible(self, w) -> bool:
        return is_admissible(self.presentation, w)

    def contains_code_word(self, w: Sequence[str]) -> Optional[Word]:
        w = tuple(w)
        for k in range(1, len(w) - 1):
            for a in ALPHA:
                c = c_word(k, a)
                if is_factor(c, w):
                    return c
        return None


def build_section6(k_max: int, m_max: int, window: Optional[int] = None) -> Section6System:
    return Section6System(k_max, m_max, window)


def parse_c_product(a: Sequence[str]) -> Optional[List[Tuple[int, str]]]:
    """Split ``a`` into code words a 0^k a, or None."""
    a = tuple(a)
    out, i = [], 0
    while i < len(a):
        alpha = a[i]
        if alpha == "0":
            return None
        j = i + 1
        while j < len(a) and a[j] == "0":
            j += 1
        if j >= len(a) or a[j] != alpha or j == i + 1:
            return None
        out.append((j - i - 1, alpha))
        i = j + 1
    return out or None


# -- the four-case extension ----------------------------------------------

class ShapeError(DomainError):
    pass


def classify_shape(a: Sequence[str]) -> Tuple[int, dict]:
    """Return (case, parameters) for the four recognized shapes."""
    a = tuple(a)
    nz = [i for i, s in enumerate(a) if s != "0"]
    if not a or not nz:
        raise ShapeError(f"{fmt(a)}: no nonzero symbol")
    if len(nz) == 1:
        i = nz[0]
        alpha = a[i]
        if i == 0:
            return 1, {"k": len(a) - 1, "alpha": alpha}
        if i == len(a) - 1:
            return 2, {"k": i, "alpha": alpha}
        raise ShapeError(f"{fmt(a)}: zeros on both sides of a single nonzero symbol")
    if len(nz) == 2 and nz[1] == nz[0] + 1:
        km, kp = nz[0], len(a) - nz[1] - 1
        params = {"k_minus": km, "alpha_minus": a[nz[0]], "k_plus": kp, "alpha_plus": a[nz[1]]}
        return (3 if kp > km else 4), params
    raise ShapeError(f"{fmt(a)}: not one of the four shapes")


@dataclass
class RemarkResult:
    a: Word
    b: Word
    case: int
    code_word: Word
    flagged: bool
    reason: str = ""

    def to_dict(self):
        return {"a": fmt(self.a), "b": fmt(self.b), "case": self.case,
                "code_word": fmt(self.code_word), "flagged": self.flagged, "reason": self.reason}


def _literal_extension(case: int, prm: dict) -> Tuple[Word, Word]:
    if case == 1:
        k, al = prm["k"], prm["alpha"]
        return g_plus(k, al) + g_minus(0, al), c_word(k, al)
    if case == 2:
        k, al = prm["k"], prm["alpha"]
        return g_minus(k, al) + c_word(k + 1, al), c_word(k + 1, al)
    km, am, kp, ap = prm["k_minus"], prm["alpha_minus"], prm["k_plus"], prm["alpha_plus"]
    if case == 3:
        return g_minus(km, am) + c_word(kp, ap), c_word(kp, ap)
    return g_minus(km, am) + c_word(km + 1, ap), c_word(km + 1, ap)


def _search_extension(sys: Section6System, a: Word, max_extra: int) -> Optional[Tuple[Word, Word]]:
    from .language import follower_set
    for v in follower_set(sys.presentation, a, max_extra):
        b = a + v
        c = sys.contains_code_word(b)
        if c is not None:
            return b, c
    return None


def remark_extension(sys: Section6System, a: Sequence[str], max_extra: Optional[int] = None) -> RemarkResult:
    a = SIGMA6.check(a)
    if not sys.admissible(a):
        raise DomainError(f"{fmt(a)} is not admissible")
    if sys.contains_code_word(a) is not None:
        raise DomainError(f"{fmt(a)} already contains a code word")
    case, prm = classify_shape(a)
    degenerate = case == 1 and prm["k"] == 0
    if not degenerate:
        b, c = _literal_extension(case, prm)
        assert b[:len(a)] == a, (a, b)
        if sys.admissible(b) and c[1:-1] and is_factor(c, b):
            return RemarkResult(a, b, case, c, False)
        reason = f"literal extension {fmt(b)} is not admissible"
    else:
        reason = "k = 0: the literal rule would need the word a a, which is not a code word"
    found = _search_extension(sys, a, max_extra or sys.k_max + 3)
    if found is None:
        raise DomainError(f"{fmt(a)}: no extension found ({reason})")
    return RemarkResult(a, found[0], case, found[1], True, reason)


def remark_shapes(max_param: int):
    """Every word of the four shapes with parameters <= max_param."""
    for al in ALPHA:
        for k in range(0, max_param + 1):
            yield g_plus(k, al)
        for k in range(1, max_param + 1):
            yield g_minus(k, al)
    for am, ap in product(ALPHA, ALPHA):
        for km in range(0, max_param + 1):
            for kp in range(0, max_param + 1):
                yield g_minus(km, am) + g_plus(kp, ap)


# -- continuation and witnesses -------------------------------------------

class Lemma9Gap(DomainError):
    """The descending-max recursion hit an empty set."""


def lemma9_indices(ks: Sequence[int]) -> List[int]:
    """1-based indices r_1 > r_2 > ... of the recursion."""
    ks = list(ks)
    R = len(ks)
    kR = ks[-1]
    Q = max(ks) - kR
    if Q <= 0:
        raise DomainError(f"Q = {Q} must be positive")
    rs = []
    upper = R  # r ranges over [1, upper)
    for q in range(1, Q + 1):
        cand = [r for r in range(1, upper) if ks[r - 1] == kR + q]
        if not cand:
            raise Lemma9Gap(f"no r < {upper} with k_r = {kR + q} (q = {q})")
        rs.append(max(cand))
        upper = rs[-1]
    return rs


@dataclass
class Lemma9Result:
    ks: Tuple[Tuple[int, str], ...]
    indices: List[int]
    continuation: List[Tuple[int, str]]
    extended: Word
    admissible: bool

    def to_dict(self):
        return {"input": [list(x) for x in self.ks], "indices": self.indices,
                "continuation": [list(x) for x in self.continuation],
                "extended": fmt(self.extended), "admissible": self.admissible}


def lemma9_continuation(sys: Section6System, ks: Sequence[Tuple[int, str]],
                        check_input: bool = True) -> Lemma9Result:
    ks = tuple((int(k), str(a)) for k, a in ks)
    a = tuple(s for k, al in ks for s in c_word(k, al))
    if check_input and not sys.admissible(a):
        raise DomainError(f"input {fmt(a)} is not admissible")
    rs = lemma9_indices([k for k, _ in ks])
    kR = ks[-1][0]
    cont = [(kR + q, ks[r - 1][1]) for q, r in enumerate(rs, start=1)]
    ext = a + tuple(s for k, al in cont for s in c_word(k, al))
    return Lemma9Result(ks, rs, cont, ext, sys.admissible(ext))


@dataclass
class WitnessReport:
    a: Word
    depth: int
    contexts: int
    successes: int
    inconclusive: int

    @property
    def fraction(self) -> float:
        return self.successes / self.contexts if self.contexts else 0.0

    @property
    def inconclusive_flag(self) -> bool:
        return self.successes == 0

    def to_dict(self):
        return {"a": fmt(self.a), "depth": self.depth, "contexts": self.contexts,
                "successes": self.successes, "inconclusive_contexts": self.inconclusive,
                "fraction": self.fraction, "inconclusive": self.inconclusive_flag}


def _last_block(x: Word, k: int) -> Optional[Tuple[int, Word]]:
    best = None
    for al in ALPHA:
        c = c_word(k, al)
        occ = occurrences(c, x)
        if occ and (best is None or occ[-1] > best[0]):
            best = (occ[-1], c)
    return best


def lemma10_witness(sys: Section6System, a: Sequence[str], depth: int,
                    admissible=None) -> WitnessReport:
    """Try the proof's right context y+ against every left context of length ``depth``.

    ``admissible`` replaces the presentation's membership test (used to
    cross-check against an independent oracle); left contexts are then
    found by exhaustive search instead of the automaton.
    """
    from .language import predecessor_set
    a = SIGMA6.check(a)
    check = admissible or sys.admissible
    if not check(a):
        raise DomainError(f"{fmt(a)} is not admissible")
    parts = parse_c_product(a)
    head: Optional[Tuple[int, str]] = None
    if parts is None:
        nz = [i for i, s in enumerate(a) if s != "0"]
        if nz and a[nz[0]] != "0" and all(s == "0" for s in a[:nz[0]]):
            head = (nz[0], a[nz[0]])
            parts = parse_c_product(a[nz[0] + 1:])
    if not parts:
        raise DomainError(f"{fmt(a)} is not a product of code words (with optional g- head)")
    kR = parts[-1][0]
    if any(k > kR for k, _ in parts):
        raise DomainError(f"{fmt(a)}: last code word is not of maximal length")

    def tail(start_q: int, length: int) -> Word:
        out: Word = ()
        q = start_q
        while len(out) < length and kR + q <= sys.k_max:
            out += c_word(kR + q, "1")
            q += 1
        return out[:length]

    if admissible is None:
        contexts = [u for u in predecessor_set(sys.presentation, a, depth) if len(u) == depth]
    else:
        contexts = [u for u in product(SIGMA6.symbols, repeat=depth) if check(u + a)]
    succ = inconc = 0
    for x in contexts:
        y = None
        if head is None:
            blk = _last_block(x, kR + 1)
            if blk is not None:
                y = blk[1] + tail(2, depth)
        else:
            k, al = head
            suffix = g_plus(kR - k + 1, al)
            if x[len(x) - len(suffix):] == suffix:
                blk = _last_block(x, kR + 2)
                if blk is not None:
                    y = c_word(kR + 1, neg(al)) + blk[1] + tail(3, depth)
            else:
                blk = _last_block(x, kR + 1)
                if blk is not None:
                    y = c_word(kR + 1, blk[1][-1]) + tail(2, depth)
        if y is None:
            inconc += 1
            continue
        y = y[:depth]
        if check(a + y) and not check(x + a + y):
            succ += 1
    return WitnessReport(a, depth, len(contexts), succ, inconc)
