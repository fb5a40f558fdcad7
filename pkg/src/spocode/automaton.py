"""Labeled graphs and their subset automata.

Every presentation in this package is compiled to an :class:`Automaton`:
a finite labeled directed graph whose admissible words are exactly the
labels of its paths.  The graph is the *core* of an NFA: the states that
can be reached from a start state by a path of at least ``margin``
symbols and that can reach an accepting state by a path of at least
``margin`` symbols.  ``margin=None`` stands for "arbitrarily long", which
for a graph with every state initial and accepting is the essential part
of the graph (the usual sofic-shift language).

Language questions are answered on the subset construction, started from
the set of all core states.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .words import Alphabet, ResourceError, Word

DEFAULT_SUBSET_CAP = 200_000


def _reach(succ: Dict, sources: Iterable, n_states: int, margin: Optional[int]) -> set:
    """States reachable from ``sources`` by paths of length >= margin."""
    sources = list(sources)
    if margin is None:
        reach = set(sources)
        todo = list(sources)
        while todo:
            q = todo.pop()
            for r in succ.get(q, ()):
                if r not in reach:
                    reach.add(r)
                    todo.append(r)
        # states on a cycle inside the reachable part
        cyclic = _cyclic_states({q: [r for r in succ.get(q, ()) if r in reach] for q in reach})
        out = set(cyclic)
        todo = list(cyclic)
        while todo:
            q = todo.pop()
            for r in succ.get(q, ()):
                if r not in out:
                    out.add(r)
                    todo.append(r)
        return out
    seen = {(q, 0) for q in sources}
    todo = deque(seen)
    while todo:
        q, k = todo.popleft()
        for r in succ.get(q, ()):
            item = (r, min(k + 1, margin))
            if item not in seen:
                seen.add(item)
                todo.append(item)
    return {q for q, k in seen if k >= margin}


def _cyclic_states(succ: Dict) -> set:
    """States lying on a directed cycle (Tarjan, iterative)."""
    index, low, on_stack = {}, {}, set()
    stack, result, counter = [], set(), [0]
    for root in succ:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                if len(comp) > 1 or v in succ.get(v, ()):
                    result.update(comp)
    return result


class Automaton:
    """A labeled graph read as a factorial language of path labels.

    Parameters
    ----------
    alphabet : Alphabet
    edges : iterable of ``(source, symbol, target)``
    starts, accepts : iterable of states, or None for "all states"
    margin : int or None
        Minimum number of symbols of context required on each side.
    """

    def __init__(self, alphabet: Alphabet, edges, starts=None, accepts=None,
                 margin: Optional[int] = None, subset_cap: int = DEFAULT_SUBSET_CAP):
        self.alphabet = alphabet
        self.subset_cap = subset_cap
        edges = list(edges)
        states = set()
        for s, a, t in edges:
            states.add(s)
            states.add(t)
            if a not in alphabet:
                raise ValueError(f"edge label {a!r} not in alphabet")
        starts = states if starts is None else set(starts)
        accepts = states if accepts is None else set(accepts)
        succ, pred = {}, {}
        for s, a, t in edges:
            succ.setdefault(s, set()).add(t)
            pred.setdefault(t, set()).add(s)
        left = _reach(succ, starts, len(states), margin)
        right = _reach(pred, accepts, len(states), margin)
        core = left & right
        # deterministic numbering of core states
        order = sorted(core, key=repr)
        self._names = order
        num = {q: i for i, q in enumerate(order)}
        self.n_states = len(order)
        k = len(alphabet)
        fwd = [[set() for _ in range(k)] for _ in range(self.n_states)]
        bwd = [[set() for _ in range(k)] for _ in range(self.n_states)]
        for s, a, t in edges:
            if s in num and t in num:
                ai = alphabet.index(a)
                fwd[num[s]][ai].add(num[t])
                bwd[num[t]][ai].add(num[s])
        self._fwd = [[frozenset(x) for x in row] for row in fwd]
        self._bwd = [[frozenset(x) for x in row] for row in bwd]
        self.initial = frozenset(range(self.n_states))
        self._step_memo: Dict[Tuple[frozenset, int, bool], frozenset] = {}

    # -- basic moves -------------------------------------------------
    def state_name(self, i: int) -> Hashable:
        return self._names[i]

    def step(self, subset: frozenset, symbol: str, backward: bool = False) -> frozenset:
        ai = self.alphabet.index(symbol)
        key = (subset, ai, backward)
        hit = self._step_memo.get(key)
        if hit is not None:
            return hit
        table = self._bwd if backward else self._fwd
        out = set()
        for q in subset:
            out |= table[q][ai]
        res = frozenset(out)
        if len(self._step_memo) < 2_000_000:
            self._step_memo[key] = res
        return res

    def run(self, w: Sequence[str], subset: Optional[frozenset] = None,
            backward: bool = False) -> frozenset:
        s = self.initial if subset is None else subset
        seq = reversed(tuple(w)) if backward else w
        for a in seq:
            if not s:
                return s
            s = self.step(s, a, backward)
        return s

    def accepts(self, w: Sequence[str]) -> bool:
        return bool(self.run(w)) if self.n_states else False

    # -- enumeration and counting ------------------------------------
    def extensions(self, subset: frozenset, depth: int, backward: bool = False,
                   cap: Optional[int] = None) -> List[Word]:
        """Nonempty words b, len(b) <= depth, readable from ``subset``.

        Backward extensions are returned in reading order (left context).
        """
        out: List[Word] = []
        stack = [((), subset)]
        while stack:
            w, s = stack.pop()
            if len(w) == depth:
                continue
            for a in reversed(self.alphabet.symbols):
                t = self.step(s, a, backward)
                if t:
                    nw = w + (a,)
                    out.append(nw)
                    if cap is not None and len(out) > cap:
                        raise ResourceError(f"more than {cap} words")
                    stack.append((nw, t))
        if backward:
            out = [tuple(reversed(w)) for w in out]
        return self.alphabet.sorted(out)

    def count_words(self, n: int) -> List[int]:
        """Exact number of admissible words of each length 1..n."""
        counts = []
        layer = {self.initial: 1} if self.n_states else {}
        for _ in range(n):
            nxt: Dict[frozenset, int] = {}
            for s, c in layer.items():
                for a in self.alphabet.symbols:
                    t = self.step(s, a)
                    if t:
                        nxt[t] = nxt.get(t, 0) + c
            layer = nxt
            if len(layer) > self.subset_cap:
                raise ResourceError("subset automaton exceeded cap during counting")
            counts.append(sum(layer.values()))
        return counts

    # -- subset automaton ---------------------------------------------
    def reachable_subsets(self) -> Tuple[List[frozenset], Dict[frozenset, Tuple]]:
        """BFS over nonempty subsets reachable from the initial subset.

        Returns the subsets in BFS order (alphabet order within a layer)
        and a parent map giving a shortlex-least word reaching each.
        """
        parent = {self.initial: None}
        order = [self.initial]
        todo = deque(order)
        while todo:
            s = todo.popleft()
            for a in self.alphabet.symbols:
                t = self.step(s, a)
                if t and t not in parent:
                    parent[t] = (s, a)
                    order.append(t)
                    todo.append(t)
                    if len(order) > self.subset_cap:
                        raise ResourceError("subset automaton exceeded cap")
        return order, parent

    @staticmethod
    def path_to(parent: Dict, s: frozenset) -> Word:
        out = []
        while parent[s] is not None:
            s, a = parent[s]
            out.append(a)
        return tuple(reversed(out))

    def equivalence_classes(self, subsets: Sequence[frozenset]) -> Dict[frozenset, int]:
        """Moore partition refinement: subsets with equal follower languages.

        ``subsets`` must be closed under nonempty steps.
        """
        cls = {s: 0 for s in subsets}
        n_cls = 1
        syms = self.alphabet.symbols
        while True:
            sig = {}
            new = {}
            for s in subsets:
                key = (cls[s],) + tuple(
                    cls[t] if (t := self.step(s, a)) else -1 for a in syms)
                new[s] = sig.setdefault(key, len(sig))
            if len(sig) == n_cls:
                return new
            cls, n_cls = new, len(sig)

    def distinguishing_word(self, small: frozenset, big: frozenset) -> Optional[Word]:
        """Shortlex-least word readable from ``big`` but not from ``small``."""
        seen = {(small, big)}
        todo = deque([((), small, big)])
        while todo:
            w, s, b = todo.popleft()
            for a in self.alphabet.symbols:
                nb = self.step(b, a)
                if not nb:
                    continue
                ns = self.step(s, a) if s else s
                if not ns:
                    return w + (a,)
                if (ns, nb) not in seen:
                    seen.add((ns, nb))
                    todo.append((w + (a,), ns, nb))
        return None

    def strongly_connected(self) -> bool:
        succ = {q: set() for q in range(self.n_states)}
        for q in range(self.n_states):
            for row in self._fwd[q]:
                succ[q] |= row
        if not succ:
            return False
        start = 0
        for table in (succ, _transpose(succ)):
            seen = {start}
            todo = [start]
            while todo:
                q = todo.pop()
                for r in table[q]:
                    if r not in seen:
                        seen.add(r)
                        todo.append(r)
            if len(seen) != self.n_states:
                return False
        return True


def _transpose(succ):
    out = {q: set() for q in succ}
    for q, rs in succ.items():
        for r in rs:
            out[r].add(q)
    return out


class AhoCorasick:
    """Matcher for a finite set of forbidden patterns over an alphabet."""

    def __init__(self, patterns: Iterable[Sequence[str]], alphabet: Alphabet):
        self.alphabet = alphabet
        goto: List[Dict[str, int]] = [{}]
        terminal = [False]
        for p in patterns:
            q = 0
            for a in p:
                if a not in goto[q]:
                    goto.append({})
                    terminal.append(False)
                    goto[q][a] = len(goto) - 1
                q = goto[q][a]
            terminal[q] = True
        fail = [0] * len(goto)
        delta: List[Dict[str, int]] = [dict() for _ in goto]
        order = deque()
        for a in alphabet.symbols:
            if a in goto[0]:
                r = goto[0][a]
                delta[0][a] = r
                order.append(r)
            else:
                delta[0][a] = 0
        while order:
            q = order.popleft()
            terminal[q] = terminal[q] or terminal[fail[q]]
            for a in alphabet.symbols:
                if a in goto[q]:
                    r = goto[q][a]
                    fail[r] = delta[fail[q]][a]
                    delta[q][a] = r
                    order.append(r)
                else:
                    delta[q][a] = delta[fail[q]][a]
        self.delta = delta
        self.terminal = terminal

    def __len__(self):
        return len(self.delta)
