"""Sliding block codes with a symmetric coding window."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Sequence

from .words import Alphabet, DomainError, Word


@dataclass(frozen=True)
class BlockMap:
    radius: int
    table: Dict[Word, str]
    target: Alphabet

    @classmethod
    def from_function(cls, radius: int, source: Alphabet, target: Alphabet,
                      fn: Callable[[Word], str], domain=None) -> "BlockMap":
        """Tabulate ``fn`` on all (2L+1)-words, or on ``domain`` if given."""
        n = 2 * radius + 1
        keys = domain if domain is not None else product(source.symbols, repeat=n)
        table = {}
        for k in keys:
            k = tuple(k)
            v = fn(k)
            if v not in target:
                raise DomainError(f"block map value {v!r} not in target alphabet")
            table[k] = v
        return cls(radius, table, target)

    def __call__(self, w: Sequence[str]) -> Word:
        return apply_block_map(self, w)


def apply_block_map(m: BlockMap, w: Sequence[str]) -> Word:
    w = tuple(w)
    L = m.radius
    if len(w) < 2 * L + 1:
        raise DomainError(f"word of length {len(w)} is shorter than the window {2 * L + 1}")
    out = []
    for i in range(len(w) - 2 * L):
        block = w[i:i + 2 * L + 1]
        try:
            out.append(m.table[block])
        except KeyError:
            raise DomainError(f"block {block} outside the map's domain") from None
    return tuple(out)


def compose(outer: BlockMap, inner: BlockMap, source: Alphabet) -> BlockMap:
    """The block map of radius L1+L2 computing outer(inner(w))."""
    L = outer.radius + inner.radius
    table = {}
    for k in product(source.symbols, repeat=2 * L + 1):
        try:
            table[k] = apply_block_map(outer, apply_block_map(inner, k))[0]
        except DomainError:
            continue
    return BlockMap(L, table, outer.target)
