"""Line-based presentation files.

Each non-blank line is ``key = value``; ``#`` starts a comment.  Words are
comma-separated symbol names.  Keys by variant::

    variant   = sft | sofic | coded | spo | exclusion | example1 | example2 | section6
    alphabet  = 0 1                 (space separated, all variants but examples)
    forbid    = 1,1                 (sft, repeatable)
    edge      = A 1 B               (sofic: source, label, target; repeatable)
    word      = g,d,g,0,g,d,g [@ 3 3]   (coded, spo, exclusion; marks optional)
    bifix     = g,d,g               (spo, repeatable)
    exclude   = 1,0,1               (exclusion, repeatable)
    window    = 12                  (exclusion, section6)
    margin    = 4 | closure | auto  (coded, spo, exclusion)
    period    = 0                   (example1, repeatable)
    k_max     = 3                   (example1, section6)
    K         = 4                   (example2)
    m_max     = 2                   (section6)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .presentation import (AUTO, SFT, Coded, ExclusionCoded, Presentation,
                           PresentationParseError, Sofic, SpoCoded)
from .spo import BifixCode, ConstructionError, MarkedWord, SpoCode, find_marks
from .words import Alphabet, DomainError

VARIANTS = ("sft", "sofic", "coded", "spo", "exclusion", "example1", "example2", "section6")
REPEATABLE = {"forbid", "edge", "word", "bifix", "exclude", "period"}
ALLOWED = {
    "sft": {"alphabet", "forbid"},
    "sofic": {"alphabet", "edge"},
    "coded": {"alphabet", "word", "margin"},
    "spo": {"alphabet", "word", "bifix", "margin"},
    "exclusion": {"alphabet", "word", "exclude", "window", "margin"},
    "example1": {"period", "k_max"},
    "example2": {"K"},
    "section6": {"k_max", "m_max", "window"},
}


@dataclass
class Loaded:
    """A parsed file: the presentation plus whatever code or system it carries."""

    variant: str
    presentation: Presentation
    code: Optional[SpoCode] = None
    system: object = None
    meta: Dict[str, object] = field(default_factory=dict)


@dataclass
class _Entry:
    key: str
    value: str
    line: int
    column: int  # 1-based column where the value starts


def _tokenize(text: str) -> List[_Entry]:
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            col = len(body) - len(body.lstrip()) + 1
            raise PresentationParseError(ln, col, "expected 'key = value'")
        key_part, value = body.split("=", 1)
        key = key_part.strip()
        if not key:
            raise PresentationParseError(ln, 1, "missing key")
        vcol = len(key_part) + 2 + (len(value) - len(value.lstrip()))
        out.append(_Entry(key, value.strip(), ln, vcol))
    return out


def _err(e: _Entry, msg: str, offset: int = 0):
    return PresentationParseError(e.line, e.column + offset, msg)


def _int(e: _Entry, minimum: int = 0) -> int:
    try:
        v = int(e.value)
    except ValueError:
        raise _err(e, f"{e.key} must be an integer, got {e.value!r}") from None
    if v < minimum:
        raise _err(e, f"{e.key} must be >= {minimum}")
    return v


def _word(e: _Entry, text: str, alphabet: Optional[Alphabet], offset: int = 0):
    parts = [s.strip() for s in text.split(",")]
    pos = offset
    for s in parts:
        if not s:
            raise _err(e, "empty symbol in word", pos)
        if alphabet is not None and s not in alphabet:
            raise _err(e, f"symbol {s!r} is not in the alphabet", pos)
        pos += len(s) + 1
    return tuple(parts)


def parse_presentation(text: str) -> Loaded:
    entries = _tokenize(text)
    singles: Dict[str, _Entry] = {}
    multi: Dict[str, List[_Entry]] = {}
    for e in entries:
        if e.key in REPEATABLE:
            multi.setdefault(e.key, []).append(e)
        elif e.key in singles:
            raise _err(e, f"duplicate key {e.key!r}")
        else:
            singles[e.key] = e
    if "variant" not in singles:
        raise PresentationParseError(1, 1, "missing 'variant' line")
    ve = singles.pop("variant")
    variant = ve.value
    if variant not in VARIANTS:
        raise _err(ve, f"unknown variant {variant!r}")
    for key, e in list(singles.items()) + [(k, es[0]) for k, es in multi.items()]:
        if key not in ALLOWED[variant]:
            raise _err(e, f"key {key!r} is not valid for variant {variant!r}")
    try:
        return _build(variant, ve, singles, multi)
    except (DomainError, ConstructionError) as exc:
        anchor = ve
        raise PresentationParseError(anchor.line, anchor.column, str(exc)) from None


def _alphabet(singles, ve) -> Alphabet:
    if "alphabet" not in singles:
        raise _err(ve, "missing 'alphabet' line")
    e = singles["alphabet"]
    syms = e.value.split()
    if len(set(syms)) != len(syms) or not syms:
        raise _err(e, "alphabet must list distinct symbols")
    if any("," in s for s in syms):
        raise _err(e, "symbols may not contain ','")
    return Alphabet(tuple(syms))


def _margin(singles):
    e = singles.get("margin")
    if e is None or e.value == "auto":
        return AUTO
    if e.value == "closure":
        return None
    return _int(e, 0)


def _code_words(multi, alphabet, ve, allow_marks: bool):
    words = []
    for e in multi.get("word", []):
        text, marks = e.value, None
        if "@" in text:
            if not allow_marks:
                raise _err(e, "marks are only allowed for the spo variant", text.index("@"))
            text, m = text.split("@", 1)
            bits = m.split()
            if len(bits) != 2 or not all(b.isdigit() for b in bits):
                raise _err(e, "marks must be '@ <prefix_len> <suffix_len>'", len(text))
            marks = (int(bits[0]), int(bits[1]))
            text = text.strip()
        words.append((e, _word(e, text, alphabet), marks))
    if not words:
        raise _err(ve, "at least one 'word' line is required")
    return words


def _build(variant, ve, singles, multi) -> Loaded:
    if variant == "sft":
        a = _alphabet(singles, ve)
        forb = [_word(e, e.value, a) for e in multi.get("forbid", [])]
        return Loaded(variant, SFT(a, forb))
    if variant == "sofic":
        a = _alphabet(singles, ve)
        edges = []
        for e in multi.get("edge", []):
            bits = e.value.split()
            if len(bits) != 3:
                raise _err(e, "edge needs 'source label target'")
            if bits[1] not in a:
                raise _err(e, f"label {bits[1]!r} is not in the alphabet", len(bits[0]) + 1)
            edges.append((bits[0], bits[1], bits[2]))
        if not edges:
            raise _err(ve, "at least one 'edge' line is required")
        return Loaded(variant, Sofic(a, edges))
    if variant == "coded":
        a = _alphabet(singles, ve)
        words = [w for _, w, _ in _code_words(multi, a, ve, False)]
        return Loaded(variant, Coded(a, words, _margin(singles)))
    if variant == "spo":
        a = _alphabet(singles, ve)
        bif = [_word(e, e.value, a) for e in multi.get("bifix", [])]
        if not bif:
            raise _err(ve, "at least one 'bifix' line is required")
        F = BifixCode(bif)
        marked = []
        for e, w, marks in _code_words(multi, a, ve, True):
            try:
                m = MarkedWord(w, *marks) if marks else find_marks(F, w)
            except (DomainError, ConstructionError, ValueError) as exc:
                raise _err(e, str(exc)) from None
            if m is None:
                raise _err(e, "word has no proper prefix and suffix in the bifix code")
            marked.append(m)
        code = SpoCode(F, tuple(marked))
        return Loaded(variant, SpoCoded(code, a, _margin(singles)), code=code)
    if variant == "exclusion":
        a = _alphabet(singles, ve)
        words = [w for _, w, _ in _code_words(multi, a, ve, False)]
        excl = [_word(e, e.value, a) for e in multi.get("exclude", [])]
        window = _int(singles["window"], 1) if "window" in singles else None
        p = ExclusionCoded(a, words, lambda n: [x for x in excl if len(x) <= n], window,
                           _margin(singles), name="file")
        return Loaded(variant, p)
    from . import examples as ex
    if variant == "example1":
        periods = [_word(e, e.value, None) for e in multi.get("period", [])]
        if not periods:
            raise _err(ve, "at least one 'period' line is required")
        k_max = _int(singles["k_max"], 1) if "k_max" in singles else 3
        sysm = ex.build_example1(ex.Example1Config(tuple(periods)), k_max)
        return Loaded(variant, sysm.presentation, sysm.code, sysm, dict(sysm.params))
    if variant == "example2":
        K = _int(singles["K"], 1) if "K" in singles else 3
        sysm = ex.build_example2(ex.Example2Config(K))
        return Loaded(variant, sysm.presentation, sysm.code, sysm, dict(sysm.params))
    k_max = _int(singles["k_max"], 2) if "k_max" in singles else 6
    m_max = _int(singles["m_max"], 1) if "m_max" in singles else 3
    window = _int(singles["window"], 3) if "window" in singles else None
    sysm = ex.build_section6(k_max, m_max, window)
    return Loaded(variant, sysm.presentation, None, sysm,
                  {"k_max": k_max, "m_max": m_max, "window": sysm.window})


def load_presentation(path) -> Loaded:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))
