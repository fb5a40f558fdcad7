"""Command-line front end: load a presentation file and run one analysis."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from . import examples as ex
from .derived import (build_edge_shift, build_hat_code, build_markov_code,
                      edge_shift_entropy, entropy_gap_report)
from .fileformat import Loaded, load_presentation
from .language import enumerate_language, entropy_estimate
from .presentation import PresentationParseError
from .report import make_report, render
from .spo import check_unambiguous, factorization_dict, parse_window
from .synchro import (condition_h_report, extract_canonical_code, is_synchronizing_at_depth,
                      j_profile, markov_boundary_test)
from .words import DomainError, ResourceError, fmt, word

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_RESOURCE = 4

COMMANDS = ("lang", "parse", "unambiguous", "derive", "entropy", "gap", "synchro",
            "jprofile", "canonical", "condition-h", "boundary", "examples-verify")

# parameters each command needs (checked before any work is done)
NEEDS = {
    "lang": {"max_len"}, "parse": {"word"}, "unambiguous": set(), "derive": {"max_len"},
    "entropy": {"max_len"}, "gap": set(), "synchro": {"word", "depth"},
    "jprofile": {"word", "depth"}, "canonical": {"max_len", "depth"},
    "condition-h": {"max_len"}, "boundary": {"word", "max_len", "depth"},
    "examples-verify": set(),
}
NEEDS_CODE = {"parse", "unambiguous", "derive", "gap"}


class UsageError(Exception):
    pass


def _code(loaded: Loaded):
    if loaded.code is None:
        raise UsageError(f"command needs an SPO-code; variant {loaded.variant!r} has none")
    return loaded.code


def _word(args, loaded):
    return loaded.presentation.alphabet.check(word(args.word))


def cmd_lang(args, loaded):
    t = enumerate_language(loaded.presentation, args.max_len, cap=args.cap)
    return {"counts": t.counts(), "words": [fmt(w) for w in t.all_words()],
            "factor_closure_violations": [fmt(w) for w in t.factor_closure_violations()]}


def cmd_parse(args, loaded):
    code = _code(loaded)
    facts = parse_window(code, _word(args, loaded))
    return {"word": fmt(_word(args, loaded)), "factorizations": [factorization_dict(f) for f in facts]}


def cmd_unambiguous(args, loaded):
    code = _code(loaded)
    n = args.max_len or 2 * code.max_len
    return check_unambiguous(code, n, alphabet=loaded.presentation.alphabet).to_dict()


def cmd_derive(args, loaded):
    code = _code(loaded)
    hat = build_hat_code(code, args.max_len)
    out = {"hat_code": [str(c) for c in hat.words], "diagnostics": list(hat.diagnostics)}
    if not hat.words:
        return out
    mc = build_markov_code(hat)
    es = build_edge_shift(mc)
    out.update(markov_states=[fmt(d) for d in mc.states],
               transitions=[[fmt(mc.states[i]), fmt(mc.states[j])] for i, j in sorted(mc.transitions)],
               irreducible=mc.irreducible, edge_shift_states=len(es.states),
               entropy=edge_shift_entropy(es).to_dict())
    return out


def cmd_entropy(args, loaded):
    return entropy_estimate(loaded.presentation, args.max_len).to_dict()


def cmd_gap(args, loaded):
    code = _code(loaded)
    n = args.max_len or 2 * code.max_len
    return entropy_gap_report(code, n, loaded.presentation.alphabet, cap=args.cap).to_dict()


def cmd_synchro(args, loaded):
    return is_synchronizing_at_depth(loaded.presentation, _word(args, loaded), args.depth).to_dict()


def cmd_jprofile(args, loaded):
    return j_profile(loaded.presentation, _word(args, loaded), args.depth).to_dict()


def cmd_canonical(args, loaded):
    return extract_canonical_code(loaded.presentation, args.max_len, args.depth).to_dict()


def cmd_condition_h(args, loaded):
    n = args.max_len
    lengths = sorted({max(1, n // 3), max(1, 2 * n // 3), n})
    source = loaded.code
    if source is None:
        if not args.depth:
            raise UsageError("condition-h without an SPO-code needs --depth for the canonical code")
        source = extract_canonical_code(loaded.presentation, n, args.depth)
    return condition_h_report(source, lengths).to_dict()


def cmd_boundary(args, loaded):
    return markov_boundary_test(loaded.presentation, _word(args, loaded), args.max_len, args.depth).to_dict()


def cmd_examples_verify(args, loaded):
    s = loaded.system
    if loaded.variant == "example1":
        rep = ex.verify_boundary_displays(s, "ex1", {"n_max": args.max_len or 2})
        return {"flagged_words": [{"word": fmt(w), "reason": r} for w, r in s.flagged],
                "displays": rep.to_dict()}
    if loaded.variant == "example2":
        rep = ex.verify_boundary_displays(s, "ex2", {"bound": args.max_len or 2, "extra": 1})
        return {"displays": rep.to_dict()}
    if loaded.variant == "section6":
        bound = args.max_len or 3
        remarks = [ex.remark_extension(s, a).to_dict() for a in ex.remark_shapes(bound)]
        identity = all(ex.g_plus(k, a) + ex.g_minus(0, a) == ex.c_word(k, a)
                       for k in range(1, s.k_max + 1) for a in ex.ALPHA)
        a = ex.c_word(2, "1")
        wit = ex.lemma10_witness(s, a, args.depth or 8).to_dict()
        return {"identity_holds": identity, "remark_extensions": remarks,
                "remark_flagged": sum(r["flagged"] for r in remarks), "lemma10": wit}
    raise UsageError(f"examples-verify needs an example variant, got {loaded.variant!r}")


HANDLERS: Dict[str, Callable] = {
    "lang": cmd_lang, "parse": cmd_parse, "unambiguous": cmd_unambiguous, "derive": cmd_derive,
    "entropy": cmd_entropy, "gap": cmd_gap, "synchro": cmd_synchro, "jprofile": cmd_jprofile,
    "canonical": cmd_canonical, "condition-h": cmd_condition_h, "boundary": cmd_boundary,
    "examples-verify": cmd_examples_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spocode", description=__doc__)
    p.add_argument("--input", required=True, help="presentation file")
    p.add_argument("--command", required=True, choices=COMMANDS)
    p.add_argument("--max-len", type=int, default=None, help="length bound n")
    p.add_argument("--depth", type=int, default=None, help="context depth")
    p.add_argument("--seed", type=int, default=0, help="seed recorded in the report")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--word", default=None, help="comma-separated symbol names")
    p.add_argument("--cap", type=int, default=10_000_000, help="word-count resource cap")
    return p


def _validate(args) -> None:
    need = NEEDS[args.command]
    for name in ("max_len", "depth"):
        v = getattr(args, name)
        if v is not None and v < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if name in need and v is None:
            raise UsageError(f"--command {args.command} needs --{name.replace('_', '-')}")
    if "word" in need and not args.word:
        raise UsageError(f"--command {args.command} needs --word")
    if args.cap < 1:
        raise UsageError("--cap must be positive")


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.ERROR)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        _validate(args)
        loaded = load_presentation(args.input)
        result = HANDLERS[args.command](args, loaded)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PresentationParseError as e:
        print(f"{args.input}: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"cannot read {args.input}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    request = {"input": Path(args.input).name, "variant": loaded.variant,
               "max_len": args.max_len, "depth": args.depth, "seed": args.seed,
               "word": args.word}
    text = render(make_report(args.command, request, result), args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
