"""Fixture SPO-codes shared by the test modules."""

from spocode.examples import Example1Config, Example2Config, build_example1, build_example2
from spocode.spo import BifixCode, MarkedWord, SpoCode


def W(text):
    return tuple(text)


def periodic():
    """Single self-chaining word: the orbit of (gdg0)^inf."""
    return SpoCode.from_words(BifixCode([W("gdg")]), [W("gdg0gdg")], name="periodic")


def all_bullet():
    F = BifixCode([W("gdg"), W("gddg")])
    return SpoCode.from_words(F, [W("gdgddg"), W("gddgdg"), W("gdgdg")], name="all-bullet")


def mixed():
    """Non-bullet words a, b and one bullet word c."""
    F = BifixCode([W("gdg"), W("gddg")])
    return SpoCode.from_words(F, [W("gdg0gdg"), W("gdgddg"), W("gddg0gdg")], name="mixed")


def ambiguous():
    F = BifixCode([W("gg")])
    return SpoCode.from_words(F, [W("gg0gg"), W("gg0gg0gg")], name="ambiguous")


def example1(k_max=3):
    return build_example1(Example1Config((("0",),)), k_max).code


def example2(K=3):
    return build_example2(Example2Config(K)).code


SYNTHETIC = {"periodic": periodic, "all-bullet": all_bullet, "mixed": mixed}
ALL = dict(SYNTHETIC, example1=example1, example2=example2)
