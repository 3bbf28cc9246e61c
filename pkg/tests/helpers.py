"""Random generators shared by the property tests."""

import random
from fractions import Fraction

from equiform.trigpoly import COS, SIN, TrigPoly


def rand_frac(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def rand_trigpoly(rng: random.Random, terms: int = 4, max_power: int = 3, max_freq: int = 4) -> TrigPoly:
    out = TrigPoly.zero()
    for _ in range(rng.randint(0, terms)):
        j = rng.randint(0, max_freq)
        kind = COS if j == 0 else rng.choice((COS, SIN))
        out = out + TrigPoly.term(rng.randint(0, max_power), j, kind, rand_frac(rng))
    return out
