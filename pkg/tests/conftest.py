"""Shared generators for randomized good-position configurations."""

import random
from fractions import Fraction

from mumford_tame import tame


def random_good_position_params(rng: random.Random):
    """Exponent patterns satisfying the main-construction orderings, with
    random small (g, p, m); always in good position."""
    g = rng.randrange(1, 4)
    p = rng.choice([3, 5, 7])
    m = rng.choice([1, 1, 2, 3])
    # strictly decreasing alphas then betas, all >= 1
    values = sorted(rng.sample(range(1, 2 * g + 6), 2 * g - 1), reverse=True)
    alphas = values[:g]
    betas = values[g:]
    return tame.TameParameters.from_exponents(g, p, m, alphas, betas)


def random_good_position_data(rng: random.Random):
    return tame.whittaker_data_for(random_good_position_params(rng))
