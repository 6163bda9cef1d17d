import random

import pytest

from cyclechain.chains import ChainSum, Element
from cyclechain.cycles import CycleSum


def rand_cycles(rng, parts=(1, 3, 5, 15), levels=2, terms=3):
    lengths = []
    for _ in range(rng.randint(0, terms)):
        lengths.append(rng.choice(parts) << rng.randint(0, levels))
    return CycleSum.from_lengths(lengths)


def rand_unit(rng, parts=(1, 3, 5, 15), levels=3, terms=3):
    lengths = [1]
    for _ in range(rng.randint(0, terms)):
        lengths.append(rng.choice(parts) << rng.randint(1, levels))
    return CycleSum.from_lengths(lengths)


def rand_chains(rng, max_len=6, terms=3):
    return ChainSum(rng.randint(1, max_len) for _ in range(rng.randint(0, terms)))


def rand_element(rng, parts=(1, 3, 5, 15), levels=2, cycle_terms=3, max_chain=6, chain_terms=2):
    return Element(
        chains=rand_chains(rng, max_chain, chain_terms),
        cycles=rand_cycles(rng, parts, levels, cycle_terms),
    )


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
