import random

from rainbow_schur import make_family


def random_family(rng: random.Random, n: int, m: int, k: int, density: float = 0.5):
    sets = [[x for x in range(1, n + 1) if rng.random() < density] for _ in range(k)]
    return make_family(n, m, sets)
