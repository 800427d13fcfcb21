"""Deterministic random streams for generic choices."""

import numpy as np

_SEED_MASK = (1 << 64) - 1
_INT64_LIMIT = 1 << 63
DEFAULT_RATIONAL_BOUND = 10 ** 6


class RandomSource:
    """A seeded stream of random field elements.

    Identical seeds (and spawn paths) yield identical streams. Streams for
    parallel trials are derived with :meth:`spawn` instead of being shared.
    """

    def __init__(self, seed: int = 1, rational_bound: int = DEFAULT_RATIONAL_BOUND,
                 path: tuple = ()):
        self.seed = int(seed)
        self.rational_bound = rational_bound
        self.path = tuple(path)
        entropy = [self.seed & _SEED_MASK, *self.path]
        self._generator = np.random.default_rng(np.random.SeedSequence(entropy))

    def spawn(self, index: int) -> 'RandomSource':
        """Return the independent stream derived from (seed, path, index)."""
        return RandomSource(self.seed, self.rational_bound, self.path + (int(index),))

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound < _INT64_LIMIT:
            return int(self._generator.integers(0, bound))
        nbytes = (bound.bit_length() + 7) // 8
        limit = (1 << (8 * nbytes)) - ((1 << (8 * nbytes)) % bound)
        while True:
            value = int.from_bytes(self._generator.bytes(nbytes), 'big')
            if value < limit:
                return value % bound

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in [low, high]."""
        return low + self.below(high - low + 1)

    def coefficient(self, domain, nonzero: bool = True):
        """Random element of ``domain``.

        Prime fields: uniform over nonzero residues (or all residues).
        Rationals: uniform integers in [-B, B], zero excluded if ``nonzero``.
        """
        p = domain.characteristic()
        if p:
            value = 1 + self.below(p - 1) if nonzero else self.below(p)
            return domain.convert(value)
        bound = self.rational_bound
        while True:
            value = self.integer(-bound, bound)
            if value or not nonzero:
                return domain.convert(value)

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, path={self.path})"
