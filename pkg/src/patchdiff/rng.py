"""Seeded random-number generation.

Every stochastic operation in this package draws from numpy's Philox
counter-based bit generator.  Philox output is fully specified by its
algorithm and key, with no hidden global state, so equal seeds reproduce
bit-identical streams across platforms and processes.

Stream derivation:

* ``generator(seed)`` is the root stream of an operation (e.g. the initial
  noise image of a restoration run).
* ``generator(seed, k, ...)`` is an independent substream.  The trainer uses
  ``generator(seed, 0)`` for weight initialization and ``generator(seed, i)``
  for training iteration ``i >= 1``, which makes every iteration's randomness
  a pure function of ``(seed, i)`` and lets interrupted runs resume exactly.
"""

import numpy as np


def generator(seed: int, *subkeys: int) -> np.random.Generator:
    """Return a Philox generator keyed by ``seed`` and optional subkeys."""
    entropy = (int(seed),) + tuple(int(k) for k in subkeys)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
