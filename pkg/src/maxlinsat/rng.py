"""Keyed random streams.

Every random draw in the package comes from numpy's PCG64 bit generator
(O'Neill's PCG XSL-RR 128/64). A stream is identified by a 64-bit master
seed, a domain label and a tuple of non-negative integer indices, which are
fed to ``numpy.random.SeedSequence`` as ``entropy=seed`` and
``spawn_key=(crc32(label), *indices)``. Streams with different keys are
statistically independent, and no stream depends on how many draws another
stream made, so rows, iterations and benchmark cells can be generated in any
order.
"""

import zlib

import numpy as np

SEED_MASK = (1 << 64) - 1


def domain_key(label):
    return zlib.crc32(label.encode("utf-8"))


def stream(seed, label, *indices):
    """A fresh Generator for the (seed, label, indices) key."""
    seq = np.random.SeedSequence(int(seed) & SEED_MASK,
                                 spawn_key=(domain_key(label), *map(int, indices)))
    return np.random.Generator(np.random.PCG64(seq))


def derive_seed(seed, label, *indices):
    """A 64-bit child seed, for handing a sub-task its own master seed."""
    seq = np.random.SeedSequence(int(seed) & SEED_MASK,
                                 spawn_key=(domain_key(label), *map(int, indices)))
    return int(seq.generate_state(1, dtype=np.uint64)[0])
