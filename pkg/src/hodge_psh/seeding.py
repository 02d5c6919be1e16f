"""Splittable seeds: trial i of a run with master seed m uses mix(m, i).

mix is the SplitMix64 finalizer applied to m + (i + 1) * 0x9E3779B97F4A7C15
(all arithmetic mod 2^64), so per-trial streams do not depend on how trials
are scheduled across threads.
"""

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x):
    z = x & MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def mix(master, index):
    if not 0 <= master <= MASK:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return splitmix64((master + (index + 1) * GOLDEN) & MASK)
