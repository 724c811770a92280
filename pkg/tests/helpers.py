"""Shared oracles and samplers for the test suite."""

from itertools import combinations

from blindalign import ChannelConfig


def compositions(total, parts):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    for cut in combinations(range(total + parts - 1), parts - 1):
        out = []
        lo = 0
        for c in list(cut) + [total + parts - 1]:
            out.append(c - lo)
            lo = c + 1
        yield tuple(out)


def min_circular_gap(offsets, N):
    rel = sorted(o % N for o in offsets)
    gaps = [rel[i + 1] - rel[i] for i in range(len(rel) - 1)]
    gaps.append(N - rel[-1] + rel[0])
    return min(gaps)


def random_feasible_gaps(rng, K, n_max):
    """Gap vector with sum N <= n_max and every entry >= ceil(N/(K+1))."""
    while True:
        N = int(rng.integers(K, n_max + 1))
        base = -(-N // (K + 1))
        if K * base <= N:
            break
    bumps = rng.multinomial(N - K * base, [1.0 / K] * K)
    return tuple(int(base + b) for b in bumps)


def random_feasible_config(rng, K, n_max):
    """Feasible config with random benchmark offset and user order."""
    s = random_feasible_gaps(rng, K, n_max)
    N = sum(s)
    base = int(rng.integers(0, N))
    pos = [base]
    for g in s[:-1]:
        pos.append((pos[-1] + g) % N)
    rest = [pos[i] for i in rng.permutation(range(1, K))]
    return ChannelConfig(N=N, offsets=(pos[0], *rest))
