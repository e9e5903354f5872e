"""Brute-force reference computations that avoid the package's tables.

Cyclic rings and their products are modelled with plain modular arithmetic on
Python ints; the package encodes (a, b) in Z_p x Z_q as a*q + b.
"""

import math
from itertools import product


def cyclic_maps(a, b):
    """Images h(1) of the additive maps Z_a -> Z_b."""
    return [t for t in range(b) if (a * t) % b == 0]


def cyclic_n_jordan(t, m, n):
    """x -> t x on Z_m satisfies h(x^n) = h(x)^n."""
    return all((t * pow(x, n, m)) % m == pow(t * x, n, m) for x in range(m))


def cyclic_n_hom(t, a, b, n):
    """x -> t x from Z_a to Z_b preserves n-fold products (brute force)."""
    for xs in product(range(a), repeat=n):
        lhs = (t * (math.prod(xs) % a)) % b
        rhs = math.prod(t * x for x in xs) % b
        if lhs != rhs:
            return False
    return True


def char_brute(size_elements, n, scalar):
    f = math.factorial(n)
    return all(scalar(f, x) != 0 for x in size_elements if x != 0)


def all_functions(size_a, size_b):
    return product(range(size_b), repeat=size_a)


def boolean_pair_mul(u, v):
    # Z2 x Z2 with index 2a + b
    a1, b1 = divmod(u, 2)
    a2, b2 = divmod(v, 2)
    return 2 * ((a1 * a2) % 2) + (b1 * b2) % 2


def boolean_pair_add(u, v):
    a1, b1 = divmod(u, 2)
    a2, b2 = divmod(v, 2)
    return 2 * ((a1 + a2) % 2) + (b1 + b2) % 2


def mat_mul(x, y, m):
    k = len(x)
    return tuple(
        tuple(sum(x[i][l] * y[l][j] for l in range(k)) % m for j in range(k)) for i in range(k)
    )


def mat_index(x, m):
    out = 0
    for row in x:
        for v in row:
            out = out * m + v
    return out


def mat_from_index(idx, m, k):
    digits = []
    for _ in range(k * k):
        idx, d = divmod(idx, m)
        digits.append(d)
    digits.reverse()
    return tuple(tuple(digits[i * k : (i + 1) * k]) for i in range(k))
