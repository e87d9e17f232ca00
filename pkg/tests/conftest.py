"""Shared test helpers: independent oracles over plain integer lists."""

import random

import pytest

from tritfield.gf3 import TritVector


def conv3(a, b):
    """Schoolbook convolution mod 3 over integer digit lists."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % 3
    return out


def mod_f397(coeffs):
    """Long division by x^97 + x^16 + 2 over GF(3); returns 97 digits."""
    t = list(coeffs) + [0] * (97 - len(coeffs)) if len(coeffs) < 97 else list(coeffs)
    for i in range(len(t) - 1, 96, -1):
        c = t[i]
        if c:
            # subtract c * x^(i-97) * (x^97 + x^16 + 2)
            t[i] = 0
            t[i - 81] = (t[i - 81] - c) % 3
            t[i - 97] = (t[i - 97] - 2 * c) % 3
    return t[:97]


def rand_digits(rnd, n):
    return [rnd.randrange(3) for _ in range(n)]


def tv(digits):
    return TritVector.from_digits(digits)


@pytest.fixture
def rnd():
    return random.Random(0xC0FFEE)
