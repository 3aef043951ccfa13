from fractions import Fraction

import pytest

from dyadic_besov import LCFunction

# Dense table of the j0 = 1, alpha = 1, eps = 1 counterexample (residues mod 8).
J3_TABLE = [7, 1, -1, -3, -1, 1, -1, -3]


@pytest.fixture
def j3():
    return LCFunction(3, J3_TABLE)


def brute_project(values, J, j):
    """Average over the residue class k + m 2^j by explicit enumeration."""
    if j >= J:
        return [Fraction(v) for v in values]
    out = []
    for k in range(2**j):
        members = [values[i] for i in range(2**J) if i % 2**j == k]
        out.append(Fraction(sum(members), len(members)))
    return out


def exact(x):
    """Exact rational value of an mpfr (or pass through a Fraction)."""
    import gmpy2

    if isinstance(x, Fraction):
        return x
    q = gmpy2.mpq(x)
    return Fraction(int(q.numerator), int(q.denominator))
