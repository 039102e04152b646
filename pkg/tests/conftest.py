"""Shared fixtures and a slow, independent reference model of F_{p^k}.

The reference field multiplies residue polynomials by schoolbook arithmetic
mod the same modulus; it never touches the log/Zech tables, so it can serve
as an oracle for them.
"""

import numpy as np
import pytest

from linsets.gf import field_new


class RefField:
    def __init__(self, p, k, modulus):
        self.p, self.k = p, k
        self.mod = list(modulus)

    def digits(self, code):
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def code(self, digits):
        return sum(int(d) * self.p**i for i, d in enumerate(digits))

    def add(self, a, b):
        return self.code([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def mul(self, a, b):
        p, k = self.p, self.k
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, u in enumerate(x):
            if u:
                for j, v in enumerate(y):
                    prod[i + j] = (prod[i + j] + u * v) % p
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c:
                for j in range(k + 1):
                    prod[i - k + j] = (prod[i - k + j] - c * self.mod[j]) % p
        return self.code(prod[:k])

    def pow(self, a, e):
        r, b = 1, a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r


@pytest.fixture(scope="session")
def F729():
    return field_new(3, 1, 6)


@pytest.fixture(scope="session")
def F256():
    return field_new(2, 1, 8)


@pytest.fixture(scope="session")
def ref729(F729):
    return RefField(3, 6, F729.modulus)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# -- acceptance summary ----------------------------------------------------------------

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, label, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {label}  {detail}")
