"""Exact arithmetic in Q(zeta_p).

A value sum_k c_k z^k is stored in the basis 1, z, ..., z^(p-2); the power
z^(p-1) is rewritten as -(1 + z + ... + z^(p-2)).  With this basis equality
of values is equality of coefficient tuples.
"""

import cmath
from fractions import Fraction


class CycValue:
    """An immutable element of Q(zeta_p)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs=()):
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > p - 1:
            raise ValueError(f"{len(coeffs)} coefficients for p = {p}; use from_powers")
        coeffs += [Fraction(0)] * (p - 1 - len(coeffs))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("CycValue is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_int(cls, p, n):
        return cls(p, [n])

    @classmethod
    def from_powers(cls, p, counts):
        """sum_k counts[k] z^k for k = 0..p-1 (counts may be any length <= p)."""
        counts = list(counts) + [0] * (p - len(counts))
        if len(counts) > p:
            raise ValueError("more than p power counts")
        top = counts[p - 1] if p > 1 else 0
        return cls(p, [counts[k] - top for k in range(p - 1)])

    # -- basic protocol -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycValue):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == CycValue(self.p, [other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"CycValue({self.p}, {self})"

    def __str__(self):
        return render(self)

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return CycValue(self.p, [other])
        if not isinstance(other, CycValue):
            return None
        if other.p != self.p:
            raise ValueError(f"mismatched cyclotomic fields: p = {self.p} vs {other.p}")
        return other

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return CycValue(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycValue(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return CycValue(self.p, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycValue(self.p, [a * other for a in self.coeffs])
        other = self._check(other)
        if other is None:
            return NotImplemented
        p = self.p
        acc = [Fraction(0)] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        acc[(i + j) % p] += a * b
        return CycValue.from_powers(p, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycValue(self.p, [a / other for a in self.coeffs])
        return NotImplemented

    def conj(self):
        """Complex conjugation z -> z^(p-1)."""
        p = self.p
        acc = [Fraction(0)] * p
        for k, c in enumerate(self.coeffs):
            acc[(-k) % p] += c
        return CycValue.from_powers(p, acc)

    # -- queries -------------------------------------------------------------

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def to_complex(self):
        """Floating point approximation, for display only."""
        z = cmath.exp(2j * cmath.pi / self.p)
        return sum(complex(c) * z ** k for k, c in enumerate(self.coeffs))


def root_of_unity(p, k):
    counts = [0] * p
    counts[k % p] = 1
    return CycValue.from_powers(p, counts)


def cyc_arith(a, b, op):
    if a.p != b.p:
        raise ValueError(f"mismatched cyclotomic fields: p = {a.p} vs {b.p}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def cyc_conj(a):
    return a.conj()


def _fmt_coeff(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(value):
    """Polynomial in z, lowest power first: '1 - 2*z', '-1/2 + z**2', '0'."""
    terms = []
    for k, c in enumerate(value.coeffs):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = _fmt_coeff(mag)
        else:
            mono = "z" if k == 1 else f"z**{k}"
            body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        terms.append((c < 0, body))
    if not terms:
        return "0"
    neg, body = terms[0]
    out = ("-" if neg else "") + body
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


def parse(p, text):
    """Inverse of render."""
    text = text.strip()
    if text == "0":
        return CycValue(p)
    coeffs = [Fraction(0)] * (p - 1)
    tokens = text.replace(" - ", " + -").split(" + ")
    for tok in tokens:
        tok = tok.strip()
        sign = 1
        if tok.startswith("-"):
            sign, tok = -1, tok[1:]
        if "z" in tok:
            if "*z" in tok:
                c, mono = tok.split("*z", 1)
                c = Fraction(c)
                mono = "z" + mono
            else:
                c, mono = Fraction(1), tok
            k = 1 if mono == "z" else int(mono[3:])
        else:
            c, k = Fraction(tok), 0
        coeffs[k] += sign * c
    return CycValue(p, coeffs)
