"""Arithmetic in a single ambient finite field F_{q^L}.

Every level F_{q^n} with n | L is realised as the subfield fixed by the
n-th power of the Frobenius x -> x^q, so inclusions between levels are
plain set inclusions.

Field elements are ints.  The code of sum_i c_i x^i (reduced modulo the
ambient modulus, 0 <= c_i < p) is sum_i c_i p^i; ordering elements by code
is the canonical order used throughout the package.
"""

from functools import cached_property, reduce
from math import gcd

from sympy import factorint, isprime

from .errors import InputError, LevelMismatch, SizeBoundExceeded

#: ambient fields up to this size get exp/log/Zech tables
TABLE_LIMIT = 1 << 18


def lcm(*args):
    return reduce(lambda a, b: a * b // gcd(a, b), args, 1)


def divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


# -- dense polynomials over F_p, lowest degree first ------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _trim(out)


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_divmod(a, b, p):
    a = list(a)
    _trim(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return _trim(q), a


def _poly_mod(a, b, p):
    return _poly_divmod(a, b, p)[1]


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(a, e, mod, p):
    result = [1]
    base = _poly_mod(a, mod, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), mod, p)
        base = _poly_mod(_poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible(f, p):
    """Ben-Or test: f has no factor in common with x^(p^k) - x for k <= deg/2."""
    f = _trim(list(f))
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(deg // 2):
        xp = _poly_powmod(xp, p, f, p)
        g = _poly_gcd(f, _poly_sub(xp, x, p), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p, degree):
    """Lexicographically smallest monic irreducible polynomial of given degree.

    Candidates are scanned by the code of their lower coefficients, the same
    order used for field elements.
    """
    for code in range(p ** degree):
        low = _digits(code, p, degree)
        f = low + [1]
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _digits(code, p, length):
    out = []
    for _ in range(length):
        code, c = divmod(code, p)
        out.append(c)
    return out


class FieldTower:
    """The ambient field F_{q^L} with q = p^d, holding every level n | L.

    Immutable after construction.
    """

    def __init__(self, p, d, levels, size_bound=None):
        if not isinstance(p, int) or not isprime(p):
            raise InputError(f"p = {p} is not prime")
        if d < 1:
            raise InputError("d must be positive")
        levels = sorted(set(int(n) for n in levels))
        if not levels or levels[0] < 1:
            raise InputError("levels must be a nonempty list of positive integers")
        self.p = p
        self.d = d
        self.q = p ** d
        self.L = lcm(*levels)
        self.degree = d * self.L
        self.size = p ** self.degree
        if size_bound is not None and self.size > size_bound:
            raise SizeBoundExceeded(f"ambient field F_{p}^{self.degree}",
                                    self.size, size_bound)
        self.level_set = levels
        self.modulus = smallest_irreducible(p, self.degree)
        if not is_irreducible(self.modulus, p):  # pragma: no cover
            raise AssertionError("modulus failed irreducibility test")
        self._tables = self.size <= TABLE_LIMIT
        if self._tables:
            self._build_tables()

    def __repr__(self):
        return f"FieldTower(p={self.p}, d={self.d}, L={self.L})"

    # -- conversions -------------------------------------------------------

    def coefficients(self, x):
        return _digits(x, self.p, self.degree)

    def element(self, coefficients):
        coeffs = _poly_mod([c % self.p for c in coefficients], self.modulus, self.p)
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @cached_property
    def generator(self):
        """The class of x in the ambient field."""
        return self.element([0, 1])

    def from_int(self, k):
        return k % self.p

    # -- slow reference arithmetic ---------------------------------------

    def _mul_slow(self, a, b):
        prod = _poly_mul(self.coefficients(a), self.coefficients(b), self.p)
        return self.element(prod)

    def _add_slow(self, a, b):
        p = self.p
        out, i = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * i
            i *= p
        return out

    def _pow_slow(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def _build_tables(self):
        order = self.size - 1
        primes = list(factorint(order)) if order > 1 else []
        g = None
        for cand in range(1, self.size):
            if all(self._pow_slow(cand, order // ell) != 1 for ell in primes):
                g = cand
                break
        exp = [0] * order
        log = [None] * self.size
        x = 1
        for k in range(order):
            exp[k] = x
            log[x] = k
            x = self._mul_slow(x, g)
        self._primitive = g
        self._exp = exp
        self._log = log
        # zech[k] = log(1 + g^k), None when 1 + g^k = 0
        zech = [None] * order
        for k in range(order):
            s = self._add_slow(1, exp[k])
            zech[k] = log[s] if s else None
        self._zech = zech
        self._order = order
        self._neg_shift = 0 if self.p == 2 else order // 2

    # -- field operations -------------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if not self._tables:
            return self._add_slow(a, b)
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._order]
        if z is None:
            return 0
        return self._exp[(la + z) % self._order]

    def neg(self, a):
        if self.p == 2 or not a:
            return a
        if not self._tables:
            return self._mul_slow(a, self.p - 1)
        return self._exp[(self._log[a] + self._neg_shift) % self._order]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return 0
        if not self._tables:
            return self._mul_slow(a, b)
        return self._exp[(self._log[a] + self._log[b]) % self._order]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in finite field")
        if not self._tables:
            return self._pow_slow(a, self.size - 2)
        return self._exp[(-self._log[a]) % self._order]

    def power(self, a, e):
        if e == 0:
            return 1
        if not a:
            return 0
        if not self._tables:
            if e < 0:
                a, e = self.inv(a), -e
            return self._pow_slow(a, e)
        return self._exp[(self._log[a] * e) % self._order]

    def scalar(self, k, a):
        """Integer multiple k * a."""
        return self.mul(self.from_int(k), a)

    def frobenius(self, x, times=1):
        """x -> x^(q^times); times is taken modulo L."""
        times %= self.L
        if not times or not x:
            return x
        if self._tables:
            e = pow(self.q, times, self._order)
            return self._exp[(self._log[x] * e) % self._order]
        return self._pow_slow(x, self.q ** times)

    def at_level(self, x, n):
        return self.frobenius(x, n) == x

    def field_trace(self, x, n, m):
        """tr_{n,m}(x) = x + x^(q^m) + ... + x^(q^(n-m)) for x in F_{q^n}."""
        self._check_divides(m, n)
        self._check_level(n)
        if not self.at_level(x, n):
            raise LevelMismatch(f"element {x} does not lie at level {n}")
        out = 0
        y = x
        for _ in range(n // m):
            out = self.add(out, y)
            y = self.frobenius(y, m)
        return out

    def prime_trace(self, x, n):
        """Trace from F_{q^n} down to F_p of x in F_{q^n}, as an int in [0, p).

        This is the exponent of the fixed additive character of F_{q^n}.
        """
        cache = self.__dict__.setdefault("_ptrace_cache", {})
        table = cache.get(n)
        if table is None:
            table = cache[n] = {}
        val = table.get(x)
        if val is None:
            out = 0
            y = x
            for _ in range(self.d * n):
                out = self.add(out, y)
                y = self.power(y, self.p)
            if out >= self.p:  # pragma: no cover
                raise AssertionError(f"{x} is not at level {n}")
            val = table[x] = out
        return val

    # -- levels -----------------------------------------------------------

    def _check_level(self, n):
        if n < 1 or self.L % n:
            raise LevelMismatch(f"level {n} does not divide L = {self.L}")

    @staticmethod
    def _check_divides(m, n):
        if m < 1 or n % m:
            raise LevelMismatch(f"{m} does not divide {n}")

    def level_basis(self, n):
        """An F_p-basis of F_{q^n} inside the ambient field (reduced echelon)."""
        self._check_level(n)
        return self._level_basis(n)

    def _level_basis(self, n):
        cache = self.__dict__.setdefault("_basis_cache", {})
        if n in cache:
            return cache[n]
        p, D = self.p, self.degree
        # matrix of F^n - id on the coordinate space, columns indexed by x^j
        cols = []
        for j in range(D):
            xj = p ** j
            img = self.sub(self.frobenius(xj, n), xj)
            cols.append(self.coefficients(img))
        rows = [[cols[j][i] for j in range(D)] for i in range(D)]
        kernel = nullspace_mod_p(rows, p)
        basis = [sum(c * p ** i for i, c in enumerate(v)) for v in kernel]
        basis.sort()
        if len(basis) != self.d * n:  # pragma: no cover
            raise AssertionError("fixed subfield has wrong dimension")
        cache[n] = basis
        return basis

    def enumerate_level(self, n):
        """All q^n elements of F_{q^n}, sorted by code."""
        self._check_level(n)
        cache = self.__dict__.setdefault("_enum_cache", {})
        if n not in cache:
            elems = [0]
            for b in self._level_basis(n):
                multiples = [self.scalar(k, b) for k in range(self.p)]
                elems = [self.add(e, t) for e in elems for t in multiples]
            cache[n] = tuple(sorted(elems))
        return cache[n]

    @cached_property
    def base_generator(self):
        """Image in the ambient field of x from F_q = F_p[x]/(smallest irreducible).

        Polynomial coordinates of F_q scalars (as used by algebra specs) are
        interpreted through this element.
        """
        if self.d == 1:
            return 1
        f = smallest_irreducible(self.p, self.d)
        for x in self.enumerate_level(1):
            val = 0
            for c in reversed(f):
                val = self.add(self.mul(val, x), self.from_int(c))
            if val == 0:
                return x
        raise AssertionError("no root of the base modulus")  # pragma: no cover

    def base_scalar(self, coeffs):
        """F_q element from its polynomial coordinates [c_0, ..., c_{d-1}]."""
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        if len(coeffs) > self.d:
            raise InputError(f"coefficient {coeffs} has more than d = {self.d} entries")
        out, power = 0, 1
        for c in coeffs:
            out = self.add(out, self.mul(self.from_int(c), power))
            power = self.mul(power, self.base_generator)
        return out

    def base_coordinates(self, x):
        """Inverse of base_scalar for x in F_q."""
        if self.d == 1:
            return [x]
        for code in range(self.q):
            coeffs = _digits(code, self.p, self.d)
            if self.base_scalar(coeffs) == x:
                return coeffs
        raise LevelMismatch(f"{x} is not in F_q")

    def describe(self):
        return {"p": self.p, "d": self.d, "q": self.q, "L": self.L,
                "modulus": list(self.modulus)}


def nullspace_mod_p(rows, p):
    """Basis of {v : rows . v = 0} over F_p, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fc]) % p
        basis.append(v)
    return basis


def build_tower(p, d, levels, size_bound=None):
    return FieldTower(p, d, levels, size_bound=size_bound)
