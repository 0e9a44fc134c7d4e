"""Dense integer polynomials (coefficient index = degree)."""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls([0] * k + [c])

    @classmethod
    def falling(cls, n: int) -> IntPolynomial:
        """z(z-1)...(z-n+1)."""
        p = cls([1])
        for i in range(n):
            p = p * cls([-i, 1])
        return p

    @classmethod
    def binomial_power(cls, a: int, n: int) -> IntPolynomial:
        """(z + a)^n."""
        return cls(comb(n, i) * a ** (n - i) for i in range(n + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self)

    def __add__(self, other):
        other = _lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-x for x in self.coeffs)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, z):
        acc = 0 * z
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def evaluate(self, z):
        """Horner evaluation; exact for int and Fraction arguments."""
        return self(z)

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def trailing_zeros(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def shift_down(self, k: int) -> IntPolynomial:
        """Divide by z^k (caller guarantees the low coefficients vanish)."""
        return IntPolynomial(self.coeffs[k:])

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPolynomial:
        g = self.content()
        if g == 0:
            return self
        if self.coeffs[-1] < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> IntPolynomial:
        return cls(int(c) for c in json.loads(text))


def _lift(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial([x])
    raise TypeError(f"cannot combine IntPolynomial with {type(x).__name__}")


def format_poly(p: IntPolynomial, var: str = "z") -> str:
    if not p.coeffs:
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            body = ("" if a == 1 else f"{a}*") + (var if k == 1 else f"{var}^{k}")
        terms.append((sign, body))
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return " ".join([head] + [f"{s} {b}" for s, b in terms[1:]])


def _divmod_q(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, y in enumerate(b):
            a[i + shift] -= f * y
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _to_int_primitive(c: Sequence[Fraction]) -> IntPolynomial:
    den = 1
    for x in c:
        den = den * x.denominator // gcd(den, x.denominator)
    return IntPolynomial(int(x * den) for x in c).primitive()


def _q_gcd(x: list[Fraction], y: list[Fraction]) -> list[Fraction]:
    while y:
        _, r = _divmod_q(x, y)
        x, y = y, r
    lead = x[-1]
    return [c / lead for c in x]


def _q_div(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    q, r = _divmod_q(a, b)
    if r:
        raise ArithmeticError("division is not exact")
    return q


def _q_deriv(a: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(a) if i]


def _q_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(max(len(a), len(b)))]
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Q with positive leading coefficient."""
    if not a.coeffs:
        return b.primitive()
    if not b.coeffs:
        return a.primitive()
    return _to_int_primitive(_q_gcd([Fraction(c) for c in a.coeffs], [Fraction(c) for c in b.coeffs]))


_PRIME = (1 << 61) - 1


def _gcd_degree_mod_p(a: Sequence[int], b: Sequence[int], p: int = _PRIME) -> int:
    """Degree of gcd(a, b) over GF(p); coefficient lists lowest degree first."""
    def trim(x):
        x = [c % p for c in x]
        while x and x[-1] == 0:
            x.pop()
        return x

    x, y = trim(a), trim(b)
    while y:
        inv = pow(y[-1], p - 2, p)
        while len(x) >= len(y):
            f = x[-1] * inv % p
            shift = len(x) - len(y)
            for i, c in enumerate(y):
                x[i + shift] = (x[i + shift] - f * c) % p
            while x and x[-1] == 0:
                x.pop()
        x, y = y, x
    return len(x) - 1


def is_squarefree(p: IntPolynomial) -> bool:
    """Sufficient modular test: a constant gcd(p, p') mod a prime not dividing the lead means squarefree over Q."""
    if p.degree < 2:
        return True
    if p[p.degree] % _PRIME == 0:
        return False
    return _gcd_degree_mod_p(p.coeffs, p.derivative().coeffs) == 0


def divide_linear(p: IntPolynomial, root: int) -> tuple[IntPolynomial, int]:
    """Strip (z - root)^m from p exactly; returns the cofactor and m."""
    m = 0
    coeffs = list(p.coeffs)
    while len(coeffs) > 1:
        # synthetic division from the top
        q = [0] * (len(coeffs) - 1)
        acc = 0
        for i in range(len(coeffs) - 1, 0, -1):
            acc = acc * root + coeffs[i]
            q[i - 1] = acc
        if acc * root + coeffs[0] != 0:
            break
        coeffs = q
        m += 1
    return IntPolynomial(coeffs), m


def squarefree_decomposition(p: IntPolynomial, small_roots: Sequence[int] = (0, 1, 2, 3)) -> list[tuple[IntPolynomial, int]]:
    """Pairwise coprime squarefree f_i with p = const * prod f_i^(m_i), as (f_i, m_i) pairs.

    Linear factors z - r for r in ``small_roots`` are split off by exact
    division first; if the rest passes the modular squarefree test it is
    returned whole, otherwise Yun's algorithm runs over Q.
    """
    if p.degree < 1:
        return []
    found: dict[int, list] = {}
    for r in small_roots:
        p, m = divide_linear(p, r)
        if m:
            found.setdefault(m, []).append(IntPolynomial([-r, 1]))
    rest = [] if p.degree < 1 else ([(p.primitive(), 1)] if is_squarefree(p) else _yun(p))
    for f, m in rest:
        found.setdefault(m, []).append(f)
    out = []
    for m in sorted(found):
        prod = IntPolynomial([1])
        for f in found[m]:
            prod = prod * f
        out.append((prod.primitive(), m))
    return out


def _yun(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    f = [Fraction(c) for c in p.coeffs]
    df = _q_deriv(f)
    a = _q_gcd(f, df)
    b = _q_div(f, a)
    c = _q_div(df, a)
    d = _q_sub(c, _q_deriv(b))
    out = []
    i = 1
    while len(b) > 1:
        g = _q_gcd(b, d) if d else [c_ / b[-1] for c_ in b]
        if len(g) > 1:
            out.append((_to_int_primitive(g), i))
        b = _q_div(b, g)
        c = _q_div(d, g) if d else []
        d = _q_sub(c, _q_deriv(b))
        i += 1
    return out
