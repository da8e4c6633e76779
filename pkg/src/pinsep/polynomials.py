"""Exact sparse multivariate polynomials and rational functions over F_p.

Everything here is immutable after construction and all operations are
pure functions, so values can be shared freely across threads.

Polynomials are sparse term maps {exponent tuple: nonzero residue mod p}
with a graded-lexicographic term order used for all deterministic choices
(leading terms, rendering, pivoting).  Rational functions are kept in a
canonical form: gcd(num, den) = 1 and den monic in graded-lex, so equality
is structural.
"""

from __future__ import annotations

SMALL_PRIMES = (2, 3, 5, 7)


class Fp:
    """A residue modulo a small prime p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        if p not in SMALL_PRIMES:
            raise ValueError(f"p must be one of {SMALL_PRIMES}, got {p}")
        self.value = value % p
        self.p = p

    def _check(self, other: "Fp") -> None:
        if self.p != other.p:
            raise ValueError("mixed characteristics")

    def __add__(self, other):
        self._check(other)
        return Fp(self.value + other.value, self.p)

    def __sub__(self, other):
        self._check(other)
        return Fp(self.value - other.value, self.p)

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __mul__(self, other):
        self._check(other)
        return Fp(self.value * other.value, self.p)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return Fp(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __eq__(self, other):
        return isinstance(other, Fp) and self.p == other.p and self.value == other.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"Fp({self.value}, p={self.p})"


def grlex_key(exp: tuple) -> tuple:
    """Sort key for graded lexicographic order (total degree first)."""
    return (sum(exp), exp)


class MultiPoly:
    """Sparse multivariate polynomial over F_p.

    terms maps exponent tuples (length nvars, entries >= 0) to residues in
    [1, p).  Zero coefficients are never stored.
    """

    __slots__ = ("p", "nvars", "terms", "_hash")

    def __init__(self, p: int, nvars: int, terms=None):
        if p not in SMALL_PRIMES:
            raise ValueError(f"p must be one of {SMALL_PRIMES}, got {p}")
        self.p = p
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                c %= p
                if c:
                    if len(e) != nvars:
                        raise ValueError("exponent tuple of wrong length")
                    clean[e] = c
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, p, nvars):
        return cls(p, nvars)

    @classmethod
    def const(cls, p, nvars, c):
        return cls(p, nvars, {(0,) * nvars: c % p})

    @classmethod
    def one(cls, p, nvars):
        return cls.const(p, nvars, 1)

    @classmethod
    def monomial(cls, p, nvars, exp, c=1):
        return cls(p, nvars, {tuple(exp): c % p})

    @classmethod
    def variable(cls, p, nvars, i):
        exp = [0] * nvars
        exp[i] = 1
        return cls.monomial(p, nvars, tuple(exp))

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and sum(next(iter(self.terms))) == 0)

    def is_one(self):
        return self.terms == {(0,) * self.nvars: 1}

    def const_value(self):
        if not self.terms:
            return 0
        return self.terms[(0,) * self.nvars]

    def is_monomial(self):
        return len(self.terms) == 1

    # -- term access -----------------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables_used(self):
        used = set()
        for e in self.terms:
            for i, v in enumerate(e):
                if v:
                    used.add(i)
        return used

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.p != other.p:
            raise ValueError("mixed characteristics")
        if self.nvars != other.nvars:
            raise VariableCountMismatch(
                f"variable counts differ: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        p = self.p
        for e, c in other.terms.items():
            s = (terms.get(e, 0) + c) % p
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = MultiPoly.__new__(MultiPoly)
        out.p, out.nvars, out.terms, out._hash = p, self.nvars, terms, None
        return out

    def __neg__(self):
        p = self.p
        terms = {e: p - c for e, c in self.terms.items()}
        out = MultiPoly.__new__(MultiPoly)
        out.p, out.nvars, out.terms, out._hash = p, self.nvars, terms, None
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        p = self.p
        if not self.terms or not other.terms:
            return MultiPoly.zero(p, self.nvars)
        # multiply with the smaller factor outermost
        a, b = (self.terms, other.terms)
        if len(a) > len(b):
            a, b = b, a
        acc: dict = {}
        for e, c in a.items():
            for f, d in b.items():
                g = tuple(x + y for x, y in zip(e, f))
                s = (acc.get(g, 0) + c * d) % p
                if s:
                    acc[g] = s
                else:
                    acc.pop(g, None)
        out = MultiPoly.__new__(MultiPoly)
        out.p, out.nvars, out.terms, out._hash = p, self.nvars, acc, None
        return out

    def scale(self, c: int):
        """Multiply by the scalar c mod p."""
        c %= self.p
        if c == 0:
            return MultiPoly.zero(self.p, self.nvars)
        if c == 1:
            return self
        terms = {e: (v * c) % self.p for e, v in self.terms.items()}
        out = MultiPoly.__new__(MultiPoly)
        out.p, out.nvars, out.terms, out._hash = self.p, self.nvars, terms, None
        return out

    def mul_monomial(self, exp: tuple, c: int = 1):
        c %= self.p
        if c == 0:
            return MultiPoly.zero(self.p, self.nvars)
        terms = {}
        for e, v in self.terms.items():
            terms[tuple(x + y for x, y in zip(e, exp))] = (v * c) % self.p
        out = MultiPoly.__new__(MultiPoly)
        out.p, out.nvars, out.terms, out._hash = self.p, self.nvars, terms, None
        return out

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        if n == 0:
            return MultiPoly.one(self.p, self.nvars)
        # write n in base p and use f^(p^i) = f with exponents scaled by p^i,
        # which is exact in characteristic p over F_p
        result = None
        base = self
        digits = []
        m = n
        while m:
            digits.append(m % self.p)
            m //= self.p
        for i, d in enumerate(digits):
            if d == 0:
                continue
            block = base.scale_exponents(self.p ** i)
            piece = block
            for _ in range(d - 1):
                piece = piece * block
            result = piece if result is None else result * piece
        return result

    def scale_exponents(self, k: int):
        """Substitute x_i -> x_i^k; for k = p^j this equals the p^j-th power."""
        if k == 1:
            return self
        terms = {tuple(x * k for x in e): c for e, c in self.terms.items()}
        out = MultiPoly.__new__(MultiPoly)
        out.p, out.nvars, out.terms, out._hash = self.p, self.nvars, terms, None
        return out

    def exponents_divisible(self, k: int) -> bool:
        return all(x % k == 0 for e in self.terms for x in e)

    def divide_exponents(self, k: int):
        terms = {tuple(x // k for x in e): c for e, c in self.terms.items()}
        if any(x % k for e in self.terms for x in e):
            raise ValueError("exponents not divisible")
        out = MultiPoly.__new__(MultiPoly)
        out.p, out.nvars, out.terms, out._hash = self.p, self.nvars, terms, None
        return out

    def deriv(self, i: int):
        """Partial derivative with respect to variable i."""
        if not 0 <= i < self.nvars:
            raise ValueError("variable index out of range")
        p = self.p
        terms = {}
        for e, c in self.terms.items():
            m = (c * e[i]) % p
            if m:
                f = list(e)
                f[i] -= 1
                terms[tuple(f)] = m
        return MultiPoly(p, self.nvars, terms)

    # -- comparison / rendering ------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.p == other.p
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.nvars, tuple(self.sorted_terms())))
        return self._hash

    def render(self, names=None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(names[i])
                elif k > 1:
                    factors.append(f"{names[i]}^{k}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return "+".join(parts)

    def __repr__(self):
        return f"MultiPoly(p={self.p}, {self.render()})"


class VariableCountMismatch(ValueError):
    pass


# ----------------------------------------------------------------------
# Division and gcd.
#
# Exact division uses the ordinary one-divisor division algorithm in
# graded-lex order.  The multivariate gcd is the classical recursive
# scheme: strip monomial content, pick the highest active variable as the
# main one, split into content and primitive part, and run a subresultant
# pseudo-remainder sequence on the primitive parts.  All choices are
# deterministic and results are normalized monic in graded-lex.
# ----------------------------------------------------------------------


def mp_divmod(f: MultiPoly, g: MultiPoly):
    """Quotient and remainder of f by the single divisor g (graded-lex)."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    p, nv = f.p, f.nvars
    q = MultiPoly.zero(p, nv)
    r = MultiPoly.zero(p, nv)
    ge, gc = g.leading()
    gcinv = pow(gc, p - 2, p)
    work = f
    while not work.is_zero():
        we, wc = work.leading()
        exp = tuple(a - b for a, b in zip(we, ge))
        if min(exp) >= 0:
            coeff = (wc * gcinv) % p
            mono = MultiPoly.monomial(p, nv, exp, coeff)
            q = q + mono
            work = work - g.mul_monomial(exp, coeff)
        else:
            mono = MultiPoly.monomial(p, nv, we, wc)
            r = r + mono
            work = work - mono
    return q, r


def mp_exact_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    q, r = mp_divmod(f, g)
    if not r.is_zero():
        raise ArithmeticError("division was expected to be exact")
    return q


def _monomial_content(f: MultiPoly) -> tuple:
    mins = None
    for e in f.terms:
        mins = e if mins is None else tuple(min(a, b) for a, b in zip(mins, e))
    return mins or (0,) * f.nvars


def _shift_down(f: MultiPoly, mono: tuple) -> MultiPoly:
    terms = {tuple(a - b for a, b in zip(e, mono)): c for e, c in f.terms.items()}
    return MultiPoly(f.p, f.nvars, terms)


def _to_univariate(f: MultiPoly, i: int):
    """Recursive dense view: list of MultiPoly coefficients in var i, low to high."""
    d = f.degree_in(i)
    coeffs = [dict() for _ in range(d + 1)]
    for e, c in f.terms.items():
        rest = list(e)
        k = rest[i]
        rest[i] = 0
        coeffs[k][tuple(rest)] = c
    return [MultiPoly(f.p, f.nvars, t) for t in coeffs]


def _from_univariate(coeffs, i: int, p: int, nvars: int) -> MultiPoly:
    terms = {}
    for k, poly in enumerate(coeffs):
        for e, c in poly.terms.items():
            f = list(e)
            f[i] += k
            terms[tuple(f)] = c
    return MultiPoly(p, nvars, terms)


def _uni_trim(u):
    while u and u[-1].is_zero():
        u.pop()
    return u


def _uni_prem(a, b, p, nv):
    """Pseudo-remainder of dense univariate a by b over the polynomial ring."""
    a = list(a)
    while len(a) >= len(b) and a:
        lc_a = a[-1]
        lc_b = b[-1]
        shift = len(a) - len(b)
        a = [lc_b * c for c in a]
        for j, bc in enumerate(b):
            a[shift + j] = a[shift + j] - lc_a * bc
        _uni_trim(a)
    return a


def _uni_content(a):
    g = None
    for c in a:
        if c.is_zero():
            continue
        g = c if g is None else mp_gcd(g, c)
        if g.is_one():
            return g
    return g


def _gcd_single_var(f: MultiPoly, g: MultiPoly, i: int) -> MultiPoly:
    """Euclid for polynomials that only involve variable i (base case)."""
    p, nv = f.p, f.nvars

    def to_list(h):
        d = h.degree_in(i)
        out = [0] * (d + 1)
        for e, c in h.terms.items():
            out[e[i]] = c
        return out

    a, b = to_list(f), to_list(g)
    while b and any(b):
        inv = pow(b[-1], p - 2, p)
        b = [(c * inv) % p for c in b]
        while len(a) >= len(b):
            if a[-1]:
                lc = a[-1]
                shift = len(a) - len(b)
                for j, bc in enumerate(b):
                    a[shift + j] = (a[shift + j] - lc * bc) % p
            while a and a[-1] == 0:
                a.pop()
            if not a:
                break
        a, b = b, a
    inv = pow(a[-1], p - 2, p)
    terms = {}
    for k, c in enumerate(a):
        if c:
            e = [0] * nv
            e[i] = k
            terms[tuple(e)] = (c * inv) % p
    return MultiPoly(p, nv, terms)


def _make_monic(f: MultiPoly) -> MultiPoly:
    if f.is_zero():
        return f
    _, c = f.leading()
    return f.scale(pow(c, f.p - 2, f.p))


def mp_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic gcd via subresultant PRS on the recursive dense form."""
    if f.p != g.p or f.nvars != g.nvars:
        raise ValueError("gcd of incompatible polynomials")
    p, nv = f.p, f.nvars
    if f.is_zero():
        return _make_monic(g)
    if g.is_zero():
        return _make_monic(f)
    mono_f = _monomial_content(f)
    mono_g = _monomial_content(g)
    common = tuple(min(a, b) for a, b in zip(mono_f, mono_g))
    f = _shift_down(f, mono_f)
    g = _shift_down(g, mono_g)
    core = _gcd_core(f, g)
    return _make_monic(core.mul_monomial(common))


def _gcd_core(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    p, nv = f.p, f.nvars
    if f.is_const() or g.is_const():
        return MultiPoly.one(p, nv)
    if f == g:
        return f
    used = f.variables_used() | g.variables_used()
    if len(used) == 1:
        return _gcd_single_var(f, g, used.pop())
    i = max(used)
    uf = _to_univariate(f, i)
    ug = _to_univariate(g, i)
    cont_f = _uni_content(uf)
    cont_g = _uni_content(ug)
    pf = [mp_exact_div(c, cont_f) for c in uf]
    pg = [mp_exact_div(c, cont_g) for c in ug]
    cont = _gcd_core(cont_f, cont_g)
    prim = _prs(pf, pg, p, nv)
    prim_content = _uni_content(prim)
    prim = [mp_exact_div(c, prim_content) for c in prim]
    return cont * _from_univariate(prim, i, p, nv)


def _prs(a, b, p, nv):
    """Primitive pseudo-remainder sequence; returns the last nonzero term.

    Each pseudo-remainder is divided by its full content, so every
    division is exact by construction; degrees strictly decrease, and the
    last nonzero term is the gcd of the primitive inputs up to content.
    """
    one = MultiPoly.one(p, nv)
    while True:
        r = _uni_prem(a, b, p, nv)
        if not r:
            return b
        if len(b) == 1:
            return [one]
        cont = _uni_content(r)
        if not cont.is_one():
            r = [mp_exact_div(c, cont) for c in r]
        a, b = b, r


# ----------------------------------------------------------------------
# Rational functions.
# ----------------------------------------------------------------------


class RatFunc:
    """Canonical fraction num/den of MultiPoly: reduced, den monic, den != 0."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MultiPoly, den: MultiPoly, _normalized=False):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            num, den = _rf_normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ------------------------------------------------

    @classmethod
    def of_poly(cls, num: MultiPoly):
        return cls(num, MultiPoly.one(num.p, num.nvars), _normalized=True)

    @classmethod
    def const(cls, p, nvars, c):
        return cls.of_poly(MultiPoly.const(p, nvars, c))

    @classmethod
    def zero(cls, p, nvars):
        return cls.of_poly(MultiPoly.zero(p, nvars))

    @classmethod
    def one(cls, p, nvars):
        return cls.of_poly(MultiPoly.one(p, nvars))

    @classmethod
    def monomial(cls, p, nvars, exp, c=1):
        return cls.of_poly(MultiPoly.monomial(p, nvars, exp, c))

    # -- predicates ---------------------------------------------------

    @property
    def p(self):
        return self.num.p

    @property
    def nvars(self):
        return self.num.nvars

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_const(self):
        return self.num.is_const() and self.den.is_one()

    def is_poly(self):
        return self.den.is_one()

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den.is_one() and other.den.is_one():
            return RatFunc.of_poly(self.num + other.num)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        # shared denominator factors are the norm during elimination;
        # splitting them off first keeps the reduction gcds small, and the
        # residual common factor of the sum can only divide the shared part
        g = mp_gcd(self.den, other.den)
        if g.is_one():
            return RatFunc(self.num * other.den + other.num * self.den,
                           self.den * other.den)
        da = mp_exact_div(self.den, g)
        db = mp_exact_div(other.den, g)
        num = self.num * db + other.num * da
        if num.is_zero():
            return RatFunc.zero(self.p, self.nvars)
        h = mp_gcd(num, g)
        den = self.den * db
        if not h.is_one():
            num = mp_exact_div(num, h)
            den = mp_exact_div(den, h)
        _, lc = den.leading()
        if lc != 1:
            inv = pow(lc, self.p - 2, self.p)
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc(num, den, _normalized=True)

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.p, self.nvars)
        if self.is_one():
            return other
        if other.is_one():
            return self
        if self.den.is_one() and other.den.is_one():
            return RatFunc.of_poly(self.num * other.num)
        # cross-cancel before multiplying to keep the factors small
        a, b = self.num, other.den
        g1 = mp_gcd(a, b)
        if not g1.is_one():
            a, b = mp_exact_div(a, g1), mp_exact_div(b, g1)
        c, d = other.num, self.den
        g2 = mp_gcd(c, d)
        if not g2.is_one():
            c, d = mp_exact_div(c, g2), mp_exact_div(d, g2)
        num = a * c
        den = b * d
        _, lc = den.leading()
        if lc != 1:
            inv = pow(lc, self.p - 2, self.p)
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc(num, den, _normalized=True)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inverse()

    def scale(self, c: int):
        return RatFunc(self.num.scale(c), self.den, _normalized=c % self.p != 0)

    def deriv(self, i: int):
        """Partial derivative (quotient rule)."""
        if self.den.is_one():
            return RatFunc.of_poly(self.num.deriv(i))
        num = self.num.deriv(i) * self.den - self.num * self.den.deriv(i)
        return RatFunc(num, self.den * self.den)

    def scale_exponents(self, k: int):
        """Substitute x_i -> x_i^k in num and den (Frobenius for k = p^j)."""
        return RatFunc(self.num.scale_exponents(k), self.den.scale_exponents(k),
                       _normalized=True)

    def exponents_divisible(self, k: int) -> bool:
        return self.num.exponents_divisible(k) and self.den.exponents_divisible(k)

    def divide_exponents(self, k: int):
        # for a reduced fraction, membership in F_p(x^k) with k a p-power is
        # exactly "all exponents of num and den divisible by k"
        return RatFunc(self.num.divide_exponents(k), self.den.divide_exponents(k))

    # -- comparison / rendering ------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, RatFunc) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def render(self, names=None) -> str:
        if self.den.is_one():
            return self.num.render(names)
        num = self.num.render(names)
        den = self.den.render(names)
        if len(self.num.terms) > 1:
            num = f"({num})"
        if len(self.den.terms) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFunc(p={self.p}, {self.render()})"


def _rf_normalize(num: MultiPoly, den: MultiPoly):
    if num.is_zero():
        return num, MultiPoly.one(num.p, num.nvars)
    if not den.is_const():
        g = mp_gcd(num, den)
        if not g.is_one():
            num = mp_exact_div(num, g)
            den = mp_exact_div(den, g)
    _, lc = den.leading()
    if lc != 1:
        inv = pow(lc, num.p - 2, num.p)
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den
