"""Finitely generated purely inseparable subextensions K/k of an ambient level.

A Subfield is stored as a canonical reduced-echelon k-basis of sparse
vectors keyed by fractional monomials of its working level m: an element
of A_m = F_p(x^(1/p^m)) is uniquely a k-combination of the t-monomials
t^e with e in [0, p^m)^nu, where t_i = x_i^(1/p^m).  The full ambient
monomial basis is never materialized; only the monomials that actually
appear in a field's basis are touched.  The working level of a field is
the maximum level of its generators, which for canonical generators is
exactly o_1(K/k).

Construction closes the span under multiplication by the generators, so
every Subfield is an honest field.  Bases are computed once and cached
immutably; all query operations are read-only and parallel-safe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Echelon, intersect_spans, nullspace, vec_add_scaled
from .perfect import Context, PerfElem
from .polynomials import MultiPoly, RatFunc


class InternalInconsistency(AssertionError):
    """A structural invariant failed; indicates a bug, not bad input."""


# ----------------------------------------------------------------------
# Ambient vector embedding: PerfElem <-> sparse k-vector at a level.
# ----------------------------------------------------------------------


def to_vector(e: PerfElem, m: int) -> dict:
    """Coordinates of e over k in the t-monomial basis of A_m.

    Denominators are rationalized with den(t)^(p^m) = den read in x
    (exponent tuples unchanged), writing 1/den = den^(p^m - 1) / den_x;
    the power is assembled from Frobenius-scaled copies of den^(p-1), so
    it is a product of m small factors rather than a blind exponentiation.
    """
    ctx = e.ctx
    p = ctx.p
    q = p ** m
    body = e.body_at_level(m)
    num, den = body.num, body.den
    inv_den = None
    poly = num
    if not den.is_one():
        shift = p ** (m - e.level)
        block = e.body.den ** (p - 1)  # at the element's own minimal level
        for j in range(m):
            poly = poly * block.scale_exponents(shift * p ** j)
        # den(t)^(p^m): each t-term t^a maps to x^a, same term dict
        den_x = MultiPoly(p, ctx.nvars, dict(den.terms))
        inv_den = RatFunc.of_poly(den_x).inverse()
    vec: dict = {}
    for ex, c in poly.terms.items():
        carry = tuple(x // q for x in ex)
        rem = tuple(x % q for x in ex)
        coeff = RatFunc.monomial(p, ctx.nvars, carry, c)
        if inv_den is not None:
            coeff = coeff * inv_den
        prev = vec.get(rem)
        s = coeff if prev is None else prev + coeff
        if s.is_zero():
            vec.pop(rem, None)
        else:
            vec[rem] = s
    return vec


def from_vector(ctx: Context, vec: dict, m: int) -> PerfElem:
    """Inverse of to_vector: rebuild the element from level-m coordinates."""
    q = ctx.p ** m
    body = RatFunc.zero(ctx.p, ctx.nvars)
    for ex, c in sorted(vec.items()):
        mono = RatFunc.monomial(ctx.p, ctx.nvars, ex)
        body = body + c.scale_exponents(q) * mono
    return PerfElem(ctx, m, body)


def vec_mul(ctx: Context, m: int, a: dict, b: dict) -> dict:
    """Product of two level-m vectors; t-exponent overflow moves into k."""
    p = ctx.p
    q = p ** m
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for e, c in a.items():
        for f, d in b.items():
            g = tuple(x + y for x, y in zip(e, f))
            carry = tuple(x // q for x in g)
            rem = tuple(x % q for x in g)
            coeff = c * d
            if any(carry):
                coeff = coeff * RatFunc.monomial(p, ctx.nvars, carry)
            prev = out.get(rem)
            s = coeff if prev is None else prev + coeff
            if s.is_zero():
                out.pop(rem, None)
            else:
                out[rem] = s
    return out


def _lift_vec(vec: dict, factor: int) -> dict:
    if factor == 1:
        return vec
    return {tuple(x * factor for x in e): c for e, c in vec.items()}


def _log_p(n: int, p: int) -> int:
    log = 0
    while n > 1:
        if n % p:
            raise InternalInconsistency(f"dimension {n} is not a power of {p}")
        n //= p
        log += 1
    return log


@dataclass(frozen=True)
class TruncationField:
    """k_n = k^(1/p^n) ∩ K together with the cut level n."""

    n: int
    field: "Subfield"


class Subfield:
    """A finitely generated purely inseparable extension K/k, with basis."""

    def __init__(self, ctx, level, gens, echelon, *, _private=None):
        if _private is not _TOKEN:
            raise TypeError("use Subfield.span or the derived operations")
        self.ctx = ctx
        self.level = level
        self.gens = tuple(gens)
        self._echelon = echelon
        self.degree_log = _log_p(len(echelon), ctx.p)
        self._cache = {}

    # -- constructors ------------------------------------------------

    @classmethod
    def base(cls, ctx: Context) -> "Subfield":
        ech = Echelon()
        ech.insert({(0,) * ctx.nvars: RatFunc.one(ctx.p, ctx.nvars)})
        return cls(ctx, 0, (), ech, _private=_TOKEN)

    @classmethod
    def span(cls, ctx: Context, gens) -> "Subfield":
        """k(g_1, ..., g_r), built by iterated adjunction."""
        field = cls.base(ctx)
        gens = tuple(gens)
        for g in gens:
            field = field.adjoin(g)
        return cls(field.ctx, field.level, gens, field._echelon, _private=_TOKEN)

    def adjoin(self, e: PerfElem) -> "Subfield":
        """K(e): close the K-span under multiplication by e."""
        if e.ctx != self.ctx:
            raise ValueError("element from a different context")
        if e.is_zero() or self.member(e):
            return self
        ctx = self.ctx
        m = max(self.level, e.level)
        ctx.check_level(m)
        factor = ctx.p ** (m - self.level)
        ech = Echelon()
        rows = [_lift_vec(r, factor) for r in self._echelon.basis_rows()]
        for r in rows:
            ech.insert(r)
        gvec = to_vector(e, m)
        queue = list(rows)
        while queue:
            v = queue.pop(0)
            prod = vec_mul(ctx, m, v, gvec)
            if ech.insert(prod):
                queue.append(prod)
        return Subfield(ctx, m, self.gens + (e,), ech, _private=_TOKEN)

    @classmethod
    def _from_vectors(cls, ctx, level, vecs) -> "Subfield":
        """Internal: wrap vectors known to span a field (no re-closing)."""
        elems = tuple(from_vector(ctx, v, level) for v in vecs)
        m = max((e.level for e in elems), default=0)
        ech = Echelon()
        for e in elems:
            ech.insert(to_vector(e, m))
        return cls(ctx, m, elems, ech, _private=_TOKEN)

    # -- basic queries ------------------------------------------------

    @property
    def degree(self) -> int:
        return self.ctx.p ** self.degree_log

    def is_base(self) -> bool:
        return self.degree_log == 0

    def basis_vectors(self, m=None):
        m = self.level if m is None else m
        if m < self.level:
            raise ValueError("cannot present the basis below the working level")
        factor = self.ctx.p ** (m - self.level)
        return [_lift_vec(r, factor) for r in self._echelon.basis_rows()]

    def basis_elements(self):
        return [from_vector(self.ctx, v, self.level)
                for v in self._echelon.basis_rows()]

    def member(self, e: PerfElem) -> bool:
        if e.ctx != self.ctx:
            raise ValueError("element from a different context")
        if e.level > self.level:
            return False
        return self._echelon.member(to_vector(e, self.level))

    def contains_field(self, other: "Subfield") -> bool:
        if other.degree_log > self.degree_log:
            return False
        return all(self.member(g) for g in other.gens)

    def __eq__(self, other):
        if not isinstance(other, Subfield) or self.ctx != other.ctx:
            return NotImplemented
        return (self.degree_log == other.degree_log
                and self.contains_field(other))

    def __repr__(self):
        names = ", ".join(g.render() for g in self.gens) or "-"
        return f"Subfield(deg=p^{self.degree_log}, gens=[{names}])"

    # -- lattice operations ------------------------------------------------

    def compositum(self, other: "Subfield") -> "Subfield":
        self._check(other)
        return Subfield.span(self.ctx, self.gens + other.gens)

    def intersect(self, other: "Subfield") -> "Subfield":
        self._check(other)
        m = max(self.level, other.level)
        vecs = intersect_spans(self.basis_vectors(m), other.basis_vectors(m))
        if not vecs:
            raise InternalInconsistency("field intersection lost the unit")
        return Subfield._from_vectors(self.ctx, m, vecs)

    def frobenius_image(self, j: int) -> "Subfield":
        """k(K^(p^j)), spanned by the p^j-th powers of the generators."""
        if j < 0:
            raise ValueError("frobenius_image takes j >= 0; "
                             "use perfect_lift for roots")
        return Subfield.span(self.ctx, tuple(g.frob(j) for g in self.gens))

    def perfect_lift(self, n: int) -> "Subfield":
        """K^(1/p^n) = k(x^(1/p^n), g^(1/p^n)); degree grows by p^(nu*n)."""
        roots = tuple(self.ctx.root_of_variable(v, n) for v in self.ctx.variables)
        return Subfield.span(self.ctx, roots + tuple(g.frob(-n) for g in self.gens))

    def truncation(self, n: int) -> TruncationField:
        """k_n = K ∩ A_n, cut out by vanishing of coordinates outside A_n."""
        if n < 0:
            raise ValueError("truncation level must be nonnegative")
        if n >= self.level:
            return TruncationField(n, self)
        p = self.ctx.p
        step = p ** (self.level - n)
        rows = self._echelon.basis_rows()
        bad = sorted({e for r in rows for e in r if any(x % step for x in e)})
        eqs = []
        for key in bad:
            eq = {}
            for i, r in enumerate(rows):
                c = r.get(key)
                if c is not None:
                    eq[i] = c
            eqs.append(eq)
        combos = nullspace(eqs, len(rows), p, self.ctx.nvars)
        vecs = []
        for lam in combos:
            v: dict = {}
            for i, c in lam.items():
                v = vec_add_scaled(v, rows[i], c)
            vecs.append(v)
        field = Subfield._from_vectors(self.ctx, self.level, vecs)
        if field.level > n:
            raise InternalInconsistency("truncation left elements above the cut")
        return TruncationField(n, field)

    def linearly_disjoint(self, other: "Subfield") -> bool:
        """Linear disjointness over the intersection, by degree counting:
        [KL : k] * [K ∩ L : k] = [K : k] * [L : k].

        Disjointness over k itself is this plus K ∩ L = k (equivalently
        [KL : k] = [K : k] * [L : k] on the nose).
        """
        self._check(other)
        comp = self.compositum(other)
        inter = self.intersect(other)
        return (comp.degree_log + inter.degree_log
                == self.degree_log + other.degree_log)

    def rel_exponent(self, a: PerfElem) -> int:
        """o(a/K): least j with a^(p^j) in K (bounded by the level of a)."""
        for j in range(a.level + 1):
            if self.member(a.frob(j)):
                return j
        raise InternalInconsistency("element escaped its own level bound")

    def degree_log_over_lifted_base(self, n: int) -> int:
        """log_p [A_n(K) : A_n], computed as a rank over F_p(x^(1/p^n)).

        A_M is a free A_n-module on the t-monomials with exponents below
        p^(M-n); re-keying the basis accordingly turns the degree into a
        plain rank computation and never materializes A_n over k.
        """
        if n >= self.level:
            return 0
        p = self.ctx.p
        step = p ** (self.level - n)
        scale = p ** n
        ech = Echelon()
        for r in self._echelon.basis_rows():
            v: dict = {}
            for e, c in r.items():
                rem = tuple(x % step for x in e)
                carry = tuple(x // step for x in e)
                coeff = c.scale_exponents(scale)
                if any(carry):
                    coeff = coeff * RatFunc.monomial(p, self.ctx.nvars, carry)
                prev = v.get(rem)
                s = coeff if prev is None else prev + coeff
                if s.is_zero():
                    v.pop(rem, None)
                else:
                    v[rem] = s
            ech.insert(v)
        return _log_p(len(ech), p)

    def _check(self, other: "Subfield"):
        if self.ctx != other.ctx:
            raise ValueError("fields from different contexts")


_TOKEN = object()
