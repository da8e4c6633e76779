"""Finite-level invariants of purely inseparable extensions.

r-bases and the degree of irrationality, canonically ordered r-bases with
their exponent lists, defining equations, modularity (by the coefficient
criterion and by linear disjointness), equiexponentiality, relatively
perfect closure chains, U-tables, and the lower/upper parity lengths.

All procedures are deterministic: ties in the greedy r-base completion
are broken by generator index, and every linear solve uses the fixed
pivot rule of the linalg module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .linalg import InconsistentSystem, solve
from .perfect import PerfElem
from .subfields import InternalInconsistency, Subfield, to_vector


@dataclass(frozen=True)
class RBase:
    """An r-base of K/k; ordered variants carry the exponent list.

    For a canonically ordered r-base the exponents are the invariants
    o_1(K/k) >= o_2(K/k) >= ...; `defining` optionally maps (j, eps) to
    the coefficient of the eps-monomial in the j-th defining equation
    (1-based j, starting at j = 2).
    """

    elements: tuple
    exponents: tuple = None
    defining: dict = None

    def __len__(self):
        return len(self.elements)


# ----------------------------------------------------------------------
# r-bases and di
# ----------------------------------------------------------------------


def rbase_extract(K: Subfield) -> RBase:
    """Reduce the generators of K to an r-base of K/k (unordered).

    Walks the generators in order, keeping those outside the span of
    k(K^p) and the elements already kept; the incomplete-r-base theorem
    guarantees the result is an r-base, and its size is checked against
    log_p [K : k(K^p)].
    """
    current = K.frobenius_image(1)
    expected = K.degree_log - current.degree_log
    kept = []
    for g in K.gens:
        if not current.member(g):
            kept.append(g)
            current = current.adjoin(g)
    if len(kept) != expected:
        raise InternalInconsistency(
            f"r-base extraction found {len(kept)} elements, expected {expected}")
    return RBase(tuple(kept))


def rbase_complete(K: Subfield, B, G) -> RBase:
    """Complete the r-free family B to an r-base of K/k using members of G.

    B must be r-free over k(K^p), which is verified by the degree test
    [k(K^p)(B) : k(K^p)] = p^|B|; G must generate K over k(K^p).
    """
    B = tuple(B)
    G = tuple(G)
    base = K.frobenius_image(1)
    current = base
    for b in B:
        current = current.adjoin(b)
    if current.degree_log - base.degree_log != len(B):
        raise ValueError("B is not r-free over k(K^p) (degree test failed)")
    added = []
    for g in G:
        if not current.member(g):
            added.append(g)
            current = current.adjoin(g)
    if current.degree_log != K.degree_log:
        raise ValueError("G does not generate K over k(K^p)")
    return RBase(B + tuple(added))


def di(K: Subfield) -> int:
    """Degree of irrationality di(K/k) = log_p [K : k(K^p)]."""
    return K.degree_log - K.frobenius_image(1).degree_log


def canonical_rbase(K: Subfield, base: Subfield = None) -> RBase:
    """Greedy completion: repeatedly adjoin the generator of maximal
    relative exponent (ties broken by generator index).

    The resulting exponent list (o_1(K/base), o_2(K/base), ...) is
    independent of the choices; it is non-increasing by construction of
    the greedy maximum.  With `base` given, the exponents are those of
    the extension base(K)/base (K's generators must generate it).
    """
    if base is None and "canonical_rbase" in K._cache:
        return K._cache["canonical_rbase"]
    current = Subfield.base(K.ctx) if base is None else base
    target_log = K.degree_log if base is None else \
        current.compositum(K).degree_log
    elements = []
    exponents = []
    while True:
        best_e = 0
        best_g = None
        for g in K.gens:
            e = current.rel_exponent(g)
            if e > best_e:
                best_e, best_g = e, g
        if best_e == 0:
            break
        elements.append(best_g)
        exponents.append(best_e)
        current = current.adjoin(best_g)
    if current.degree_log != target_log:
        raise InternalInconsistency("greedy completion did not exhaust K")
    if any(exponents[i] < exponents[i + 1] for i in range(len(exponents) - 1)):
        raise InternalInconsistency("canonical exponent list increased")
    out = RBase(tuple(elements), tuple(exponents))
    if base is None:
        K._cache["canonical_rbase"] = out
    return out


def exponents_by_di(K: Subfield, s: int) -> int:
    """o_s(K/k) as inf{m : di(k(K^(p^m))/k) < s}; cross-check oracle.

    Returns 0 when s exceeds di(K/k), matching the convention o_i = 0
    for i past the r-base size.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    m = 0
    while True:
        if di(K.frobenius_image(m)) < s:
            return m
        m += 1


# ----------------------------------------------------------------------
# Defining equations and modularity
# ----------------------------------------------------------------------


def _lambda_exponents(exponents, j, p):
    """The exponent box for the j-th defining equation (1-based, j >= 2)."""
    ranges = [range(p ** (exponents[t] - exponents[j - 1]))
              for t in range(j - 1)]
    return [tuple(eps) for eps in itertools.product(*ranges)]


def defining_equations(K: Subfield, B: RBase) -> dict:
    """Coefficients C of alpha_j^(p^m_j) = sum_eps C[(j, eps)] * w_eps.

    w_eps runs over the monomials (alpha_1, ..., alpha_{j-1})^(p^m_j * eps)
    with eps in the box {0 <= eps_t < p^(m_t - m_j)}; the coefficients are
    the unique elements of k expressing the relation, solved exactly.
    """
    if B.exponents is None:
        raise ValueError("defining equations need an ordered r-base")
    p = K.ctx.p
    out = {}
    for j in range(2, len(B) + 1):
        m_j = B.exponents[j - 1]
        powers = [B.elements[t].frob(m_j) for t in range(j - 1)]
        rhs_elem = B.elements[j - 1].frob(m_j)
        monomials = []
        box = _lambda_exponents(B.exponents, j, p)
        for eps in box:
            w = K.ctx.one()
            for t, e_t in enumerate(eps):
                if e_t:
                    w = w * powers[t] ** e_t
            monomials.append(w)
        level = max([w.level for w in monomials] + [rhs_elem.level])
        cols = [to_vector(w, level) for w in monomials]
        rhs = to_vector(rhs_elem, level)
        try:
            coeffs = solve(cols, rhs, p, K.ctx.nvars)
        except (InconsistentSystem, ArithmeticError) as exc:
            raise InternalInconsistency(
                f"defining equation {j} has no unique solution: {exc}") from exc
        for eps, c in zip(box, coeffs):
            out[(j, eps)] = c
    return out


def is_modular(K: Subfield, method: str = "both"):
    """Modularity of K/k; returns (verdict, witness).

    criterion: every defining-equation coefficient C must lie in
    k ∩ K^(p^m_j), tested as C^(1/p^m_j) in K via the Frobenius
    isomorphism.  disjointness: for each 1 <= n <= o_1(K/k), K and
    k^(1/p^n) must be linearly disjoint over k_n, tested by the degree
    identity [k^(1/p^n)(K) : k^(1/p^n)] = [K : k_n] computed via ranks
    and degree ratios.  With method "both" the two verdicts must agree.
    """
    if method not in ("criterion", "disjointness", "both"):
        raise ValueError(f"unknown method {method!r}")
    results = {}
    if method in ("criterion", "both"):
        results["criterion"] = _modular_by_criterion(K)
    if method in ("disjointness", "both"):
        results["disjointness"] = _modular_by_disjointness(K)
    if method == "both":
        if results["criterion"][0] != results["disjointness"][0]:
            raise InternalInconsistency(
                f"modularity methods disagree on {K!r}: {results}")
        verdict, witness = results["criterion"]
        if not verdict and witness is None:
            witness = results["disjointness"][1]
        return verdict, witness
    return results[method]


def _modular_by_criterion(K: Subfield):
    B = canonical_rbase(K)
    eqs = defining_equations(K, B)
    names = K.ctx.variables
    for (j, eps), c in sorted(eqs.items()):
        if c.is_const():
            continue
        m_j = B.exponents[j - 1]
        root = PerfElem(K.ctx, 0, c).frob(-m_j)
        if not K.member(root):
            witness = {
                "method": "criterion",
                "j": j,
                "eps": eps,
                "coefficient": c.render(names),
                "reason": f"{c.render(names)} not in K^(p^{m_j})",
            }
            return False, witness
    return True, None


def _modular_by_disjointness(K: Subfield):
    for n in range(1, K.level + 1):
        lifted = K.degree_log_over_lifted_base(n)
        relative = K.degree_log - K.truncation(n).field.degree_log
        if lifted != relative:
            witness = {
                "method": "disjointness",
                "n": n,
                "reason": (f"[k^(1/p^{n})(K) : k^(1/p^{n})] = p^{lifted} "
                           f"but [K : k_{n}] = p^{relative}"),
            }
            return False, witness
    return True, None


def is_equiexponential(K: Subfield):
    """(verdict, e): K/k equiexponential of exponent e.

    Equivalent to the canonical exponent list being constant, i.e. the
    degree test [K : k] = p^(e * di) with e = o_1(K/k).
    """
    B = canonical_rbase(K)
    if not B.elements:
        return True, 0
    e = B.exponents[0]
    verdict = all(m == e for m in B.exponents)
    degree_test = K.degree_log == e * len(B)
    if verdict != degree_test:
        raise InternalInconsistency("equiexponential degree test disagrees")
    return (verdict, e) if verdict else (False, None)


# ----------------------------------------------------------------------
# Relatively perfect chain
# ----------------------------------------------------------------------


def rp_chain(K: Subfield):
    """The descending chain k(K^p) ⊇ k(K^(p^2)) ⊇ ... down to rp(K/k).

    The chain is returned from k(K^p) through the first repeated term
    (the stabilization witness); for finite-exponent K the final term is
    always k.  For K = k the chain is just [k].
    """
    chain = []
    prev = K
    j = 1
    while True:
        current = K.frobenius_image(j)
        chain.append(current)
        if current.degree_log == prev.degree_log:
            break
        prev = current
        j += 1
    return chain


def di_decomposition_check(K: Subfield) -> bool:
    """Consistency assertion di(K/k) = di(K/k(K^p)) for finite K.

    At finite exponent rp(K/k) = k, so the general decomposition of di
    through the relatively perfect closure reduces to this identity; the
    left side is computed constructively (r-base extraction), the right
    side by degree ratio.
    """
    constructive = len(rbase_extract(K))
    ratio = di(K)
    return constructive == ratio


# ----------------------------------------------------------------------
# U-tables
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class UTable:
    """U[s][j] = j - o_s(k_j/k) for 1 <= s <= s_max, 1 <= j <= horizon.

    Boundedness of a row is unknowable at a finite horizon, so the table
    only reports per-row sups at the horizon plus which rows were still
    growing at the last step; ilqm_lower_bound is the first such row (or
    None), and e_at_horizon the sup over the rows that look bounded.
    """

    horizon: int
    s_max: int
    entries: tuple          # entries[s-1][j-1]
    row_sups: tuple
    growing_rows: tuple     # rows with U[s][horizon] > U[s][horizon-1]
    ilqm_lower_bound: int
    e_at_horizon: int

    def row(self, s):
        return self.entries[s - 1]


def u_table(family, horizon: int, s_max: int) -> UTable:
    """Tabulate U_s^j on the truncation fields of a tower family."""
    exps = {}
    for j in range(1, horizon + 1):
        k_j = family.truncation_field(j, horizon)
        exps[j] = canonical_rbase(k_j).exponents
    entries = []
    for s in range(1, s_max + 1):
        row = []
        for j in range(1, horizon + 1):
            o_s = exps[j][s - 1] if s <= len(exps[j]) else 0
            row.append(j - o_s)
        for a, b in zip(row, row[1:]):
            if b < a:
                raise InternalInconsistency(
                    f"U-table row {s} decreased: {row}")
        entries.append(tuple(row))
    row_sups = tuple(max(row) for row in entries)
    growing = tuple(s for s in range(1, s_max + 1)
                    if horizon >= 2 and entries[s - 1][-1] > entries[s - 1][-2])
    ilqm = growing[0] if growing else None
    bounded_sups = [row_sups[s - 1] for s in range(1, s_max + 1)
                    if s not in growing]
    e_at_horizon = max(bounded_sups) if bounded_sups else 0
    return UTable(horizon, s_max, tuple(entries), row_sups, growing,
                  ilqm, e_at_horizon)


# ----------------------------------------------------------------------
# Parity lengths
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ParityLengths:
    """Lower and upper parity lengths of n with their halving sequences.

    Invariants: 2^(lpi-1) <= n < 2^lpi, 2^(lps-2) < n <= 2^(lps-1),
    and lps - lpi is 0 exactly when n is a power of two, else 1.
    """

    n: int
    lpi: int
    lps: int
    seq_lower: tuple
    seq_upper: tuple


def parity_lengths(n: int) -> ParityLengths:
    """Evaluate both halving recurrences for n >= 1.

    Lower: n_1 = n, n_{s+1} = floor(n_s / 2), length = first index with
    value 1.  Upper: n'_1 = n rounded up to even, n'_{s+1} = round-up
    half, length = first index with value 1; n = 1 is the degenerate case
    where the sequence starts at 1 already, keeping the power-of-two
    equivalence lps(n) = lpi(n) exact.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    lower = [n]
    while lower[-1] != 1:
        lower.append(lower[-1] // 2)
    if n == 1:
        upper = [1]
    else:
        upper = [n if n % 2 == 0 else n + 1]
        while upper[-1] != 1:
            upper.append((upper[-1] + 1) // 2)
    return ParityLengths(n, len(lower), len(upper), tuple(lower), tuple(upper))


def lpi(n: int) -> ParityLengths:
    return parity_lengths(n)


def lps(n: int) -> ParityLengths:
    return parity_lengths(n)


# ----------------------------------------------------------------------
# Truncation formulas
# ----------------------------------------------------------------------


class HorizonInsufficient(ValueError):
    """A check needs a larger family horizon; the message says how much."""


def truncation_formula_check(family, s: int, n: int) -> bool:
    """Check K_s^(1/p^n) ∩ K = (predicted span) on a family at finite level.

    The left side is computed by brute force: a plain truncation for
    s = 0, and intersection with the lifted field K_s^(1/p^n) otherwise
    (the lift multiplies degrees by p^(nu*n), so s >= 1 only suits small
    chunks).  The right side is the span the family predicts; equality is
    checked by degree plus mutual membership.
    """
    predicted = family.predicted_truncation(s, n)
    horizon = family.sufficient_horizon(s, n)
    big = family.stage(horizon)
    if s == 0:
        lhs = big.truncation(n).field
    else:
        lifted = family.stage_for_index(s).perfect_lift(n)
        lhs = lifted.intersect(big)
    rhs = Subfield.span(family.ctx, predicted)
    return (lhs.degree_log == rhs.degree_log
            and rhs.contains_field(lhs) and lhs.contains_field(rhs))


def modular_rbase_truncation_check(K: Subfield, B: RBase) -> bool:
    """Check the truncation formula for a modular r-base B of K/k.

    With n_a = o(a/k), B_1 = {a : n_a > j} and B_2 = B \\ B_1, the j-th
    truncation must equal k((a^(p^(n_a - j)))_{a in B_1}, B_2) for every
    j < o_1(K/k).  B must be modular: the tensor degree test
    sum n_a = log_p [K : k] is verified first.
    """
    levels = [a.exponent_over_base() for a in B.elements]
    if sum(levels) != K.degree_log:
        raise ValueError("B is not a modular r-base (tensor degree test failed)")
    o1 = max(levels, default=0)
    for j in range(o1):
        predicted = []
        for a, n_a in zip(B.elements, levels):
            predicted.append(a.frob(n_a - j) if n_a > j else a)
        span = Subfield.span(K.ctx, predicted)
        trunc = K.truncation(j).field
        if not (span.degree_log == trunc.degree_log
                and trunc.contains_field(span) and span.contains_field(trunc)):
            return False
    return True
