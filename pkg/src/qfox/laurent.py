"""Exact one-variable Laurent polynomial arithmetic over the integers.

Everything downstream (determinants, colorings, bounds) runs on exact
integer coefficients; nothing in this module touches floating point.
The module also builds the crossing/arc relation matrix of a diagram and
computes its first minors with a fraction-free (Bareiss) elimination, so
determinants of matrices over Z[t] never leave Z[t].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import json
import re
from typing import Iterable, Mapping

from .diagram import Diagram
from .errors import InexactDivisionError, NormalizationError


@dataclass(frozen=True)
class LaurentPoly:
    """A Laurent polynomial  c_0*t^min_exp + ... + c_k*t^(min_exp+k).

    Canonical form: `coeffs` is empty for the zero polynomial (min_exp 0),
    otherwise its first and last entries are non-zero.
    """

    coeffs: tuple[int, ...] = ()
    min_exp: int = 0

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        min_exp = self.min_exp
        lo = 0
        while lo < len(coeffs) and coeffs[lo] == 0:
            lo += 1
        hi = len(coeffs)
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            coeffs, min_exp = (), 0
        else:
            coeffs, min_exp = coeffs[lo:hi], min_exp + lo
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "min_exp", min_exp)

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls((1,))

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls((1,), 1)

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls((coeff,), exp)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int] | Iterable[tuple[int, int]]) -> "LaurentPoly":
        """Build from {exponent: coefficient} or an iterable of (exp, coeff)."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        acc = {e: c for e, c in acc.items() if c != 0}
        if not acc:
            return cls()
        lo, hi = min(acc), max(acc)
        return cls(tuple(acc.get(e, 0) for e in range(lo, hi + 1)), lo)

    # -- structure ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Largest exponent with a non-zero coefficient.  Zero poly: -1."""
        if self.is_zero:
            return -1
        return self.min_exp + len(self.coeffs) - 1

    def coeff(self, exp: int) -> int:
        i = exp - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        return [(self.min_exp + i, c) for i, c in enumerate(self.coeffs) if c != 0]

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.degree, other.degree)
        return LaurentPoly(
            tuple(self.coeff(e) + other.coeff(e) for e in range(lo, hi + 1)), lo
        )

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple(-c for c in self.coeffs), self.min_exp)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero or other.is_zero:
            return LaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LaurentPoly(tuple(out), self.min_exp + other.min_exp)

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly(tuple(k * c for c in self.coeffs), self.min_exp)

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        if self.is_zero:
            return self
        return LaurentPoly(self.coeffs, self.min_exp + k)

    def evaluate(self, m: int) -> int:
        """Value at t = m.  Requires min_exp >= 0 (shift the unit out first)."""
        if self.is_zero:
            return 0
        if self.min_exp < 0:
            raise ValueError("cannot evaluate a polynomial with negative exponents")
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * m + c
        return acc * m ** self.min_exp

    # -- text and JSON forms --------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for e, c in self.terms():
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"min_exp": self.min_exp, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        return cls(tuple(data["coeffs"]), data["min_exp"])


_TERM_RE = re.compile(r"^(?:(\d+)\s*\*?\s*)?t(?:\^(-?\d+))?$|^(\d+)$")


def parse_poly(text: str) -> LaurentPoly:
    """Parse the text form produced by str(): e.g. '2 - 3t + 3t^2'.

    A '*' between coefficient and t is also accepted.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return LaurentPoly()
    # Split into signed terms.
    chunks = re.split(r"\s*([+-])\s*", s)
    if chunks[0] == "":
        chunks = chunks[1:]
    else:
        chunks = ["+"] + chunks
    if len(chunks) % 2 != 0:
        raise ValueError(f"malformed polynomial text: {text!r}")
    terms: list[tuple[int, int]] = []
    for sign_tok, body in zip(chunks[::2], chunks[1::2]):
        mt = _TERM_RE.match(body.replace(" ", ""))
        if mt is None:
            raise ValueError(f"malformed polynomial term: {body!r}")
        sign = 1 if sign_tok == "+" else -1
        if mt.group(3) is not None:
            terms.append((0, sign * int(mt.group(3))))
        else:
            coeff = int(mt.group(1)) if mt.group(1) else 1
            exp = int(mt.group(2)) if mt.group(2) is not None else 1
            terms.append((exp, sign * coeff))
    return LaurentPoly.from_terms(terms)


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Divide p by q, requiring an exact quotient in Z[t, t^-1].

    Raises InexactDivisionError (carrying the rational remainder) when q
    does not divide p.
    """
    if q.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if p.is_zero:
        return LaurentPoly()
    shift = p.min_exp - q.min_exp
    # Work with plain coefficient lists, constant terms non-zero.
    rem = [Fraction(c) for c in p.coeffs]
    den = list(q.coeffs)
    dq = len(den) - 1
    out: list[Fraction] = []
    for top in range(len(rem) - 1, dq - 1, -1):
        c = rem[top] / den[dq]
        out.append(c)
        if c:
            for j in range(dq + 1):
                rem[top - dq + j] -= c * den[j]
    if any(rem) or any(c.denominator != 1 for c in out):
        nz = [(p.min_exp + i, c) for i, c in enumerate(rem) if c]
        detail = " + ".join(f"({c})t^{e}" for e, c in nz) or "non-integral quotient"
        raise InexactDivisionError(
            f"{q} does not divide {p}: remainder {detail}", remainder=nz
        )
    out.reverse()
    return LaurentPoly(tuple(int(c) for c in out), shift)


def unit_equivalent(p: LaurentPoly, q: LaurentPoly) -> bool:
    """True when p = ±t^n q for some integer n."""
    if p.is_zero or q.is_zero:
        return p.is_zero and q.is_zero
    return p.coeffs == q.coeffs or p.coeffs == tuple(-c for c in q.coeffs)


# ---------------------------------------------------------------------------
# Crossing/arc relation matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlexMatrix:
    """Relation matrix of a diagram: rows are crossings, columns are arcs.

    At a positive crossing the outgoing under-arc relation contributes
    t, 1-t, -1 in the columns of the incoming under-arc, the over-arc and
    the outgoing under-arc.  Negative crossings contribute the inverse
    relation scaled by t, which lands on the same three values with the
    under-arc roles swapped.
    """

    rows: tuple[tuple[LaurentPoly, ...], ...]
    arc_labels: tuple[int, ...]

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.arc_labels)


def alexander_matrix(d: Diagram) -> AlexMatrix:
    """Build the relation matrix of a diagram, one row per crossing."""
    col = {arc: i for i, arc in enumerate(d.arcs)}
    t = LaurentPoly.t()
    one = LaurentPoly.one()
    rows = []
    for c in d.crossings:
        row = [LaurentPoly.zero()] * len(d.arcs)
        x_in, x_out = (c.under_in, c.under_out) if c.sign > 0 else (c.under_out, c.under_in)
        row[col[x_in]] = row[col[x_in]] + t
        row[col[c.over]] = row[col[c.over]] + (one - t)
        row[col[x_out]] = row[col[x_out]] - one
        rows.append(tuple(row))
    return AlexMatrix(tuple(rows), tuple(d.arcs))


def det_bareiss(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free determinant over Z[t].  Entries must have min_exp >= 0."""
    n = len(rows)
    if n == 0:
        return LaurentPoly.one()
    m = [list(r) for r in rows]
    sign = 1
    prev = LaurentPoly.one()
    for k in range(n - 1):
        if m[k][k].is_zero:
            for r in range(k + 1, n):
                if not m[r][k].is_zero:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = LaurentPoly.zero()
        prev = m[k][k]
    return m[n - 1][n - 1] if sign == 1 else -m[n - 1][n - 1]


def det_cofactor(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    """Reference determinant by cofactor expansion.  Exponential; only for
    cross-checking det_bareiss on small matrices."""
    n = len(rows)
    if n == 0:
        return LaurentPoly.one()
    if n == 1:
        return rows[0][0]
    acc = LaurentPoly.zero()
    for j, head in enumerate(rows[0]):
        if head.is_zero:
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = head * det_cofactor(sub)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _shift_nonneg(rows: list[list[LaurentPoly]]) -> list[list[LaurentPoly]]:
    lows = [e.min_exp for r in rows for e in r if not e.is_zero]
    s = min(lows, default=0)
    if s >= 0:
        return rows
    return [[e.shifted(-s) for e in r] for r in rows]


def first_minor(mat: AlexMatrix, drop_row: int = 0, drop_col: int = 0) -> LaurentPoly:
    """Determinant after deleting one row and one column.

    Defined only up to a unit ±t^n: different (drop_row, drop_col) choices
    agree up to that ambiguity, which reduce_normalize absorbs.
    """
    if not (0 <= drop_row < mat.n_rows and 0 <= drop_col < mat.n_cols):
        raise IndexError("minor indices out of range")
    rows = [
        [e for j, e in enumerate(r) if j != drop_col]
        for i, r in enumerate(mat.rows)
        if i != drop_row
    ]
    if rows and len(rows) != len(rows[0]):
        raise ValueError("minor of a non-square matrix")
    return det_bareiss(_shift_nonneg(rows))


def det_full(mat: AlexMatrix) -> LaurentPoly:
    """Determinant of the full (square) relation matrix.  Always zero for a
    genuine diagram; exposed so tests can assert exactly that."""
    if mat.n_rows != mat.n_cols:
        raise ValueError("full determinant of a non-square matrix")
    return det_bareiss(_shift_nonneg([list(r) for r in mat.rows]))


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------


def normalize_unit(p: LaurentPoly) -> LaurentPoly:
    """Multiply by ±t^n so min_exp = 0 and the constant term is positive."""
    if p.is_zero:
        raise NormalizationError("cannot normalize the zero polynomial")
    q = p.shifted(-p.min_exp)
    return q if q.coeffs[0] > 0 else -q


def reduce_normalize(p: LaurentPoly, components: int) -> LaurentPoly:
    """Turn a raw first minor into the reduced polynomial of the diagram.

    Knots: normalize the unit and check the shape every valid reduced
    polynomial has (palindromic, even degree, odd middle coefficient); a
    failed check means the determinant upstream is wrong, so it raises.
    Links with >= 2 components: divide by 1 - t first, then normalize.
    """
    if p.is_zero:
        raise NormalizationError("zero determinant (split diagram?)")
    if components < 1:
        raise ValueError("component count must be >= 1")
    if components >= 2:
        one_minus_t = LaurentPoly((1, -1))
        try:
            p = exact_div(p, one_minus_t)
        except InexactDivisionError as exc:
            raise NormalizationError(
                f"link determinant not divisible by 1 - t: {exc}"
            ) from exc
        return normalize_unit(p)
    q = normalize_unit(p)
    problems = []
    k = q.degree
    if q.coeffs != tuple(reversed(q.coeffs)):
        problems.append("coefficients are not palindromic")
    if k % 2 != 0:
        problems.append(f"degree {k} is odd")
    elif q.coeff(k // 2) % 2 == 0:
        problems.append(f"middle coefficient {q.coeff(k // 2)} is even")
    if problems:
        raise NormalizationError(
            f"not a reduced knot polynomial ({'; '.join(problems)}): {q}"
        )
    return q


def poly_to_json_str(p: LaurentPoly) -> str:
    return json.dumps(p.to_json(), sort_keys=True)
