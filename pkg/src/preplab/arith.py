"""Exact scalars and dense polynomials.

Three coefficient rings are supported:

``Ring.Q``
    exact rationals (:class:`fractions.Fraction`), the field of every exact
    verification instance;
``Ring.C``
    double precision complex numbers, used by the numeric parameter search;
``Ring.T``
    polynomials in the parameter ``t`` over ``Q``.  A polynomial in ``z`` with
    ``Ring.T`` coefficients is a :class:`BiPoly`.

Every polynomial is immutable.  Coefficients are stored lowest degree first
with no trailing zeros, so the zero polynomial has an empty coefficient tuple
and degree :data:`NEG_INF`.
"""

from __future__ import annotations

import cmath
import enum
import json
import math
import re
from fractions import Fraction
from numbers import Rational

from . import kernels
from .errors import ContractError, InvalidInputError

BigRat = Fraction

#: Operand length below which multiplication stays schoolbook.
KARATSUBA_THRESHOLD = 32


class Ring(enum.Enum):
    Q = "Q"
    C = "C"
    T = "T"


class _NegInf:
    """Degree of the zero polynomial.

    Compares below every integer but supports no arithmetic, so an invalid
    degree can never leak into a computation silently.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("preplab.NEG_INF")

    def __reduce__(self):
        return (_NegInf, ())


NEG_INF = _NegInf()


def to_rational(x) -> Fraction:
    """Coerce ``x`` to an exact rational; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise InvalidInputError(f"not a rational literal: {x!r}") from exc
    raise ContractError(f"cannot use {type(x).__name__} {x!r} as an exact rational")


def to_cnum(x) -> complex:
    if isinstance(x, str):
        x = complex(x.strip().replace(" ", ""))
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidInputError(f"complex value must be finite, got {z!r}")
    return z


def _coerce(x, ring):
    if ring is Ring.Q:
        return to_rational(x)
    if ring is Ring.C:
        return to_cnum(x)
    if isinstance(x, DensePoly):
        if x.ring is not Ring.Q:
            raise ContractError("coefficients of a BiPoly must be TPolys over Q")
        return x
    return DensePoly([x], Ring.Q)


def _zero(ring):
    if ring is Ring.Q:
        return Fraction(0)
    if ring is Ring.C:
        return 0j
    return DensePoly((), Ring.Q)


def _make(coeffs, ring):
    if ring is Ring.T:
        return BiPoly._from_normalized(coeffs)
    return DensePoly._from_normalized(coeffs, ring)


def _strip(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class DensePoly:
    """Dense univariate polynomial over ``Ring.Q``, ``Ring.C`` or ``Ring.T``.

    >>> p = DensePoly([2, -3, 1])
    >>> str(p)
    '2 + -3*x + 1*x^2'
    >>> p(2)
    Fraction(0, 1)
    """

    __slots__ = ("_coeffs", "_ring")

    def __init__(self, coeffs=(), ring=Ring.Q):
        ring = Ring(ring)
        if ring is Ring.T and type(self) is DensePoly:
            raise ContractError("use BiPoly for polynomials with TPoly coefficients")
        self._ring = ring
        self._coeffs = _strip([_coerce(c, ring) for c in coeffs])

    @classmethod
    def _from_normalized(cls, coeffs, ring):
        obj = object.__new__(cls)
        obj._ring = ring
        obj._coeffs = _strip(coeffs)
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c, ring=Ring.Q):
        return _make([_coerce(c, Ring(ring))], Ring(ring))

    @classmethod
    def monomial(cls, k, c=1, ring=Ring.Q):
        ring = Ring(ring)
        return _make([_zero(ring)] * k + [_coerce(c, ring)], ring)

    @classmethod
    def identity(cls, ring=Ring.Q):
        return cls.monomial(1, 1, ring)

    @classmethod
    def from_roots(cls, roots, ring=Ring.Q):
        ring = Ring(ring)
        out = cls.constant(1, ring)
        for r in roots:
            out = out * _make([-_coerce(r, ring), _coerce(1, ring)], ring)
        return out

    # -- basic accessors ----------------------------------------------------

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def ring(self):
        return self._ring

    @property
    def degree(self):
        return len(self._coeffs) - 1 if self._coeffs else NEG_INF

    @property
    def lead(self):
        if not self._coeffs:
            return _zero(self._ring)
        return self._coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return _zero(self._ring)

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def is_constant(self):
        return len(self._coeffs) <= 1

    def is_monic(self):
        return bool(self._coeffs) and self._coeffs[-1] == 1

    def is_normal_form(self):
        """Monic with vanishing coefficient in degree ``deg - 1``."""
        d = self.degree
        return d is not NEG_INF and d >= 1 and self.is_monic() and not self[d - 1]

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, DensePoly):
            return self._ring is other._ring and self._coeffs == other._coeffs
        try:
            c = _coerce(other, self._ring)
        except (ContractError, InvalidInputError, TypeError, ValueError):
            return NotImplemented
        return self._coeffs == _strip([c])

    def __hash__(self):
        if len(self._coeffs) <= 1:
            return hash(self[0])
        return hash((self._ring, self._coeffs))

    # -- ring operations ----------------------------------------------------

    def _operand(self, other):
        if isinstance(other, DensePoly):
            if self._ring is Ring.T and other._ring is Ring.Q and not isinstance(other, BiPoly):
                # a TPoly is a scalar of the T ring
                return _make([other], Ring.T)
            if other._ring is not self._ring:
                raise ContractError(
                    f"ring mismatch: {self._ring.value} vs {other._ring.value}")
            return other
        try:
            return _make([_coerce(other, self._ring)], self._ring)
        except ContractError:
            raise
        except (TypeError, ValueError):
            return NotImplemented

    def __add__(self, other):
        other = self._operand(other)
        if other is NotImplemented:
            return other
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        return _make(out, self._ring)

    __radd__ = __add__

    def __neg__(self):
        return _make([-c for c in self._coeffs], self._ring)

    def __sub__(self, other):
        other = self._operand(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._operand(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._operand(other)
        if other is NotImplemented:
            return other
        return _make(_convolve(self._coeffs, other._coeffs, self._ring), self._ring)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply every coefficient by the ring element ``c``."""
        c = _coerce(c, self._ring)
        return _make([x * c for x in self._coeffs], self._ring)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ContractError("polynomial powers need a non-negative integer")
        result = self.constant(1, self._ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, x):
        """Horner evaluation at a scalar or substitution of a polynomial."""
        if isinstance(x, DensePoly) and x._ring is self._ring:
            return self.compose(x)
        if self._ring is Ring.T:
            if isinstance(x, DensePoly) and x._ring is not Ring.Q:
                raise ContractError("a BiPoly takes a TPoly or scalar argument")
            x = _coerce(x, Ring.T)
        elif isinstance(x, DensePoly):
            raise ContractError(
                f"ring mismatch: {self._ring.value} vs {x._ring.value}")
        else:
            x = _coerce(x, self._ring)
        acc = _zero(Ring.Q if isinstance(x, DensePoly) else self._ring)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def compose(self, q):
        """Return ``self(q(x))``."""
        q = self._operand(q)
        acc = _make((), self._ring)
        for c in reversed(self._coeffs):
            acc = acc * q + c
        return acc

    def iterate(self, n):
        """``n``-fold composition of ``self`` with itself."""
        if n < 0:
            raise ContractError("iterate count must be >= 0")
        out = self.identity(self._ring)
        for _ in range(n):
            out = self.compose(out)
        return out

    def derivative(self):
        return _make([c * k for k, c in enumerate(self._coeffs) if k], self._ring)

    def divmod_linear(self, r):
        """Synthetic division by ``x - r``; returns ``(quotient, remainder)``."""
        r = _coerce(r, self._ring)
        if not self._coeffs:
            return self, _zero(self._ring)
        acc = _zero(self._ring)
        quot = []
        for c in reversed(self._coeffs):
            acc = acc * r + c
            quot.append(acc)
        rem = quot.pop()
        return _make(quot[::-1], self._ring), rem

    def to_complex(self):
        if self._ring is Ring.T:
            raise ContractError("BiPoly has no complex image")
        return DensePoly._from_normalized([complex(c) for c in self._coeffs], Ring.C)

    def squarefree_part(self):
        """``p / gcd(p, p')`` over Q, made monic."""
        if self._ring is not Ring.Q:
            raise ContractError("squarefree part is only computed exactly over Q")
        if self.degree is NEG_INF or self.degree < 1:
            return self
        g = poly_gcd(self, self.derivative())
        q, r = poly_divmod(self, g)
        assert not r
        return q.scale(1 / q.lead)

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"{type(self).__name__}({to_json_list(self)!r}, ring={self._ring.value!r})"


class BiPoly(DensePoly):
    """Polynomial in ``z`` whose coefficients are TPolys (polynomials in t)."""

    __slots__ = ()

    def __init__(self, zcoeffs=()):
        self._ring = Ring.T
        self._coeffs = _strip([_coerce(c, Ring.T) for c in zcoeffs])

    @classmethod
    def _from_normalized(cls, coeffs, ring=Ring.T):
        obj = object.__new__(cls)
        obj._ring = Ring.T
        obj._coeffs = _strip(coeffs)
        return obj

    @classmethod
    def lift(cls, p):
        """View a polynomial over Q as a t-independent BiPoly."""
        if isinstance(p, BiPoly):
            return p
        if p.ring is not Ring.Q:
            raise ContractError("only polynomials over Q lift to BiPoly")
        return cls._from_normalized([DensePoly._from_normalized([c], Ring.Q)
                                     for c in p.coeffs])

    @property
    def zcoeffs(self):
        return self._coeffs

    @property
    def deg_t(self):
        return max((c.degree for c in self._coeffs), default=NEG_INF)

    def at_t(self, t):
        """Specialise the parameter: returns a polynomial in z over Q or C."""
        ring = Ring.C if isinstance(t, (complex, float)) else Ring.Q
        return DensePoly._from_normalized(
            [(c.to_complex() if ring is Ring.C else c)(t) for c in self._coeffs], ring)

    def is_t_constant(self):
        return all(c.degree is NEG_INF or c.degree == 0 for c in self._coeffs)

    def to_q(self):
        """Inverse of :meth:`lift` for t-independent BiPolys."""
        if not self.is_t_constant():
            raise ContractError("BiPoly depends on t")
        return DensePoly._from_normalized([c[0] for c in self._coeffs], Ring.Q)


TPoly = DensePoly


def tpoly(coeffs):
    """Shorthand for a polynomial in ``t`` over Q."""
    return DensePoly(coeffs, Ring.Q)


T = DensePoly._from_normalized([Fraction(0), Fraction(1)], Ring.Q)


# -- multiplication ---------------------------------------------------------

def _schoolbook(a, b, zero):
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return out


def karatsuba(a, b, zero, base, threshold):
    """Karatsuba product of coefficient lists, ``base`` below ``threshold``."""
    if not a or not b:
        return []
    if min(len(a), len(b)) < threshold:
        return base(a, b)
    h = max(len(a), len(b)) // 2
    if len(a) <= h or len(b) <= h:
        # unbalanced: split only the longer operand
        if len(a) < len(b):
            a, b = b, a
        lo = karatsuba(a[:h], b, zero, base, threshold)
        hi = karatsuba(a[h:], b, zero, base, threshold)
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(lo):
            out[i] = out[i] + x
        for i, x in enumerate(hi):
            out[i + h] = out[i + h] + x
        return out
    a0, a1, b0, b1 = a[:h], a[h:], b[:h], b[h:]
    z0 = karatsuba(a0, b0, zero, base, threshold)
    z2 = karatsuba(a1, b1, zero, base, threshold)
    sa = _addlists(a0, a1, zero)
    sb = _addlists(b0, b1, zero)
    z1 = karatsuba(sa, sb, zero, base, threshold)
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(z0):
        out[i] = out[i] + x
        z1[i] = z1[i] - x
    for i, x in enumerate(z2):
        out[i + 2 * h] = out[i + 2 * h] + x
        z1[i] = z1[i] - x
    for i, x in enumerate(z1):
        if i + h < len(out):
            out[i + h] = out[i + h] + x
    return out


def _addlists(a, b, zero):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = out[i] + y
    return out


def _lift_to_ints(coeffs):
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = math.lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve(a, b, ring, threshold=None):
    if not a or not b:
        return []
    threshold = KARATSUBA_THRESHOLD if threshold is None else threshold
    if ring is Ring.Q:
        ia, da = _lift_to_ints(a)
        ib, db = _lift_to_ints(b)
        prod = karatsuba(ia, ib, 0, kernels.int_convolve, threshold)
        den = da * db
        if den == 1:
            return [Fraction(v) for v in prod]
        return [Fraction(v, den) for v in prod]
    zero = _zero(ring)
    return karatsuba(list(a), list(b), zero, lambda x, y: _schoolbook(x, y, zero),
                     threshold)


def poly_mul(p, q, threshold=None):
    """Product of two polynomials over the same ring.

    ``threshold`` overrides :data:`KARATSUBA_THRESHOLD` for this call.
    """
    if not isinstance(p, DensePoly) or not isinstance(q, DensePoly):
        raise ContractError("poly_mul takes two DensePoly operands")
    if p.ring is not q.ring:
        raise ContractError(f"ring mismatch: {p.ring.value} vs {q.ring.value}")
    return _make(_convolve(p.coeffs, q.coeffs, p.ring, threshold), p.ring)


def poly_compose(p, q):
    if p.ring is not q.ring:
        raise ContractError(f"ring mismatch: {p.ring.value} vs {q.ring.value}")
    return p.compose(q)


def poly_derivative(p):
    return p.derivative()


def bipoly_orbit_step(g, p):
    """Substitute the TPoly ``p`` for z in ``g``; the orbit recursion kernel."""
    if not isinstance(g, BiPoly):
        raise ContractError("bipoly_orbit_step expects a BiPoly")
    p = p if isinstance(p, DensePoly) else tpoly([p])
    if p.ring is not Ring.Q:
        raise ContractError("orbit values are TPolys over Q")
    acc = DensePoly._from_normalized((), Ring.Q)
    for c in reversed(g.coeffs):
        acc = acc * p + c
    return acc


def deg_t(p):
    """Degree in t of a TPoly (``NEG_INF`` for zero)."""
    if isinstance(p, BiPoly):
        return p.deg_t
    return p.degree


def poly_divmod(p, q):
    """Euclidean division over a field (Q or C)."""
    if p.ring is not q.ring or p.ring is Ring.T:
        raise ContractError("poly_divmod needs two polynomials over the same field")
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(p.coeffs)
    dq = len(q.coeffs) - 1
    inv = 1 / q.lead
    quot = [_zero(p.ring)] * max(len(rem) - dq, 0)
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq] * inv
        quot[k] = c
        if c:
            for j, y in enumerate(q.coeffs):
                rem[k + j] = rem[k + j] - c * y
    return _make(quot, p.ring), _make(rem[:dq], p.ring)


def poly_gcd(p, q):
    """Monic gcd over Q."""
    while q:
        p, q = q, poly_divmod(p, q)[1]
    if not p:
        return p
    return p.scale(1 / p.lead)


# -- text and JSON ----------------------------------------------------------

def _scalar_text(c, ring):
    if ring is Ring.Q:
        return str(c)
    if ring is Ring.C:
        return str(complex(c))
    return "(" + to_text(c, "t") + ")"


def to_text(p, var=None):
    """Canonical form ``c0 + c1*x + c2*x^2``; zero coefficients are omitted."""
    if var is None:
        var = "z" if p.ring is Ring.T else "x"
    terms = []
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        s = _scalar_text(c, p.ring)
        if k == 1:
            s += f"*{var}"
        elif k > 1:
            s += f"*{var}^{k}"
        terms.append(s)
    return " + ".join(terms) if terms else "0"


def _split_top(s, sep="+"):
    parts, depth, cur = [], 0, []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in (sep, "-") and depth == 0:
            prev = "".join(cur).rstrip()
            # exponent signs (1e+5) and unary minus stay inside the term
            if (i > 1 and s[i - 1] in "eE" and s[i - 2].isdigit()) or \
                    (ch == "-" and (not prev or prev[-1] in "+-*/^(")):
                cur.append(ch)
            else:
                parts.append("".join(cur))
                cur = [] if ch == sep else ["-"]
        else:
            cur.append(ch)
        i += 1
    parts.append("".join(cur))
    return [x.strip() for x in parts if x.strip()]


_TERM = re.compile(r"^(?P<coef>.*?)\s*(?:\*?\s*(?P<var>[A-Za-z])(?:\s*\^\s*(?P<exp>\d+))?)?$")


def from_text(s, ring=Ring.Q, var=None):
    """Parse the canonical text form (also tolerates ``x^2`` and ``-x``)."""
    ring = Ring(ring)
    if var is None:
        var = "z" if ring is Ring.T else "x"
    coeffs = {}
    for term in _split_top(s.strip()):
        sign = 1
        if term.startswith("-") and term[1:].lstrip()[:1] in ("(", var):
            sign, term = -1, term[1:].lstrip()
        if ring is Ring.T and term.startswith("("):
            depth = 0
            for end, ch in enumerate(term):
                depth += ch == "("
                depth -= ch == ")"
                if depth == 0:
                    break
            coef = from_text(term[1:end], Ring.Q, "t")
            rest = term[end + 1:].strip().lstrip("*").strip()
            k = _exponent(rest, var, term)
        else:
            m = _TERM.match(term)
            if m.group("var") and m.group("var") != var:
                raise InvalidInputError(f"unexpected variable in term {term!r}")
            raw = re.sub(r"^-\s+", "-", m.group("coef").strip())
            if raw in ("", "+"):
                raw = "1"
            elif raw == "-":
                raw = "-1"
            if ring is Ring.T:
                coef = tpoly([raw])
            elif ring is Ring.Q:
                coef = to_rational(raw)
            else:
                coef = to_cnum(raw)
            k = 0 if not m.group("var") else int(m.group("exp") or 1)
        coeffs[k] = coeffs.get(k, _zero(ring)) + (coef if sign == 1 else -coef)
    size = max(coeffs, default=-1) + 1
    return _make([coeffs.get(k, _zero(ring)) for k in range(size)], ring)


def _exponent(rest, var, term):
    if not rest:
        return 0
    m = re.fullmatch(rf"{var}(?:\s*\^\s*(\d+))?", rest)
    if not m:
        raise InvalidInputError(f"cannot parse term {term!r}")
    return int(m.group(1) or 1)


def to_json_list(p):
    """Array-of-strings form: entry ``i`` is the coefficient of ``x^i``."""
    if p.ring is Ring.T:
        return [to_text(c, "t") for c in p.coeffs]
    return [_scalar_text(c, p.ring) for c in p.coeffs]


def from_json_list(items, ring=Ring.Q):
    ring = Ring(ring)
    if ring is Ring.T:
        return BiPoly([from_text(s, Ring.Q, "t") if isinstance(s, str) else s
                       for s in items])
    return DensePoly([s for s in items], ring)


def dumps(p):
    """JSON document ``{"ring": ..., "coeffs": [...]}``."""
    return json.dumps({"ring": p.ring.value, "coeffs": to_json_list(p)})


def loads(text):
    """Inverse of :func:`dumps`; a bare JSON list is read over Q."""
    obj = json.loads(text) if isinstance(text, str) else text
    if isinstance(obj, list):
        return from_json_list(obj, Ring.Q)
    return from_json_list(obj["coeffs"], obj.get("ring", "Q"))


def rational_root(x, k):
    """Exact rational ``k``-th root of ``x``, or ``None`` if there is none.

    For even ``k`` the positive root is returned.
    """
    x = to_rational(x)
    if k < 1:
        raise ContractError("root degree must be >= 1")
    if x == 0:
        return Fraction(0)
    sign = 1
    if x < 0:
        if k % 2 == 0:
            return None
        sign, x = -1, -x
    n = _iroot(x.numerator, k)
    d = _iroot(x.denominator, k)
    if n is None or d is None:
        return None
    return sign * Fraction(n, d)


def _iroot(n, k):
    if n < 2:
        return n
    # Newton iteration on integers, seeded above the root
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    return r if r ** k == n else None


def principal_root(x, k):
    return cmath.exp(cmath.log(complex(x)) / k) if x else 0j
