"""Danielewski-form equations ``z^m t - g(z, u) = 0`` and their classification.

``g(z, u) = b_0(u) + b_1(u) z + ... + b_{m-1}(u) z^{m-1}`` with ``b_0``
monic of degree ``d`` and squarefree, and ``deg b_i <= d - 1`` otherwise.
Coefficients are exact rationals; polynomials are stored as dense
coefficient tuples, low degree first.

Two forms are related by a normal-form witness ``(alpha, lam, beta, gamma)``
when

    alpha^d h(z, u) = g(lam z, alpha u + beta(z)) - z^m gamma(z, u)

holds exactly, with ``deg beta <= m - 1``.  The automorphism
``(z, u, t) -> (lam z, alpha u + beta(z), (alpha^d t + gamma) / lam^m)``
of affine 3-space then carries one surface onto the other.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

import sympy
from sympy import QQ
from sympy.polys.rings import ring

from .divisors import GraphDivisor
from .errors import InputError, InvalidB0, MalformedMMForm
from .trees import bush

_R, _Z, _U, _LAM = ring("z,u,lam", QQ)
_T = sympy.Symbol("t")
_SYMS = {"z": sympy.Symbol("z"), "u": sympy.Symbol("u"), "t": _T}
_LAM_SYM = sympy.Symbol("lam")

Poly1 = tuple  # dense coefficients in u, low degree first


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"{x!r} is not a rational number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise InputError(f"{x!r} is not a rational number") from None
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    raise InputError(f"{x!r} is not a rational number")


def _qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _strip(coeffs: Sequence) -> Poly1:
    out = [_frac(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _u_elem(coeffs: Poly1):
    return sum((_qq(c) * _U**j for j, c in enumerate(coeffs)), _R.zero)


def _fmt_num(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(terms: dict, names: Sequence[str]) -> str:
    """Render ``{exponents: coefficient}`` deterministically, highest terms first."""
    items = sorted(((e, c) for e, c in terms.items() if c != 0), reverse=True)
    if not items:
        return "0"
    parts = []
    for exps, c in items:
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, exps) if k
        )
        mag = abs(c)
        if not mono:
            body = _fmt_num(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_num(mag)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _elem_terms(p) -> dict:
    """Terms of a ring element in (z, u) as Fractions; lam must be absent."""
    out = {}
    for (i, j, k), c in p.terms():
        if k:
            raise ValueError("unexpected lam in a numeric polynomial")
        out[(i, j)] = _frac(c)
    return out


@dataclass(frozen=True)
class DanielewskiForm:
    d: int
    m: int
    b: tuple[Poly1, ...]

    def __post_init__(self):
        if self.m < 1:
            raise InputError("m must be at least 1")
        b = [_strip(c) for c in self.b]
        if len(b) > self.m:
            raise InputError(f"{len(b)} centers given for m={self.m}")
        b += [()] * (self.m - len(b))
        object.__setattr__(self, "b", tuple(b))
        b0 = b[0]
        if len(b0) - 1 != self.d or self.d < 1:
            raise InvalidB0(f"b_0 must have degree d={self.d}")
        if b0[-1] != 1:
            raise InvalidB0("b_0 must be monic")
        p = sympy.Poly(_u_elem(b0).as_expr(), _SYMS["u"], domain=QQ)
        if p.gcd(p.diff()).degree() > 0:
            raise InvalidB0("b_0 must be squarefree")
        for i, c in enumerate(b[1:], 1):
            if len(c) - 1 > self.d - 1:
                raise InputError(f"b_{i} has degree {len(c) - 1} > d - 1 = {self.d - 1}")

    def g(self):
        return sum((_u_elem(c) * _Z**i for i, c in enumerate(self.b)), _R.zero)

    def g_terms(self) -> dict:
        return {
            (i, j): c for i, cs in enumerate(self.b) for j, c in enumerate(cs) if c != 0
        }

    def equation_coefficients(self) -> dict[tuple[int, int, int], Fraction]:
        """Coefficients of ``z^m t - g`` keyed by exponents of ``(z, u, t)``."""
        out = {(self.m, 0, 1): Fraction(1)}
        for (i, j), c in self.g_terms().items():
            out[(i, j, 0)] = -c
        return out

    def equation_text(self) -> str:
        zt = "z*t" if self.m == 1 else f"z^{self.m}*t"
        return f"{zt} - ({format_poly(self.g_terms(), ('z', 'u'))})"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "m": self.m,
            "b": [[_fmt_num(c) if c.denominator != 1 else c.numerator for c in cs] for cs in self.b],
        }

    @classmethod
    def from_json(cls, obj) -> "DanielewskiForm":
        try:
            d, m, b = int(obj["d"]), int(obj["m"]), obj["b"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("a form needs integer 'd', 'm' and a list 'b'") from exc
        if not isinstance(b, list) or not all(isinstance(c, list) for c in b):
            raise InputError("'b' must be a list of coefficient lists")
        return cls(d, m, tuple(tuple(_frac(x) for x in c) for c in b))

    @classmethod
    def parse(cls, text: str) -> "DanielewskiForm":
        """Parse ``"z^m*t - g(z, u)"`` (optionally ``... = 0``)."""
        m, g = _split_equation(text)
        b = _z_slices(g, m, text)
        if not b or not b[0]:
            raise InputError("b_0 is missing", 1, 1)
        return cls(len(b[0]) - 1, m, tuple(b))


# equation literals

_ALLOWED = re.compile(r"[0-9zut+\-*/^()\s.=]")


def _parse_expr(text: str):
    depth = 0
    for col, ch in enumerate(text, 1):
        if not _ALLOWED.fullmatch(ch):
            raise InputError(f"unexpected character {ch!r}", 1, col)
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise InputError("unbalanced ')'", 1, col)
    if depth:
        raise InputError("unclosed '('", 1, len(text))
    m = re.search(r"[zut]\s*[zut(0-9]|[0-9)]\s*[zut(]", text)
    if m:
        raise InputError("missing '*' between factors", 1, m.start() + 2)
    if text.count("=") > 1:
        raise InputError("more than one '='", 1, text.rindex("=") + 1)
    lhs, _, rhs = text.partition("=")
    if _ and rhs.strip() == "":
        raise InputError("empty right-hand side", 1, len(text))
    try:
        expr = sympy.sympify(lhs.replace("^", "**"), locals=_SYMS, rational=True)
        if rhs.strip():
            expr -= sympy.sympify(rhs.replace("^", "**"), locals=_SYMS, rational=True)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        col = getattr(exc, "offset", None) or 1
        raise InputError(f"cannot parse equation: {exc}", 1, col) from None
    return sympy.Poly(sympy.expand(expr), _SYMS["z"], _SYMS["u"], _T, domain=QQ)


def _split_equation(text: str) -> tuple[int, dict]:
    """Return ``m`` and the terms of ``g`` for an equation ``z^m t - g = 0``."""
    poly = _parse_expr(text)
    t_terms = {(i, j, k): c for (i, j, k), c in poly.terms() if k}
    if len(t_terms) != 1:
        raise InputError("the equation must contain exactly one term with t", 1, 1)
    ((i, j, k), c), = t_terms.items()
    if j or k != 1 or c != 1 or i < 1:
        raise InputError("the t-term must be z^m*t with m >= 1", 1, 1)
    g = {(a, b): -_frac(c) for (a, b, kk), c in poly.terms() if not kk}
    return i, g


def _z_slices(g: dict, m: int, text: str) -> list[Poly1]:
    if any(i >= m for i, _ in g):
        raise InputError("g has terms of z-degree >= m", 1, 1)
    b = []
    for i in range(m):
        deg = max((j for (a, j) in g if a == i), default=-1)
        b.append(_strip([g.get((i, j), 0) for j in range(deg + 1)]))
    return b


# recursion


@dataclass(frozen=True)
class Recursion:
    form: DanielewskiForm
    trace: tuple[str, ...]
    collapsed: bool


def build_recursion(centers: Sequence[Sequence]) -> Recursion:
    """Iterate ``t_{l+1} = (b_l(u) + t_l) / z`` starting from ``t_0 = 0``.

    ``t_l`` equals ``g_l / z^l`` with ``g_l = b_0 + ... + b_{l-1} z^{l-1}``;
    the trace lists these numerators and ``collapsed`` confirms that the
    last one is the ``g`` of the single resulting equation.
    """
    b = [_strip(c) for c in centers]
    if not b or not b[0]:
        raise InvalidB0("b_0 is missing")
    d = len(b[0]) - 1
    form = DanielewskiForm(d, len(b), tuple(b))
    trace = []
    numer = _R.zero
    for l, c in enumerate(form.b):
        numer = numer + _u_elem(c) * _Z**l
        terms = _elem_terms(numer)
        den = "z" if l == 0 else f"z^{l + 1}"
        trace.append(f"t_{l + 1} = ({format_poly(terms, ('z', 'u'))})/{den}")
    return Recursion(form, tuple(trace), numer == form.g())


def tree_of_equation(f: DanielewskiForm) -> GraphDivisor:
    """The single special fiber over ``z = 0`` is the bush with ``d`` branches of length ``m``."""
    return GraphDivisor.over_line({"0": bush(f.d, f.m)})


# witnesses


@dataclass(frozen=True)
class NormalFormWitness:
    alpha: Fraction
    lam: Fraction
    beta: tuple[Fraction, ...]
    gamma: tuple[tuple[tuple[int, int], Fraction], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "alpha": _fmt_num(self.alpha),
            "lambda": _fmt_num(self.lam),
            "beta": [_fmt_num(c) for c in self.beta],
            "gamma": format_poly(dict(self.gamma), ("z", "u")),
        }


def _beta_elem(beta: Sequence) -> object:
    return sum((_qq(_frac(c)) * _Z**i for i, c in enumerate(beta)), _R.zero)


def _substitute(g, alpha, lam, beta_elem):
    """``g(lam z, alpha u + beta)`` for ring elements ``alpha``, ``lam``, ``beta``."""
    return g.compose([(_Z, lam * _Z), (_U, alpha * _U + beta_elem)])


def make_witness(g: DanielewskiForm, h: DanielewskiForm, alpha, lam, beta) -> NormalFormWitness | None:
    """Complete ``(alpha, lam, beta)`` with the unique ``gamma``, or None if none exists."""
    alpha, lam = _frac(alpha), _frac(lam)
    beta = _strip(beta)
    if alpha == 0 or lam == 0 or len(beta) > g.m or (g.d, g.m) != (h.d, h.m):
        return None
    diff = _substitute(g.g(), _qq(alpha) + 0 * _Z, _qq(lam) + 0 * _Z, _beta_elem(beta)) - _qq(
        alpha**g.d
    ) * h.g()
    gamma = {}
    for (i, j), c in _elem_terms(diff).items():
        if i < g.m:
            return None
        gamma[(i - g.m, j)] = c
    return NormalFormWitness(alpha, lam, beta, tuple(sorted(gamma.items())))


def verify_witness(g: DanielewskiForm, h: DanielewskiForm, w: NormalFormWitness) -> bool:
    """Exact check of ``alpha^d h = g(lam z, alpha u + beta(z)) - z^m gamma``."""
    if (g.d, g.m) != (h.d, h.m) or w.alpha == 0 or w.lam == 0 or len(_strip(w.beta)) > g.m:
        return False
    lhs = _qq(w.alpha**g.d) * h.g()
    gamma = sum((_qq(c) * _Z**i * _U**j for (i, j), c in w.gamma), _R.zero)
    rhs = _substitute(g.g(), _qq(w.alpha) + 0 * _Z, _qq(w.lam) + 0 * _Z, _beta_elem(w.beta))
    return lhs == rhs - _Z**g.m * gamma


def forward_transform(g: DanielewskiForm, alpha, lam, beta) -> tuple[DanielewskiForm, NormalFormWitness]:
    """Build ``h`` from ``g`` and a seed ``(alpha, lam, beta)``; terms of z-degree ``>= m`` go to ``gamma``."""
    alpha, lam = _frac(alpha), _frac(lam)
    beta = _strip(beta)
    if alpha == 0 or lam == 0 or len(beta) > g.m:
        raise InputError("need nonzero alpha, lam and deg beta <= m - 1")
    image = _substitute(g.g(), _qq(alpha) + 0 * _Z, _qq(lam) + 0 * _Z, _beta_elem(beta))
    scale = 1 / alpha**g.d
    low: dict = {}
    for (i, j), c in _elem_terms(image).items():
        if i < g.m:
            low[(i, j)] = c * scale
    b = []
    for i in range(g.m):
        deg = max((j for (a, j) in low if a == i), default=-1)
        b.append(_strip([low.get((i, j), 0) for j in range(deg + 1)]))
    h = DanielewskiForm(g.d, g.m, tuple(b))
    return h, make_witness(g, h, alpha, lam, beta)


def invert_witness(g: DanielewskiForm, h: DanielewskiForm, w: NormalFormWitness) -> NormalFormWitness | None:
    """Witness from ``h`` to ``g``: ``(1/alpha, 1/lam, -beta(z/lam)/alpha)``."""
    a, l = 1 / w.alpha, 1 / w.lam
    beta = [-c * l**i * a for i, c in enumerate(w.beta)]
    return make_witness(h, g, a, l, beta)


# classification


class Outcome(enum.Enum):
    ISOMORPHIC = "Isomorphic"
    NOT_ISOMORPHIC = "NotIsomorphic"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Classification:
    outcome: Outcome
    witness: NormalFormWitness | None = None
    reason: str = ""

    def to_json(self) -> dict:
        out = {"outcome": self.outcome.value, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def rational_roots(coeffs: Poly1) -> list[Fraction]:
    p = sympy.Poly(_u_elem(coeffs).as_expr(), _SYMS["u"], domain=QQ)
    return sorted(_frac(r) for r in p.ground_roots())


def _lam_roots(p) -> tuple[list[Fraction], bool]:
    """Nonzero rational roots of a polynomial in lam, and whether other roots remain."""
    poly = sympy.Poly(p.as_expr(), _LAM_SYM, domain=QQ)
    roots = poly.ground_roots()
    rational = sorted(_frac(r) for r in roots if r != 0)
    found = sum(mult for r, mult in roots.items() if r != 0)
    zero = roots.get(0, 0)
    return rational, found + zero < poly.degree()


def _coeff(p, i, j):
    """Coefficient of ``z^i u^j`` as a polynomial in lam."""
    return _R.from_dict({(0, 0, k): c for (a, b, k), c in p.terms() if a == i and b == j}) if p else _R.zero


def _solve_candidate(g: DanielewskiForm, h: DanielewskiForm, alpha: Fraction, beta0: Fraction):
    """Solve for ``beta_1..beta_{m-1}`` and ``lam``.

    Returns ``(witness, incomplete)``; ``incomplete`` flags lam values
    that exist only over an extension of the rationals.
    """
    d, m = g.d, g.m
    a = _qq(alpha)
    b0 = _u_elem(g.b[0])
    deriv = b0.diff(_U).compose(_U, a * _U + _qq(beta0))
    lead = _qq(d * alpha ** (d - 1))
    beta = _qq(beta0) + 0 * _Z
    constraints = []
    gz = g.g()
    for l in range(1, m):
        partial = _substitute(gz, a + 0 * _Z, _LAM, beta)
        target = _qq(alpha**d) * _u_elem(h.b[l])
        diff = target - sum((_coeff(partial, l, j) * _U**j for j in range(d + 1)), _R.zero)
        beta_l = _coeff(diff, 0, d - 1) * (1 / lead)
        resid = diff - deriv * beta_l
        for j in range(d):
            c = _coeff(resid, 0, j)
            if c:
                constraints.append(c)
        beta = beta + beta_l * _Z**l
    if constraints:
        common = constraints[0]
        for c in constraints[1:]:
            common = common.gcd(c)
        if common.is_ground:
            return None, False
        lams, incomplete = _lam_roots(common)
    else:
        lams, incomplete = [Fraction(1)], False
    for lam in lams:
        coeffs = []
        for i in range(m):
            c = _coeff(beta, i, 0)
            val = c.evaluate(_LAM, _qq(lam)) if c else 0
            coeffs.append(_frac(val.LC if hasattr(val, "LC") else val))
        w = make_witness(g, h, alpha, lam, coeffs)
        if w is not None:
            return w, incomplete
    return None, incomplete


def classify(g: DanielewskiForm, h: DanielewskiForm) -> Classification:
    """Search for a normal-form witness between two forms over the rationals."""
    if g.d != h.d or g.m != h.m:
        if g.d == h.d == 1:
            return Classification(
                Outcome.UNKNOWN, reason="d=1: both surfaces are affine planes, no normal form with equal m"
            )
        return Classification(Outcome.NOT_ISOMORPHIC, reason="MismatchedDM")
    d, m = g.d, g.m
    if d == 1:
        candidates = [(Fraction(1), h.b[0][0] - g.b[0][0])]
        split = True
    else:
        rb, rc = rational_roots(g.b[0]), rational_roots(h.b[0])
        split = len(rb) == d and len(rc) == d
        candidates = []
        if len(rb) >= 2 and len(rc) >= 2 and len(rb) == len(rc):
            r1, r2 = rc[0], rc[1]
            for s1, s2 in permutations(rb, 2):
                alpha = (s1 - s2) / (r1 - r2)
                candidates.append((alpha, s1 - alpha * r1))
    b0 = _u_elem(g.b[0])
    c0 = _u_elem(h.b[0])
    incomplete = False
    for alpha, beta0 in candidates:
        if b0.compose(_U, _qq(alpha) * _U + _qq(beta0)) != _qq(alpha**d) * c0:
            continue
        w, inc = _solve_candidate(g, h, alpha, beta0)
        incomplete |= inc
        if w is not None:
            return Classification(Outcome.ISOMORPHIC, w, "witness verified")
    if not split:
        return Classification(Outcome.UNKNOWN, reason="b_0 or c_0 has irrational roots")
    if incomplete:
        return Classification(Outcome.UNKNOWN, reason="lambda is irrational for some candidate")
    if d < 2 or m < 2:
        return Classification(
            Outcome.UNKNOWN, reason="no normal-form witness; the criterion needs d, m >= 2"
        )
    return Classification(Outcome.NOT_ISOMORPHIC, reason="no normal-form witness over the rationals")


# Masuda-Miyanishi forms


@dataclass(frozen=True)
class MMForm:
    """``z^m t - g(z, u) - 1 = 0`` with ``g = u^d + a_2 u^{d-2} z^2 + ... + a_d z^d``.

    ``a`` lists ``a_2..a_d``.
    """

    d: int
    m: int
    a: tuple[Fraction, ...]

    def __post_init__(self):
        a = tuple(_frac(x) for x in self.a)
        if not 2 <= self.m < self.d:
            raise MalformedMMForm(f"need d > m >= 2, got d={self.d}, m={self.m}")
        if len(a) != self.d - 1:
            raise MalformedMMForm(f"expected {self.d - 1} coefficients a_2..a_d")
        object.__setattr__(self, "a", a)

    def coefficient(self, j: int) -> Fraction:
        return self.a[j - 2]

    def g_terms(self) -> dict:
        out = {(0, self.d): Fraction(1)}
        for j in range(2, self.d + 1):
            if self.coefficient(j):
                out[(j, self.d - j)] = self.coefficient(j)
        return out

    def equation_text(self) -> str:
        return f"z^{self.m}*t - ({format_poly(self.g_terms(), ('z', 'u'))}) - 1"

    def to_json(self) -> dict:
        return {"family": "MM", "d": self.d, "m": self.m, "a": [_fmt_num(x) for x in self.a]}

    @classmethod
    def from_json(cls, obj) -> "MMForm":
        try:
            return cls(int(obj["d"]), int(obj["m"]), tuple(obj["a"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("an MM form needs integer 'd', 'm' and a list 'a'") from exc

    @classmethod
    def parse(cls, text: str) -> "MMForm":
        m, g = _split_equation(text)
        g = dict(g)
        g[(0, 0)] = g.get((0, 0), 0) - 1
        g = {k: c for k, c in g.items() if c != 0}
        degrees = {i + j for i, j in g}
        if len(degrees) != 1:
            raise MalformedMMForm("g must be homogeneous")
        (d,) = degrees
        if g.get((0, d)) != 1:
            raise MalformedMMForm("g must start with u^d")
        if g.get((1, d - 1)):
            raise MalformedMMForm("g must not contain an a_1 term")
        return cls(d, m, tuple(g.get((j, d - j), Fraction(0)) for j in range(2, d + 1)))


def _rational_root(x: Fraction, n: int) -> list[Fraction]:
    """All rational ``y`` with ``y^n = x``."""
    if x == 0:
        return [Fraction(0)]
    if x < 0 and n % 2 == 0:
        return []
    num, ok1 = sympy.integer_nthroot(abs(x.numerator), n)
    den, ok2 = sympy.integer_nthroot(x.denominator, n)
    if not (ok1 and ok2):
        return []
    y = Fraction(int(num), int(den))
    if x < 0:
        return [-y]
    return [y, -y] if n % 2 == 0 else [y]


@dataclass(frozen=True)
class MMResult:
    """``lam`` is rational when found; otherwise ``lam_power = (e, R)`` means ``lam^e = R``."""

    isomorphic: bool
    lam: Fraction | None = None
    lam_power: tuple[int, Fraction] | None = None
    reason: str = ""

    def to_json(self) -> dict:
        out = {"outcome": "Isomorphic" if self.isomorphic else "NotIsomorphic", "reason": self.reason}
        if self.lam is not None:
            out["lambda"] = _fmt_num(self.lam)
        if self.lam_power is not None:
            e, r = self.lam_power
            out["lambda_power"] = {"exponent": e, "value": _fmt_num(r)}
        return out


def mm_classify(g: MMForm, h: MMForm) -> MMResult:
    """Find ``lam`` with ``h(z, u) = g(lam z, u)``, i.e. ``c_j = a_j lam^j``."""
    if g.m != h.m:
        return MMResult(False, reason="m differs")
    if g.d != h.d:
        return MMResult(False, reason="d differs")
    js = [j for j in range(2, g.d + 1) if g.coefficient(j) != 0]
    if js != [j for j in range(2, g.d + 1) if h.coefficient(j) != 0]:
        return MMResult(False, reason="the sets of nonzero coefficients differ")
    if not js:
        return MMResult(True, Fraction(1), reason="both forms are u^d")
    ratio = {j: h.coefficient(j) / g.coefficient(j) for j in js}
    for lam in _rational_root(ratio[js[0]], js[0]):
        if all(lam**j == ratio[j] for j in js):
            return MMResult(True, lam, reason="rational lambda")
    e = math.gcd(*js)
    # Bezout: e = sum k_j j, so lam^e = prod ratio_j^k_j
    coeffs = _bezout(js)
    value = Fraction(1)
    for j, k in zip(js, coeffs):
        value *= ratio[j] ** k
    if all(ratio[j] == value ** (j // e) for j in js):
        return MMResult(True, None, (e, value), reason="lambda exists only over an extension")
    return MMResult(False, reason="no lambda satisfies all coefficient relations")


def _bezout(ns: Sequence[int]) -> list[int]:
    """Integers ``k`` with ``sum k_i n_i = gcd(ns)``."""
    ks = [1]
    g = ns[0]
    for n in ns[1:]:
        x0, x1, a, b = 1, 0, g, n
        y0, y1 = 0, 1
        while b:
            q = a // b
            a, b = b, a - q * b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        ks = [k * x0 for k in ks] + [y0]
        g = a
    return ks
