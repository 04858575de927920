"""Universal multiplicative enveloping algebras and the trace codomain.

Representation of U(A) per variety:

* polynomial        -- U is A itself (commutative); terms keyed by monomials
* free associative  -- U = A (x) A^op; terms keyed by pairs (left word,
                       right word), acting as m -> a*m*b; product rule
                       (a(x)b)(c(x)d) = (ac)(x)(db)
* free Lie          -- U(L_n) is the free associative algebra on the same
                       generators (PBW); terms keyed by words, L_a acting
                       via ad
* metabelian Lie    -- values live in U/R = Q[t_1..t_n] with t_i the image
                       of L_{y_i}; terms keyed by exponent vectors.  R is
                       the ideal generated by all L_{[a,b]} (square zero)

The trace codomain U/([U,U]+R) has a necklace normal form: every word key
is replaced by its lexicographically minimal rotation (per tensor factor
in the associative case); commutative cases pass through.

Radical registry: R = 0 for polynomial, free associative, and free Lie
algebras (recorded as a modeling assumption for the tensor-of-free-algebra
cases); R = (L_{[a,b]}) for metabelian Lie algebras.
"""
from __future__ import annotations

from fractions import Fraction

from .freealg import (
    AlgebraError,
    Element,
    Kind,
    Variety,
    VarietyMismatch,
    assoc_of_lie_coeffs,
)


def necklace(w):
    """Lexicographically minimal rotation of a word."""
    if len(w) < 2:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def _merge(d, k, c):
    n = d.get(k, 0) + c
    if n:
        d[k] = n
    else:
        d.pop(k, None)


class EnvElement:
    """Element of U(A) in the variety-specific representation."""

    __slots__ = ("variety", "terms")

    def __init__(self, variety, terms):
        self.variety = variety
        self.terms = {k: c for k, c in terms.items() if c}

    @classmethod
    def zero(cls, variety):
        return cls(variety, {})

    @classmethod
    def one(cls, variety):
        kind = variety.kind
        if kind is Kind.POLYNOMIAL:
            key = (0,) * variety.rank
        elif kind is Kind.FREE_ASSOCIATIVE:
            key = ((), ())
        elif kind is Kind.FREE_LIE:
            key = ()
        else:
            key = (0,) * variety.rank
        return cls(variety, {key: Fraction(1)})

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if (
            other.variety.kind is not self.variety.kind
            or other.variety.rank != self.variety.rank
        ):
            raise VarietyMismatch("envelope elements from different varieties")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _merge(out, k, c)
        return EnvElement(self.variety, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return EnvElement(self.variety, {k: -c for k, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return EnvElement(self.variety, {})
        return EnvElement(self.variety, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return env_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, EnvElement):
            return NotImplemented
        return (
            self.variety.kind is other.variety.kind
            and self.variety.rank == other.variety.rank
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (self.variety.kind, self.variety.rank, frozenset(self.terms.items()))
        )

    def __repr__(self):
        return f"EnvElement({self.variety.kind.value}, {self.terms!r})"


def left_mul(a):
    """The operator L_a as an element of U(A)."""
    var = a.variety
    kind = var.kind
    if kind is Kind.POLYNOMIAL:
        return EnvElement(var, dict(a.coeffs))
    if kind is Kind.FREE_ASSOCIATIVE:
        return EnvElement(var, {(w, ()): c for w, c in a.coeffs.items()})
    if kind is Kind.FREE_LIE:
        return EnvElement(var, assoc_of_lie_coeffs(a.coeffs))
    # metabelian: L of any bracket lies in R, only the linear part survives
    terms = {}
    for mono, c in a.coeffs.items():
        if len(mono) == 1:
            key = tuple(1 if j == mono[0] else 0 for j in range(var.rank))
            _merge(terms, key, c)
    return EnvElement(var, terms)


def right_mul(a):
    """The operator R_a; in Lie varieties R_a = -L_a."""
    var = a.variety
    kind = var.kind
    if kind is Kind.POLYNOMIAL:
        return EnvElement(var, dict(a.coeffs))
    if kind is Kind.FREE_ASSOCIATIVE:
        return EnvElement(var, {((), w): c for w, c in a.coeffs.items()})
    return -left_mul(a)


def env_mul(u, v):
    """Associative product of U in the chosen representation."""
    u._check(v)
    kind = u.variety.kind
    out = {}
    if kind is Kind.POLYNOMIAL or kind is Kind.METABELIAN_LIE:
        for k1, c1 in u.terms.items():
            for k2, c2 in v.terms.items():
                _merge(out, tuple(a + b for a, b in zip(k1, k2)), c1 * c2)
    elif kind is Kind.FREE_ASSOCIATIVE:
        # (a(x)b)(c(x)d) = ac (x) db: right factors compose in A^op
        for (a, b), c1 in u.terms.items():
            for (c, d), c2 in v.terms.items():
                _merge(out, (a + c, d + b), c1 * c2)
    else:  # free Lie: word concatenation
        for k1, c1 in u.terms.items():
            for k2, c2 in v.terms.items():
                _merge(out, k1 + k2, c1 * c2)
    return EnvElement(u.variety, out)


def env_apply(u, m):
    """Apply the operator u to an algebra element m.

    For the Lie kinds the generators of U act via ad.  For the metabelian
    kind the t_i are applied in ascending generator order; the action is a
    genuine U/R-module action on the derived subalgebra (where the ad's
    commute) and order-dependent only outside it.
    """
    if not isinstance(m, Element):
        raise TypeError("env_apply expects an algebra Element")
    if (
        m.variety.kind is not u.variety.kind
        or m.variety.rank != u.variety.rank
    ):
        raise VarietyMismatch("operator and operand from different varieties")
    var = m.variety
    kind = var.kind
    out = var.zero()
    if kind is Kind.POLYNOMIAL:
        return Element(var, u.terms) * m
    if kind is Kind.FREE_ASSOCIATIVE:
        for (a, b), c in u.terms.items():
            out = out + (Element(var, {a: Fraction(1)}) * m * Element(var, {b: Fraction(1)})).scale(c)
        return out
    if kind is Kind.FREE_LIE:
        for w, c in u.terms.items():
            acc = m
            for letter in reversed(w):
                acc = var.gen(letter) * acc
            out = out + acc.scale(c)
        return out
    for exps, c in u.terms.items():
        acc = m
        for i, e in enumerate(exps):
            for _ in range(e):
                acc = var.gen(i) * acc
        out = out + acc.scale(c)
    return out


class TraceClass:
    """Normal form in U/([U,U]+R), the codomain of divergence."""

    __slots__ = ("variety", "terms")

    def __init__(self, variety, terms):
        self.variety = variety
        self.terms = {k: c for k, c in terms.items() if c}

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if (
            other.variety.kind is not self.variety.kind
            or other.variety.rank != self.variety.rank
        ):
            raise VarietyMismatch("trace classes from different varieties")
        out = dict(self.terms)
        for k, c in other.terms.items():
            _merge(out, k, c)
        return TraceClass(self.variety, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TraceClass(self.variety, {k: -c for k, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        return TraceClass(self.variety, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TraceClass):
            return NotImplemented
        return (
            self.variety.kind is other.variety.kind
            and self.variety.rank == other.variety.rank
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (self.variety.kind, self.variety.rank, frozenset(self.terms.items()))
        )

    def __repr__(self):
        return f"TraceClass({self.variety.kind.value}, {self.terms!r})"

    def lift(self):
        """Some EnvElement representative (necklace keys read as words)."""
        return EnvElement(self.variety, dict(self.terms))


def _signed_join(parts):
    out = []
    for sign, body in parts:
        if not out:
            out.append(body if sign > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if sign > 0 else f"- {body}")
    return " ".join(out)


def _env_key_str(variety, key):
    kind = variety.kind
    names = variety.names
    if kind is Kind.POLYNOMIAL:
        from .freealg import mono_str

        return mono_str(variety, key)
    if kind is Kind.FREE_ASSOCIATIVE:
        a, b = key
        sa = "*".join(names[i] for i in a) if a else "1"
        sb = "*".join(names[i] for i in b) if b else "1"
        return f"{sa}(x){sb}"
    if kind is Kind.FREE_LIE:
        return "*".join(names[i] for i in key) if key else "1"
    parts = [f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}" for i, e in enumerate(key) if e]
    return "*".join(parts) if parts else "1"


def _terms_str(variety, terms):
    if not terms:
        return "0"
    parts = []
    for key in sorted(terms, key=lambda k: (_env_key_deg(variety.kind, k), k)):
        c = terms[key]
        ks = _env_key_str(variety, key)
        if ks == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = ks
        else:
            body = f"{abs(c)}*{ks}"
        parts.append((1 if c > 0 else -1, body))
    return _signed_join(parts)


def _env_key_deg(kind, key):
    if kind is Kind.POLYNOMIAL or kind is Kind.METABELIAN_LIE:
        return sum(key)
    if kind is Kind.FREE_ASSOCIATIVE:
        return len(key[0]) + len(key[1])
    return len(key)


def env_str(u):
    """Deterministic plain-text form of an EnvElement (deglex term order)."""
    return _terms_str(u.variety, u.terms)


def trace_str(t):
    """Deterministic plain-text form of a TraceClass."""
    return _terms_str(t.variety, t.terms)


def trace_class(u):
    """Canonical image of u in U/([U,U]+R)."""
    kind = u.variety.kind
    if kind is Kind.POLYNOMIAL or kind is Kind.METABELIAN_LIE:
        return TraceClass(u.variety, dict(u.terms))
    out = {}
    if kind is Kind.FREE_ASSOCIATIVE:
        for (a, b), c in u.terms.items():
            _merge(out, (necklace(a), necklace(b)), c)
    else:
        for w, c in u.terms.items():
            _merge(out, necklace(w), c)
    return TraceClass(u.variety, out)
