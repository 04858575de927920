"""Exact arithmetic in free algebras of four varieties.

Supported varieties: commutative polynomials, free associative algebras,
free Lie algebras (Lyndon-word basis with standard bracketing), and free
metabelian Lie algebras (left-normed bracket basis).  Coefficients are
arbitrary-precision rationals throughout; there is no floating point
anywhere in this package.

Monomial keys per variety:

* polynomial        -- exponent vector, a tuple of ``rank`` nonnegative ints
* free associative  -- word, a tuple of generator indices (empty = 1)
* free Lie          -- Lyndon word (its standard bracketing is implied)
* metabelian Lie    -- ``(i,)`` for the generator ``y_i``, or a flat tuple
                       ``(i1, i2, i3, ..., im)`` with ``i1 > i2 <= i3 <= ...``
                       encoding the left-normed bracket
                       ``[y_i1, y_i2, y_i3, ..., y_im]``

All values are immutable after construction and all operations are pure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction


class AlgebraError(ValueError):
    """Base class for exact-algebra usage errors."""


class VarietyMismatch(AlgebraError):
    """Operands live in different varieties (kind or rank differ)."""


class ConstantInLieVariety(AlgebraError):
    """Attempt to build a degree-0 element of a non-unital variety."""


class Kind(Enum):
    POLYNOMIAL = "polynomial"
    FREE_ASSOCIATIVE = "assoc"
    FREE_LIE = "lie"
    METABELIAN_LIE = "metabelian"


_UNITAL = frozenset({Kind.POLYNOMIAL, Kind.FREE_ASSOCIATIVE})
_LIE_KINDS = frozenset({Kind.FREE_LIE, Kind.METABELIAN_LIE})


def _default_names(kind, rank):
    prefix = "y" if kind is Kind.METABELIAN_LIE else "x"
    return tuple(f"{prefix}{i + 1}" for i in range(rank))


@dataclass(frozen=True)
class Variety:
    """A free algebra's variety: kind plus number of generators.

    Generator names are cosmetic (used for printing only) and excluded
    from equality.
    """

    kind: Kind
    rank: int
    names: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.rank < 1:
            raise AlgebraError("rank must be >= 1")
        if not self.names:
            object.__setattr__(self, "names", _default_names(self.kind, self.rank))
        elif len(self.names) != self.rank:
            raise AlgebraError("need exactly one name per generator")

    @property
    def unital(self):
        return self.kind in _UNITAL

    @property
    def is_lie(self):
        return self.kind in _LIE_KINDS

    def gen(self, i):
        """The i-th generator (0-based) as an Element."""
        if not 0 <= i < self.rank:
            raise AlgebraError(f"generator index {i} out of range for rank {self.rank}")
        if self.kind is Kind.POLYNOMIAL:
            mono = tuple(1 if j == i else 0 for j in range(self.rank))
        else:
            mono = (i,)
        return Element(self, {mono: Fraction(1)})

    def gens(self):
        return tuple(self.gen(i) for i in range(self.rank))

    def zero(self):
        return Element(self, {})

    def one(self):
        return self.scalar(1)

    def scalar(self, c):
        c = Fraction(c)
        if c == 0:
            return self.zero()
        if not self.unital:
            raise ConstantInLieVariety(
                f"no constants in the non-unital variety {self.kind.value}"
            )
        if self.kind is Kind.POLYNOMIAL:
            mono = (0,) * self.rank
        else:
            mono = ()
        return Element(self, {mono: c})


def polynomial(rank, names=()):
    return Variety(Kind.POLYNOMIAL, rank, tuple(names))


def free_associative(rank, names=()):
    return Variety(Kind.FREE_ASSOCIATIVE, rank, tuple(names))


def free_lie(rank, names=()):
    return Variety(Kind.FREE_LIE, rank, tuple(names))


def metabelian_lie(rank, names=()):
    return Variety(Kind.METABELIAN_LIE, rank, tuple(names))


# ---------------------------------------------------------------------------
# Lyndon words


def is_lyndon(w):
    """True iff the word is strictly smaller than all its proper rotations."""
    if not w:
        return False
    n = len(w)
    return all(w < w[i:] + w[:i] for i in range(1, n))


def standard_factorization(w):
    """Split a Lyndon word of length >= 2 as ``u v`` with ``v`` the
    lexicographically least proper suffix; both parts are Lyndon and the
    standard bracketing is ``[b(u), b(v)]``."""
    assert len(w) >= 2
    best = 1
    for i in range(2, len(w)):
        if w[i:] < w[best:]:
            best = i
    return w[:best], w[best:]


_EXPAND_CACHE = {}


def lyndon_expand(w):
    """Associative expansion of the standard bracketing of a Lyndon word,
    as a dict word -> int coefficient.  The word ``w`` itself is the
    lexicographically least term and carries coefficient 1."""
    cached = _EXPAND_CACHE.get(w)
    if cached is not None:
        return cached
    if len(w) == 1:
        res = {w: 1}
    else:
        u, v = standard_factorization(w)
        eu, ev = lyndon_expand(u), lyndon_expand(v)
        res = {}
        for a, ca in eu.items():
            for b, cb in ev.items():
                c = ca * cb
                ab = a + b
                ba = b + a
                res[ab] = res.get(ab, 0) + c
                res[ba] = res.get(ba, 0) - c
        res = {k: c for k, c in res.items() if c}
    _EXPAND_CACHE[w] = res
    return res


def lie_from_assoc(coeffs):
    """Rewrite a homogeneous-by-parts Lie element, given in associative
    form, in the Lyndon basis by triangular elimination."""
    by_len = {}
    for w, c in coeffs.items():
        if c:
            by_len.setdefault(len(w), {})[w] = c
    out = {}
    for _, work in sorted(by_len.items()):
        while work:
            w = min(work)
            c = work.pop(w)
            if not c:
                continue
            if not is_lyndon(w):
                raise AlgebraError(
                    "associative element is not a Lie element "
                    f"(least word {w} is not Lyndon)"
                )
            out[w] = out.get(w, 0) + c
            for v, cv in lyndon_expand(w).items():
                if v == w:
                    continue
                nv = work.get(v, 0) - c * cv
                if nv:
                    work[v] = nv
                else:
                    work.pop(v, None)
    return {w: c for w, c in out.items() if c}


def assoc_of_lie_coeffs(coeffs):
    """Associative expansion of a Lie element given in the Lyndon basis."""
    out = {}
    for w, c in coeffs.items():
        for v, cv in lyndon_expand(w).items():
            nv = out.get(v, 0) + c * cv
            if nv:
                out[v] = nv
            else:
                out.pop(v, None)
    return out


# ---------------------------------------------------------------------------
# Free metabelian Lie basis rewriting
#
# Basis keys: (i,) for generators, (i1, i2, t3, ..., tm) with
# i1 > i2 <= t3 <= ... <= tm for left-normed brackets.  Positions >= 3
# commute because the prefix already lies in the derived subalgebra.


def _mb_append(key, g):
    """Left-normed bracket [key, y_g] rewritten in the basis.

    If g >= i2 the letter joins the sorted tail directly; otherwise the
    Jacobi identity at the front gives two basis terms.
    """
    i1, i2, tail = key[0], key[1], key[2:]
    if g >= i2:
        return {(i1, i2) + tuple(sorted(tail + (g,))): 1}
    return {
        (i1, g) + tuple(sorted(tail + (i2,))): 1,
        (i2, g) + tuple(sorted(tail + (i1,))): -1,
    }


def _mb_pair(a, b):
    if a == b:
        return {}
    if a > b:
        return {(a, b): 1}
    return {(b, a): -1}


def _mb_mul_mono(m1, m2):
    if len(m1) == 1 and len(m2) == 1:
        return _mb_pair(m1[0], m2[0])
    if len(m1) >= 2 and len(m2) == 1:
        return _mb_append(m1, m2[0])
    if len(m1) == 1 and len(m2) >= 2:
        # [y_a, B] = -[B, y_a]
        return {k: -c for k, c in _mb_append(m2, m1[0]).items()}
    # [[.,.],[.,.]] = 0 in a metabelian Lie algebra
    return {}


# ---------------------------------------------------------------------------
# Elements


def _mono_degree(kind, mono):
    if kind is Kind.POLYNOMIAL:
        return sum(mono)
    return len(mono)


class Element:
    """A finite rational linear combination of canonical monomials.

    ``coeffs`` maps monomial keys to nonzero Fractions.  Instances are
    immutable by convention; arithmetic returns fresh objects.
    """

    __slots__ = ("variety", "coeffs")

    def __init__(self, variety, coeffs):
        self.variety = variety
        self.coeffs = {m: c for m, c in coeffs.items() if c}

    @classmethod
    def _raw(cls, variety, coeffs):
        """Internal: wrap a dict already free of zero coefficients."""
        e = object.__new__(cls)
        e.variety = variety
        e.coeffs = coeffs
        return e

    # -- basic queries ------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Maximal monomial degree, or None for the zero element."""
        if not self.coeffs:
            return None
        return max(_mono_degree(self.variety.kind, m) for m in self.coeffs)

    def min_degree(self):
        if not self.coeffs:
            return None
        return min(_mono_degree(self.variety.kind, m) for m in self.coeffs)

    def homogeneous_component(self, k):
        if k < 0:
            raise AlgebraError("degree must be >= 0")
        kind = self.variety.kind
        return Element(
            self.variety,
            {m: c for m, c in self.coeffs.items() if _mono_degree(kind, m) == k},
        )

    def homogeneous_components(self):
        """Dict degree -> homogeneous part; the parts sum back to self."""
        kind = self.variety.kind
        parts = {}
        for m, c in self.coeffs.items():
            parts.setdefault(_mono_degree(kind, m), {})[m] = c
        return {k: Element(self.variety, d) for k, d in sorted(parts.items())}

    def truncate(self, k):
        """Drop all terms of degree > k."""
        kind = self.variety.kind
        return Element(
            self.variety,
            {m: c for m, c in self.coeffs.items() if _mono_degree(kind, m) <= k},
        )

    def constant_term(self):
        if self.variety.kind is Kind.POLYNOMIAL:
            return self.coeffs.get((0,) * self.variety.rank, Fraction(0))
        if self.variety.kind is Kind.FREE_ASSOCIATIVE:
            return self.coeffs.get((), Fraction(0))
        return Fraction(0)

    def involves(self, i):
        """True iff generator i occurs in some monomial."""
        if self.variety.kind is Kind.POLYNOMIAL:
            return any(m[i] for m in self.coeffs)
        return any(i in m for m in self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if (
            other.variety.kind is not self.variety.kind
            or other.variety.rank != self.variety.rank
        ):
            raise VarietyMismatch(
                f"{self.variety.kind.value}(rank {self.variety.rank}) vs "
                f"{other.variety.kind.value}(rank {other.variety.rank})"
            )

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            n = out.get(m, 0) + c
            if n:
                out[m] = n
            else:
                out.pop(m, None)
        return Element._raw(self.variety, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Element._raw(self.variety, {m: -c for m, c in self.coeffs.items()})

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return Element._raw(self.variety, {})
        return Element._raw(self.variety, {m: c * v for m, v in self.coeffs.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        """The variety's product; for Lie varieties this is the bracket."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        kind = self.variety.kind
        if kind is Kind.POLYNOMIAL:
            out = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    n = out.get(m, 0) + c1 * c2
                    if n:
                        out[m] = n
                    else:
                        out.pop(m, None)
            return Element._raw(self.variety, out)
        if kind is Kind.FREE_ASSOCIATIVE:
            out = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    m = m1 + m2
                    n = out.get(m, 0) + c1 * c2
                    if n:
                        out[m] = n
                    else:
                        out.pop(m, None)
            return Element._raw(self.variety, out)
        if kind is Kind.FREE_LIE:
            a = assoc_of_lie_coeffs(self.coeffs)
            b = assoc_of_lie_coeffs(other.coeffs)
            comm = {}
            for m1, c1 in a.items():
                for m2, c2 in b.items():
                    c = c1 * c2
                    for m, s in ((m1 + m2, c), (m2 + m1, -c)):
                        n = comm.get(m, 0) + s
                        if n:
                            comm[m] = n
                        else:
                            comm.pop(m, None)
            return Element(self.variety, lie_from_assoc(comm))
        # metabelian Lie
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                c = c1 * c2
                for m, s in _mb_mul_mono(m1, m2).items():
                    n = out.get(m, 0) + c * s
                    if n:
                        out[m] = n
                    else:
                        out.pop(m, None)
        return Element._raw(self.variety, out)

    def mul_trunc(self, other, k):
        """``(self * other).truncate(k)`` without forming the dropped
        terms: monomial pairs whose degrees sum past ``k`` are skipped.
        ``k`` may be None for the plain product."""
        if k is None:
            return self * other
        self._check(other)
        kind = self.variety.kind
        if kind is Kind.FREE_LIE:
            a = assoc_of_lie_coeffs(self.coeffs)
            b = assoc_of_lie_coeffs(other.coeffs)
            comm = {}
            for m1, c1 in a.items():
                room = k - len(m1)
                for m2, c2 in b.items():
                    if len(m2) > room:
                        continue
                    c = c1 * c2
                    for m, s in ((m1 + m2, c), (m2 + m1, -c)):
                        n = comm.get(m, 0) + s
                        if n:
                            comm[m] = n
                        else:
                            comm.pop(m, None)
            return Element(self.variety, lie_from_assoc(comm))
        out = {}
        if kind is Kind.POLYNOMIAL:
            for m1, c1 in self.coeffs.items():
                room = k - sum(m1)
                for m2, c2 in other.coeffs.items():
                    if sum(m2) > room:
                        continue
                    m = tuple(a + b for a, b in zip(m1, m2))
                    n = out.get(m, 0) + c1 * c2
                    if n:
                        out[m] = n
                    else:
                        out.pop(m, None)
            return Element._raw(self.variety, out)
        if kind is Kind.FREE_ASSOCIATIVE:
            for m1, c1 in self.coeffs.items():
                room = k - len(m1)
                for m2, c2 in other.coeffs.items():
                    if len(m2) > room:
                        continue
                    m = m1 + m2
                    n = out.get(m, 0) + c1 * c2
                    if n:
                        out[m] = n
                    else:
                        out.pop(m, None)
            return Element._raw(self.variety, out)
        # metabelian Lie
        for m1, c1 in self.coeffs.items():
            room = k - len(m1)
            for m2, c2 in other.coeffs.items():
                if len(m2) > room:
                    continue
                c = c1 * c2
                for m, s in _mb_mul_mono(m1, m2).items():
                    n = out.get(m, 0) + c * s
                    if n:
                        out[m] = n
                    else:
                        out.pop(m, None)
        return Element._raw(self.variety, out)

    def power(self, k):
        if self.variety.is_lie:
            raise AlgebraError("powers are not defined in Lie varieties")
        if k < 0:
            raise AlgebraError("negative power")
        out = self.variety.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.variety.kind is other.variety.kind
            and self.variety.rank == other.variety.rank
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(
            (self.variety.kind, self.variety.rank, frozenset(self.coeffs.items()))
        )

    # -- substitution -------------------------------------------------------

    def substitute(self, args, max_degree=None, _memo=None):
        """Image under the unique homomorphism x_i -> args[i].

        The args must all live in one algebra of the same variety kind;
        the rank of the target may differ from the source rank.  With
        ``max_degree`` set, terms above that degree are dropped as soon
        as they appear (sound because degrees only grow under products),
        which keeps intermediate results small.

        ``_memo`` is a private cache of monomial images; callers that
        substitute many elements into the *same* args at the same
        ``max_degree`` (e.g. composition, iterated inversion) may pass
        one dict through all calls to share the work.
        """
        if len(args) != self.variety.rank:
            raise AlgebraError(
                f"expected {self.variety.rank} substitution arguments, got {len(args)}"
            )
        if not args:
            raise AlgebraError("rank-0 substitution")
        target = args[0].variety
        for a in args:
            if not isinstance(a, Element):
                raise TypeError("substitution arguments must be Elements")
            if a.variety.kind is not target.kind or a.variety.rank != target.rank:
                raise VarietyMismatch("substitution arguments live in different algebras")
        if target.kind is not self.variety.kind:
            raise VarietyMismatch(
                f"cannot substitute {target.kind.value} values into a "
                f"{self.variety.kind.value} element"
            )
        kind = self.variety.kind
        if kind is Kind.FREE_LIE:
            # substitute in the associative envelope (word products are
            # cheap and bounded at any truncation degree) and convert to
            # the Lyndon basis once at the end
            src = Variety(Kind.FREE_ASSOCIATIVE, self.variety.rank)
            tgt = Variety(Kind.FREE_ASSOCIATIVE, target.rank)
            a_self = Element(src, {w: Fraction(c) for w, c in assoc_of_lie_coeffs(self.coeffs).items()})
            memo = {} if _memo is None else _memo
            a_args = memo.get(("__lie_args__",))
            if a_args is None:
                a_args = tuple(
                    Element(tgt, {w: Fraction(c) for w, c in assoc_of_lie_coeffs(a.coeffs).items()})
                    for a in args
                )
                memo[("__lie_args__",)] = a_args
            res = a_self.substitute(a_args, max_degree=max_degree, _memo=memo)
            return Element(target, lie_from_assoc(res.coeffs))
        memo = {} if _memo is None else _memo
        acc = {}
        for mono, c in self.coeffs.items():
            term = self._subst_mono(mono, args, target, memo, kind, max_degree)
            for m, tc in term.coeffs.items():
                n = acc.get(m, 0) + c * tc
                if n:
                    acc[m] = n
                else:
                    acc.pop(m, None)
        return Element._raw(target, acc)

    @staticmethod
    def _subst_mono(mono, args, target, memo, kind, max_degree=None):
        got = memo.get(mono)
        if got is not None:
            return got

        def cut(e):
            return e if max_degree is None else e.truncate(max_degree)

        if kind is Kind.POLYNOMIAL:
            res = target.one()
            for i, e in enumerate(mono):
                for _ in range(e):
                    res = res.mul_trunc(args[i], max_degree)
        elif kind is Kind.FREE_ASSOCIATIVE:
            if not mono:
                res = target.one()
            else:
                res = Element._subst_mono(
                    mono[:-1], args, target, memo, kind, max_degree
                ).mul_trunc(args[mono[-1]], max_degree)
        elif kind is Kind.FREE_LIE:
            if len(mono) == 1:
                res = cut(args[mono[0]])
            else:
                u, v = standard_factorization(mono)
                res = Element._subst_mono(
                    u, args, target, memo, kind, max_degree
                ).mul_trunc(
                    Element._subst_mono(v, args, target, memo, kind, max_degree),
                    max_degree,
                )
        else:  # metabelian: left-normed fold
            if len(mono) == 1:
                res = cut(args[mono[0]])
            else:
                res = args[mono[0]].mul_trunc(args[mono[1]], max_degree)
                for j in mono[2:]:
                    res = res.mul_trunc(args[j], max_degree)
        memo[mono] = res
        return res

    # -- printing -----------------------------------------------------------

    def __repr__(self):
        return f"Element({self!s})"

    def __str__(self):
        return element_str(self)


# ---------------------------------------------------------------------------
# Variety-spanning helpers


def project_to_metabelian(e, target=None):
    """Quotient map from a free Lie algebra onto the free metabelian Lie
    algebra of the same rank (kills the second derived subalgebra)."""
    if e.variety.kind is not Kind.FREE_LIE:
        raise VarietyMismatch("projection is defined on free Lie elements")
    if target is None:
        target = metabelian_lie(e.variety.rank)
    return _project_mb(e, target)


def _project_mb(e, target):
    out = target.zero()
    memo = {}
    for mono, c in e.coeffs.items():
        out = out + _mb_of_lyndon(mono, target, memo).scale(c)
    return out


def _mb_of_lyndon(w, target, memo):
    got = memo.get(w)
    if got is not None:
        return got
    if len(w) == 1:
        res = target.gen(w[0])
    else:
        u, v = standard_factorization(w)
        res = _mb_of_lyndon(u, target, memo) * _mb_of_lyndon(v, target, memo)
    memo[w] = res
    return res


def monomials_of_degree(variety, d):
    """All canonical monomial keys of a given degree, deglex-sorted."""
    if d < 0:
        raise AlgebraError("degree must be >= 0")
    n = variety.rank
    kind = variety.kind
    if d == 0:
        if not variety.unital:
            return []
        return [(0,) * n] if kind is Kind.POLYNOMIAL else [()]
    if kind is Kind.POLYNOMIAL:
        out = []
        for bars in itertools.combinations(range(d + n - 1), n - 1):
            prev = -1
            exps = []
            for b in bars:
                exps.append(b - prev - 1)
                prev = b
            exps.append(d + n - 2 - prev)
            out.append(tuple(exps))
        return sorted(out)
    if kind is Kind.FREE_ASSOCIATIVE:
        return sorted(itertools.product(range(n), repeat=d))
    if kind is Kind.FREE_LIE:
        return sorted(
            w for w in itertools.product(range(n), repeat=d) if is_lyndon(w)
        )
    # metabelian
    if d == 1:
        return [(i,) for i in range(n)]
    out = []
    for rest in itertools.combinations_with_replacement(range(n), d - 1):
        for i1 in range(rest[0] + 1, n):
            out.append((i1, rest[0]) + rest[1:])
    return sorted(out)


# ---------------------------------------------------------------------------
# Deterministic printing (deglex term order, rationals in lowest terms)


def _deglex_key(kind, mono):
    return (_mono_degree(kind, mono), mono)


def mono_str(variety, mono):
    names = variety.names
    kind = variety.kind
    if kind is Kind.POLYNOMIAL:
        if not any(mono):
            return "1"
        parts = []
        for i, e in enumerate(mono):
            if e == 1:
                parts.append(names[i])
            elif e > 1:
                parts.append(f"{names[i]}^{e}")
        return "*".join(parts)
    if kind is Kind.FREE_ASSOCIATIVE:
        if not mono:
            return "1"
        return "*".join(names[i] for i in mono)
    if kind is Kind.FREE_LIE:
        return _lyndon_str(mono, names)
    if len(mono) == 1:
        return names[mono[0]]
    s = f"[{names[mono[0]]},{names[mono[1]]}]"
    for j in mono[2:]:
        s = f"[{s},{names[j]}]"
    return s


def _lyndon_str(w, names):
    if len(w) == 1:
        return names[w[0]]
    u, v = standard_factorization(w)
    return f"[{_lyndon_str(u, names)},{_lyndon_str(v, names)}]"


def element_str(e):
    if not e.coeffs:
        return "0"
    kind = e.variety.kind
    parts = []
    for mono in sorted(e.coeffs, key=lambda m: _deglex_key(kind, m)):
        c = e.coeffs[mono]
        ms = mono_str(e.variety, mono)
        if ms == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = ms
        else:
            body = f"{abs(c)}*{ms}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
