"""Derivations of a free algebra: Leibniz action, grading, the
left-symmetric product, the extension to U, and divergence.

Grading convention: a derivation with all coordinates in A_{i+1} is
homogeneous of degree i, written D in L_i.  With the left-symmetric
product D1 . D2 = D_{D1(coords of D2)} and bracket [D1,D2] = D1.D2 - D2.D1
the Euler derivation E = x_1 d_1 + ... + x_n d_n satisfies [E, D] = i * D
for homogeneous D in L_i (verified by direct computation; see the tests).
"""
from __future__ import annotations

from fractions import Fraction

from .freealg import (
    AlgebraError,
    Element,
    Kind,
    Variety,
    VarietyMismatch,
    standard_factorization,
)
from .envelope import EnvElement, TraceClass, left_mul, trace_class, _merge
from .fox import fox_derivative, jacobian_of_tuple


class Derivation:
    """D = f_1 d_1 + ... + f_n d_n, stored by its coordinate tuple."""

    __slots__ = ("variety", "coords")

    def __init__(self, variety, coords):
        coords = tuple(coords)
        if len(coords) != variety.rank:
            raise AlgebraError("need one coordinate per generator")
        for f in coords:
            if f.variety.kind is not variety.kind or f.variety.rank != variety.rank:
                raise VarietyMismatch("derivation coordinate in a different algebra")
        self.variety = variety
        self.coords = coords

    @classmethod
    def zero(cls, variety):
        z = variety.zero()
        return cls(variety, (z,) * variety.rank)

    @classmethod
    def euler(cls, variety):
        return cls(variety, variety.gens())

    def coords_tuple(self):
        return self.coords

    def is_zero(self):
        return all(f.is_zero() for f in self.coords)

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.variety == other.variety and self.coords == other.coords

    def __hash__(self):
        return hash((self.variety, self.coords))

    def __add__(self, other):
        self._check(other)
        return Derivation(
            self.variety, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Derivation(self.variety, tuple(-f for f in self.coords))

    def scale(self, c):
        return Derivation(self.variety, tuple(f.scale(c) for f in self.coords))

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def _check(self, other):
        if self.variety != other.variety:
            raise VarietyMismatch("derivations over different varieties")

    # -- grading ------------------------------------------------------------

    def homogeneous_degree(self):
        """i such that D lies in L_i, or None if D is zero or mixed."""
        degs = set()
        for f in self.coords:
            degs.update(f.homogeneous_components())
        if len(degs) != 1:
            return None
        return degs.pop() - 1

    def graded_parts(self):
        """Decompose into homogeneous parts; dict degree i -> part in L_i."""
        out = {}
        for k, f in enumerate(self.coords):
            for d, part in f.homogeneous_components().items():
                if d - 1 not in out:
                    out[d - 1] = [self.variety.zero()] * self.variety.rank
                out[d - 1][k] = part
        return {i: Derivation(self.variety, tuple(cs)) for i, cs in sorted(out.items())}

    # -- action on A --------------------------------------------------------

    def apply(self, a):
        """Leibniz extension of x_i -> coords[i]."""
        if a.variety.kind is not self.variety.kind or a.variety.rank != self.variety.rank:
            raise VarietyMismatch("argument lives in a different algebra")
        var = a.variety
        kind = var.kind
        out = var.zero()
        memo = {}
        for mono, c in a.coeffs.items():
            out = out + self._apply_mono(mono, var, kind, memo).scale(c)
        return out

    def _apply_mono(self, mono, var, kind, memo):
        got = memo.get(mono)
        if got is not None:
            return got
        if kind is Kind.POLYNOMIAL:
            res = var.zero()
            for i, e in enumerate(mono):
                if e:
                    rest = mono[:i] + (e - 1,) + mono[i + 1 :]
                    res = res + (Element(var, {rest: Fraction(e)}) * self.coords[i])
        elif kind is Kind.FREE_ASSOCIATIVE:
            res = var.zero()
            for j, letter in enumerate(mono):
                pre = Element(var, {mono[:j]: Fraction(1)})
                suf = Element(var, {mono[j + 1 :]: Fraction(1)})
                res = res + pre * self.coords[letter] * suf
        elif kind is Kind.FREE_LIE:
            if len(mono) == 1:
                res = self.coords[mono[0]]
            else:
                u, v = standard_factorization(mono)
                eu = Element(var, {u: Fraction(1)})
                ev = Element(var, {v: Fraction(1)})
                res = self._apply_mono(u, var, kind, memo) * ev + eu * self._apply_mono(
                    v, var, kind, memo
                )
        else:  # metabelian: fold the left-normed bracket
            val = var.gen(mono[0])
            dval = self.coords[mono[0]]
            for j in mono[1:]:
                gj = var.gen(j)
                dval = dval * gj + val * self.coords[j]
                val = val * gj
            res = dval
        memo[mono] = res
        return res

    # -- left-symmetric structure -------------------------------------------

    def lsym(self, other):
        """Left-symmetric product D1 . D2 = D_{D1(coords of D2)}."""
        self._check(other)
        return Derivation(self.variety, tuple(self.apply(g) for g in other.coords))

    def bracket(self, other):
        return self.lsym(other) - other.lsym(self)

    # -- extension to U -----------------------------------------------------

    def star_extend(self, u):
        """The derivation D* of U with D*(L_a) = L_{D(a)}, D*(R_a) = R_{D(a)},
        applied to u (factor-wise Leibniz on the stored keys)."""
        if u.variety.kind is not self.variety.kind or u.variety.rank != self.variety.rank:
            raise VarietyMismatch("envelope element from a different variety")
        var = u.variety
        kind = var.kind
        if kind is Kind.POLYNOMIAL:
            return EnvElement(var, self.apply(Element(var, u.terms)).coeffs)
        out = {}
        if kind is Kind.FREE_ASSOCIATIVE:
            for (a, b), c in u.terms.items():
                da = self.apply(Element(var, {a: Fraction(1)}))
                db = self.apply(Element(var, {b: Fraction(1)}))
                for wa, ca in da.coeffs.items():
                    _merge(out, (wa, b), c * ca)
                for wb, cb in db.coeffs.items():
                    _merge(out, (a, wb), c * cb)
            return EnvElement(var, out)
        if kind is Kind.FREE_LIE:
            # associative derivation of U(L_n) with x_i -> assoc image of D(x_i)
            images = [left_mul(f).terms for f in self.coords]
            for w, c in u.terms.items():
                for j, letter in enumerate(w):
                    for img, ci in images[letter].items():
                        _merge(out, w[:j] + img + w[j + 1 :], c * ci)
            return EnvElement(var, out)
        # metabelian: t_i -> image of L_{D(y_i)} in U/R (its linear part)
        images = [left_mul(f).terms for f in self.coords]
        for exps, c in u.terms.items():
            for i, e in enumerate(exps):
                if e:
                    lowered = exps[:i] + (e - 1,) + exps[i + 1 :]
                    for img, ci in images[i].items():
                        _merge(
                            out,
                            tuple(a + b for a, b in zip(lowered, img)),
                            c * ci * e,
                        )
        return EnvElement(var, out)

    def star_trace(self, tc):
        """D* descended to the trace codomain: lift each necklace to a
        representative word, extend, and re-normalize."""
        return trace_class(self.star_extend(tc.lift()))

    def jacobian(self):
        return jacobian_of_tuple(self.coords, self.variety)

    def __repr__(self):
        names = self.variety.names
        parts = [
            f"({f!s})d_{names[i]}"
            for i, f in enumerate(self.coords)
            if not f.is_zero()
        ]
        return " + ".join(parts) if parts else "0"


class DivergenceValue:
    """The divergence of a derivation, a TraceClass in U/([U,U]+R)."""

    __slots__ = ("trace",)

    def __init__(self, trace):
        self.trace = trace

    def is_zero(self):
        return self.trace.is_zero()

    def __eq__(self, other):
        if not isinstance(other, DivergenceValue):
            return NotImplemented
        return self.trace == other.trace

    def __hash__(self):
        return hash(self.trace)

    def __repr__(self):
        return f"DivergenceValue({self.trace!r})"


def divergence(D):
    """div(D) = class of sum_i d(f_i)/dx_i in U/([U,U]+R)."""
    acc = EnvElement.zero(D.variety)
    for i, f in enumerate(D.coords):
        acc = acc + fox_derivative(f, i)
    return DivergenceValue(trace_class(acc))
