"""Endomorphisms of a free algebra: composition, truncated inverses, the
IA filtration, tangent derivations, group commutators, conjugation, and
the standard generators (linear / affine / elementary).

Composition convention, fixed once and used everywhere including the
chain rule: ``compose(phi, psi)`` is the map ``x_k -> phi(psi(x_k))``,
i.e. the group product ``phi psi`` (apply psi, then phi).  On coordinate
tuples this is the substitution of phi's images into psi's coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .freealg import (
    AlgebraError,
    Element,
    Kind,
    Variety,
    VarietyMismatch,
)
from .deriv import Derivation
from . import linalg


class NotIA(AlgebraError):
    """The endomorphism has no tangent (it is not an IA map)."""


class NotInvertible(AlgebraError):
    pass


DEFAULT_MAX_DEGREE = 12


class Endomorphism:
    """phi = (f_1, ..., f_n), acting by x_i -> f_i.

    This class models formal endomorphisms; automorphism status is never
    decided in general.  A map is certified invertible only through
    explicit composition checks (exact or truncated).
    """

    __slots__ = ("variety", "images")

    def __init__(self, variety, images):
        images = tuple(images)
        if len(images) != variety.rank:
            raise AlgebraError("need one image per generator")
        for f in images:
            if f.variety.kind is not variety.kind or f.variety.rank != variety.rank:
                raise VarietyMismatch("image lives in a different algebra")
            if variety.is_lie and not f.is_zero() and f.min_degree() == 0:
                raise AlgebraError("constant image part in a Lie variety")
        self.variety = variety
        self.images = images

    @classmethod
    def identity(cls, variety):
        return cls(variety, variety.gens())

    def coords_tuple(self):
        return self.images

    def apply(self, a):
        return a.substitute(self.images)

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.variety == other.variety and self.images == other.images

    def __hash__(self):
        return hash((self.variety, self.images))

    def truncate(self, k):
        return Endomorphism(self.variety, tuple(f.truncate(k) for f in self.images))

    def is_identity(self):
        return self == Endomorphism.identity(self.variety)

    def is_identity_through(self, k):
        return self.truncate(k) == Endomorphism.identity(self.variety)

    def linear_part(self):
        """Matrix g with phi(x_i) = sum_j g[i][j] x_j + higher order."""
        n = self.variety.rank
        gens = self.variety.gens()
        mat = []
        for f in self.images:
            lin = f.homogeneous_component(1)
            row = [lin.coeffs.get(next(iter(gens[j].coeffs)), Fraction(0)) for j in range(n)]
            mat.append(row)
        return mat

    def constant_part(self):
        return tuple(f.constant_term() for f in self.images)

    def __repr__(self):
        imgs = ", ".join(str(f) for f in self.images)
        return f"({imgs})"


def compose(phi, psi, max_degree=None, _memo=None):
    """The group product phi psi: x_k -> phi(psi(x_k)).

    With ``max_degree`` set, all terms above that degree are dropped
    (valid truncated-series arithmetic: degrees only grow under
    substitution, so the result is exact through ``max_degree``).
    """
    if phi.variety != psi.variety:
        raise VarietyMismatch("endomorphisms over different varieties")
    memo = {} if _memo is None else _memo
    images = []
    for g in psi.images:
        if max_degree is not None:
            g = g.truncate(max_degree)
        images.append(g.substitute(phi.images, max_degree=max_degree, _memo=memo))
    return Endomorphism(phi.variety, tuple(images))


def compose_all(maps, max_degree=None):
    out = maps[0]
    for m in maps[1:]:
        out = compose(out, m, max_degree=max_degree)
    return out


@dataclass(frozen=True)
class FiltrationLevel:
    """Position of an endomorphism in the IA filtration.

    status is one of "not-ia", "level" (with ``i`` set), or "identity"
    meaning identity-to-degree-infinity within the truncation bound.
    """

    status: str
    i: int = 0
    bound: int = DEFAULT_MAX_DEGREE

    @property
    def is_ia(self):
        return self.status != "not-ia"

    def __str__(self):
        if self.status == "not-ia":
            return "not IA"
        if self.status == "identity":
            return f"identity through degree {self.bound}"
        return f"IA({self.i})"


def ia_level(phi, max_degree=DEFAULT_MAX_DEGREE):
    """Least i with a nonzero degree-(i+1) deviation from the identity."""
    idn = Endomorphism.identity(phi.variety)
    lowest = None
    for f, x in zip(phi.images, idn.images):
        dev = f - x
        if dev.is_zero():
            continue
        d = dev.min_degree()
        if lowest is None or d < lowest:
            lowest = d
    if lowest is not None and lowest <= 1:
        return FiltrationLevel("not-ia", bound=max_degree)
    if lowest is None or lowest > max_degree:
        return FiltrationLevel("identity", bound=max_degree)
    return FiltrationLevel("level", i=lowest - 1, bound=max_degree)


def tangent(phi, max_degree=DEFAULT_MAX_DEGREE):
    """The tangent derivation T(phi) in L_i for phi in IA(i); T(id) = 0."""
    lev = ia_level(phi, max_degree)
    if not lev.is_ia:
        raise NotIA("tangent is defined only for IA endomorphisms")
    if lev.status == "identity":
        return Derivation.zero(phi.variety)
    idn = Endomorphism.identity(phi.variety)
    coords = tuple(
        (f - x).homogeneous_component(lev.i + 1) for f, x in zip(phi.images, idn.images)
    )
    return Derivation(phi.variety, coords)


def truncated_inverse(phi, k):
    """psi with compose(phi, psi) = identity modulo degree > k.

    Requires an invertible affine part; computed degree by degree by
    successive substitution.
    """
    var = phi.variety
    g = phi.linear_part()
    try:
        ginv = linalg.inverse(g)
    except linalg.SingularMatrix as exc:
        raise NotInvertible("linear part is not invertible") from exc
    if var.unital:
        c = phi.constant_part()
        # affine inverse: x -> ginv (x - c)
        shifted = [
            var.gen(j) - var.scalar(c[j]) if c[j] else var.gen(j)
            for j in range(var.rank)
        ]
        base = Endomorphism(
            var, tuple(_linear_combination(var, row, shifted) for row in ginv)
        )
    else:
        base = linear(var, ginv)
    idn = Endomorphism.identity(var)
    # both memos stay valid across iterations: each caches substitution
    # into a fixed tuple of args at a fixed truncation degree
    phi_memo = {}
    base_memo = {}
    psi_imgs = list(base.images)
    # residual_j = psi_j evaluated at phi's images; substitution is
    # linear in psi_j, so each correction updates the residual with a
    # single (small) substitution instead of recomposing all of psi
    res_imgs = [
        g.substitute(phi.images, max_degree=k, _memo=phi_memo) for g in base.images
    ]
    for _ in range(k + 1):
        devs = [f - x for f, x in zip(res_imgs, idn.images)]
        err_lowest = min(
            (dev.min_degree() for dev in devs if not dev.is_zero()), default=None
        )
        if err_lowest is None:
            break
        for j in range(var.rank):
            dev = devs[j].homogeneous_component(err_lowest)
            if dev.is_zero():
                continue
            delta = -dev.substitute(base.images, max_degree=k, _memo=base_memo)
            psi_imgs[j] = psi_imgs[j] + delta
            res_imgs[j] = res_imgs[j] + delta.substitute(
                phi.images, max_degree=k, _memo=phi_memo
            )
    return Endomorphism(var, tuple(f.truncate(k) for f in psi_imgs))


def _linear_combination(var, row, elements):
    out = var.zero()
    for c, e in zip(row, elements):
        if c:
            out = out + e.scale(c)
    return out


def group_commutator(phi, psi, k):
    """[phi, psi] = phi^-1 psi^-1 phi psi, exact through degree k."""
    phi_inv = truncated_inverse(phi, k)
    psi_inv = truncated_inverse(psi, k)
    return compose_all([phi_inv, psi_inv, phi, psi], max_degree=k)


def linear(variety, g):
    """The linear endomorphism x_i -> sum_j g[i][j] x_j."""
    gens = variety.gens()
    return Endomorphism(
        variety, tuple(_linear_combination(variety, row, gens) for row in g)
    )


def affine(variety, g, consts):
    """x_i -> sum_j g[i][j] x_j + consts[i]; unital varieties only."""
    if not variety.unital:
        raise AlgebraError("affine maps need constants; variety is not unital")
    lin = linear(variety, g)
    return Endomorphism(
        variety,
        tuple(
            f + variety.scalar(c) if c else f for f, c in zip(lin.images, consts)
        ),
    )


def elementary(variety, i, alpha, f):
    """(x_1, ..., alpha x_i + f, ..., x_n) with f free of x_i."""
    alpha = Fraction(alpha)
    if alpha == 0:
        raise AlgebraError("elementary automorphism needs a nonzero scalar")
    if f.involves(i):
        raise AlgebraError("the added element may not involve the changed generator")
    if f.variety.kind is not variety.kind or f.variety.rank != variety.rank:
        raise VarietyMismatch("added element lives in a different algebra")
    images = list(variety.gens())
    images[i] = images[i].scale(alpha) + f
    return Endomorphism(variety, tuple(images))


def conjugate(g, phi):
    """alpha phi alpha^-1 for the linear map alpha with matrix g."""
    var = phi.variety
    alpha = linear(var, g)
    alpha_inv = linear(var, linalg.inverse(g))
    return compose(alpha, compose(phi, alpha_inv))


def conjugate_derivation(g, D):
    """alpha D alpha^-1 as a derivation: x_k -> alpha(D(alpha^-1(x_k)))."""
    var = D.variety
    alpha = linear(var, g)
    alpha_inv = linear(var, linalg.inverse(g))
    return Derivation(
        var, tuple(alpha.apply(D.apply(f)) for f in alpha_inv.images)
    )


def ia_correct(phi):
    """Compose phi with the inverse of its affine part (a member of G_n)
    so the result is an IA candidate; returns None if the linear part is
    singular."""
    var = phi.variety
    g = phi.linear_part()
    try:
        ginv = linalg.inverse(g)
    except linalg.SingularMatrix:
        return None
    if var.unital:
        c = phi.constant_part()
        corr_c = tuple(
            -sum((ginv[i][j] * c[j] for j in range(var.rank)), Fraction(0))
            for i in range(var.rank)
        )
        corr = affine(var, ginv, corr_c)
    else:
        corr = linear(var, ginv)
    # corr undoes the affine part when its images are evaluated at phi's
    # coordinates, which is this composition order
    return compose(phi, corr)
