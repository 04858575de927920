"""Named corpus of classical (endo)morphisms, both as Python builders
and as shipped script files (executable documentation doubling as
regression material)."""
from __future__ import annotations

from importlib import resources

from .freealg import free_associative, metabelian_lie, polynomial
from .morphism import Endomorphism

CORPUS_NAMES = (
    "nagata",
    "anick",
    "bergman",
    "drensky-exp",
    "tau",
    "chein-cubic",
)


def script_source(name):
    """Source text of a shipped corpus script."""
    if name not in CORPUS_NAMES:
        raise KeyError(f"unknown corpus entry {name!r}")
    ref = resources.files(__package__).joinpath("corpus_scripts", f"{name}.tia")
    return ref.read_text(encoding="utf-8")


def nagata():
    """(x + 2yc + zc^2, y + zc, z) with c = zx - y^2 on K[x,y,z]."""
    P = polynomial(3, ("x", "y", "z"))
    x, y, z = P.gens()
    c = z * x - y * y
    return Endomorphism(P, (x + 2 * y * c + z * c * c, y + z * c, z))


def anick():
    """(x + zc, y + cz, z) with c = xz - zy on K<x,y,z>."""
    A = free_associative(3, ("x", "y", "z"))
    x, y, z = A.gens()
    c = x * z - z * y
    return Endomorphism(A, (x + z * c, y + c * z, z))


def bergman():
    """(x1 + [x1,x2]^2, x2) on K<x1,x2>."""
    A = free_associative(2)
    x1, x2 = A.gens()
    c = x1 * x2 - x2 * x1
    return Endomorphism(A, (x1 + c * c, x2))


def drensky_exp():
    """exp(ad [y1,y2]) on M_3; ad squared vanishes, so this is 1 + ad."""
    M = metabelian_lie(3)
    d = M.gen(0) * M.gen(1)
    return Endomorphism(M, tuple(g + d * g for g in M.gens()))


def tau():
    """(y1 + [y2,y3], y2, y3) on M_3."""
    M = metabelian_lie(3)
    y1, y2, y3 = M.gens()
    return Endomorphism(M, (y1 + y2 * y3, y2, y3))


def chein_cubic():
    """(y1 + [[y2,y3],y1], y2, y3) on M_3."""
    M = metabelian_lie(3)
    y1, y2, y3 = M.gens()
    return Endomorphism(M, (y1 + (y2 * y3) * y1, y2, y3))


BUILDERS = {
    "nagata": nagata,
    "anick": anick,
    "bergman": bergman,
    "drensky-exp": drensky_exp,
    "tau": tau,
    "chein-cubic": chein_cubic,
}


def build(name):
    return BUILDERS[name]()
