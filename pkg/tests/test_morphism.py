"""Endomorphisms: composition, IA filtration, tangents, inverses."""
from fractions import Fraction

import pytest

from tangentia import (
    AlgebraError,
    Derivation,
    Endomorphism,
    NotIA,
    NotInvertible,
    affine,
    compose,
    conjugate,
    conjugate_derivation,
    elementary,
    free_associative,
    free_lie,
    group_commutator,
    ia_correct,
    ia_level,
    linear,
    metabelian_lie,
    polynomial,
    tangent,
    truncated_inverse,
)

from conftest import ALL_VARIETIES, random_element, random_ia_endomorphism


def test_compose_convention():
    """compose(phi, psi)(x) = phi(psi(x))."""
    P = polynomial(2, ("x", "y"))
    x, y = P.gens()
    phi = Endomorphism(P, (x + y * y, y))
    psi = Endomorphism(P, (x, y + x * x))
    out = compose(phi, psi)
    # psi sends y to y + x^2; then phi substitutes its images
    assert out.images[1] == y + (x + y * y) * (x + y * y)
    assert out.images[0] == x + y * y


def test_apply_matches_substitution():
    L = free_lie(2)
    x1, x2 = L.gens()
    phi = Endomorphism(L, (x1 + x1 * x2, x2))
    assert phi.apply(x1 * x2) == (x1 + x1 * x2) * x2


def test_constant_image_rejected_in_lie():
    L = free_lie(2)
    with pytest.raises(AlgebraError):
        # images must be built inside the variety; constants are impossible
        Endomorphism(L, (L.gen(0), free_associative(2).one()))


def test_ia_level_cases():
    P = polynomial(2)
    x, y = P.gens()
    assert ia_level(Endomorphism.identity(P)).status == "identity"
    assert ia_level(Endomorphism(P, (2 * x, y))).status == "not-ia"
    assert ia_level(Endomorphism(P, (x + P.one(), y))).status == "not-ia"
    lev = ia_level(Endomorphism(P, (x + y * y, y)))
    assert lev.status == "level" and lev.i == 1
    lev3 = ia_level(Endomorphism(P, (x, y + x * x * x)))
    assert lev3.i == 2
    assert str(lev) == "IA(1)"


def test_tangent_values():
    P = polynomial(2)
    x, y = P.gens()
    phi = Endomorphism(P, (x + y * y + y * y * y, y))
    T = tangent(phi)
    assert T.coords == (y * y, P.zero())
    with pytest.raises(NotIA):
        tangent(Endomorphism(P, (2 * x, y)))
    assert tangent(Endomorphism.identity(P)).is_zero()


def test_tangent_additivity_of_products(rng):
    """T(phi psi) = T(phi) + T(psi) at equal levels (when nonzero), and
    T(phi^-1) = -T(phi)."""
    for variety in ALL_VARIETIES:
        for _ in range(15):
            phi = random_ia_endomorphism(rng, variety, 1, 2)
            psi = random_ia_endomorphism(rng, variety, 1, 2)
            s = tangent(phi) + tangent(psi)
            if s.is_zero():
                continue
            prod = compose(phi, psi, max_degree=6)
            assert tangent(prod, 6) == s
            inv = truncated_inverse(phi, 6)
            assert tangent(inv, 6) == -tangent(phi)


def test_commutator_tangent_bracket(rng):
    """T([phi,psi]) = [T(phi), T(psi)] at level i+j when nonzero."""
    for variety in ALL_VARIETIES:
        hits = 0
        attempts = 0
        while hits < 5 and attempts < 40:
            attempts += 1
            phi = random_ia_endomorphism(rng, variety, 1, 2)
            psi = random_ia_endomorphism(rng, variety, 2, 3)
            br = tangent(phi).bracket(tangent(psi))
            if br.is_zero():
                continue
            comm = group_commutator(phi, psi, 6)
            lev = ia_level(comm, 6)
            assert lev.status == "level" and lev.i == 3
            assert tangent(comm, 6) == br
            hits += 1
        assert hits > 0


def test_truncated_inverse_random(rng):
    for variety in ALL_VARIETIES:
        for _ in range(10):
            phi = random_ia_endomorphism(rng, variety, 1, 2)
            inv = truncated_inverse(phi, 6)
            assert compose(phi, inv, max_degree=6).is_identity_through(6)
            assert compose(inv, phi, max_degree=6).is_identity_through(6)


def test_truncated_inverse_affine_part():
    P = polynomial(2)
    x, y = P.gens()
    phi = Endomorphism(P, (2 * x + P.one() + y * y, y))
    inv = truncated_inverse(phi, 5)
    assert compose(phi, inv, max_degree=5).is_identity_through(5)
    with pytest.raises(NotInvertible):
        truncated_inverse(Endomorphism(P, (x + y, x + y)), 4)


def test_elementary_and_affine_constructors():
    P = polynomial(3)
    x, y, z = P.gens()
    e = elementary(P, 0, 1, y * z)
    assert e.images == (x + y * z, y, z)
    with pytest.raises(AlgebraError):
        elementary(P, 0, 1, x * y)  # involves the changed generator
    with pytest.raises(AlgebraError):
        elementary(P, 0, 0, y)
    a = affine(P, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], (Fraction(1), 0, 0))
    assert a.images[0] == x + P.one()
    L = free_lie(2)
    with pytest.raises(AlgebraError):
        affine(L, [[1, 0], [0, 1]], (1, 0))


def test_linear_part_and_conjugation():
    P = polynomial(2)
    x, y = P.gens()
    g = [[0, 1], [1, 0]]
    phi = Endomorphism(P, (x + y * y, y))
    assert phi.linear_part() == [[1, 0], [0, 1]]
    conj = conjugate(g, phi)
    # swapping variables: x + y^2 becomes y + x^2 in the second slot
    assert conj.images == (x, y + x * x)
    D = Derivation(P, (y * y, P.zero()))
    cd = conjugate_derivation(g, D)
    assert cd.coords == (P.zero(), x * x)


def test_ia_correct():
    P = polynomial(2)
    x, y = P.gens()
    phi = Endomorphism(P, (2 * x + P.one() + y * y, y - x))
    corrected = ia_correct(phi)
    assert corrected is not None
    assert ia_level(corrected).is_ia
    singular = Endomorphism(P, (x + y, x + y))
    assert ia_correct(singular) is None


def test_compose_truncation_consistency(rng):
    """Truncated composition agrees with exact composition up to the bound."""
    P = polynomial(2)
    for _ in range(10):
        phi = random_ia_endomorphism(rng, P, 1, 3)
        psi = random_ia_endomorphism(rng, P, 1, 3)
        exact = compose(phi, psi)
        trunc = compose(phi, psi, max_degree=5)
        assert exact.truncate(5) == trunc
