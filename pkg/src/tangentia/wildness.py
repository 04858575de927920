"""Detection laboratory for absolutely wild automorphisms.

Three detectors and one sampler:

* a divergence certificate: a nonzero divergence of the tangent of an
  IA endomorphism certifies absolute wildness of the automorphism it
  induces on a quotient whose defining ideal starts in high enough degree;
* the rank-2 associative test: the tangent of a rank-2 IA map must kill
  the commutator of the generators, so a nonzero value is a certificate;
* the polynilpotent witness constructor (iterated ad-power elements with
  exact leading-term certificates);
* a seeded tangent-span sampler with an independent exact-rank oracle for
  the divergence kernel.

Certificates never claim more than the hypotheses support: a missing
automorphism-evidence flag or a too-small ideal degree downgrade the
verdict to Inconclusive with explicit reasons.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .freealg import (
    AlgebraError,
    Element,
    Kind,
    Variety,
    free_lie,
    monomials_of_degree,
)
from .deriv import Derivation, divergence
from .morphism import (
    Endomorphism,
    NotIA,
    compose,
    conjugate_derivation,
    ia_correct,
    ia_level,
    tangent,
    truncated_inverse,
)
from .envelope import trace_class, left_mul
from .fox import fox_derivative
from . import linalg


EVIDENCE_USER = "user-asserted"
EVIDENCE_TRUNCATION = "verified-by-truncation"
EVIDENCE_BUILTIN = "builtin-construction"


@dataclass(frozen=True)
class QuotientContext:
    """Hypothesis bundle for the detectors: the ambient free algebra, a
    named identity-ideal I, the least degree of a nonzero element of I,
    and the evidence that the endomorphism induces an automorphism of the
    quotient."""

    ambient: Variety
    ideal_tag: str
    min_degree: int
    induces_automorphism: str = EVIDENCE_USER

    def __post_init__(self):
        if self.min_degree < 2:
            raise AlgebraError("identity ideals start in degree >= 2")


def metabelian_context(ambient, evidence=EVIDENCE_BUILTIN):
    """Quotient of a free Lie algebra by L'' (least identity degree 4)."""
    return QuotientContext(ambient, "metabelian: L''", 4, evidence)


def nilpotent_context(ambient, c, evidence=EVIDENCE_BUILTIN):
    """Nilpotency class c+1: the ideal starts in degree c+2."""
    if c < 1:
        raise AlgebraError("nilpotency parameter must be >= 1")
    return QuotientContext(ambient, f"nilpotent class {c + 1}", c + 2, evidence)


def var_m2k_context(ambient, evidence=EVIDENCE_USER):
    """Var(M_2(K)) in two variables; its T-ideal has no elements of
    degree <= 4 in two variables."""
    return QuotientContext(ambient, "Var(M_2(K)) in 2 vars", 5, evidence)


def polynilpotent_context(ambient, c, evidence=EVIDENCE_BUILTIN):
    """Polynilpotent ideal for the tuple (c_1, ..., c_k): least identity
    degree is the product of the (c_i + 1)."""
    prod = math.prod(ci + 1 for ci in c)
    tag = "polynilpotent (" + ",".join(str(ci) for ci in c) + ")"
    return QuotientContext(ambient, tag, prod, evidence)


def user_context(ambient, tag, min_degree):
    return QuotientContext(ambient, f"user-asserted: {tag}", min_degree, EVIDENCE_USER)


VERDICT_WILD = "AbsolutelyWild"
VERDICT_INCONCLUSIVE = "Inconclusive"


@dataclass
class WildnessCertificate:
    verdict: str
    witness: object
    hypotheses: QuotientContext
    reasons: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    @property
    def is_wild(self):
        return self.verdict == VERDICT_WILD


_SUPPORTED = frozenset(Kind)


def _hypothesis_check(ctx, level_i, trace):
    reasons = []
    if ctx.min_degree <= level_i + 1:
        reasons.append(
            f"ideal may contain elements of degree <= {level_i + 1} "
            f"(registry min degree {ctx.min_degree})"
        )
    if ctx.induces_automorphism not in (
        EVIDENCE_USER,
        EVIDENCE_TRUNCATION,
        EVIDENCE_BUILTIN,
    ):
        reasons.append("no evidence that the map induces an automorphism")
    trace.append(
        f"hypotheses: ideal '{ctx.ideal_tag}' min degree {ctx.min_degree}, "
        f"automorphism evidence '{ctx.induces_automorphism}'"
    )
    return reasons


def detect_divergence_wild(eps, ctx, max_degree=12):
    """Certificate from div(T(eps)) != 0 computed in the ambient U."""
    if eps.variety.kind not in _SUPPORTED:
        raise AlgebraError("unsupported ambient variety")
    if eps.variety != ctx.ambient:
        raise AlgebraError("context ambient differs from the endomorphism's algebra")
    lev = ia_level(eps, max_degree)
    if lev.status != "level":
        raise NotIA("divergence detector needs an IA endomorphism with a tangent")
    trace = [f"ia level {lev.i}"]
    T = tangent(eps, max_degree)
    trace.append(f"tangent = {T!r}")
    div = divergence(T)
    trace.append(f"divergence {'zero' if div.is_zero() else 'nonzero'}")
    reasons = _hypothesis_check(ctx, lev.i, trace)
    if div.is_zero():
        reasons.insert(0, "divergence of the tangent is zero")
    verdict = VERDICT_WILD if (not div.is_zero() and not reasons) else VERDICT_INCONCLUSIVE
    return WildnessCertificate(verdict, div, ctx, reasons, trace)


def detect_rank2_associative(phi, ctx, max_degree=12):
    """Certificate from T(phi)([x1,x2]) != 0 in the rank-2 free
    associative algebra."""
    var = phi.variety
    if var.kind is not Kind.FREE_ASSOCIATIVE or var.rank != 2:
        raise AlgebraError("rank-2 associative detector needs K<x1,x2>")
    if var != ctx.ambient:
        raise AlgebraError("context ambient differs from the endomorphism's algebra")
    lev = ia_level(phi, max_degree)
    if lev.status != "level":
        raise NotIA("rank-2 detector needs an IA endomorphism with a tangent")
    trace = [f"ia level {lev.i}"]
    T = tangent(phi, max_degree)
    x1, x2 = var.gens()
    comm = x1 * x2 - x2 * x1
    witness = T.apply(comm)
    trace.append(f"T(phi)([x1,x2]) = {witness!s}")
    reasons = _hypothesis_check(ctx, lev.i, trace)
    if witness.is_zero():
        reasons.insert(0, "the tangent kills [x1,x2]")
    verdict = VERDICT_WILD if (not witness.is_zero() and not reasons) else VERDICT_INCONCLUSIVE
    return WildnessCertificate(verdict, witness, ctx, reasons, trace)


# ---------------------------------------------------------------------------
# Polynilpotent witness construction
#
# u_1 = ad(x1)^{c_1}(x2), u_{t+1} = ad(u_t)^{c_{t+1}}(ad(x1)(u_t)).
# Degrees and leading words are certified by exact leading-term tracking
# in the lexicographic order with x1 > x2 > ... > xn (greatest letter =
# smallest index, so the leading word is the tuple-minimal one); leading
# terms of products multiply, and a commutator's leading term is the
# smaller of the two concatenations unless they coincide.


class LeadingTermIndeterminate(AlgebraError):
    pass


@dataclass(frozen=True)
class LeadingTerm:
    word: tuple
    coeff: Fraction

    @property
    def degree(self):
        return len(self.word)


def _lt_bracket(a, b):
    w1 = a.word + b.word
    w2 = b.word + a.word
    c = a.coeff * b.coeff
    if w1 < w2:
        return LeadingTerm(w1, c)
    if w2 < w1:
        return LeadingTerm(w2, -c)
    raise LeadingTermIndeterminate(
        "leading concatenations coincide; full expansion required"
    )


@dataclass
class PolynilpotentReport:
    c: tuple
    degrees: list
    recursion_degrees: list
    product_bound: int
    inequality_holds: bool
    leading_words: list
    leading_u1_expected: tuple
    leading_recursion_ok: bool
    materialized: bool


def build_polynilpotent_witness(c, n, materialize_limit=12):
    """Witness data for the polynilpotent tuple (c_1, ..., c_k) at rank n.

    Returns (u, psi, report).  u = u_{k-1} in the free Lie algebra of
    rank n and psi = (x1 + [[w,x1],x1], x2, ..., xn) with w = u(x2, x3)
    are materialized only when deg(u) <= materialize_limit; the report
    (degrees, inequality, leading words) is always exact.
    """
    c = tuple(int(ci) for ci in c)
    k = len(c)
    if k < 2:
        raise AlgebraError("need at least two nilpotency parameters")
    if n < 3:
        raise AlgebraError("witness construction needs rank >= 3")
    if any(ci < 1 for ci in c):
        raise AlgebraError("nilpotency parameters must be >= 1")
    if c == (1, 1):
        raise AlgebraError(
            "tuple (1,1) is the metabelian variety: inequality (99) fails"
        )

    x1 = LeadingTerm((0,), Fraction(1))
    x2 = LeadingTerm((1,), Fraction(1))
    lt = x2
    for _ in range(c[0]):
        lt = _lt_bracket(x1, lt)
    leads = [lt]
    for t in range(1, k - 1):
        cur = _lt_bracket(x1, leads[-1])
        for _ in range(c[t]):
            cur = _lt_bracket(leads[-1], cur)
        leads.append(cur)

    degrees = [lt.degree for lt in leads]
    recursion = [c[0] + 1]
    for t in range(1, k - 1):
        recursion.append(recursion[-1] * (c[t] + 1) + 1)
    product_bound = math.prod(ci + 1 for ci in c)
    inequality_holds = degrees[-1] + 2 < product_bound
    if not inequality_holds:
        raise AlgebraError("inequality (99) fails for this parameter tuple")

    lead_ok = leads[0].word == (0,) * c[0] + (1,)
    for t in range(1, k - 1):
        lead_ok = lead_ok and leads[t].word == (0,) + leads[t - 1].word * (c[t] + 1)

    report = PolynilpotentReport(
        c=c,
        degrees=degrees,
        recursion_degrees=recursion,
        product_bound=product_bound,
        inequality_holds=inequality_holds,
        leading_words=[lt.word for lt in leads],
        leading_u1_expected=(0,) * c[0] + (1,),
        leading_recursion_ok=lead_ok,
        materialized=degrees[-1] <= materialize_limit,
    )

    if not report.materialized:
        return None, None, report

    lie = free_lie(n)
    g1, g2 = lie.gen(0), lie.gen(1)
    u = g2
    for _ in range(c[0]):
        u = g1 * u
    for t in range(1, k - 1):
        cur = g1 * u
        for _ in range(c[t]):
            cur = u * cur
        u = cur
    # cross-check the tracked leading term against the materialized element
    from .freealg import assoc_of_lie_coeffs

    expansion = assoc_of_lie_coeffs(u.coeffs)
    least = min(expansion)
    if least != leads[-1].word or expansion[least] != leads[-1].coeff:
        raise AlgebraError("leading-term tracker disagrees with the expansion")

    args = (lie.gen(1), lie.gen(2)) + tuple(lie.gen(j) for j in range(2, n))
    w = u.substitute(args[: n])
    psi_images = list(lie.gens())
    psi_images[0] = psi_images[0] + ((w * lie.gen(0)) * lie.gen(0))
    psi = Endomorphism(lie, tuple(psi_images))
    return u, psi, report


# ---------------------------------------------------------------------------
# Exact-rank oracle and span sampling


def _trace_basis_keys(variety, degree):
    """Keys of the degree-``degree`` part of the trace codomain."""
    kind = variety.kind
    if kind is Kind.POLYNOMIAL or kind is Kind.METABELIAN_LIE:
        poly = Variety(Kind.POLYNOMIAL, variety.rank)
        return monomials_of_degree(poly, degree)
    if kind is Kind.FREE_LIE:
        from .envelope import necklace

        words = monomials_of_degree(Variety(Kind.FREE_ASSOCIATIVE, variety.rank), degree)
        return sorted({necklace(w) for w in words})
    # free associative: necklace pairs across both tensor factors
    from .envelope import necklace

    fa = Variety(Kind.FREE_ASSOCIATIVE, variety.rank)
    keys = set()
    for da in range(degree + 1):
        for a in monomials_of_degree(fa, da):
            for b in monomials_of_degree(fa, degree - da):
                keys.add((necklace(a), necklace(b)))
    return sorted(keys)


def derivation_vector(D, degree):
    """Coordinates of a degree-``degree`` homogeneous derivation over the
    monomial basis of (A_{degree+1})^n."""
    var = D.variety
    monos = monomials_of_degree(var, degree + 1)
    vec = []
    for f in D.coords:
        vec.extend(f.coeffs.get(m, Fraction(0)) for m in monos)
    return vec


def derivation_from_vector(variety, degree, vec):
    monos = monomials_of_degree(variety, degree + 1)
    per = len(monos)
    coords = []
    for k in range(variety.rank):
        chunk = vec[k * per : (k + 1) * per]
        coords.append(Element(variety, dict(zip(monos, chunk))))
    return Derivation(variety, tuple(coords))


def divergence_kernel_rank(variety, degree):
    """Dimension of the zero-divergence subspace of L_degree, computed by
    exact linear algebra on the divergence map (the independent oracle
    for the span sampler)."""
    monos = monomials_of_degree(variety, degree + 1)
    tkeys = _trace_basis_keys(variety, degree)
    tindex = {k: j for j, k in enumerate(tkeys)}
    rows = []
    for i in range(variety.rank):
        for m in monos:
            f = Element(variety, {m: Fraction(1)})
            tc = trace_class(fox_derivative(f, i))
            row = [Fraction(0)] * len(tkeys)
            for key, coeff in tc.terms.items():
                row[tindex[key]] = coeff
            rows.append(row)
    dim = len(rows)
    return dim - linalg.rank(rows)


@dataclass
class SpanReport:
    degree: int
    rank: int
    basis: list
    samples_used: int
    hits: int
    per_level_counts: dict
    bracket_closure: list


def random_invertible_matrix(rng, n, attempts=50):
    for _ in range(attempts):
        mat = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        try:
            linalg.inverse(mat)
            return mat
        except linalg.SingularMatrix:
            continue
    raise AlgebraError("failed to sample an invertible matrix")


def tangent_span(
    generators,
    degree,
    samples,
    seed,
    max_word_len=4,
    conjugation_rank=0,
):
    """Sample random words in the generators and their truncated inverses,
    correct each word by the inverse of its affine part (a member of G_n),
    and accumulate the tangents of the samples that land exactly in IA(degree).

    Returns the exact rank and a basis of the spanned subspace of
    L_degree, plus bracket-closure diagnostics for sampled degree pairs.
    ``conjugation_rank`` > 0 additionally conjugates each sampled word by
    a random invertible linear map (still inside any group containing G_n).
    """
    if not generators:
        raise AlgebraError("need at least one generator")
    var = generators[0].variety
    rng = random.Random(seed)
    trunc = 2 * degree + 2  # enough to see levels through 2*degree for diagnostics
    pool = list(generators)
    for g in generators:
        try:
            pool.append(truncated_inverse(g, trunc))
        except Exception:
            continue

    per_level_rows = {}
    per_level_derivs = {}
    hits = 0
    used = 0
    for _ in range(samples):
        used += 1
        length = rng.randint(1, max_word_len)
        word = [rng.choice(pool) for _ in range(length)]
        phi = word[0]
        for step in word[1:]:
            phi = compose(phi, step, max_degree=trunc)
        if conjugation_rank:
            g = random_invertible_matrix(rng, var.rank)
            from .morphism import linear
            from . import linalg as _la

            phi = compose(
                linear(var, g),
                compose(phi, linear(var, _la.inverse(g)), max_degree=trunc),
                max_degree=trunc,
            )
        phi = ia_correct(phi)
        if phi is None:
            continue
        lev = ia_level(phi, trunc)
        if lev.status != "level":
            continue
        T = tangent(phi, trunc)
        per_level_rows.setdefault(lev.i, []).append(derivation_vector(T, lev.i))
        per_level_derivs.setdefault(lev.i, []).append(T)
        if lev.i == degree:
            hits += 1

    rows = per_level_rows.get(degree, [])
    red, pivots = linalg.rref(rows)
    rank = len(pivots)
    basis = [derivation_from_vector(var, degree, red[r]) for r in range(rank)]

    closure = []
    for i in sorted(per_level_derivs):
        for j in sorted(per_level_derivs):
            tgt = i + j
            if tgt not in per_level_rows:
                continue
            ok = True
            for a in per_level_derivs[i][:5]:
                for b in per_level_derivs[j][:5]:
                    br = a.bracket(b)
                    if br.is_zero():
                        continue
                    if not linalg.in_row_span(
                        per_level_rows[tgt], derivation_vector(br, tgt)
                    ):
                        ok = False
            closure.append((i, j, ok))

    return SpanReport(
        degree=degree,
        rank=rank,
        basis=basis,
        samples_used=used,
        hits=hits,
        per_level_counts={i: len(v) for i, v in per_level_rows.items()},
        bracket_closure=closure,
    )
