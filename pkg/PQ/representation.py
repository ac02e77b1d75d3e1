"""
Representation Module - Tensor representations of U_q(p_n) on V^{⊗l}

This module contains rho_one (the vector representation read off from S by
matching T = Σ t_ij ⊗ E_ij against S), representation(n, l) (iterated
coproduct on l legs with Koszul signs), evaluate / evaluate_cleared for
algebra elements, and verify_representation, which checks the explicit
images of the rescaled generators and that every extracted relation acts
as zero.

Usage:
    from PQ.representation import representation, evaluate
    from PQ.algebra import parse_word

    rho = representation(2, 2)
    print(evaluate(parse_word("t(1,2) t(2,2)", 2), 2, 2).nnz)
"""

import logging
from typing import Dict, Optional

from .algebra import AlgebraElement, Gen, coproduct_indices, generators
from .exceptions import ScalarError
from .relations import extract_relations
from .reports import VerificationReport
from .scalar import EPS, ONE, Q, QINV, Frac, scalar_lcm
from .smatrix import build_S, cached_operator
from .superspace import (GradedOperator, elementary, identity, koszul_tensor, sum_operators,
                         zero_operator)
from .periplectic import sf

# Setup logging
logger = logging.getLogger(__name__)

Representation = Dict[Gen, GradedOperator]

_MEMORY: Dict[tuple, Representation] = {}


def _kind(g: Gen) -> str:
    if g.inverse:
        return f"rho-tinv{g.i}"
    return f"rho-t{g.i}_{g.j}"


def rho_one(n: int) -> Representation:
    """
    Representação vetorial: rho(t_cd) = Σ_ab u(a,b,c,d) E_ab

    Args:
        n: dimensão do bloco

    Returns:
        Mapa gerador -> operador de 1 perna (inclui os inversos diagonais)
    """
    key = (n, 1)
    if key in _MEMORY:
        return _MEMORY[key]
    grouped: Dict[tuple, Dict] = {}
    for (rows, cols), value in build_S(n).units().items():
        (a, c), (b, d) = rows, cols
        grouped.setdefault((c, d), {}).setdefault((a,), {})[(b,)] = value
    rho: Representation = {}
    for g in generators(n):
        rho[g] = GradedOperator(n, 1, grouped.get((g.i, g.j), {}), g.parity)
        if g.is_diagonal:
            rho[Gen(g.i, g.i, True)] = rho[g].map_entries(lambda v: v.inverse())
    _MEMORY[key] = rho
    return rho


def representation(n: int, legs: int) -> Representation:
    """
    rho_l = (rho ⊗ rho_{l-1}) ∘ Delta

    Args:
        n: dimensão do bloco
        legs: número de fatores tensoriais (>= 1)

    Returns:
        Mapa gerador -> GradedOperator em V^{⊗legs}
    """
    if legs < 1:
        raise ValueError("legs deve ser >= 1")
    key = (n, legs)
    if key in _MEMORY:
        return _MEMORY[key]
    if legs == 1:
        return rho_one(n)
    one = rho_one(n)
    prev = representation(n, legs - 1)
    rho: Representation = {}
    for g in generators(n):
        def build(g=g):
            terms = [koszul_tensor(one[left], prev[right]).scale(sign)
                     for sign, left, right in coproduct_indices(g.i, g.j, n)]
            return sum_operators(terms, n, legs)
        rho[g] = cached_operator(_kind(g), n, legs, build)
        if g.is_diagonal:
            inv = Gen(g.i, g.i, True)
            rho[inv] = cached_operator(_kind(inv), n, legs, lambda inv=inv: koszul_tensor(one[inv], prev[inv]))
    logger.debug(f"Representação construída (n={n}, pernas={legs})")
    _MEMORY[key] = rho
    return rho


def evaluate(element: AlgebraElement, n: int, legs: int,
             rho: Optional[Representation] = None) -> GradedOperator:
    """
    Imagem de um elemento sob rho_legs

    Raises:
        ScalarError: coeficiente fora de Q[q, q^-1] (use evaluate_cleared)
    """
    rho = rho or representation(n, legs)
    one = identity(n, legs)
    images = []
    for word, c in element.terms.items():
        if isinstance(c, Frac):
            raise ScalarError(f"coeficiente não é de Laurent: {c}")
        op = one
        for g in word:
            op = op.compose(rho[g])
        images.append(op.scale(c))
    if not images:
        return zero_operator(n, legs)
    return sum_operators(images, n, legs)


def clear_denominators(element: AlgebraElement) -> AlgebraElement:
    """Multiplica pelo mmc dos denominadores dos coeficientes"""
    common = ONE
    for c in element.terms.values():
        if isinstance(c, Frac):
            common = scalar_lcm(common, c.den)
    return element if common == ONE else element.scale(common)


def evaluate_cleared(element: AlgebraElement, n: int, legs: int,
                     rho: Optional[Representation] = None) -> GradedOperator:
    """Imagem de element·D, D o mmc dos denominadores (nula sse a de element for nula)"""
    return evaluate(clear_denominators(element), n, legs, rho)


def explicit_image_failures(n: int) -> list:
    """
    Compara rho_1 com as imagens explícitas dos geradores reescalonados

    rho(t_ij) = eps (-1)^{p(i)} sf(j, i) para |i| < |j|, rho(t_{m,-m}) = eps E_{-m,m}
    e rho(t_mm) - 1 = (q - 1)(E_mm - q^-1 E_{-m,-m}).
    """
    rho = rho_one(n)
    one = identity(n, 1)
    failures = []
    for g in generators(n):
        if g.is_diagonal:
            m = g.i
            expected = (elementary(n, m, m) - elementary(n, -m, -m).scale(QINV)).scale(Q - 1)
            actual = rho[g] - one
        elif g.j == -g.i:
            expected = elementary(n, g.j, g.i).scale(EPS)
            actual = rho[g]
        else:
            expected = sf(n, g.j, g.i).scale(EPS * (-1 if g.i < 0 else 1))
            actual = rho[g]
        if actual != expected:
            failures.append(str(g))
    return failures


def verify_representation(n: int, legs: int) -> VerificationReport:
    """Imagens explícitas, inversos diagonais e anulamento das relações por rho_legs"""
    logger.info(f"=== Iniciando verificação da representação (n={n}, pernas={legs}) ===")
    report = VerificationReport("representation", "T -> S defines representations rho_l",
                                {"n": n, "l": legs})
    failures = explicit_image_failures(n)
    report.record("explicit-images", not failures,
                  f"falhas: {failures}" if failures else "rho_1 confere com a lista explícita")

    rho = representation(n, legs)
    one = identity(n, legs)
    bad = [str(g) for g in generators(n)
           if g.is_diagonal and rho[g].compose(rho[Gen(g.i, g.i, True)]) != one]
    report.record("inverse-diagonals", not bad, f"falhas: {bad}" if bad else "rho(t_mm) rho(t_mm^-1) = 1")

    bad = [str(g) for g in generators(n) if not rho[g].is_zero and rho[g].parity != g.parity]
    report.record("parity", not bad, f"falhas: {bad}" if bad else "rho preserva a paridade")

    relations = extract_relations(n)
    nonzero = [rel.index for rel in relations if not evaluate(rel.element, n, legs, rho).is_zero]
    report.record("relations-annihilated", not nonzero,
                  f"{len(relations)} relações anuladas" if not nonzero else f"falhas em {nonzero[:5]}",
                  len(relations))
    return report.finish()
