"""
Periplectic Module - The classical layer: gl(n|n), the involution iota, p_n and the butterfly algebra

This module contains the involution iota, the elements sf(i, j) spanning the
periplectic Lie superalgebra p_n, its canonical basis (BasisTag pairs), the
closed-form superbracket on tags, the butterfly subalgebra b_n, the
supertrace form and the Manin supertriple verification.

Usage:
    from PQ.periplectic import pn_basis, superbracket_pn, verify_manin_triple

    basis = pn_basis(2)                       # 8 pares (tag, operador)
    print(superbracket_pn((2, 1), (1, 2)))    # {tag: coeficiente}
    report = verify_manin_triple(2)
    print(report.passed)
"""

import logging
import random
from typing import Dict, List, Optional, Tuple

from .linalg import RATIONALS, LinearSpan, rank_of
from .reports import VerificationReport
from .scalar import HALF, ZERO, Scalar
from .superspace import (GradedOperator, basis_indices, elementary, from_units, parity,
                         sum_operators, to_fraction_vector)

# Setup logging
logger = logging.getLogger(__name__)

BasisTag = Tuple[int, int]
Combination = Dict[BasisTag, Scalar]

# Amostra aleatória de triplas para a ad-invariância quando n >= 3
AD_INVARIANCE_SAMPLE = 2000


def _st_sign(i: int, j: int) -> int:
    """(-1)^{p(i)(p(j)+1)}, o sinal da supertransposta de E_ij"""
    return -1 if parity(i) * (parity(j) + 1) % 2 else 1


def iota(x: GradedOperator) -> GradedOperator:
    """
    Involução iota(X) = -pi(X^st) aplicada unidade a unidade

    Args:
        x: operador de 1 perna

    Returns:
        Operador com iota(E_ij) = -(-1)^{p(i)(p(j)+1)} E_{-j,-i}
    """
    if x.legs != 1:
        raise ValueError("iota espera um operador de 1 perna")
    units = {((-j,), (-i,)): value * (-_st_sign(i, j))
             for ((i,), (j,)), value in x.units().items()}
    return from_units(x.n, 1, units, x.parity)


def sf(n: int, i: int, j: int) -> GradedOperator:
    """O elemento E_ij + iota(E_ij) de p_n (nulo para i > 0, j = -i)"""
    unit = elementary(n, i, j)
    return unit + iota(unit)


def canonical_tag(i: int, j: int) -> Optional[Tuple[int, BasisTag]]:
    """
    Reescreve sf(i, j) como sinal vezes um elemento da base canônica

    Args:
        i, j: índices em {±1, ..., ±n}

    Returns:
        (sinal, tag) com sf(i, j) = sinal * sf(tag), ou None quando sf(i, j) = 0
    """
    if abs(j) < abs(i):
        return 1, (i, j)
    if abs(i) < abs(j):
        return -_st_sign(i, j), (-j, -i)
    if i == j:
        return (1, (i, i)) if i > 0 else (-1, (-i, -i))
    # i = -j
    if i > 0:
        return None
    return 1, (i, j)


def tag_key(tag: BasisTag) -> Tuple[int, int, int, int]:
    """Ordem determinística das tags: (|i|, sinal de i, |j|, sinal de j)"""
    i, j = tag
    return (abs(i), 1 if i > 0 else -1, abs(j), 1 if j > 0 else -1)


def basis_tags(n: int) -> List[BasisTag]:
    """Tags válidas: 1 <= |j| < |i| <= n, ou i = j > 0, ou i = -j < 0"""
    indices = basis_indices(n)
    tags = [(i, j) for i in indices for j in indices if abs(j) < abs(i)]
    tags += [(m, m) for m in range(1, n + 1)]
    tags += [(-m, m) for m in range(1, n + 1)]
    return sorted(tags, key=tag_key)


def pn_basis(n: int) -> List[Tuple[BasisTag, GradedOperator]]:
    """Base canônica de p_n: lista de 2n^2 pares (tag, sf(tag))"""
    if n < 1:
        raise ValueError("n deve ser >= 1")
    return [(tag, sf(n, *tag)) for tag in basis_tags(n)]


def tag_parity(tag: BasisTag) -> int:
    return (parity(tag[0]) + parity(tag[1])) % 2


def accumulate(acc: Combination, coefficient, i: int, j: int) -> None:
    """acc += coefficient * sf(i, j), escrito na base canônica"""
    canon = canonical_tag(i, j)
    if canon is None:
        return
    sign, tag = canon
    if not isinstance(coefficient, Scalar):
        coefficient = Scalar(coefficient)
    value = acc.get(tag, ZERO) + coefficient * sign
    if value.is_zero:
        acc.pop(tag, None)
    else:
        acc[tag] = value


def combination_operator(n: int, combo: Combination) -> GradedOperator:
    """Operador de 1 perna Σ c_tag sf(tag)"""
    return sum_operators((sf(n, *tag).scale(c) for tag, c in combo.items()), n, 1)


def pn_coordinates(x: GradedOperator) -> Optional[Combination]:
    """
    Coordenadas exatas de um operador de 1 perna na base de p_n

    Returns:
        Mapa tag -> coeficiente, ou None quando x não pertence a p_n
    """
    coords: Combination = {}
    for tag in basis_tags(x.n):
        i, j = tag
        value = x.entry((i,), (j,))
        if i == -j:
            value = value * HALF
        if not value.is_zero:
            coords[tag] = value
    if combination_operator(x.n, coords) != x:
        return None
    return coords


def superbracket_pn(a: BasisTag, b: BasisTag) -> Combination:
    """
    Constantes de estrutura [sf(j,i), sf(l,k)] pela fórmula fechada

    Args:
        a: tag (j, i) do primeiro elemento
        b: tag (l, k) do segundo elemento

    Returns:
        Combinação esparsa de tags
    """
    j, i = a
    l, k = b
    pi, pj, pk, pl = parity(i), parity(j), parity(k), parity(l)
    acc: Combination = {}
    if i == l:
        accumulate(acc, 1, j, k)
    if j == k:
        accumulate(acc, -(-1) ** ((pi + pj) * (pk + pl)), l, i)
    if i == -k:
        accumulate(acc, -(-1) ** (pl * (pk + 1)), j, -l)
    if -j == l:
        accumulate(acc, -(-1) ** (pj * (pi + 1)), -i, k)
    return acc


def butterfly_basis(n: int) -> List[GradedOperator]:
    """
    Base do butterfly b_n

    Returns:
        E_ij com |i| < |j|, E_ii + E_{-i,-i} e E_{i,-i} (i > 0): 2n^2 operadores
    """
    indices = basis_indices(n)
    pairs = sorted(((i, j) for i in indices for j in indices if abs(i) < abs(j)), key=tag_key)
    basis = [elementary(n, i, j) for i, j in pairs]
    basis += [elementary(n, m, m) + elementary(n, -m, -m) for m in range(1, n + 1)]
    basis += [elementary(n, m, -m) for m in range(1, n + 1)]
    return basis


def in_butterfly(x: GradedOperator) -> bool:
    """Pertinência a b_n pelo suporte da matriz"""
    for (i,), (j,), value in x.items():
        if abs(i) < abs(j) or (j == -i and i > 0):
            continue
        if i == j:
            if x.entry((-i,), (-i,)) != value:
                return False
            continue
        return False
    return True


def gl_basis(n: int) -> List[GradedOperator]:
    indices = basis_indices(n)
    return [elementary(n, i, j) for i in indices for j in indices]


def supertrace_form(a: GradedOperator, b: GradedOperator) -> Scalar:
    """
    Forma B(A, B) = Str(AB)

    Args:
        a, b: operadores de 1 perna

    Returns:
        Σ_i (-1)^{p(i)} (AB)_ii
    """
    product = a.compose(b)
    total = ZERO
    for i in basis_indices(a.n):
        value = product.entry((i,), (i,))
        if not value.is_zero:
            total = total + (value if parity(i) == 0 else -value)
    return total


def verify_manin_triple(n: int, seed: int = 2024) -> VerificationReport:
    """
    Verifica que (gl(n|n), p_n, b_n) é uma Manin supertripla

    Args:
        n: dimensão do bloco
        seed: semente da amostra de triplas (ad-invariância para n >= 3)

    Returns:
        VerificationReport com um item por propriedade
    """
    logger.info(f"=== Iniciando verificação da Manin supertripla (n={n}) ===")
    report = VerificationReport("manin", "Manin supertriple (gl(n|n), p_n, b_n)", {"n": n})
    basis = pn_basis(n)
    butterfly = butterfly_basis(n)
    gl = gl_basis(n)

    expected = 2 * n * (n - 1) + 2 * n
    report.record("pn-dimension", len(basis) == expected == 2 * n * n, f"{len(basis)} elementos", len(basis))
    report.record("butterfly-dimension", len(butterfly) == 2 * n * n, f"{len(butterfly)} elementos", len(butterfly))

    report.record("iota-involution", all(iota(iota(e)) == e for e in gl), "iota∘iota = id nas unidades")
    report.record("pn-iota-fixed", all(iota(x) == x for _, x in basis), "todo sf(tag) é fixo por iota")

    mismatches, outside = [], 0
    for tag_a, x in basis:
        for tag_b, y in basis:
            matrix = x.supercommutator(y)
            closed = combination_operator(n, superbracket_pn(tag_a, tag_b))
            if matrix != closed:
                mismatches.append(f"{tag_a},{tag_b}")
            if pn_coordinates(matrix) is None:
                outside += 1
    report.record("pn-structure-constants", not mismatches,
                  f"{len(basis) ** 2} pares; divergências: {mismatches[:5]}" if mismatches
                  else f"{len(basis) ** 2} pares conferidos com o supercomutador")
    report.record("pn-subalgebra", outside == 0, f"{outside} colchetes fora de p_n")

    outside = sum(1 for x in butterfly for y in butterfly if not in_butterfly(x.supercommutator(y)))
    report.record("butterfly-subalgebra", outside == 0, f"{outside} colchetes fora de b_n")

    pn_iso = all(supertrace_form(x, y).is_zero for _, x in basis for _, y in basis)
    report.record("pn-isotropic", pn_iso, "B(X1, X2) = 0 em p_n")
    b_iso = all(supertrace_form(x, y).is_zero for x in butterfly for y in butterfly)
    report.record("butterfly-isotropic", b_iso, "B(Y1, Y2) = 0 em b_n")

    total_rank = rank_of((to_fraction_vector(x) for x in [op for _, op in basis] + butterfly), RATIONALS)
    report.record("transversal", total_rank == 4 * n * n,
                  f"posto de p_n + b_n = {total_rank} (esperado {4 * n * n})", total_rank)

    pairing = LinearSpan(RATIONALS)
    for _, x in basis:
        pairing.add({k: supertrace_form(x, y) for k, y in enumerate(butterfly)})
    report.record("pairing-nondegenerate", pairing.rank == 2 * n * n,
                  f"posto da matriz de pareamento = {pairing.rank}", pairing.rank)

    symmetric = all(
        supertrace_form(a, b) == supertrace_form(b, a) * (-1 if a.parity * b.parity else 1)
        for a in gl for b in gl)
    report.record("form-supersymmetric", symmetric, "B(A, B) = (-1)^{|A||B|} B(B, A)")

    if n <= 2:
        triples = [(x, y, z) for x in gl for y in gl for z in gl]
        note = f"todas as {len(triples)} triplas"
    else:
        rng = random.Random(seed)
        triples = [(rng.choice(gl), rng.choice(gl), rng.choice(gl)) for _ in range(AD_INVARIANCE_SAMPLE)]
        note = f"{len(triples)} triplas aleatórias (seed={seed})"
    invariant = all(supertrace_form(x.supercommutator(y), z) == supertrace_form(x, y.supercommutator(z))
                    for x, y, z in triples)
    report.record("form-ad-invariant", invariant, note)
    return report.finish()

