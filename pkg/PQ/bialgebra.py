"""
Bialgebra Module - Fake Casimir element, CYBE and the supercobracket of p_n

This module contains the TwoTensor class (2-leg operators with an optional
expansion in homogeneous factors), the fake Casimir element s, the classical
Yang-Baxter check, the closed-form supercobracket delta on basis tags and
its comparison with delta(X) = [X⊗1 + 1⊗X, s].

Two-tensors over p_n are handled in coordinates: a TensorCombination maps
pairs of basis tags to Scalars.

Usage:
    from PQ.bialgebra import fake_casimir, cobracket, verify_cybe

    s = fake_casimir(2)
    print(cobracket((2, 1)))
    print(verify_cybe(2).passed)
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .periplectic import (BasisTag, Combination, basis_tags, canonical_tag, in_butterfly, pn_basis,
                          pn_coordinates, sf, superbracket_pn, supertrace_form, tag_parity)
from .reports import VerificationReport
from .scalar import HALF, ZERO, Scalar
from .superspace import (GradedOperator, basis_indices, elementary, embed, identity,
                         koszul_tensor, parity, sum_operators)

# Setup logging
logger = logging.getLogger(__name__)

TensorCombination = Dict[Tuple[BasisTag, BasisTag], Scalar]
TripleCombination = Dict[Tuple[BasisTag, BasisTag, BasisTag], Scalar]


class TwoTensor:
    """Operador de 2 pernas com expansão opcional Σ c·X⊗Y em fatores homogêneos"""

    def __init__(self, op: GradedOperator, terms: Optional[List[Tuple[Scalar, GradedOperator, GradedOperator]]] = None):
        """
        Args:
            op: operador de 2 pernas
            terms: lista (coeficiente, fator 1, fator 2)
        """
        if op.legs != 2:
            raise ValueError("TwoTensor espera um operador de 2 pernas")
        self.op = op
        self.terms = terms

    @classmethod
    def from_terms(cls, n: int, terms: List[Tuple[Scalar, GradedOperator, GradedOperator]]) -> "TwoTensor":
        op = sum_operators((koszul_tensor(x, y).scale(c) for c, x, y in terms), n, 2)
        return cls(op, terms)

    @property
    def n(self) -> int:
        return self.op.n

    def reassemble(self) -> GradedOperator:
        """Remonta Σ c·X⊗Y com os sinais de Koszul"""
        if self.terms is None:
            return self.op
        return sum_operators((koszul_tensor(x, y).scale(c) for c, x, y in self.terms), self.n, 2)

    def is_consistent(self) -> bool:
        return self.reassemble() == self.op

    def leg(self, positions: Tuple[int, int], total: int = 3) -> GradedOperator:
        """Versão embutida nas pernas `positions` (s12, s13, s23, ...)"""
        return embed(self.op, positions, total)


def fake_casimir(n: int) -> TwoTensor:
    """
    Elemento de Casimir falso s

    s = Σ_{|j|<|i|} (-1)^{p(j)} sf(i,j)⊗E_ji + ½ Σ sf(m,m)⊗(E_mm + E_{-m,-m}) + ½ Σ sf(-m,m)⊗E_{m,-m}

    Args:
        n: dimensão do bloco

    Returns:
        TwoTensor com primeiros fatores em p_n e segundos fatores em b_n
    """
    terms = []
    indices = basis_indices(n)
    for i in indices:
        for j in indices:
            if abs(j) < abs(i):
                terms.append((Scalar((-1) ** parity(j)), sf(n, i, j), elementary(n, j, i)))
    for m in range(1, n + 1):
        terms.append((HALF, sf(n, m, m), elementary(n, m, m) + elementary(n, -m, -m)))
    for m in range(1, n + 1):
        terms.append((HALF, sf(n, -m, m), elementary(n, m, -m)))
    return TwoTensor.from_terms(n, terms)


def verify_cybe(n: int) -> VerificationReport:
    """Verifica [s12, s13] + [s12, s23] + [s13, s23] = 0"""
    logger.info(f"=== Iniciando verificação da CYBE (n={n}) ===")
    report = VerificationReport("cybe", "classical Yang-Baxter equation for s", {"n": n})
    s = fake_casimir(n)
    s12, s13, s23 = s.leg((1, 2)), s.leg((1, 3)), s.leg((2, 3))
    residual = s12.supercommutator(s13) + s12.supercommutator(s23) + s13.supercommutator(s23)
    report.record("expansion-consistent", s.is_consistent(), "Σ c X⊗Y remonta o operador")
    report.record("cybe-residual", residual.is_zero, f"resíduo com {residual.nnz} entradas não nulas",
                  residual.nnz)
    return report.finish()


# ----------------------------------------------------------------------
# Coordenadas em p_n ⊗ p_n
# ----------------------------------------------------------------------

def accumulate_pair(acc: TensorCombination, coefficient, a: Tuple[int, int], b: Tuple[int, int]) -> None:
    """acc += coefficient * sf(a)⊗sf(b), com os dois fatores na base canônica"""
    first, second = canonical_tag(*a), canonical_tag(*b)
    if first is None or second is None:
        return
    coefficient = coefficient if isinstance(coefficient, Scalar) else Scalar(coefficient)
    key = (first[1], second[1])
    value = acc.get(key, ZERO) + coefficient * (first[0] * second[0])
    if value.is_zero:
        acc.pop(key, None)
    else:
        acc[key] = value


def cobracket(tag: BasisTag) -> TensorCombination:
    """
    Supercobracket delta(sf(i, j)) pela fórmula fechada

    Args:
        tag: par (i, j) qualquer; é normalizado para |j| <= |i| antes do cálculo

    Returns:
        Combinação esparsa de pares de tags
    """
    canon = canonical_tag(*tag)
    if canon is None:
        return {}
    sign, (i, j) = canon
    pi, pj = parity(i), parity(j)
    acc: TensorCombination = {}

    for k in range(-abs(i) + 1, abs(i)):
        if k == 0 or not abs(j) < abs(k) < abs(i):
            continue
        pk = parity(k)
        c = -sign if pk == 0 else sign
        accumulate_pair(acc, c, (i, k), (k, j))
        accumulate_pair(acc, -c * (-1) ** ((pi + pk) * (pj + pk)), (k, j), (i, k))

    # d = (-1)^{p(i)} sf(i,i) - (-1)^{p(j)} sf(j,j)
    d = [((-1) ** pi, (i, i)), (-(-1) ** pj, (j, j))]
    for c, diag in d:
        accumulate_pair(acc, HALF * (-c * sign), diag, (i, j))
        accumulate_pair(acc, HALF * (c * sign), (i, j), diag)

    if i < 0:
        accumulate_pair(acc, HALF * -sign, (i, -i), (-i, j))
        accumulate_pair(acc, HALF * (sign * (-1) ** pj), (-i, j), (i, -i))
    if j > 0:
        accumulate_pair(acc, HALF * (sign * (-1) ** pi), (-j, j), (i, -j))
        accumulate_pair(acc, HALF * sign, (i, -j), (-j, j))
    logger.debug(f"delta{tag}: {len(acc)} termos")
    return acc


def tensor_operator(n: int, combo: TensorCombination) -> GradedOperator:
    """Operador de 2 pernas Σ c·sf(A)⊗sf(B)"""
    return sum_operators((koszul_tensor(sf(n, *a), sf(n, *b)).scale(c) for (a, b), c in combo.items()), n, 2)


def tensor_coordinates(op: GradedOperator) -> Optional[TensorCombination]:
    """
    Coordenadas de um operador de 2 pernas em p_n ⊗ p_n

    Returns:
        Mapa (tag, tag) -> coeficiente, ou None quando op não pertence a p_n ⊗ p_n
    """
    tags = set(basis_tags(op.n))
    coords: TensorCombination = {}
    for ((r1, r2), (c1, c2)), value in op.units().items():
        a, b = (r1, c1), (r2, c2)
        if a in tags and b in tags:
            weight = (2 if r1 == -c1 else 1) * (2 if r2 == -c2 else 1)
            coords[(a, b)] = value * Scalar(Fraction(1, weight))
    if tensor_operator(op.n, coords) != op:
        return None
    return coords


def adjoint_tensor(n: int, x: GradedOperator, t: GradedOperator) -> GradedOperator:
    """Ação adjunta X·T = [X⊗1 + 1⊗X, T] em operadores de 2 pernas"""
    one = identity(n, 1)
    return (koszul_tensor(x, one) + koszul_tensor(one, x)).supercommutator(t)


def delta_via_s(n: int, x: GradedOperator, s: Optional[TwoTensor] = None) -> GradedOperator:
    """delta(X) = [X⊗1 + 1⊗X, s]"""
    s = s or fake_casimir(n)
    return adjoint_tensor(n, x, s.op)


def verify_cobracket_via_s(n: int) -> VerificationReport:
    """Compara a fórmula fechada de delta com [X⊗1 + 1⊗X, s] em toda a base"""
    logger.info(f"=== Iniciando verificação de delta via s (n={n}) ===")
    report = VerificationReport("cobracket", "delta(X) = [X⊗1 + 1⊗X, s]", {"n": n})
    s = fake_casimir(n)
    for tag, x in pn_basis(n):
        bracket = delta_via_s(n, x, s)
        coords = tensor_coordinates(bracket)
        closed = cobracket(tag)
        if coords is None:
            report.record(f"delta{tag}", False, "[X⊗1+1⊗X, s] fora de p_n⊗p_n")
            continue
        report.record(f"delta{tag}", coords == closed, f"{len(closed)} termos")
    report.record("delta(0)", adjoint_tensor(n, GradedOperator(n, 1), s.op).is_zero, "delta(0) = 0")
    return report.finish()


# ----------------------------------------------------------------------
# Propriedades do cobracket
# ----------------------------------------------------------------------

def _add(acc: Dict, key, value: Scalar) -> None:
    total = acc.get(key, ZERO) + value
    if total.is_zero:
        acc.pop(key, None)
    else:
        acc[key] = total


def signed_flip(combo: TensorCombination) -> TensorCombination:
    """A⊗B -> (-1)^{|A||B|} B⊗A"""
    flipped: TensorCombination = {}
    for (a, b), c in combo.items():
        _add(flipped, (b, a), c * (-1 if tag_parity(a) * tag_parity(b) else 1))
    return flipped


def adjoint_on_pairs(tag: BasisTag, combo: TensorCombination) -> TensorCombination:
    """X·(A⊗B) = [X,A]⊗B + (-1)^{|X||A|} A⊗[X,B] em coordenadas"""
    px = tag_parity(tag)
    result: TensorCombination = {}
    for (a, b), c in combo.items():
        for a2, c2 in superbracket_pn(tag, a).items():
            _add(result, (a2, b), c * c2)
        sign = -1 if px * tag_parity(a) else 1
        for b2, c2 in superbracket_pn(tag, b).items():
            _add(result, (a, b2), c * c2 * sign)
    return result


def cobracket_of_combination(combo: Combination) -> TensorCombination:
    result: TensorCombination = {}
    for tag, c in combo.items():
        for key, value in cobracket(tag).items():
            _add(result, key, c * value)
    return result


def co_jacobi(tag: BasisTag) -> TripleCombination:
    """(1 + σ + σ²)∘(delta⊗1)∘delta aplicado a sf(tag)"""
    first: TripleCombination = {}
    for (a, b), c in cobracket(tag).items():
        for (a1, a2), c2 in cobracket(a).items():
            _add(first, (a1, a2, b), c * c2)
    total: TripleCombination = dict(first)
    current = first
    for _ in range(2):
        rotated: TripleCombination = {}
        for (x, y, z), c in current.items():
            sign = -1 if tag_parity(x) * (tag_parity(y) + tag_parity(z)) % 2 else 1
            _add(rotated, (y, z, x), c * sign)
        for key, value in rotated.items():
            _add(total, key, value)
        current = rotated
    return total


def verify_cobracket_properties(n: int) -> VerificationReport:
    """Anti-supersimetria, co-Jacobi e propriedade de 1-cociclo de delta"""
    logger.info(f"=== Iniciando propriedades do cobracket (n={n}) ===")
    report = VerificationReport("cobracket-properties", "delta is an antisupersymmetric 1-cocycle with co-Jacobi",
                                {"n": n})
    tags = basis_tags(n)
    bad = [tag for tag in tags if signed_flip(cobracket(tag)) != {k: -v for k, v in cobracket(tag).items()}]
    report.record("antisupersymmetry", not bad, f"falhas: {bad[:5]}" if bad else f"{len(tags)} elementos")

    bad = [tag for tag in tags if co_jacobi(tag)]
    report.record("co-jacobi", not bad, f"falhas: {bad[:5]}" if bad else f"{len(tags)} elementos")

    bad = []
    for a in tags:
        for b in tags:
            left = cobracket_of_combination(superbracket_pn(a, b))
            right = adjoint_on_pairs(a, cobracket(b))
            sign = -1 if tag_parity(a) * tag_parity(b) else 1
            for key, value in adjoint_on_pairs(b, cobracket(a)).items():
                _add(right, key, value * -sign)
            if left != right:
                bad.append((a, b))
    report.record("1-cocycle", not bad, f"falhas: {bad[:5]}" if bad else f"{len(tags) ** 2} pares")
    return report.finish()


def verify_duality(n: int) -> VerificationReport:
    """s é o elemento canônico do pareamento B entre p_n e b_n"""
    logger.info(f"=== Iniciando verificação da dualidade (n={n}) ===")
    report = VerificationReport("duality", "s is the canonical element of the B-pairing", {"n": n})
    s = fake_casimir(n)
    report.record("first-factors-in-pn", all(pn_coordinates(x) is not None for _, x, _ in s.terms),
                  "fatores à esquerda em p_n")
    report.record("second-factors-in-butterfly", all(in_butterfly(y) for _, _, y in s.terms),
                  "fatores à direita em b_n")
    bad = []
    for tag, z in pn_basis(n):
        image = sum_operators((x.scale(c * supertrace_form(y, z)) for c, x, y in s.terms), n, 1)
        if image != z:
            bad.append(tag)
    report.record("canonical-element", not bad,
                  f"falhas: {bad[:5]}" if bad else "Σ X_a B(Y_a, Z) = Z para toda a base")
    return report.finish()
