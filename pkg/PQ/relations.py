"""
Relations Module - RTT relations of U_q(p_n): mechanical extraction and closed form

This module contains extract_relations, which reads the coefficient of
E_ij ⊗ E_kl in T12 T13 S23 - S23 T13 T12 (computed in U ⊗ End ⊗ End with
Koszul signs), closed_form_relation, the explicit quadratic relation for the
same coefficient, and verify_relations, which compares both for every
quadruple (symbolically, or at seeded rational points of q).

Sign convention: (a⊗b⊗c)(a'⊗b'⊗c') = (-1)^{|b||a'| + |c||a'| + |c||b'|} aa'⊗bb'⊗cc',
with the algebra factor in the first slot.

Usage:
    from PQ.relations import extract_relations, closed_form_relation

    for rel in extract_relations(1):
        print(rel.index, rel.element)
"""

import logging
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from .algebra import AlgebraElement, Gen, Word, is_zero_kind, normalize, render_word
from .reports import VerificationReport
from .scalar import EPS, ONE, Q, QINV, as_frac, is_zero
from .smatrix import build_S, sample_points
from .superspace import basis_indices, parity

# Setup logging
logger = logging.getLogger(__name__)

Quadruple = Tuple[int, int, int, int]


class Relation(NamedTuple):
    """Relação quadrática indexada pelo coeficiente (i, j, k, l) de origem"""

    index: Quadruple
    element: AlgebraElement


def _units_table(n: int) -> Dict[Quadruple, object]:
    """u(a, b, c, d) = coeficiente de E_ab ⊗ E_cd em S"""
    return {(rows[0], cols[0], rows[1], cols[1]): value for (rows, cols), value in build_S(n).units().items()}


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _add_word(acc: Dict[Word, object], coefficient, first: Tuple[int, int], second: Tuple[int, int]) -> None:
    a, b = normalize(*first), normalize(*second)
    if a is None or b is None:
        return
    word = (a, b)
    acc[word] = acc[word] + coefficient if word in acc else coefficient


def extract_relations(n: int, keep_zero: bool = False) -> List[Relation]:
    """
    Relações obtidas de T12 T13 S23 = S23 T13 T12

    Args:
        n: dimensão do bloco
        keep_zero: mantém também os coeficientes que se anulam

    Returns:
        Lista de Relation em ordem lexicográfica de (i, j, k, l)
    """
    units = _units_table(n)
    by_columns: Dict[Tuple[int, int], List[Tuple[int, int, object]]] = {}
    by_rows: Dict[Tuple[int, int], List[Tuple[int, int, object]]] = {}
    for (a, b, c, d), value in units.items():
        by_columns.setdefault((b, d), []).append((a, c, value))
        by_rows.setdefault((a, c), []).append((b, d, value))

    indices = basis_indices(n)
    relations: List[Relation] = []
    for i in indices:
        for j in indices:
            for k in indices:
                for l in indices:
                    pi, pj, pk, pl = parity(i), parity(j), parity(k), parity(l)
                    acc: Dict[Word, object] = {}
                    # T12 T13 S23: Σ u(y,j,v,l) t_iy t_kv
                    for y, v, value in by_columns.get((j, l), []):
                        py, pv = parity(y), parity(v)
                        sign = _sign((pi + py) * (pk + pv) + (pk + pv) * (py + pj))
                        _add_word(acc, value * sign, (i, y), (k, v))
                    # S23 T13 T12: Σ u(i,x,k,u) t_ul t_xj
                    for x, u, value in by_rows.get((i, k), []):
                        px, pu = parity(x), parity(u)
                        sign = _sign((pi + px + pk + pu) * (pu + pl) + (pi + px) * (px + pj))
                        _add_word(acc, value * -sign, (u, l), (x, j))
                    element = AlgebraElement(acc)
                    if keep_zero or not element.is_zero:
                        relations.append(Relation((i, j, k, l), element))
    logger.info(f"Relações extraídas (n={n}): {len(relations)}")
    return relations


def theta_sign(i: int, j: int, k: int) -> int:
    """sgn(sgn(i) + sgn(j) + sgn(k))"""
    total = (1 if i > 0 else -1) + (1 if j > 0 else -1) + (1 if k > 0 else -1)
    return 1 if total > 0 else -1


def _shift(index: int):
    """delta_{x>0}(q-1) + delta_{x<0}(q^-1-1)"""
    return Q - 1 if index > 0 else QINV - 1


def closed_form_relation(i: int, j: int, k: int, l: int, n: int) -> AlgebraElement:
    """
    Forma fechada da relação quadrática no coeficiente (i, j, k, l)

    Args:
        i, j, k, l: índices em {±1, ..., ±n}
        n: dimensão do bloco

    Returns:
        AlgebraElement com símbolos nulos eliminados
    """
    pi, pj, pk, pl = parity(i), parity(j), parity(k), parity(l)
    theta = theta_sign(i, j, k)
    s0 = _sign((pi + pj) * (pk + pl))
    acc: Dict[Word, object] = {}

    _add_word(acc, ONE * s0, (i, j), (k, l))
    _add_word(acc, -ONE, (k, l), (i, j))
    weight = (1 if abs(j) < abs(l) else 0) - (1 if abs(k) < abs(i) else 0)
    if weight:
        _add_word(acc, EPS * (theta * weight), (i, l), (k, j))
    if j == l or j == -l:
        _add_word(acc, _shift(j) * s0, (i, j), (k, l))
    if i == k or i == -k:
        _add_word(acc, -_shift(i), (k, l), (i, j))
    if j > 0 and j == -l:
        _add_word(acc, EPS * theta, (i, -j), (k, -l))
    if i < 0 and i == -k:
        _add_word(acc, EPS * -_sign(pj), (-k, l), (-i, j))
    outer = _sign(pj * (pi + 1))
    for a in basis_indices(n):
        pa = parity(a)
        if j == -l and abs(a) < abs(l):
            _add_word(acc, EPS * (outer * _sign(pi * pa) * theta), (i, -a), (k, a))
        if i == -k and abs(k) < abs(a):
            _add_word(acc, EPS * (outer * _sign(parity(-j) * pa)), (a, l), (-a, j))
    return AlgebraElement(acc)


def proportional(a: AlgebraElement, b: AlgebraElement) -> Optional[object]:
    """
    Razão c com b = c·a (c != 0)

    Returns:
        A razão, ou None quando os elementos não são proporcionais
    """
    if a.is_zero or b.is_zero:
        return ONE if a.is_zero and b.is_zero else None
    word = next(iter(a.terms))
    other = b.coefficient(word)
    if is_zero(other):
        return None
    ratio = as_frac(other) / as_frac(a.coefficient(word))
    if a.scale(ratio) != b:
        return None
    return ratio.reduce()


def specialize(element: AlgebraElement, point: Fraction) -> AlgebraElement:
    """Avalia os coeficientes em q = point"""
    return AlgebraElement({w: Fraction(c.eval_at(point)) for w, c in element.terms.items()})


def verify_relations(n: int, mode: str = "symbolic", seed: int = 2024, samples: int = 5) -> VerificationReport:
    """
    Compara as relações extraídas com a forma fechada em todos os (i, j, k, l)

    Args:
        n: dimensão do bloco
        mode: "symbolic" (igualdade a menos de escalar em Q(q)) ou "sampled"
        seed: semente dos pontos racionais no modo amostrado
        samples: número de pontos (>= 5)
    """
    if mode not in ("symbolic", "sampled"):
        raise ValueError("mode deve ser 'symbolic' ou 'sampled'")
    logger.info(f"=== Iniciando verificação das relações RTT (n={n}, modo={mode}) ===")
    params = {"n": n, "mode": mode}
    if mode == "sampled":
        params["seed"] = seed
    report = VerificationReport("relations", "RTT relations T12 T13 S23 = S23 T13 T12 in closed form", params)
    extracted = extract_relations(n, keep_zero=True)
    points = sample_points(seed, max(samples, 5)) if mode == "sampled" else []

    mismatches = []
    for rel in extracted:
        closed = closed_form_relation(*rel.index, n)
        if mode == "symbolic":
            ok = proportional(closed, rel.element) is not None
        else:
            ok = all(proportional(specialize(closed, p), specialize(rel.element, p)) is not None for p in points)
        if not ok:
            mismatches.append(rel.index)
    nonzero = sum(1 for rel in extracted if not rel.element.is_zero)
    report.record("closed-form-agreement", not mismatches,
                  f"{len(extracted)} coeficientes, {nonzero} relações não nulas" if not mismatches
                  else f"divergências em {mismatches[:5]}", nonzero)
    if points:
        report.record("sample-points", True, "q em " + ", ".join(str(p) for p in points))

    by_index = {rel.index: rel.element for rel in extracted}
    bad = []
    for g in odd_generators(n):
        element = by_index[(g.i, g.j, g.i, g.j)]
        if element.is_zero or set(element.terms) != {(g, g)}:
            bad.append(str(g))
    report.record("odd-squares", not bad, "t_ij^2 = 0 para todo gerador ímpar" if not bad else f"falhas: {bad}")
    return report.finish()


def odd_generators(n: int) -> List[Gen]:
    indices = basis_indices(n)
    gens = [Gen(i, j) for i in indices for j in indices
            if not is_zero_kind(i, j) and i != j and (parity(i) + parity(j)) % 2]
    return sorted(gens, key=lambda g: (abs(g.i), abs(g.j), g.i, g.j))


def relations_payload(n: int) -> List[Dict]:
    """Relações extraídas em forma serializável (CLI `relations`)"""
    return [{"index": list(rel.index), "terms": rel.element.to_dict()} for rel in extract_relations(n)]


def relations_text(n: int) -> str:
    lines = []
    for rel in extract_relations(n):
        parts = [f"({c})*{render_word(w)}" for w, c in rel.element.sorted_terms()]
        lines.append(f"{rel.index}: " + " + ".join(parts) + " = 0")
    return "\n".join(lines)
