"""
Limits Module - Classical limits of U_q(p_n): Lie superalgebra and cobracket

This module contains the tau-rescaling of the generators
(t_ij = eps·tau_ij for i != j, t_ii = 1 + (q-1)·tau_ii), the identification
psi between the basis of p_n and the rescaled generators at q = 1, and the
two limit checks:

    - verify_classical_limit: the rescaled representation at q = 1 is the
      p_n action twisted by X -> (-1)^{|X|} X, and the supercommutator of
      rescaled generators agrees with psi([X, Y]) modulo the q = 1 fiber of
      the rescaled relations
    - verify_cobracket_limit: (Delta(tau) - Delta(tau)°)/eps at q = 1 equals
      (psi⊗psi) delta(psi^-1(tau)) for every generator

The q = 1 fiber of the relations is computed over the local ring at q = 1:
a Q(q)-basis of the rescaled relations is extracted, every basis vector is
divided by the largest power of (q-1) dividing it, and rational
dependencies among the specializations are lifted and divided again until
the specializations are independent. The fiber must coincide with the span
of the bracket relations [psi X, psi Y] - psi([X, Y]) of U(p_n).

Usage:
    from PQ.limits import verify_classical_limit, verify_cobracket_limit

    print(verify_classical_limit(1).passed)
    print(verify_cobracket_limit(2).to_text())
"""

import logging
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Tuple

from .algebra import AlgebraElement, Gen, Word, coproduct, generators, render_word, tensor_flip
from .bialgebra import cobracket
from .exceptions import LocalizationError, ScalarError
from .linalg import RATIONALS, LinearSpan, independent_rows
from .periplectic import BasisTag, basis_tags, sf, superbracket_pn, tag_parity
from .relations import extract_relations
from .reports import VerificationReport
from .representation import clear_denominators, representation
from .scalar import EPS, ONE, Frac, Q, Scalar
from .superspace import GradedOperator, identity, leg_sum, parity

# Setup logging
logger = logging.getLogger(__name__)

LaurentVector = Dict[Hashable, Scalar]
RationalVector = Dict[Hashable, Fraction]
TensorKey = Tuple[Word, Word]

DEFAULT_SATURATION_CAP = 100_000


# ----------------------------------------------------------------------
# psi: p_n -> geradores reescalonados em q = 1
# ----------------------------------------------------------------------

def psi(tag: BasisTag) -> Tuple[Fraction, Gen]:
    """
    Imagem de um elemento da base de p_n

    psi(sf(j, i)) = (-1)^{p(j)} tau_ij para |i| < |j|, psi(sf(m, m)) = tau_mm
    e psi(sf(-m, m)) = -2 tau_{m,-m}.

    Returns:
        (coeficiente, gerador)
    """
    j, i = tag
    if j == i:
        return Fraction(1), Gen(j, j)
    if j == -i:
        return Fraction(-2), Gen(i, j)
    return Fraction((-1) ** parity(j)), Gen(i, j)


def psi_inverse(g: Gen) -> Tuple[Fraction, BasisTag]:
    """Inverso de psi: (coeficiente, tag) com psi^-1(tau_g) = coeficiente·sf(tag)"""
    if g.is_diagonal:
        return Fraction(1), (g.i, g.i)
    if g.j == -g.i:
        return Fraction(-1, 2), (g.j, g.i)
    return Fraction((-1) ** parity(g.j)), (g.j, g.i)


def twist_sign(tag: BasisTag) -> int:
    """Automorfismo X -> (-1)^{|X|} X"""
    return -1 if tag_parity(tag) else 1


# ----------------------------------------------------------------------
# Reescalonamento
# ----------------------------------------------------------------------

def _substitute(g: Gen) -> List[Tuple[Scalar, Word]]:
    if g.inverse:
        raise LocalizationError(f"inverso formal fora do reescalonamento: {g}")
    if g.is_diagonal:
        return [(ONE, ()), (Q - 1, (g,))]
    return [(EPS, (g,))]


def _add(acc: Dict, key, value) -> None:
    total = acc[key] + value if key in acc else value
    if total == 0:
        acc.pop(key, None)
    else:
        acc[key] = total


def rescale(element: AlgebraElement) -> LaurentVector:
    """
    Escreve um elemento nos tau: cada t_g é substituído por eps·tau_g ou 1 + (q-1)·tau_g

    Raises:
        LocalizationError: coeficiente com polo em q = 1
    """
    for c in element.terms.values():
        if isinstance(c, Frac) and c.den.eval_at_one() == 0:
            raise LocalizationError(f"coefficient not in localization: {c}")
    result: LaurentVector = {}
    for word, c in clear_denominators(element).terms.items():
        partial = [(c, ())]
        for g in word:
            partial = [(x * y, w + v) for x, w in partial for y, v in _substitute(g)]
        for value, tau_word in partial:
            _add(result, tau_word, value)
    return result


def primitive_at_one(vector: LaurentVector) -> LaurentVector:
    """Divide o vetor pela maior potência de (q-1) que divide todas as entradas"""
    vector = {k: v for k, v in vector.items() if not v.is_zero}
    if not vector:
        return vector
    k = min(v.valuation_at_one() for v in vector.values())
    return {key: v.quotient_by_qminus1(k) for key, v in vector.items()}


def at_one(vector: LaurentVector) -> RationalVector:
    values = {k: v.eval_at_one() for k, v in vector.items()}
    return {k: v for k, v in values.items() if v != 0}


def saturated_fiber(vectors: Iterable[LaurentVector],
                    max_steps: int = DEFAULT_SATURATION_CAP) -> Tuple[LinearSpan, int]:
    """
    Fibra em q = 1 do saturado do módulo gerado pelos vetores

    Só uma base sobre Q(q) dos vetores é saturada. Cada vetor da base é
    reduzido pelos levantamentos já aceitos enquanto a sua especialização
    for dependente; o resto é dividido por (q-1)^k. Com vetores
    independentes o resto nunca se anula e cada divisão aumenta o módulo
    dentro do saturado.

    Args:
        vectors: vetores com entradas em Q[q, q^-1]
        max_steps: máximo de divisões por (q-1)

    Returns:
        (espaço gerado sobre Q, número de passos de saturação)

    Raises:
        LocalizationError: saturação acima de max_steps
    """
    candidates = [v for v in (primitive_at_one(v) for v in vectors) if v]
    basis = [candidates[k] for k in independent_rows(candidates)]
    span = LinearSpan(RATIONALS, track=True)
    lifts: Dict[int, LaurentVector] = {}
    steps = 0
    for current in basis:
        while True:
            special = at_one(current)
            coords = span.coordinates(special)
            if coords is None:
                label = len(lifts)
                span.add(special, label)
                lifts[label] = current
                break
            for label, c in coords.items():
                for key, value in lifts[label].items():
                    _add(current, key, value * -c)
            current = primitive_at_one(current)
            steps += 1
            if steps > max_steps:
                raise LocalizationError("saturation did not terminate within bound")
    logger.debug(f"Fibra em q=1: {len(basis)} de {len(candidates)} vetores independentes, "
                 f"dimensão {span.rank}, {steps} passos de saturação")
    return span, steps


# ----------------------------------------------------------------------
# Rota A: representação reescalonada
# ----------------------------------------------------------------------

def _limit_entry(value: Scalar, scale: Scalar) -> Scalar:
    try:
        return Scalar(Frac(value, scale).eval_at_one())
    except ScalarError as e:
        raise LocalizationError(f"coefficient not in localization: {value} / ({scale})") from e


def rescaled_action(n: int, legs: int, g: Gen) -> GradedOperator:
    """rho_legs(tau_g) em q = 1"""
    op = representation(n, legs)[g]
    if g.is_diagonal:
        return (op - identity(n, legs)).map_entries(lambda v: _limit_entry(v, Q - 1))
    return op.map_entries(lambda v: _limit_entry(v, EPS))


def twist_failures(n: int, legs: int) -> List[str]:
    """Geradores cuja ação limite difere de leg_sum(tw(psi^-1(tau_g)))"""
    failures = []
    for g in generators(n):
        coefficient, tag = psi_inverse(g)
        expected = leg_sum(sf(n, *tag).scale(coefficient * twist_sign(tag)), legs)
        if rescaled_action(n, legs, g) != expected:
            failures.append(str(g))
    return failures


# ----------------------------------------------------------------------
# Rota B: relações reescalonadas
# ----------------------------------------------------------------------

def _psi_vector(combo: Dict[BasisTag, Scalar]) -> RationalVector:
    result: RationalVector = {}
    for tag, c in combo.items():
        coefficient, g = psi(tag)
        _add(result, (g,), c.constant_value() * coefficient)
    return result


def bracket_residual(a: BasisTag, b: BasisTag) -> RationalVector:
    """[psi(A), psi(B)] - psi([A, B]) no espaço das palavras em tau"""
    ca, ga = psi(a)
    cb, gb = psi(b)
    sign = -1 if tag_parity(a) * tag_parity(b) else 1
    result: RationalVector = {}
    _add(result, (ga, gb), ca * cb)
    _add(result, (gb, ga), -sign * ca * cb)
    for key, value in _psi_vector(superbracket_pn(a, b)).items():
        _add(result, key, -value)
    return result


def verify_classical_limit(n: int, legs: int = 1) -> VerificationReport:
    """
    U_q(p_n) reescalonada em q = 1 é U(p_n)

    Args:
        n: dimensão do bloco
        legs: maior número de pernas na rota da representação

    Raises:
        LocalizationError: alguma relação ou imagem reescalonada tem polo em q = 1
    """
    logger.info(f"=== Iniciando verificação do limite clássico (n={n}) ===")
    report = VerificationReport("classical-limit", "rescaled U_q(p_n) at q=1 is U(p_n)", {"n": n, "l": legs})

    for l in range(1, legs + 1):
        failures = twist_failures(n, l)
        report.record(f"twisted-action-l{l}", not failures, f"falhas: {failures}" if failures
                      else "rho(tau)|q=1 = ação de p_n torcida por (-1)^{|X|}")

    vectors = [rescale(rel.element) for rel in extract_relations(n)]
    report.record("localization", True, f"{len(vectors)} relações reescalonadas sem polo em q=1", len(vectors))
    span, steps = saturated_fiber(vectors)

    tags = basis_tags(n)
    classical = LinearSpan(RATIONALS)
    bad = []
    for a in tags:
        for b in tags:
            residual = bracket_residual(a, b)
            if not residual:
                continue
            classical.add(residual)
            if not span.contains(residual):
                bad.append((a, b))
    report.record("bracket-homomorphism", not bad, f"falhas: {bad[:5]}" if bad
                  else f"{len(tags) ** 2} pares: [psi X, psi Y] = psi[X, Y] em q=1")
    # com a inclusão acima, postos iguais dão fibra = relações de U(p_n)
    report.record("limit-relations", span.rank == classical.rank,
                  f"fibra em q=1: dimensão {span.rank}, relações de U(p_n): {classical.rank} "
                  f"({steps} passos de saturação)", span.rank)
    return report.finish()


# ----------------------------------------------------------------------
# Limite do coproduto
# ----------------------------------------------------------------------

def cobracket_limit(g: Gen, n: int) -> Dict[TensorKey, Fraction]:
    """
    (Delta(tau_g) - Delta(tau_g)°)/eps em q = 1, nos pares de palavras em tau

    Raises:
        LocalizationError: coeficiente com polo em q = 1
    """
    difference: Dict[TensorKey, object] = dict(coproduct(g, n))
    for key, value in tensor_flip(coproduct(g, n)).items():
        _add(difference, key, -value)
    expanded: Dict[TensorKey, Scalar] = {}
    for (left, right), c in difference.items():
        for ca, wa in _substitute(left[0]):
            for cb, wb in _substitute(right[0]):
                _add(expanded, (wa, wb), c * ca * cb)
    scale = EPS * ((Q - 1) if g.is_diagonal else EPS)
    result: Dict[TensorKey, Fraction] = {}
    for key, value in expanded.items():
        limit = _limit_entry(value, scale)
        if not limit.is_zero:
            result[key] = limit.constant_value()
    return result


def classical_cobracket_image(g: Gen) -> Dict[TensorKey, Fraction]:
    """(psi⊗psi) delta(psi^-1(tau_g))"""
    coefficient, tag = psi_inverse(g)
    result: Dict[TensorKey, Fraction] = {}
    for (a, b), c in cobracket(tag).items():
        ca, ga = psi(a)
        cb, gb = psi(b)
        _add(result, ((ga,), (gb,)), coefficient * c.constant_value() * ca * cb)
    return result


def _render(combo: Dict[TensorKey, Fraction]) -> str:
    if not combo:
        return "0"
    parts = sorted(f"({c})*{render_word(a)} ⊗ {render_word(b)}" for (a, b), c in combo.items())
    return " + ".join(parts)


def verify_cobracket_limit(n: int) -> VerificationReport:
    """Compara o limite de Delta - Delta° com o cobracket de p_n para cada gerador"""
    logger.info(f"=== Iniciando verificação do limite do coproduto (n={n}) ===")
    report = VerificationReport("cobracket-limit", "U_q(p_n) quantizes the co-Poisson structure of p_n", {"n": n})
    for g in generators(n):
        quantum = cobracket_limit(g, n)
        classical = classical_cobracket_image(g)
        ok = quantum == classical
        note = f"{len(classical)} termos" if ok else f"quântico: {_render(quantum)}; clássico: {_render(classical)}"
        if g.is_diagonal and ok:
            note = "ambos os lados nulos" if not classical else note
        report.record(f"delta{(g.i, g.j)}", ok, note)
    return report.finish()