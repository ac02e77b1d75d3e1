"""
Centralizer Module - Graded commutants on tensor space over Q(q)

This module contains the CommutantProblem and CommutantBasis classes and the
solver that computes the supercommutant of a family of homogeneous operators
on V^{⊗l}, plus the reports built on it:

    - verify_brauer_centralizer: commutant of the U_q(p_n) action against the
      image of the q-Brauer algebra, with the q = 1 classical commutant
    - schur_algebra: commutant of the q-Brauer token images
    - verify_double_centralizer: dimensions of S_q, of the U_q(p_n) image and
      of the bicommutant, all recorded as measurements

Small systems are solved symbolically by fraction-free elimination. Larger
ones are solved at a seeded point of GF(p), which bounds the dimension from
above; a symbolically verified subspace bounds it from below and the
dimension is certified when the two meet.

Usage:
    from PQ.centralizer import verify_brauer_centralizer

    report = verify_brauer_centralizer(2, 2)
    print(report.to_text())
"""

import logging
import random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import generators
from .exceptions import ProblemTooLargeError
from .limits import rescaled_action
from .linalg import (DEFAULT_PRIME, FUNCTIONS, RATIONALS, LinearSpan, SpecializedField,
                     fraction_free_kernel, kernel_basis)
from .qbrauer import brauer_rep, image_span, operator_vector, span_of_words
from .reports import VerificationReport
from .representation import representation
from .scalar import ZERO, Scalar
from .superspace import GradedOperator, multi_indices, multi_parity

# Setup logging
logger = logging.getLogger(__name__)

SYMBOLIC_BUDGET = 1024
MAX_UNKNOWNS = 20000

Pair = Tuple[tuple, tuple]


class CommutantProblem:
    """Família de operadores homogêneos cujo supercomutante se quer calcular"""

    def __init__(self, n: int, legs: int, operators: Sequence[GradedOperator], side: str,
                 constant: bool = False):
        """
        Args:
            n: dimensão do bloco
            legs: número de pernas
            operators: geradores (todos com o mesmo n e número de pernas)
            side: rótulo ("uqpn", "brauer", "classical", ...)
            constant: True quando as entradas são racionais (problema em q = 1)
        """
        if not operators:
            raise ValueError("o problema precisa de pelo menos um gerador")
        for op in operators:
            if op.n != n or op.legs != legs:
                raise ValueError(f"gerador incompatível: n={op.n}, pernas={op.legs}")
        self.n = n
        self.legs = legs
        self.operators = list(operators)
        self.side = side
        self.constant = constant

    def weights(self) -> Dict[tuple, tuple]:
        """Peso de cada vetor de base: valores dos geradores diagonais"""
        diagonal = [op for op in self.operators
                    if all(row == col for row, col, _ in op.items())]
        weights = {}
        for index in multi_indices(self.n, self.legs):
            weights[index] = tuple(op.entry(index, index) for op in diagonal)
        return weights

    def support(self, parity: int) -> List[Pair]:
        """
        Incógnitas (linha, coluna) de um X homogêneo de paridade `parity`

        Só entram pares com o mesmo peso: X comuta com cada gerador diagonal.
        """
        weights = self.weights()
        indices = multi_indices(self.n, self.legs)
        return [(r, c) for r in indices for c in indices
                if (multi_parity(r) + multi_parity(c)) % 2 == parity and weights[r] == weights[c]]

    def equations(self, parity: int, unknowns: Sequence[Pair]) -> List[Dict[Pair, Scalar]]:
        """Linhas do sistema X g - (-1)^{p(X)p(g)} g X = 0, uma por entrada e gerador"""
        rows: List[Dict[Pair, Scalar]] = []
        for g in self.operators:
            sign = -1 if parity * g.parity else 1
            columns = g.column_index()
            eq: Dict[tuple, Dict[Pair, Scalar]] = {}
            for r, k in unknowns:
                for c, value in g.entries.get(k, {}).items():
                    _add(eq.setdefault((r, c), {}), (r, k), value)
            for k, c in unknowns:
                for r, value in columns.get(k, {}).items():
                    _add(eq.setdefault((r, c), {}), (k, c), -value if sign > 0 else value)
            rows.extend(row for row in eq.values() if row)
        return rows


class CommutantBasis:
    """Resultado de solve_commutant"""

    def __init__(self, problem: CommutantProblem, operators: List[GradedOperator],
                 per_parity: Dict[int, Optional[int]], mode: str,
                 bounds: Dict[int, Tuple[int, int]], unknowns: int):
        """
        Args:
            problem: problema resolvido
            operators: base (homogênea) do supercomutante; no modo de avaliação,
                o subespaço conhecido quando a dimensão foi certificada
            per_parity: dimensão por paridade (None se não certificada)
            mode: "symbolic", "rational" ou "evaluation"
            bounds: paridade -> (inferior, superior)
            unknowns: número de incógnitas após a redução por pesos
        """
        self.problem = problem
        self.operators = operators
        self.per_parity = per_parity
        self.mode = mode
        self.bounds = bounds
        self.unknowns = unknowns

    @property
    def certified(self) -> bool:
        return all(d is not None for d in self.per_parity.values())

    @property
    def dimension(self) -> Optional[int]:
        if not self.certified:
            return None
        return sum(self.per_parity.values())

    def summary(self) -> Dict:
        return {
            "side": self.problem.side,
            "mode": self.mode,
            "dimension": self.dimension,
            "even": self.per_parity[0],
            "odd": self.per_parity[1],
            "bounds": {str(p): list(b) for p, b in sorted(self.bounds.items())},
            "unknowns": self.unknowns,
        }


def _add(row: Dict, key, value) -> None:
    total = row.get(key, ZERO) + value
    if total.is_zero:
        row.pop(key, None)
    else:
        row[key] = total


def _operator(n: int, legs: int, parity: int, vector: Dict[Pair, object]) -> GradedOperator:
    entries: Dict[tuple, Dict[tuple, object]] = {}
    for (r, c), value in vector.items():
        entries.setdefault(r, {})[c] = value
    return GradedOperator(n, legs, entries, parity)


def residual_failures(problem: CommutantProblem, operators: Iterable[GradedOperator]) -> int:
    """Quantos operadores não supercomutam com algum gerador"""
    return sum(1 for x in operators
               if any(not x.supercommutator(g).is_zero for g in problem.operators))


def evaluation_point(seed: int) -> int:
    return random.Random(seed).randrange(2, DEFAULT_PRIME - 1)


def solve_commutant(problem: CommutantProblem, budget: int = SYMBOLIC_BUDGET,
                    max_unknowns: int = MAX_UNKNOWNS, seed: int = 2024,
                    known: Optional[Sequence[GradedOperator]] = None,
                    mode: Optional[str] = None) -> CommutantBasis:
    """
    Supercomutante graduado de uma família de operadores

    Args:
        problem: geradores e rótulo
        budget: máximo de incógnitas para a eliminação simbólica
        max_unknowns: acima disso o problema é recusado
        seed: semente do ponto de avaliação
        known: operadores já verificados no comutante (limite inferior)
        mode: força "symbolic" ou "evaluation" (automático quando None)

    Returns:
        CommutantBasis com dimensões por paridade

    Raises:
        ProblemTooLargeError: número de incógnitas acima de max_unknowns
    """
    supports = {p: problem.support(p) for p in (0, 1)}
    total = sum(len(s) for s in supports.values())
    if total > max_unknowns:
        raise ProblemTooLargeError(f"problem too large: {total} incógnitas (limite {max_unknowns})")
    if problem.constant:
        mode = "rational"
    elif mode is None:
        mode = "symbolic" if total <= budget else "evaluation"
    logger.info(f"=== Iniciando comutante ({problem.side}, n={problem.n}, pernas={problem.legs}, "
                f"{total} incógnitas, modo {mode}) ===")

    operators: List[GradedOperator] = []
    per_parity: Dict[int, Optional[int]] = {}
    bounds: Dict[int, Tuple[int, int]] = {}
    for parity, unknowns in supports.items():
        if not unknowns:
            per_parity[parity], bounds[parity] = 0, (0, 0)
            continue
        rows = problem.equations(parity, unknowns)
        if mode == "symbolic":
            vectors = fraction_free_kernel(rows, unknowns)
            found = [_operator(problem.n, problem.legs, parity, v) for v in vectors]
            operators.extend(found)
            per_parity[parity] = len(found)
            bounds[parity] = (len(found), len(found))
        elif mode == "rational":
            vectors = kernel_basis(rows, unknowns, RATIONALS)
            found = [_operator(problem.n, problem.legs, parity, {k: Scalar(v) for k, v in vec.items()})
                     for vec in vectors]
            operators.extend(found)
            per_parity[parity] = len(found)
            bounds[parity] = (len(found), len(found))
        else:
            field = SpecializedField(evaluation_point(seed))
            upper = len(kernel_basis(rows, unknowns, field))
            span = LinearSpan(FUNCTIONS)
            verified = [x for x in (known or []) if x.parity == parity
                        and all(x.supercommutator(g).is_zero for g in problem.operators)]
            independent = [x for x in verified if span.add(operator_vector(x))]
            lower = len(independent)
            bounds[parity] = (lower, upper)
            if lower == upper:
                per_parity[parity] = lower
                operators.extend(independent)
            else:
                per_parity[parity] = None
        logger.debug(f"Paridade {parity}: {len(unknowns)} incógnitas, limites {bounds[parity]}")

    result = CommutantBasis(problem, operators, per_parity, mode, bounds, total)
    logger.info(f"Comutante {problem.side}: dimensão {result.dimension} {per_parity}")
    return result


def uqpn_problem(n: int, legs: int) -> CommutantProblem:
    rho = representation(n, legs)
    return CommutantProblem(n, legs, [rho[g] for g in generators(n)], "uqpn")


def brauer_problem(n: int, legs: int) -> CommutantProblem:
    rep = brauer_rep(n, legs)
    return CommutantProblem(n, legs, [rep.images[k] for k in sorted(rep.images)], "brauer")


def classical_problem(n: int, legs: int) -> CommutantProblem:
    """Ação torcida de p_n em q = 1 (ação reescalonada de tau_g)"""
    return CommutantProblem(n, legs, [rescaled_action(n, legs, g) for g in generators(n)],
                            "classical", constant=True)


def verify_brauer_centralizer(n: int, legs: int, budget: int = SYMBOLIC_BUDGET,
                              max_unknowns: int = MAX_UNKNOWNS, seed: int = 2024) -> VerificationReport:
    """
    Comutante da ação de U_q(p_n) contra a imagem de B_{q,l}

    Passa quando as dimensões coincidem, a imagem está no comutante e a
    dimensão em q = 1 (comutante clássico) é a mesma.
    """
    logger.info(f"=== Iniciando verificação do centralizador (n={n}, pernas={legs}) ===")
    report = VerificationReport("centralizer", "B_{q,l} -> End_{U_q(p_n)}(V^{⊗l}) is surjective",
                                {"n": n, "l": legs, "side": "uqpn"})
    problem = uqpn_problem(n, legs)
    image = [op for _, op in image_span(brauer_rep(n, legs))]
    bad = residual_failures(problem, image)
    report.record("image-in-commutant", bad == 0, f"{bad} elementos da imagem fora do comutante")

    basis = solve_commutant(problem, budget, max_unknowns, seed, known=image)
    report.params["mode"] = basis.mode
    report.record("commutant-dimension", basis.certified, f"limites {basis.bounds}", basis.summary())
    if basis.mode == "symbolic":
        bad = residual_failures(problem, basis.operators)
        report.record("commutant-residual", bad == 0, f"{bad} elementos com resíduo não nulo")
    report.record("image-dimension", True, "posto exato sobre Q(q)", len(image))
    report.record("dimensions-agree", basis.dimension == len(image),
                  f"comutante {basis.dimension}, imagem {len(image)}"
                  + ("" if n >= legs else " (n < l: só sobrejetividade)"))

    classical = solve_commutant(classical_problem(n, legs), budget, max_unknowns, seed)
    report.record("classical-commutant", classical.dimension == basis.dimension,
                  f"q=1: {classical.dimension}, q genérico: {basis.dimension}", classical.summary())

    if legs == 2:
        products = [a.compose(b) for a in problem.operators for b in problem.operators]
        extended = CommutantProblem(n, legs, problem.operators + products, "uqpn-products")
        again = solve_commutant(extended, budget, max_unknowns, seed, known=image)
        report.record("products-spot-check", again.dimension == basis.dimension,
                      f"com produtos: {again.dimension}")
    return report.finish()


def schur_algebra(n: int, legs: int, budget: int = SYMBOLIC_BUDGET,
                  max_unknowns: int = MAX_UNKNOWNS, seed: int = 2024,
                  known: Optional[Sequence[GradedOperator]] = None) -> CommutantBasis:
    """S_q(p_n, l): comutante das imagens de t_i e c_i"""
    return solve_commutant(brauer_problem(n, legs), budget, max_unknowns, seed, known=known)


def uqpn_image(n: int, legs: int, budget: int = SYMBOLIC_BUDGET,
               seed: int = 2024) -> Tuple[List[GradedOperator], str]:
    """
    Base da imagem de U_q(p_n) em End(V^{⊗l}) por palavras nos geradores

    O posto é exato sobre Q(q) para espaços pequenos; nos demais é tomado
    em um ponto de GF(p), o que dá um limite inferior.
    """
    rho = representation(n, legs)
    ops = {g: rho[g] for g in generators(n)}
    symbolic = (2 * n) ** (2 * legs) <= budget // 4
    field = FUNCTIONS if symbolic else SpecializedField(evaluation_point(seed))
    basis = span_of_words(ops, n, legs, field)
    return [op for _, op in basis], "symbolic" if symbolic else "evaluation"


def verify_double_centralizer(n: int, legs: int, budget: int = SYMBOLIC_BUDGET,
                              max_unknowns: int = MAX_UNKNOWNS, seed: int = 2024) -> VerificationReport:
    """
    Medidas do duplo centralizador para S_q(p_n, l)

    Passa quando a imagem de U_q(p_n) está em S_q e o bicomutante contém a
    imagem de B_{q,l}; as igualdades de dimensão são apenas registradas.
    """
    logger.info(f"=== Iniciando duplo centralizador (n={n}, pernas={legs}) ===")
    report = VerificationReport("double-centralizer", "S_q(p_n,l) = End_{B_{q,l}}(V^{⊗l})",
                                {"n": n, "l": legs, "side": "brauer"})
    problem = brauer_problem(n, legs)
    generators_image = list(representation(n, legs)[g] for g in generators(n))
    bad = residual_failures(problem, generators_image)
    report.record("uq-image-in-schur", bad == 0, f"{bad} geradores fora de S_q")

    uq_basis, uq_mode = uqpn_image(n, legs, budget, seed)
    schur = schur_algebra(n, legs, budget, max_unknowns, seed,
                          known=uq_basis if uq_mode == "symbolic" else None)
    report.params["mode"] = schur.mode
    report.record("schur-dimension", True, f"limites {schur.bounds}", schur.summary())
    report.record("uq-image-dimension", True,
                  f"posto ({uq_mode}) da álgebra gerada por rho(t_ij), sem limite de comprimento "
                  f"(busca para quando um nível de produtos não aumenta o posto)", len(uq_basis))
    same = schur.dimension is not None and schur.dimension == len(uq_basis)
    if same:
        note = "medido: dimensões iguais"
    elif schur.dimension is None or uq_mode != "symbolic":
        note = "medido: dimensões não certificadas"
    else:
        note = (f"medido: imagem {len(uq_basis)} < S_q {schur.dimension}; "
                f"sobrejetividade é questão em aberto e não é afirmada")
    report.record("uq-image-equals-schur", True, note, same)

    brauer_image = [op for _, op in image_span(brauer_rep(n, legs))]
    if schur.certified and schur.operators:
        outer = CommutantProblem(n, legs, schur.operators, "bicommutant")
        bicommutant = solve_commutant(outer, budget, max_unknowns, seed, known=brauer_image,
                                      mode="evaluation")
        lower = sum(b[0] for b in bicommutant.bounds.values())
        upper = sum(b[1] for b in bicommutant.bounds.values())
        report.record("bicommutant-contains-brauer-image", lower == len(brauer_image) and lower <= upper,
                      f"imagem {len(brauer_image)}, bicomutante <= {upper}")
        report.record("bicommutant-equals-brauer-image", True,
                      "medido: iguais" if lower == upper else "medido: bicomutante maior", upper)
    else:
        report.record("bicommutant-contains-brauer-image", True,
                      "S_q sem base certificada: bicomutante não calculado")
    return report.finish()


def centralizer_payload(n: int, legs: int, side: str, budget: int = SYMBOLIC_BUDGET,
                        max_unknowns: int = MAX_UNKNOWNS, seed: int = 2024) -> Dict:
    """Resultado do comando `centralizer` (dimensões por paridade)"""
    if side == "uqpn":
        image = [op for _, op in image_span(brauer_rep(n, legs))]
        basis = solve_commutant(uqpn_problem(n, legs), budget, max_unknowns, seed, known=image)
    else:
        uq_basis, uq_mode = uqpn_image(n, legs, budget, seed)
        basis = schur_algebra(n, legs, budget, max_unknowns, seed,
                              known=uq_basis if uq_mode == "symbolic" else None)
    payload = basis.summary()
    payload.update({"n": n, "l": legs})
    return payload
