"""
QBrauer Module - The periplectic q-Brauer algebra acting on tensor space

This module contains the module maps theta (V⊗V -> C(q)) and epsilon
(C(q) -> V⊗V), the contraction c = epsilon∘theta, the operator P·S with its
eight-family expansion, the BrauerRep class (t_i -> P_i S_{i,i+1},
c_i -> c_i on l legs), the defining relations of the algebra, word
evaluation, the image span of the algebra and the verification reports:

    - verify_module_homs: theta and epsilon intertwine every generator t_ij
    - verify_ps_formula: the expansion of P·S in matrix units
    - verify_brauer: relations of the algebra, the identities of c with S
      and P, and commutation with the U_q(p_n) action
    - verify_degeneration: the q = 1 relation set on the images at q = 1

Usage:
    from PQ.qbrauer import brauer_rep, parse_brauer_word, evaluate_word

    rep = brauer_rep(2, 3)
    word = parse_brauer_word("t1 c2 t1", 3)
    print(evaluate_word(word, rep).nnz)
"""

import logging
import re
from typing import Dict, Hashable, List, NamedTuple, Optional, Sequence, Tuple

from .algebra import generators
from .exceptions import UsageError
from .linalg import FUNCTIONS, LinearSpan
from .periplectic import sf
from .reports import VerificationReport
from .representation import representation
from .scalar import EPS, ONE, Q, QINV, ZERO, Scalar
from .smatrix import build_S
from .superspace import (GradedOperator, MultiIndex, basis_indices, elementary, embed_legs,
                         from_units, identity, koszul_tensor, parity,
                         super_permutation, sum_operators)

# Setup logging
logger = logging.getLogger(__name__)

Token = Tuple[str, int]
Term = Tuple[Scalar, Tuple[Token, ...]]


class BrauerWord(NamedTuple):
    """Palavra nos geradores t_i / c_i com coeficiente"""

    tokens: Tuple[Token, ...]
    coefficient: Scalar = ONE

    def __str__(self) -> str:
        body = " ".join(f"{kind}{i}" for kind, i in self.tokens) or "1"
        return body if self.coefficient == ONE else f"({self.coefficient})*{body}"


# ----------------------------------------------------------------------
# theta, epsilon e c
# ----------------------------------------------------------------------

def theta_map(n: int) -> Dict[MultiIndex, Scalar]:
    """theta(e_a ⊗ e_b) = delta_{a,-b} (-1)^{p(a)}, como covetor esparso"""
    return {(a, -a): Scalar(-1 if parity(a) else 1) for a in basis_indices(n)}


def epsilon_map(n: int) -> Dict[MultiIndex, Scalar]:
    """epsilon(1) = Σ_a e_a ⊗ e_{-a}, como vetor esparso"""
    return {(a, -a): ONE for a in basis_indices(n)}


def covector_compose(covector: Dict[MultiIndex, Scalar], op: GradedOperator) -> Dict[MultiIndex, Scalar]:
    """Covetor theta∘op"""
    result: Dict[MultiIndex, Scalar] = {}
    for row, value in covector.items():
        for col, entry in op.entries.get(row, {}).items():
            total = result.get(col, ZERO) + value * entry
            if total.is_zero:
                result.pop(col, None)
            else:
                result[col] = total
    return result


def build_c(n: int) -> GradedOperator:
    """c = Σ_{a,b} (-1)^{p(a)p(b)} E_ab ⊗ E_{-a,-b}"""
    indices = basis_indices(n)
    units = {((a, -a), (b, -b)): (-1) ** (parity(a) * parity(b)) for a in indices for b in indices}
    return from_units(n, 2, units, 0)


def epsilon_theta(n: int) -> GradedOperator:
    """O composto epsilon∘theta como operador de 2 pernas"""
    theta, eps = theta_map(n), epsilon_map(n)
    entries = {row: dict(theta) for row, value in eps.items()}
    return GradedOperator(n, 2, entries, 0)


def verify_module_homs(n: int) -> VerificationReport:
    """
    theta e epsilon são homomorfismos de U_q(p_n)-módulos

    No módulo trivial, t_ij age como delta_ij (geradores diagonais como 1).
    """
    logger.info(f"=== Iniciando verificação de theta e epsilon (n={n}) ===")
    report = VerificationReport("module-homs", "theta and epsilon are U_q(p_n)-module maps", {"n": n})
    theta, eps = theta_map(n), epsilon_map(n)
    rho = representation(n, 2)

    bad_theta, bad_eps = [], []
    for g in generators(n):
        trivial = ONE if g.is_diagonal else ZERO
        expected_theta = {k: v * trivial for k, v in theta.items() if not (v * trivial).is_zero}
        if covector_compose(theta, rho[g]) != expected_theta:
            bad_theta.append(str(g))
        expected_eps = {k: v * trivial for k, v in eps.items() if not (v * trivial).is_zero}
        if rho[g].apply(eps) != expected_eps:
            bad_eps.append(str(g))
    report.record("theta-intertwines", not bad_theta, f"falhas: {bad_theta}" if bad_theta
                  else "theta∘rho_2(t_ij) = delta_ij theta")
    report.record("epsilon-intertwines", not bad_eps, f"falhas: {bad_eps}" if bad_eps
                  else "rho_2(t_ij)∘epsilon = delta_ij epsilon")

    pairing = sum((theta.get(k, ZERO) * v for k, v in eps.items()), ZERO)
    report.record("theta-epsilon-zero", pairing.is_zero, "theta∘epsilon = Σ_a (-1)^{p(a)} = 0")
    report.record("c-equals-epsilon-theta", build_c(n) == epsilon_theta(n), "c = epsilon∘theta")
    return report.finish()


# ----------------------------------------------------------------------
# P·S
# ----------------------------------------------------------------------

def ps_operator(n: int) -> GradedOperator:
    return super_permutation(n).compose(build_S(n))


def ps_expansion(n: int) -> GradedOperator:
    """Expansão de P·S em oito famílias de unidades matriciais"""
    indices = basis_indices(n)
    units: Dict[Tuple[MultiIndex, MultiIndex], Scalar] = {}

    def add(rows, cols, value) -> None:
        key = (rows, cols)
        units[key] = units.get(key, ZERO) + value

    for i in indices:
        for j in indices:
            add((i, j), (j, i), Scalar(-1 if parity(j) else 1))
    for i in range(1, n + 1):
        add((-i, i), (i, -i), Q - 1)
        add((i, i), (i, i), Q - 1)
        add((i, -i), (-i, i), -(QINV - 1))
        add((-i, -i), (-i, -i), -(QINV - 1))
    for i in range(-n, 0):
        add((-i, i), (-i, i), EPS)
    for i in indices:
        for j in indices:
            if abs(j) < abs(i):
                add((j, i), (j, i), EPS)
                add((j, -j), (i, -i), EPS * (-1 if parity(i) * parity(j) else 1))
    return from_units(n, 2, units, 0)


def verify_ps_formula(n: int) -> VerificationReport:
    """Compara P∘S com a expansão em oito famílias"""
    logger.info(f"=== Iniciando verificação da fórmula de PS (n={n}) ===")
    report = VerificationReport("ps-formula", "eight-family expansion of PS", {"n": n})
    ps = ps_operator(n)
    expansion = ps_expansion(n)
    diff = ps - expansion
    report.record("ps-expansion", diff.is_zero, f"resíduo com {diff.nnz} entradas", diff.nnz)
    report.record("ps-at-one", ps.eval_at_one() == super_permutation(n), "PS|_{q=1} = P")
    return report.finish()


# ----------------------------------------------------------------------
# Representação de B_{q,l}
# ----------------------------------------------------------------------

class BrauerRep:
    """Imagens de t_i e c_i em V^{⊗legs}"""

    def __init__(self, n: int, legs: int, images: Dict[Token, GradedOperator]):
        """
        Args:
            n: dimensão do bloco
            legs: número de pernas (>= 2)
            images: mapa token -> operador par
        """
        self.n = n
        self.legs = legs
        self.images = images

    def evaluate(self, tokens: Sequence[Token]) -> GradedOperator:
        op = identity(self.n, self.legs)
        for token in tokens:
            op = op.compose(self.images[token])
        return op

    def at_one(self) -> "BrauerRep":
        """Imagens especializadas em q = 1"""
        return BrauerRep(self.n, self.legs, {k: v.eval_at_one() for k, v in self.images.items()})


def brauer_rep(n: int, legs: int) -> BrauerRep:
    """
    t_i age como P_i S_{i,i+1} e c_i como c nas pernas (i, i+1)

    Args:
        n: dimensão do bloco
        legs: número de pernas (>= 2)
    """
    if legs < 2:
        raise UsageError(f"a ação de B_q exige l >= 2 (recebido {legs})")
    ps, c = ps_operator(n), build_c(n)
    images: Dict[Token, GradedOperator] = {}
    for i in range(1, legs):
        images[("t", i)] = embed_legs(ps, i, legs)
        images[("c", i)] = embed_legs(c, i, legs)
    logger.debug(f"Representação de B_q construída (n={n}, pernas={legs})")
    return BrauerRep(n, legs, images)


def brauer_relations(legs: int, q=Q, qinv=QINV) -> List[Tuple[str, List[Term]]]:
    """
    Relações de definição de B_{q,l}, cada uma como Σ coeficiente·palavra = 0

    Args:
        legs: número de pernas
        q, qinv: valores de q e q^-1 (ONE, ONE para a degeneração em q = 1)
    """
    eps = q - qinv
    relations: List[Tuple[str, List[Term]]] = []
    for i in range(1, legs):
        t, c = ("t", i), ("c", i)
        relations.append((f"hecke-t{i}", [(ONE, (t, t)), (qinv - q, (t,)), (-ONE, ())]))
        relations.append((f"c{i}^2", [(ONE, (c, c))]))
        relations.append((f"c{i}t{i}", [(ONE, (c, t)), (qinv, (c,))]))
        relations.append((f"t{i}c{i}", [(ONE, (t, c)), (-q, (c,))]))
    for i in range(1, legs):
        for j in range(i + 2, legs):
            ti, tj, ci, cj = ("t", i), ("t", j), ("c", i), ("c", j)
            relations.append((f"t{i}t{j}", [(ONE, (ti, tj)), (-ONE, (tj, ti))]))
            relations.append((f"t{i}c{j}", [(ONE, (ti, cj)), (-ONE, (cj, ti))]))
            relations.append((f"t{j}c{i}", [(ONE, (tj, ci)), (-ONE, (ci, tj))]))
            relations.append((f"c{i}c{j}", [(ONE, (ci, cj)), (-ONE, (cj, ci))]))
    for i in range(1, legs - 1):
        ti, tk, ci, ck = ("t", i), ("t", i + 1), ("c", i), ("c", i + 1)
        relations.append((f"braid-t{i}", [(ONE, (ti, tk, ti)), (-ONE, (tk, ti, tk))]))
        relations.append((f"c{i + 1}c{i}c{i + 1}", [(ONE, (ck, ci, ck)), (ONE, (ck,))]))
        relations.append((f"c{i}c{i + 1}c{i}", [(ONE, (ci, ck, ci)), (ONE, (ci,))]))
        relations.append((f"t{i}c{i + 1}c{i}", [(ONE, (ti, ck, ci)), (ONE, (tk, ci)), (-eps, (ck, ci))]))
        relations.append((f"c{i + 1}c{i}t{i + 1}", [(ONE, (ck, ci, tk)), (ONE, (ck, ti)), (-eps, (ck, ci))]))
    return relations


def relation_failures(rep: BrauerRep, relations: List[Tuple[str, List[Term]]]) -> List[str]:
    failures = []
    for name, terms in relations:
        total = sum_operators((rep.evaluate(tokens).scale(c) for c, tokens in terms), rep.n, rep.legs)
        if not total.is_zero:
            failures.append(name)
    return failures


def c_family_identities(n: int) -> Dict[str, bool]:
    """Produtos de c com as famílias de parcelas de S - 1"""
    c = build_c(n)
    indices = basis_indices(n)
    positive = range(1, n + 1)

    def units_op(units) -> GradedOperator:
        return from_units(n, 2, units, 0)

    def c_part(columns, signed: bool) -> GradedOperator:
        return units_op({((a, -a), (b, -b)): (-1) ** parity(a) if signed else 1
                         for a in indices for b in columns})

    results = {}
    same_pos = units_op({((i, i), (i, i)): 1 for i in positive}).scale(Q - 1)
    same_neg = units_op({((-i, -i), (-i, -i)): 1 for i in positive}).scale(QINV - 1)
    results["c-diagonal-squares"] = c.compose(same_pos).is_zero and c.compose(same_neg).is_zero
    mixed = units_op({((i, -i), (i, -i)): 1 for i in positive}).scale(Q - 1)
    results["c-mixed-positive"] = c.compose(mixed) == c_part(positive, False).scale(Q - 1)
    mixed = units_op({((-i, i), (-i, i)): 1 for i in positive}).scale(QINV - 1)
    results["c-mixed-negative"] = c.compose(mixed) == c_part(range(-n, 0), True).scale(QINV - 1)
    swap = units_op({((i, -i), (-i, i)): 1 for i in range(-n, 0)})
    results["c-odd-swap"] = c.compose(swap) == -c_part(positive, False)
    off = sum_operators((koszul_tensor(sf(n, i, j), elementary(n, j, i)).scale(-1 if parity(j) else 1)
                         for i in indices for j in indices if abs(j) < abs(i)), n, 2)
    results["c-off-diagonal"] = c.compose(off).is_zero
    return results


def verify_brauer(n: int, legs: int) -> VerificationReport:
    """
    C_q(n|n)^{⊗l} é um módulo sobre B_{q,l} que comuta com U_q(p_n)

    Args:
        n: dimensão do bloco
        legs: número de pernas (>= 2)
    """
    logger.info(f"=== Iniciando verificação da ação de B_q (n={n}, pernas={legs}) ===")
    report = VerificationReport("brauer", "t_i -> P_i S_{i,i+1}, c_i -> c_i define a B_{q,l}-module",
                                {"n": n, "l": legs})
    S, P, c = build_S(n), super_permutation(n), build_c(n)
    one = identity(n, 2)
    report.record("cP = -c", c.compose(P) == -c)
    report.record("Pc = c", P.compose(c) == c)
    report.record("cS = q^-1 c", c.compose(S) == c.scale(QINV))
    report.record("(S-1)c = (q-1)c", (S - one).compose(c) == c.scale(Q - 1))
    for name, ok in c_family_identities(n).items():
        report.record(name, ok)

    rep = brauer_rep(n, legs)
    relations = brauer_relations(legs)
    failures = relation_failures(rep, relations)
    report.record("relations", not failures, f"falhas: {failures}" if failures
                  else f"{len(relations)} relações satisfeitas", len(relations))

    rho = representation(n, legs)
    bad = [f"{kind}{i}" for (kind, i), image in rep.images.items()
           if any(not image.supercommutator(rho[g]).is_zero for g in generators(n))]
    report.record("commutes-with-rho", not bad, f"falhas: {bad}" if bad
                  else "imagens comutam com rho_l(t_ij)")

    failures = relation_failures(rep.at_one(), brauer_relations(legs, ONE, ONE))
    report.record("degeneration", not failures, f"falhas: {failures}" if failures
                  else "relações em q=1 satisfeitas pelas imagens em q=1")
    return report.finish()


def verify_degeneration(n: int, legs: int) -> VerificationReport:
    """Relações de B_{q,l} em q = 1 nas imagens especializadas"""
    logger.info(f"=== Iniciando verificação da degeneração q=1 (n={n}, pernas={legs}) ===")
    report = VerificationReport("degeneration", "q=1 specialization satisfies the relations of A_l",
                                {"n": n, "l": legs})
    rep = brauer_rep(n, legs).at_one()
    relations = brauer_relations(legs, ONE, ONE)
    failures = relation_failures(rep, relations)
    report.record("relations-at-one", not failures, f"falhas: {failures}" if failures
                  else f"{len(relations)} relações satisfeitas", len(relations))
    report.record("t-is-P", all(rep.images[("t", i)] == embed_legs(super_permutation(n), i, legs)
                                for i in range(1, legs)), "t_i|_{q=1} = P_i")
    return report.finish()


# ----------------------------------------------------------------------
# Palavras e imagem
# ----------------------------------------------------------------------

_WORD_RE = re.compile(r"([tc])(\d+)")


def parse_brauer_word(text: str, legs: int) -> BrauerWord:
    """
    Converte "t1 c2 t1" em BrauerWord

    Raises:
        UsageError: token malformado ou índice fora de 1..legs-1
    """
    tokens: List[Token] = []
    for token in text.split():
        match = _WORD_RE.fullmatch(token)
        if not match:
            raise UsageError(f"token inválido: {token!r}")
        kind, index = match.group(1), int(match.group(2))
        if not 1 <= index <= legs - 1:
            raise UsageError(f"índice fora de 1..{legs - 1}: {token}")
        tokens.append((kind, index))
    return BrauerWord(tuple(tokens))


def evaluate_word(word: BrauerWord, rep: BrauerRep) -> GradedOperator:
    """Produto das imagens dos tokens (palavra vazia -> identidade)"""
    return rep.evaluate(word.tokens).scale(word.coefficient)


def operator_vector(op: GradedOperator) -> Dict:
    return {(row, col): value for row, col, value in op.items()}


def span_of_words(ops: Dict[Hashable, GradedOperator], n: int, legs: int,
                  field=FUNCTIONS, max_length: Optional[int] = None) -> List[Tuple[Tuple, GradedOperator]]:
    """
    Base de palavras do subespaço gerado pelos produtos dos operadores

    As palavras são enumeradas por comprimento; só palavras da base são
    estendidas, e a busca para quando um nível inteiro não aumenta o posto.

    Returns:
        Lista (palavra, operador) linearmente independente
    """
    span = LinearSpan(field)
    one = identity(n, legs)
    span.add(operator_vector(one))
    basis = [((), one)]
    frontier = list(basis)
    keys = sorted(ops)
    length = 0
    while frontier and (max_length is None or length < max_length):
        length += 1
        added = []
        for word, op in frontier:
            for key in keys:
                product = op.compose(ops[key])
                if span.add(operator_vector(product)):
                    added.append((word + (key,), product))
        basis.extend(added)
        frontier = added
        logger.debug(f"Comprimento {length}: posto {span.rank}")
    return basis


def image_span(rep: BrauerRep, field=FUNCTIONS) -> List[Tuple[Tuple, GradedOperator]]:
    """Base da imagem de B_{q,l} em End(V^{⊗l}), em ordem comprimento-lexicográfica (t antes de c)"""
    return span_of_words(rep.images, rep.n, rep.legs, field)


def brauer_eval_payload(n: int, legs: int, text: str) -> Dict:
    """Resultado do comando `brauer eval`"""
    word = parse_brauer_word(text, legs)
    op = evaluate_word(word, brauer_rep(n, legs))
    payload = op.to_dict()
    payload["word"] = str(word)
    return payload
