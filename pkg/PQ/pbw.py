"""
PBW Module - Generator order, reduced monomials and quadratic straightening

This module contains the total order on generators (pbw_key / pbw_compare),
the reduced-monomial test, the classification of non-reduced quadratic pairs
into the straightening subcases (a)-(g), the RewriteSystem built by exact
elimination of the quadratic relations, and straighten, which rewrites the
leftmost non-reduced adjacent pair until only reduced monomials remain.

Usage:
    from PQ.pbw import RewriteSystem
    from PQ.algebra import parse_word

    system = RewriteSystem(1)
    print(system.straighten(parse_word("t(1,-1) t(1,1)", 1)))   # (q^2)*t(1,1) t(1,-1)
"""

import logging
import random
from typing import Dict, List, Optional, Tuple

from .algebra import AlgebraElement, Gen, Word, generators, render_word
from .exceptions import StraighteningError
from .linalg import FUNCTIONS, row_reduce
from .relations import closed_form_relation, extract_relations, proportional, theta_sign
from .reports import VerificationReport
from .representation import evaluate_cleared, representation
from .scalar import EPS, ONE, Q, QINV, ZERO, Scalar, as_frac, is_zero, reduce_coefficient
from .superspace import parity

# Setup logging
logger = logging.getLogger(__name__)

DEFAULT_STEP_CAP = 1_000_000

PBW_SAMPLE_WORDS = 12

PAIR_SUBCASES = ("a", "b", "c", "d", "e", "f", "g")


def pbw_key(g: Gen) -> Tuple[int, int, bool, bool]:
    """Chave crescente em ≺ (inversos diagonais ocupam a posição de t_ii)"""
    return (-abs(g.i), -abs(g.j), g.i < 0, g.j < 0)


def precedes(a: Gen, b: Gen) -> bool:
    """t_ij ≺ t_kl pelas quatro cláusulas literais da ordem"""
    i, j, k, l = a.i, a.j, b.i, b.j
    return (abs(i) > abs(k)
            or (abs(i) == abs(k) and abs(j) > abs(l))
            or (i == k and j == -l and j > 0)
            or (i == -k and i > 0 and abs(j) == abs(l)))


def pbw_compare(a: Gen, b: Gen) -> int:
    """
    Compara dois geradores não nulos

    Returns:
        -1 se a ≺ b, 1 se b ≺ a, 0 se têm a mesma base
    """
    if (a.i, a.j) == (b.i, b.j):
        return 0
    return -1 if precedes(a, b) else 1


def word_key(word: Word) -> Tuple:
    return (len(word), tuple(pbw_key(g) + (g.inverse,) for g in word))


def pair_reduced(a: Gen, b: Gen) -> bool:
    if (a.i, a.j) == (b.i, b.j):
        # potências de um mesmo gerador: inteiras para diagonais, positivas para pares
        return a.inverse == b.inverse and a.parity == 0
    return pbw_key(a) < pbw_key(b)


def is_reduced(word: Word) -> bool:
    """Monômio reduzido: letras crescentes em ≺, sem quadrados ímpares nem t t^-1"""
    return all(pair_reduced(a, b) for a, b in zip(word, word[1:]))


def classify_pair(a: Gen, b: Gen) -> Optional[str]:
    """
    Subcaso de endireitamento de t_ij t_kl

    Returns:
        "a".."g", "odd-square", "inverse" ou None se o par já é reduzido
    """
    if pair_reduced(a, b):
        return None
    if a.inverse or b.inverse:
        return "inverse"
    i, j, k, l = a.i, a.j, b.i, b.j
    if (i, j) == (k, l):
        return "odd-square"
    if abs(i) < abs(k):
        if j == l:
            return "b"
        if j == -l:
            return "c"
        return "a"
    if abs(i) == abs(k) and abs(j) < abs(l):
        return "d"
    if i == k and j == -l and j < 0:
        return "e"
    if i == -k and i < 0:
        return "f" if j == l else "g"
    raise StraighteningError(f"par sem subcaso: {a} {b}")


def quadratic_words(n: int) -> List[Word]:
    gens = generators(n)
    return [(a, b) for a in gens for b in gens]


def expected_subcases(n: int) -> List[str]:
    """Rótulos que aparecem entre os pares quadráticos não reduzidos"""
    return ["e", "odd-square"] if n == 1 else list(PAIR_SUBCASES) + ["odd-square"]


def subcase_labels(n: int) -> Tuple[Dict[str, int], List[str]]:
    """
    Rótulos dos pares quadráticos não reduzidos

    Returns:
        (contagem por rótulo, pares sem rótulo)
    """
    labels: Dict[str, int] = {}
    unlabeled = []
    for word in quadratic_words(n):
        if is_reduced(word):
            continue
        try:
            label = classify_pair(*word)
        except StraighteningError:
            label = None
        if label is None:
            unlabeled.append(render_word(word))
        else:
            labels[label] = labels.get(label, 0) + 1
    return labels, unlabeled


# ----------------------------------------------------------------------
# Subcaso (c) com |l| = |j|
# ----------------------------------------------------------------------

def _product(first: Tuple[int, int], second: Tuple[int, int]) -> AlgebraElement:
    return AlgebraElement.generator(*first) * AlgebraElement.generator(*second)


def _subcase_c_coefficients(i: int, j: int, k: int) -> Tuple[Scalar, Scalar]:
    """(alpha, beta) em alpha·t_ij t_k,-j + beta·t_i,-j t_kj = t_k,-j t_ij"""
    sign = -1 if (parity(i) + parity(j)) * (parity(k) + parity(-j)) % 2 else 1
    alpha = (Q if j > 0 else QINV) * sign
    beta = EPS * theta_sign(i, j, k) if j > 0 else ZERO
    return alpha, beta


def subcase_c_equation(i: int, j: int, k: int) -> AlgebraElement:
    """
    Relação do subcaso (c) quando |k| = |j|

    Os termos t_i,-a t_ka com |a| < |j| são nulos (|k| > |a|), e a relação
    fica alpha·t_ij t_k,-j + beta·t_i,-j t_kj - t_k,-j t_ij = 0.
    """
    alpha, beta = _subcase_c_coefficients(i, j, k)
    return (_product((i, j), (k, -j)).scale(alpha) + _product((i, -j), (k, j)).scale(beta)
            - _product((k, -j), (i, j)))


def solve_subcase_c(i: int, j: int, k: int) -> AlgebraElement:
    """
    t_ij t_k,-j nos monômios ordenados t_k,-j t_ij e t_kj t_i,-j

    Resolve a relação do subcaso (c) junto com a sua parceira j -> -j.
    Um dos dois termos cruzados é nulo, logo o determinante é alpha·gamma.
    """
    alpha, beta = _subcase_c_coefficients(i, j, k)
    gamma, _ = _subcase_c_coefficients(i, -j, k)
    inverse = (alpha * gamma).inverse()
    return (_product((k, -j), (i, j)).scale(gamma * inverse)
            - _product((k, j), (i, -j)).scale(beta * inverse))


def subcase_c_failures(system: "RewriteSystem") -> List[str]:
    """Triplas (i, j, k) com |i| < |k| = |j|, k > 0, em que a regra difere da solução explícita"""
    failures = []
    n = system.n
    for k in range(2, n + 1):
        for j in (k, -k):
            for i in [x for x in range(-k + 1, k) if x != 0]:
                equation = subcase_c_equation(i, j, k)
                if proportional(closed_form_relation(i, j, k, -j, n), equation) is None:
                    failures.append(f"relação ({i},{j},{k},{-j})")
                    continue
                word = (Gen(i, j), Gen(k, -j))
                if AlgebraElement(system.rules.get(word, {})) != solve_subcase_c(i, j, k):
                    failures.append(f"regra {render_word(word)}")
    return failures


class RewriteSystem:
    """Regras de reescrita para todos os pares quadráticos não reduzidos"""

    def __init__(self, n: int, step_cap: int = DEFAULT_STEP_CAP):
        """
        Elimina o conjunto de relações com as palavras não reduzidas como pivôs

        Args:
            n: dimensão do bloco
            step_cap: máximo de reescritas por chamada de straighten
        """
        self.n = n
        self.step_cap = step_cap
        self.rules: Dict[Word, Dict[Word, object]] = {}
        self.dependencies = 0
        logger.info(f"Construindo regras de reescrita (n={n})")
        rows = []
        for rel in extract_relations(n):
            rows.append({w: FUNCTIONS.convert(c) for w, c in rel.element.terms.items()})

        def column_key(word: Word):
            return (is_reduced(word), word_key(word))

        for pivot, row in row_reduce(rows, FUNCTIONS, column_key):
            if is_reduced(pivot):
                self.dependencies += 1
                continue
            self.rules[pivot] = {w: reduce_coefficient(-v) for w, v in row.items() if w != pivot}
        self.missing = [w for w in quadratic_words(n) if not is_reduced(w) and w not in self.rules]
        logger.info(f"{len(self.rules)} regras, {len(self.missing)} pares sem regra, "
                    f"{self.dependencies} dependências entre palavras reduzidas")

    def rule(self, a: Gen, b: Gen) -> Dict[Word, object]:
        word = (a, b)
        if word not in self.rules:
            raise StraighteningError(f"sem regra de reescrita para {render_word(word)}")
        return self.rules[word]

    def _split(self, x: Gen, d: Gen, d_first: bool):
        """Coeficiente c do termo trocado e cauda R na regra de x·d (ou d·x)"""
        rule = self.rule(d, x) if d_first else self.rule(x, d)
        swapped = (x, d) if d_first else (d, x)
        c = rule.get(swapped)
        if c is None or is_zero(c):
            raise StraighteningError(f"regra sem termo trocado: {render_word(swapped)}")
        tail = {w: v for w, v in rule.items() if w != swapped}
        return c, tail

    def rewrite_pair(self, a: Gen, b: Gen) -> Dict[Word, object]:
        """Expansão de um par adjacente não reduzido"""
        if (a.i, a.j) == (b.i, b.j) and a.inverse != b.inverse:
            return {(): ONE}
        if not a.inverse and not b.inverse:
            return self.rule(a, b)
        if a.inverse and b.inverse:
            d, e = Gen(a.i, a.i), Gen(b.i, b.i)
            c, tail = self._split(e, d, d_first=True)
            if tail:
                raise StraighteningError(f"diagonais sem q-comutação pura: {d} {e}")
            return {(b, a): c}
        if a.inverse:
            # d x = c x d + R  =>  d^-1 x = c^-1 (x d^-1 - d^-1 R d^-1)
            d, x = Gen(a.i, a.i), b
            c, tail = self._split(x, d, d_first=True)
        else:
            # x d = c d x + R  =>  x d^-1 = c^-1 (d^-1 x - d^-1 R d^-1)
            d, x = Gen(b.i, b.i), a
            c, tail = self._split(x, d, d_first=False)
        inv = as_frac(ONE) / as_frac(c)
        dinv = Gen(d.i, d.i, True)
        result: Dict[Word, object] = {((x, dinv) if a.inverse else (dinv, x)): inv.reduce()}
        for word, value in tail.items():
            key = (dinv,) + word + (dinv,)
            current = result.get(key)
            term = -(inv * value)
            result[key] = term if current is None else current + term
        return result

    def straighten(self, element: AlgebraElement) -> AlgebraElement:
        """
        Reescreve o par não reduzido mais à esquerda até restarem só monômios reduzidos

        Raises:
            StraighteningError: limite de passos excedido ou regra ausente
        """
        pending: Dict[Word, object] = dict(element.terms)
        done: Dict[Word, object] = {}
        steps = 0
        while pending:
            word, coeff = pending.popitem()
            pos = next((p for p in range(len(word) - 1) if not pair_reduced(word[p], word[p + 1])), None)
            if pos is None:
                _accumulate(done, word, coeff)
                continue
            steps += 1
            if steps > self.step_cap:
                raise StraighteningError("straightening did not terminate within bound")
            for replacement, value in self.rewrite_pair(word[pos], word[pos + 1]).items():
                _accumulate(pending, word[:pos] + replacement + word[pos + 2:], coeff * value)
        logger.debug(f"Endireitamento concluído em {steps} passos")
        return AlgebraElement(done)


def _accumulate(acc: Dict[Word, object], word: Word, value) -> None:
    total = acc[word] + value if word in acc else value
    if is_zero(total):
        acc.pop(word, None)
    else:
        acc[word] = reduce_coefficient(total)


# ----------------------------------------------------------------------
# Verificação
# ----------------------------------------------------------------------

def order_failures(n: int) -> List[str]:
    """Totalidade, antissimetria e transitividade de ≺ e concordância com pbw_key"""
    gens = generators(n)
    failures = []
    for a in gens:
        for b in gens:
            if a == b:
                if precedes(a, a):
                    failures.append(f"{a} ≺ {a}")
                continue
            if precedes(a, b) == precedes(b, a):
                failures.append(f"{a} / {b}: não comparáveis ou simétricos")
            if precedes(a, b) != (pbw_key(a) < pbw_key(b)):
                failures.append(f"{a} / {b}: chave divergente")
    for a in gens:
        for b in gens:
            if not precedes(a, b):
                continue
            for c in gens:
                if precedes(b, c) and not precedes(a, c):
                    failures.append(f"{a} ≺ {b} ≺ {c} sem transitividade")
    return failures


def random_words(n: int, seed: int, count: int = PBW_SAMPLE_WORDS) -> List[AlgebraElement]:
    """Palavras aleatórias determinísticas de comprimento 2 a 3 (com no máximo um inverso)"""
    rng = random.Random(seed)
    gens = generators(n)
    diagonals = [g for g in gens if g.is_diagonal]
    words = []
    for _ in range(count):
        letters = [rng.choice(gens) for _ in range(rng.randint(2, 3))]
        if rng.random() < 0.25:
            d = rng.choice(diagonals)
            letters.insert(rng.randint(0, len(letters)), Gen(d.i, d.i, True))
        words.append(AlgebraElement.monomial(letters))
    return words


def verify_pbw(n: int, seed: int = 2024, max_legs: int = 3, step_cap: int = DEFAULT_STEP_CAP) -> VerificationReport:
    """
    Metade geradora do teorema PBW

    Verifica a ordem, a existência de regra para cada par não reduzido, os
    rótulos (a)-(g), a solução explícita do subcaso (c) com |k| = |j|, a
    preservação por rho_l das regras e do endireitamento de palavras
    aleatórias, a idempotência e o anulamento dos quadrados ímpares.
    """
    logger.info(f"=== Iniciando verificação PBW (n={n}) ===")
    report = VerificationReport("pbw", "reduced monomials span U_q(p_n)", {"n": n, "seed": seed})
    failures = order_failures(n)
    report.record("order-total", not failures, f"falhas: {failures[:5]}" if failures else
                  f"≺ é uma ordem total estrita em {len(generators(n))} geradores")

    system = RewriteSystem(n, step_cap)
    report.record("quadratic-spanning", not system.missing,
                  f"{len(system.rules)} pares não reduzidos com regra" if not system.missing
                  else f"sem regra: {[render_word(w) for w in system.missing[:5]]}", len(system.rules))
    report.record("reduced-words-independent", system.dependencies == 0,
                  f"{system.dependencies} dependências entre palavras reduzidas quadráticas", system.dependencies)

    labels, unlabeled = subcase_labels(n)
    absent = [label for label in expected_subcases(n) if label not in labels]
    summary = ", ".join(f"{k}: {v}" for k, v in sorted(labels.items()))
    if unlabeled:
        summary = f"sem subcaso: {unlabeled[:5]}"
    elif absent:
        summary = f"subcasos ausentes: {absent}"
    report.record("subcases", not unlabeled and not absent, summary)

    failures = subcase_c_failures(system)
    report.record("subcase-c-solve", not failures, f"falhas: {failures[:5]}" if failures
                  else "regras de t_ij t_k,-j (|k| = |j|) = solução do par j, -j")

    legs_range = range(1, max_legs + 1) if n <= 2 else range(1, 2)
    bad = []
    for legs in legs_range:
        rho = representation(n, legs)
        for word, combo in system.rules.items():
            diff = AlgebraElement.monomial(word) - AlgebraElement(combo)
            if not evaluate_cleared(diff, n, legs, rho).is_zero:
                bad.append((render_word(word), legs))
    report.record("rules-preserve-rho", not bad, f"falhas: {bad[:5]}" if bad else
                  f"regras preservadas por rho_l, l <= {legs_range[-1]}")

    odd = [g for g in generators(n) if g.parity]
    bad = []
    for g in odd:
        try:
            if not system.straighten(AlgebraElement.monomial((g, g))).is_zero:
                bad.append(str(g))
        except StraighteningError as e:
            bad.append(f"{g}: {e}")
    report.record("odd-squares", not bad, f"falhas: {bad}" if bad else "t_ij^2 -> 0 para geradores ímpares")

    bad_rho, bad_reduced, bad_idem = [], [], []
    sample_legs = min(2, max_legs)
    rho = representation(n, sample_legs)
    for element in random_words(n, seed):
        try:
            result = system.straighten(element)
        except StraighteningError as e:
            bad_reduced.append(f"{element}: {e}")
            continue
        if not all(is_reduced(w) for w in result.terms):
            bad_reduced.append(str(element))
        if system.straighten(result) != result:
            bad_idem.append(str(element))
        if not evaluate_cleared(element - result, n, sample_legs, rho).is_zero:
            bad_rho.append(str(element))
    report.record("output-reduced", not bad_reduced, f"falhas: {bad_reduced[:3]}" if bad_reduced
                  else f"{PBW_SAMPLE_WORDS} palavras aleatórias")
    report.record("idempotent", not bad_idem, f"falhas: {bad_idem[:3]}" if bad_idem else "straighten∘straighten = straighten")
    report.record("random-words-preserve-rho", not bad_rho, f"falhas: {bad_rho[:3]}" if bad_rho
                  else "rho(straighten(e)) = rho(e)")
    return report.finish()


def pbw_payload(system: RewriteSystem, element: AlgebraElement) -> Dict:
    """Resultado do comando `pbw`: entrada, forma reduzida e subcasos encontrados"""
    word = next(iter(element.terms), ())
    subcases = [classify_pair(a, b) for a, b in zip(word, word[1:]) if not pair_reduced(a, b)]
    result = system.straighten(element)
    return {
        "n": system.n,
        "input": str(element),
        "reduced": is_reduced(word),
        "subcases": subcases,
        "result": result.to_dict(),
    }


def reduced_quadratic_count(n: int) -> int:
    """Número de monômios reduzidos quadráticos (pares crescentes e quadrados pares)"""
    return sum(1 for w in quadratic_words(n) if is_reduced(w))

