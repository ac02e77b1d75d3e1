"""
Algebra Module - Generator symbols, free-algebra elements and the coproduct of U_q(p_n)

This module contains the Gen symbol (t_ij or the formal inverse t_ii^-1),
the normalization rules t_ii = t_{-i,-i}, t_{-i,i} = 0 (i > 0) and
t_ij = 0 (|i| > |j|), the AlgebraElement class (Q(q)-linear combinations of
words in the free associative superalgebra), tensor elements, the coproduct
Delta(t_ij) = Σ_k (-1)^{(p(i)+p(k))(p(k)+p(j))} t_ik ⊗ t_kj, its
coassociativity and the counit candidate, and the word parser used by the CLI.

Usage:
    from PQ.algebra import Gen, AlgebraElement, parse_word, coproduct

    e = parse_word("t(1,2) t(2,2)", n=2)
    print(e)                       # t(1,2) t(2,2)
    print(coproduct(Gen(1, 2)))
"""

import logging
import re
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from .exceptions import UsageError
from .reports import VerificationReport
from .scalar import ONE, ZERO, is_zero, reduce_coefficient
from .superspace import basis_indices, parity

# Setup logging
logger = logging.getLogger(__name__)


class Gen(NamedTuple):
    """Símbolo gerador t_ij (ou t_ii^-1 quando inverse=True)"""

    i: int
    j: int
    inverse: bool = False

    @property
    def parity(self) -> int:
        return 0 if self.inverse else (parity(self.i) + parity(self.j)) % 2

    @property
    def is_diagonal(self) -> bool:
        return self.i == self.j

    def __str__(self) -> str:
        return f"tinv({self.i},{self.i})" if self.inverse else f"t({self.i},{self.j})"


Word = Tuple[Gen, ...]


def is_zero_kind(i: int, j: int) -> bool:
    """t_ij = 0 se |i| > |j|, e t_{-m,m} = 0 para m > 0"""
    return abs(i) > abs(j) or (i < 0 and j == -i)


def normalize(i: int, j: int, inverse: bool = False) -> Optional[Gen]:
    """
    Forma canônica do símbolo t_ij

    Returns:
        Gen com diagonal em i > 0, ou None para símbolos nulos
    """
    if inverse:
        if i != j:
            raise UsageError(f"inverso só existe para geradores diagonais: tinv({i},{j})")
        return Gen(abs(i), abs(i), True)
    if is_zero_kind(i, j):
        return None
    if i == j and i < 0:
        return Gen(-i, -i)
    return Gen(i, j)


def generators(n: int) -> List[Gen]:
    """Os 2n^2 geradores não nulos t_ij (|i| <= |j|) em ordem determinística"""
    indices = basis_indices(n)
    gens = {normalize(i, j) for i in indices for j in indices} - {None}
    return sorted(gens, key=lambda g: (abs(g.i), abs(g.j), g.i, g.j))


def word_parity(word: Iterable[Gen]) -> int:
    return sum(g.parity for g in word) % 2


def render_word(word: Word) -> str:
    return " ".join(str(g) for g in word) if word else "1"


class AlgebraElement:
    """Combinação linear finita de palavras nos geradores, coeficientes em Q(q)"""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Word, object]] = None):
        """
        Args:
            terms: mapa palavra -> coeficiente (Scalar, Frac, int ou Fraction)
        """
        self.terms: Dict[Word, object] = {}
        for word, value in (terms or {}).items():
            if not is_zero(value):
                self.terms[tuple(word)] = reduce_coefficient(value)

    @classmethod
    def one(cls) -> "AlgebraElement":
        return cls({(): ONE})

    @classmethod
    def monomial(cls, word: Iterable[Gen], coefficient=ONE) -> "AlgebraElement":
        return cls({tuple(word): coefficient})

    @classmethod
    def generator(cls, i: int, j: int) -> "AlgebraElement":
        """t_ij normalizado (zero para símbolos nulos)"""
        gen = normalize(i, j)
        return cls() if gen is None else cls({(gen,): ONE})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Word):
        return self.terms.get(tuple(word), ZERO)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        merged = dict(self.terms)
        for word, value in other.terms.items():
            merged[word] = merged[word] + value if word in merged else value
        return AlgebraElement(merged)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, factor) -> "AlgebraElement":
        return AlgebraElement({w: c * factor for w, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        product: Dict[Word, object] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                value = c1 * c2
                product[word] = product[word] + value if word in product else value
        return AlgebraElement(product)

    def __rmul__(self, factor):
        return self.scale(factor)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms))

    def sorted_terms(self) -> List[Tuple[Word, object]]:
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), render_word(item[0])))

    def to_dict(self) -> Dict[str, str]:
        return {render_word(w): str(c) for w, c in self.sorted_terms()}

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for word, c in self.sorted_terms():
            body = render_word(word)
            parts.append(body if c == ONE else f"({c})*{body}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"


_TOKEN_RE = re.compile(r"(tinv|t)\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_word(text: str, n: int) -> AlgebraElement:
    """
    Converte "t(1,2) tinv(2,2) ..." em AlgebraElement

    Args:
        text: tokens t(i,j) ou tinv(i,i) separados por espaços
        n: dimensão do bloco (valida os índices)

    Returns:
        A palavra normalizada (zero se algum gerador for nulo)

    Raises:
        UsageError: token malformado ou índice fora do intervalo
    """
    tokens = text.split()
    if not tokens:
        raise UsageError("palavra vazia")
    word: List[Gen] = []
    vanishes = False
    for token in tokens:
        match = _TOKEN_RE.fullmatch(token)
        if not match:
            raise UsageError(f"token inválido: {token!r}")
        name, i, j = match.group(1), int(match.group(2)), int(match.group(3))
        if i == 0 or j == 0 or abs(i) > n or abs(j) > n:
            raise UsageError(f"índice fora do intervalo em {token} (n={n})")
        gen = normalize(i, j, inverse=(name == "tinv"))
        if gen is None:
            vanishes = True
        else:
            word.append(gen)
    if vanishes:
        return AlgebraElement()
    return AlgebraElement.monomial(word)


# ----------------------------------------------------------------------
# Coproduto
# ----------------------------------------------------------------------

TensorElement = Dict[Tuple[Word, Word], object]
TripleElement = Dict[Tuple[Word, Word, Word], object]


def _add(acc: Dict, key, value) -> None:
    total = acc[key] + value if key in acc else value
    if is_zero(total):
        acc.pop(key, None)
    else:
        acc[key] = reduce_coefficient(total)


def _delta_sign(i: int, k: int, j: int) -> int:
    return -1 if (parity(i) + parity(k)) * (parity(k) + parity(j)) % 2 else 1


def coproduct_indices(i: int, j: int, n: int) -> List[Tuple[int, Gen, Gen]]:
    """Termos (sinal, t_ik, t_kj) de Delta(t_ij) com fatores nulos descartados"""
    terms = []
    for k in basis_indices(n):
        left, right = normalize(i, k), normalize(k, j)
        if left is None or right is None:
            continue
        terms.append((_delta_sign(i, k, j), left, right))
    return terms


def coproduct(g: Gen, n: Optional[int] = None) -> TensorElement:
    """
    Coproduto de um gerador

    Args:
        g: gerador (t_ij ou t_ii^-1)
        n: dimensão do bloco (padrão: max(|i|, |j|))

    Returns:
        Mapa (palavra, palavra) -> coeficiente
    """
    if g.inverse:
        return {((g,), (g,)): ONE}
    n = n or max(abs(g.i), abs(g.j))
    result: TensorElement = {}
    for sign, left, right in coproduct_indices(g.i, g.j, n):
        _add(result, ((left,), (right,)), ONE * sign)
    return result


def tensor_flip(t: TensorElement) -> TensorElement:
    """Involução a⊗b -> (-1)^{|a||b|} b⊗a"""
    flipped: TensorElement = {}
    for (a, b), c in t.items():
        _add(flipped, (b, a), -c if word_parity(a) * word_parity(b) else c)
    return flipped


def counit(word: Word):
    """Candidato a counidade: epsilon(t_ij) = delta_ij, epsilon(t_ii^-1) = 1"""
    for g in word:
        if not g.is_diagonal:
            return ZERO
    return ONE


def _coassociativity_sides(i: int, j: int, n: int) -> Tuple[TripleElement, TripleElement]:
    left: TripleElement = {}
    right: TripleElement = {}
    for k in basis_indices(n):
        outer = _delta_sign(i, k, j)
        if normalize(i, k) is not None and normalize(k, j) is not None:
            # (Delta ⊗ 1): divide o primeiro fator t_ik
            for sign, a, b in coproduct_indices(i, k, n):
                _add(left, ((a,), (b,), (normalize(k, j),)), ONE * (outer * sign))
            # (1 ⊗ Delta): divide o segundo fator t_kj
            for sign, a, b in coproduct_indices(k, j, n):
                _add(right, ((normalize(i, k),), (a,), (b,)), ONE * (outer * sign))
    return left, right


def verify_coproduct(n: int) -> VerificationReport:
    """Coassociatividade de Delta e o candidato a counidade nos geradores"""
    logger.info(f"=== Iniciando verificação do coproduto (n={n}) ===")
    report = VerificationReport("coproduct", "coassociativity and counit candidate", {"n": n})
    bad_assoc, bad_counit = [], []
    for g in generators(n):
        left, right = _coassociativity_sides(g.i, g.j, n)
        if left != right:
            bad_assoc.append(str(g))
        delta = coproduct(g, n)
        via_left: Dict[Word, object] = {}
        via_right: Dict[Word, object] = {}
        for (a, b), c in delta.items():
            _add(via_left, b, c * counit(a))
            _add(via_right, a, c * counit(b))
        expected = {(g,): ONE}
        if via_left != expected or via_right != expected:
            bad_counit.append(str(g))
    report.record("coassociativity", not bad_assoc,
                  f"falhas: {bad_assoc[:5]}" if bad_assoc else f"{len(generators(n))} geradores")
    report.record("counit-candidate", not bad_counit,
                  f"falhas: {bad_counit[:5]}" if bad_counit else "(eps⊗1)Delta = id = (1⊗eps)Delta")
    return report.finish()
