"""
Superspace Module - Sparse graded operators on tensor powers of C(n|n)

This module contains the index/parity bookkeeping of the super vector space
C(n|n) (basis order e_-n, ..., e_-1, e_1, ..., e_n), the GradedOperator class
(sparse Scalar-valued matrices on V^{⊗l}) and the Koszul-sign tensor
calculus: koszul_tensor, embed, embed_legs, flip and the super-permutation P.

Entries are stored as plain matrix entries in the tensor basis. The
matrix-unit expansion of an operator (units()) differs from its entries by
the Koszul sign of koszul_sign(rows, cols).

Usage:
    from PQ.superspace import elementary, koszul_tensor, super_permutation

    P = super_permutation(2)
    A = koszul_tensor(elementary(2, -1, 1), elementary(2, 1, -1))
    print(P.compose(A).compose(P) == A.flipped())
"""

import itertools
import json
import logging
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .exceptions import ShapeError
from .scalar import ONE, ZERO, Scalar, parse_scalar

# Setup logging
logger = logging.getLogger(__name__)

MultiIndex = Tuple[int, ...]
Entries = Dict[MultiIndex, Dict[MultiIndex, Scalar]]


def basis_indices(n: int) -> List[int]:
    """Ordem fixa da base: -n, ..., -1, 1, ..., n"""
    return list(range(-n, 0)) + list(range(1, n + 1))


def parity(i: int) -> int:
    """p(i) = 1 se i < 0"""
    return 1 if i < 0 else 0


def multi_parity(index: Sequence[int]) -> int:
    return sum(parity(i) for i in index) % 2


def multi_indices(n: int, legs: int) -> List[MultiIndex]:
    """Todos os multi-índices de V^{⊗legs} em ordem row-major"""
    return list(itertools.product(basis_indices(n), repeat=legs))


def koszul_sign(rows: Sequence[int], cols: Sequence[int]) -> int:
    """
    Sinal entre a entrada de matriz e o coeficiente de E_{r1c1}⊗...⊗E_{rkck}

    Args:
        rows: índices de linha por perna
        cols: índices de coluna por perna

    Returns:
        +1 ou -1
    """
    total, prefix = 0, 0
    for r, c in zip(rows, cols):
        total += (parity(r) + parity(c)) * prefix
        prefix += parity(c)
    return -1 if total % 2 else 1


def _check_index(n: int, i: int) -> None:
    if i == 0 or abs(i) > n:
        raise ShapeError(f"index out of range: {i} (n={n})")


class GradedOperator:
    """Operador esparso e homogêneo em V^{⊗legs}, com entradas Scalar"""

    __slots__ = ("n", "legs", "parity", "_entries")

    def __init__(self, n: int, legs: int, entries: Optional[Mapping] = None,
                 parity: Optional[int] = None):
        """
        Cria o operador e verifica a gradação

        Args:
            n: dimensão do bloco (V = C(n|n))
            legs: número de fatores tensoriais
            entries: mapa linha -> {coluna -> Scalar}
            parity: paridade esperada (inferida das entradas quando None)

        Raises:
            ShapeError: entradas fora do intervalo ou não homogêneas
        """
        self.n, self.legs = n, legs
        clean: Entries = {}
        found = None
        for row, cols in (entries or {}).items():
            kept = {}
            for col, value in cols.items():
                value = Scalar(value) if not isinstance(value, Scalar) else value
                if value.is_zero:
                    continue
                if len(row) != legs or len(col) != legs:
                    raise ShapeError(f"multi-índice com número de pernas incorreto: {row}, {col}")
                for i in itertools.chain(row, col):
                    _check_index(n, i)
                p = (multi_parity(row) + multi_parity(col)) % 2
                if found is None:
                    found = p
                elif p != found:
                    raise ShapeError("entradas não homogêneas: operador sem paridade definida")
                kept[col] = value
            if kept:
                clean[tuple(row)] = kept
        if parity is not None and found is not None and parity % 2 != found:
            raise ShapeError(f"paridade declarada {parity} difere das entradas ({found})")
        self.parity = found if found is not None else (parity or 0) % 2
        self._entries = clean

    @classmethod
    def from_flat(cls, n: int, legs: int, flat: Mapping[Tuple[MultiIndex, MultiIndex], Scalar],
                  parity: Optional[int] = None) -> "GradedOperator":
        """Cria a partir de um mapa (linha, coluna) -> Scalar, somando repetições"""
        nested: Dict[MultiIndex, Dict[MultiIndex, Scalar]] = {}
        for (row, col), value in flat.items():
            cols = nested.setdefault(row, {})
            cols[col] = cols.get(col, ZERO) + value
        return cls(n, legs, nested, parity)

    # ------------------------------------------------------------------
    # Inspeção
    # ------------------------------------------------------------------

    @property
    def entries(self) -> Entries:
        return self._entries

    def items(self) -> Iterator[Tuple[MultiIndex, MultiIndex, Scalar]]:
        for row, cols in self._entries.items():
            for col, value in cols.items():
                yield row, col, value

    def entry(self, row: MultiIndex, col: MultiIndex) -> Scalar:
        return self._entries.get(tuple(row), {}).get(tuple(col), ZERO)

    @property
    def nnz(self) -> int:
        return sum(len(cols) for cols in self._entries.values())

    @property
    def is_zero(self) -> bool:
        return not self._entries

    def units(self) -> Dict[Tuple[MultiIndex, MultiIndex], Scalar]:
        """Expansão em unidades matriciais E_{r1c1}⊗...⊗E_{rkck} (com sinais de Koszul)"""
        return {(row, col): value * koszul_sign(row, col) for row, col, value in self.items()}

    def column_index(self) -> Dict[MultiIndex, Dict[MultiIndex, Scalar]]:
        """Mapa coluna -> {linha -> Scalar}"""
        index: Dict[MultiIndex, Dict[MultiIndex, Scalar]] = {}
        for row, col, value in self.items():
            index.setdefault(col, {})[row] = value
        return index

    # ------------------------------------------------------------------
    # Álgebra
    # ------------------------------------------------------------------

    def _check_shape(self, other: "GradedOperator") -> None:
        if self.n != other.n or self.legs != other.legs:
            raise ShapeError(
                f"operadores incompatíveis: (n={self.n}, legs={self.legs}) e "
                f"(n={other.n}, legs={other.legs})"
            )

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        self._check_shape(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        merged = {row: dict(cols) for row, cols in self._entries.items()}
        for row, col, value in other.items():
            cols = merged.setdefault(row, {})
            cols[col] = cols.get(col, ZERO) + value
        return GradedOperator(self.n, self.legs, merged)

    def __neg__(self) -> "GradedOperator":
        return self.scale(-1)

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return self + (-other)

    def scale(self, factor) -> "GradedOperator":
        """Multiplicação por escalar (int, Fraction ou Scalar)"""
        factor = Scalar(factor) if not isinstance(factor, Scalar) else factor
        if factor.is_zero:
            return GradedOperator(self.n, self.legs, parity=self.parity)
        scaled = {row: {col: value * factor for col, value in cols.items()}
                  for row, cols in self._entries.items()}
        return GradedOperator(self.n, self.legs, scaled, self.parity)

    def __mul__(self, factor) -> "GradedOperator":
        if isinstance(factor, GradedOperator):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def compose(self, other: "GradedOperator") -> "GradedOperator":
        """Produto de operadores self∘other"""
        self._check_shape(other)
        result: Entries = {}
        other_rows = other._entries
        for row, cols in self._entries.items():
            acc: Dict[MultiIndex, Scalar] = {}
            for mid, left in cols.items():
                right_cols = other_rows.get(mid)
                if not right_cols:
                    continue
                for col, right in right_cols.items():
                    acc[col] = acc.get(col, ZERO) + left * right
            if acc:
                result[row] = acc
        return GradedOperator(self.n, self.legs, result, (self.parity + other.parity) % 2)

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        return self.compose(other)

    def supercommutator(self, other: "GradedOperator") -> "GradedOperator":
        """[A, B] = AB - (-1)^{p(A)p(B)} BA"""
        sign = -1 if self.parity * other.parity else 1
        return self.compose(other) - other.compose(self).scale(sign)

    def apply(self, vector: Mapping[MultiIndex, Scalar]) -> Dict[MultiIndex, Scalar]:
        """Aplica o operador a um vetor esparso {multi-índice: Scalar}"""
        result: Dict[MultiIndex, Scalar] = {}
        for row, cols in self._entries.items():
            acc = ZERO
            for col, value in cols.items():
                coefficient = vector.get(col)
                if coefficient is not None:
                    acc = acc + value * coefficient
            if not acc.is_zero:
                result[row] = acc
        return result

    def map_entries(self, fn) -> "GradedOperator":
        mapped = {row: {col: fn(value) for col, value in cols.items()}
                  for row, cols in self._entries.items()}
        return GradedOperator(self.n, self.legs, mapped, self.parity)

    def eval_at(self, value) -> "GradedOperator":
        """Especializa todas as entradas em q = value"""
        return self.map_entries(lambda s: Scalar(s.eval_at(value)))

    def eval_at_one(self) -> "GradedOperator":
        return self.map_entries(lambda s: Scalar(s.eval_at_one()))

    def coefficient(self, k: int) -> "GradedOperator":
        """Operador formado pelos coeficientes de q^k"""
        return self.map_entries(lambda s: Scalar(s.coefficient(k)))

    def flipped(self) -> "GradedOperator":
        return flip(self)

    # ------------------------------------------------------------------
    # Comparação e serialização
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedOperator):
            return NotImplemented
        if self.n != other.n or self.legs != other.legs:
            return False
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.n, self.legs, self.nnz))

    def sorted_items(self) -> List[Tuple[MultiIndex, MultiIndex, Scalar]]:
        return sorted(self.items(), key=lambda item: (item[0], item[1]))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "legs": self.legs,
            "parity": self.parity,
            "entries": [[list(row), list(col), str(value)] for row, col, value in self.sorted_items()],
        }

    def to_json(self) -> str:
        """JSON canônico: entradas ordenadas lexicograficamente"""
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: Mapping) -> "GradedOperator":
        flat = {(tuple(row), tuple(col)): parse_scalar(text) for row, col, text in data["entries"]}
        return cls.from_flat(int(data["n"]), int(data["legs"]), flat, int(data["parity"]))

    @classmethod
    def from_json(cls, text: str) -> "GradedOperator":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"GradedOperator(n={self.n}, legs={self.legs}, parity={self.parity}, nnz={self.nnz})"


# ----------------------------------------------------------------------
# Construtores
# ----------------------------------------------------------------------

def zero_operator(n: int, legs: int, parity: int = 0) -> GradedOperator:
    return GradedOperator(n, legs, parity=parity)


def identity(n: int, legs: int) -> GradedOperator:
    """Operador identidade em V^{⊗legs}"""
    return GradedOperator(n, legs, {idx: {idx: ONE} for idx in multi_indices(n, legs)}, 0)


def elementary(n: int, i: int, j: int) -> GradedOperator:
    """
    Unidade matricial E_{ij} em uma perna

    Args:
        n: dimensão do bloco
        i: índice de linha em {±1, ..., ±n}
        j: índice de coluna em {±1, ..., ±n}

    Returns:
        GradedOperator de paridade p(i)+p(j)
    """
    _check_index(n, i)
    _check_index(n, j)
    return GradedOperator(n, 1, {(i,): {(j,): ONE}}, (parity(i) + parity(j)) % 2)


def from_units(n: int, legs: int, units: Mapping[Tuple[MultiIndex, MultiIndex], object],
               parity: Optional[int] = None) -> GradedOperator:
    """
    Monta um operador a partir de coeficientes de unidades matriciais

    Args:
        units: mapa (linhas, colunas) -> coeficiente de E_{r1c1}⊗...⊗E_{rkck}

    Returns:
        GradedOperator com entradas = coeficiente × sinal de Koszul
    """
    flat: Dict[Tuple[MultiIndex, MultiIndex], Scalar] = {}
    for (rows, cols), value in units.items():
        value = value if isinstance(value, Scalar) else Scalar(value)
        key = (tuple(rows), tuple(cols))
        flat[key] = flat.get(key, ZERO) + value * koszul_sign(rows, cols)
    return GradedOperator.from_flat(n, legs, flat, parity)


def koszul_tensor(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    """
    Produto tensorial graduado A⊗B

    A entrada ((r1, r2), (c1, c2)) vale A[r1][c1]·B[r2][c2]·(-1)^{(p(r2)+p(c2))·p(c1)},
    ou seja (A⊗B)(v⊗w) = (-1)^{p(B)p(v)} Av⊗Bw.
    """
    if a.n != b.n:
        raise ShapeError(f"n diferente no produto tensorial: {a.n} e {b.n}")
    result: Entries = {}
    for r1, c1, x in a.items():
        pc1 = multi_parity(c1)
        for r2, c2, y in b.items():
            value = x * y
            if pc1 and (multi_parity(r2) + multi_parity(c2)) % 2:
                value = -value
            result.setdefault(r1 + r2, {})[c1 + c2] = value
    return GradedOperator(a.n, a.legs + b.legs, result, (a.parity + b.parity) % 2)


def embed(a: GradedOperator, positions: Sequence[int], total: int) -> GradedOperator:
    """
    Coloca um operador de k pernas nas pernas `positions` (crescentes, base 1)

    O operador é expandido em unidades matriciais, cada fator vai para a sua
    perna e as demais pernas recebem a identidade; os sinais de Koszul são
    recalculados na nova posição. Aceita operadores ímpares.
    """
    positions = tuple(positions)
    if len(positions) != a.legs or list(positions) != sorted(set(positions)):
        raise ShapeError(f"posições inválidas {positions} para operador de {a.legs} pernas")
    if positions[0] < 1 or positions[-1] > total:
        raise ShapeError(f"posições {positions} fora de 1..{total}")
    others = [leg for leg in range(1, total + 1) if leg not in positions]
    fillers = list(itertools.product(basis_indices(a.n), repeat=len(others)))
    units: Dict[Tuple[MultiIndex, MultiIndex], Scalar] = {}
    for (rows, cols), value in a.units().items():
        for filler in fillers:
            new_rows = [0] * total
            new_cols = [0] * total
            for leg, r, c in zip(positions, rows, cols):
                new_rows[leg - 1], new_cols[leg - 1] = r, c
            for leg, d in zip(others, filler):
                new_rows[leg - 1] = new_cols[leg - 1] = d
            units[(tuple(new_rows), tuple(new_cols))] = value
    return from_units(a.n, total, units, a.parity)


def embed_legs(a: GradedOperator, k: int, total: int) -> GradedOperator:
    """
    Aplica um operador par de 2 pernas nas pernas (k, k+1) de V^{⊗total}

    Raises:
        ShapeError: "odd operator cannot be leg-embedded"
    """
    if a.legs != 2:
        raise ShapeError("embed_legs espera um operador de 2 pernas")
    if a.parity:
        raise ShapeError("odd operator cannot be leg-embedded")
    if not 1 <= k <= total - 1:
        raise ShapeError(f"posição {k} fora de 1..{total - 1}")
    return embed(a, (k, k + 1), total)


def super_permutation(n: int) -> GradedOperator:
    """P = Σ (-1)^{p(b)} E_ab ⊗ E_ba, isto é P(e_a⊗e_b) = (-1)^{p(a)p(b)} e_b⊗e_a"""
    basis = basis_indices(n)
    units = {((a, b), (b, a)): (-1) ** parity(b) for a in basis for b in basis}
    return from_units(n, 2, units, 0)


def flip(a: GradedOperator) -> GradedOperator:
    """Flip com sinal P∘A∘P de um operador de 2 pernas"""
    if a.legs != 2:
        raise ShapeError("flip espera um operador de 2 pernas")
    p = super_permutation(a.n)
    return p.compose(a).compose(p)


def tensor_vector(*indices: int) -> Dict[MultiIndex, Scalar]:
    """Vetor de base e_{i1}⊗...⊗e_{ik}"""
    return {tuple(indices): ONE}


def sum_operators(operators: Iterable[GradedOperator], n: int, legs: int) -> GradedOperator:
    flat: Dict[Tuple[MultiIndex, MultiIndex], Scalar] = {}
    for op in operators:
        for row, col, value in op.items():
            flat[(row, col)] = flat.get((row, col), ZERO) + value
    return GradedOperator.from_flat(n, legs, flat)


def leg_sum(a: GradedOperator, total: int) -> GradedOperator:
    """Σ_m a na perna m (ação de um elemento de Lie em V^{⊗total})"""
    return sum_operators((embed(a, (m,), total) for m in range(1, total + 1)), a.n, total)


def to_fraction_vector(op: GradedOperator) -> Dict[Tuple[MultiIndex, MultiIndex], Fraction]:
    """Entradas de um operador constante como Fractions"""
    return {(row, col): value.constant_value() for row, col, value in op.items()}
