"""
Linear Algebra Module - Exact sparse elimination over Q, Q(q) and GF(p)

This module contains the field adapters used by every solver of the package
and the sparse elimination routines built on them:

    - row_reduce: Gauss-Jordan with columns visited in a caller-given order
      (used to obtain rewrite rules with preferred pivots)
    - LinearSpan: incremental reduced echelon form with membership tests and
      optional coordinate tracking
    - kernel_basis: nullspace of a sparse system over a field
    - SpecializedField: GF(p) with q fixed at a point (evaluation mode)
    - fraction_free_kernel: nullspace over Q[q, q^-1] without fractions
      (primitive-part elimination, Bareiss style)
    - independent_rows: maximal Q(q)-independent subset of Laurent rows
    - inverse_matrix: Gauss-Jordan inverse of a square sparse matrix

Rows are dictionaries column -> value; zero values are never stored.

Usage:
    from PQ.linalg import RATIONALS, LinearSpan

    span = LinearSpan(RATIONALS)
    span.add({"a": 1, "b": 2})
    print(span.contains({"a": 2, "b": 4}))   # True
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .exceptions import ScalarError
from .scalar import ONE, Frac, Scalar, as_frac, primitive_part, scalar_lcm

# Setup logging
logger = logging.getLogger(__name__)

Row = Dict[Hashable, object]

# Primo de Mersenne usado na avaliação modular
DEFAULT_PRIME = 2 ** 61 - 1


class Field:
    """Adaptador de corpo: operações mínimas usadas pela eliminação"""

    name = "field"

    def convert(self, value):
        raise NotImplementedError

    def is_zero(self, value) -> bool:
        return value == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def neg(self, a):
        return -a

    @property
    def one(self):
        return self.convert(1)


class RationalField(Field):
    """Corpo Q com fractions.Fraction"""

    name = "QQ"

    def convert(self, value) -> Fraction:
        if isinstance(value, Scalar):
            return value.constant_value()
        return Fraction(value)


class FunctionField(Field):
    """Corpo Q(q) com a classe Frac"""

    name = "QQ(q)"

    def convert(self, value) -> Frac:
        return as_frac(value)

    def is_zero(self, value) -> bool:
        return value.is_zero


class PrimeField(Field):
    """Corpo GF(p) com inteiros reduzidos"""

    def __init__(self, prime: int = DEFAULT_PRIME):
        self.prime = prime
        self.name = f"GF({prime})"

    def convert(self, value) -> int:
        if isinstance(value, Fraction):
            if value.denominator % self.prime == 0:
                raise ScalarError(f"denominador divisível por {self.prime}")
            return value.numerator * pow(value.denominator, -1, self.prime) % self.prime
        return int(value) % self.prime

    def add(self, a, b):
        return (a + b) % self.prime

    def sub(self, a, b):
        return (a - b) % self.prime

    def mul(self, a, b):
        return a * b % self.prime

    def div(self, a, b):
        return a * pow(b, -1, self.prime) % self.prime

    def neg(self, a):
        return -a % self.prime

    def scalar_at(self, value: Scalar, point: int) -> int:
        """Avalia um Scalar em q = point módulo p"""
        total = 0
        for e, c in value.terms.items():
            total += self.convert(c) * pow(point, e, self.prime)
        return total % self.prime


class SpecializedField(PrimeField):
    """GF(p) com q especializado em um ponto fixo; aceita Scalar diretamente"""

    def __init__(self, point: int, prime: int = DEFAULT_PRIME):
        super().__init__(prime)
        self.point = point % prime
        self.name = f"GF({prime})[q={point}]"

    def convert(self, value) -> int:
        if isinstance(value, Scalar):
            return self.scalar_at(value, self.point)
        return super().convert(value)


RATIONALS = RationalField()
FUNCTIONS = FunctionField()


def _axpy(field: Field, target: Row, factor, source: Row) -> None:
    """target -= factor * source (no lugar), descartando zeros"""
    for col, value in source.items():
        current = target.get(col)
        updated = field.neg(field.mul(factor, value)) if current is None else \
            field.sub(current, field.mul(factor, value))
        if field.is_zero(updated):
            target.pop(col, None)
        else:
            target[col] = updated


def row_reduce(rows: Iterable[Row], field: Field,
               column_key: Optional[Callable] = None) -> List[Tuple[Hashable, Row]]:
    """
    Forma escalonada reduzida visitando as colunas na ordem de column_key

    Args:
        rows: linhas esparsas (já convertidas para o corpo)
        field: adaptador do corpo
        column_key: chave de ordenação das colunas (pivôs preferidos primeiro)

    Returns:
        Lista (coluna pivô, linha normalizada com pivô 1) na ordem das colunas
    """
    active = [dict(r) for r in rows if r]
    columns = sorted({c for r in active for c in r}, key=column_key)
    pivots: List[Tuple[Hashable, Row]] = []
    for col in columns:
        best = None
        for idx, row in enumerate(active):
            if col in row and (best is None or len(row) < len(active[best])):
                best = idx
        if best is None:
            continue
        pivot_row = active.pop(best)
        pivot_value = pivot_row[col]
        pivot_row = {c: field.div(v, pivot_value) for c, v in pivot_row.items()}
        for other in active:
            factor = other.get(col)
            if factor is not None:
                _axpy(field, other, factor, pivot_row)
        for _, other in pivots:
            factor = other.get(col)
            if factor is not None:
                _axpy(field, other, factor, pivot_row)
        active = [r for r in active if r]
        pivots.append((col, pivot_row))
    return pivots


class LinearSpan:
    """Espaço gerado incremental em forma escalonada reduzida"""

    def __init__(self, field: Field, track: bool = False, column_key: Optional[Callable] = None):
        """
        Args:
            field: adaptador do corpo
            track: se True, guarda as coordenadas em termos dos vetores inseridos
            column_key: escolha determinística da coluna pivô
        """
        self.field = field
        self.track = track
        self.column_key = column_key
        self._pivots: Dict[Hashable, Row] = {}
        self._combos: Dict[Hashable, Row] = {}
        self.labels: List[Hashable] = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _convert(self, vector: Row) -> Row:
        field = self.field
        converted = {}
        for col, value in vector.items():
            value = field.convert(value)
            if not field.is_zero(value):
                converted[col] = value
        return converted

    def reduce(self, vector: Row, converted: bool = False) -> Tuple[Row, Row]:
        """
        Reduz um vetor pelos pivôs atuais

        Returns:
            (resíduo, combinação) com vetor = resíduo + Σ combinação[label]·vetor[label]
        """
        field = self.field
        residual = dict(vector) if converted else self._convert(vector)
        combo: Row = {}
        for col in [c for c in residual if c in self._pivots]:
            factor = residual.get(col)
            if factor is None:
                continue
            _axpy(field, residual, factor, self._pivots[col])
            if self.track:
                for label, value in self._combos[col].items():
                    current = combo.get(label)
                    updated = field.mul(factor, value) if current is None else \
                        field.add(current, field.mul(factor, value))
                    if field.is_zero(updated):
                        combo.pop(label, None)
                    else:
                        combo[label] = updated
        return residual, combo

    def contains(self, vector: Row) -> bool:
        residual, _ = self.reduce(vector)
        return not residual

    def add(self, vector: Row, label: Hashable = None) -> bool:
        """
        Insere um vetor; retorna True quando ele é independente dos anteriores

        Args:
            vector: vetor esparso
            label: rótulo usado nas coordenadas (índice de inserção por padrão)
        """
        field = self.field
        if label is None:
            label = len(self.labels)
        residual, combo = self.reduce(vector)
        if not residual:
            return False
        col = min(residual, key=self.column_key) if self.column_key else next(iter(residual))
        pivot_value = residual[col]
        row = {c: field.div(v, pivot_value) for c, v in residual.items()}
        new_combo: Row = {}
        if self.track:
            # row = (vector - Σ combo·v_label) / pivot
            inv = field.div(field.one, pivot_value)
            new_combo[label] = inv
            for other_label, value in combo.items():
                new_combo[other_label] = field.neg(field.mul(inv, value))
        for other_col, other in self._pivots.items():
            factor = other.get(col)
            if factor is None:
                continue
            _axpy(field, other, factor, row)
            if self.track:
                _axpy(field, self._combos[other_col], factor, new_combo)
        self._pivots[col] = row
        if self.track:
            self._combos[col] = new_combo
        self.labels.append(label)
        return True

    def coordinates(self, vector: Row) -> Optional[Row]:
        """Coordenadas do vetor em termos dos vetores inseridos (None se fora do espaço)"""
        if not self.track:
            raise ValueError("LinearSpan criado sem rastreamento de coordenadas")
        residual, combo = self.reduce(vector)
        return None if residual else combo

    def pivot_columns(self) -> List[Hashable]:
        return list(self._pivots)


def rank_of(vectors: Iterable[Row], field: Field) -> int:
    span = LinearSpan(field)
    for vector in vectors:
        span.add(vector)
    return span.rank


def kernel_basis(rows: Iterable[Row], columns: Sequence[Hashable], field: Field) -> List[Row]:
    """
    Base do núcleo de um sistema esparso homogêneo sobre um corpo

    Args:
        rows: equações (coluna -> coeficiente), já no corpo
        columns: todas as incógnitas, na ordem de preferência de pivô
        field: adaptador do corpo

    Returns:
        Lista de vetores (incógnita -> valor), um por variável livre
    """
    order = {c: k for k, c in enumerate(columns)}
    span = LinearSpan(field, column_key=order.__getitem__)
    for row in rows:
        if row:
            span.add(row)
    pivots = span._pivots
    free = [c for c in columns if c not in pivots]
    basis = []
    for f in free:
        vector = {f: field.one}
        for p, row in pivots.items():
            value = row.get(f)
            if value is not None:
                vector[p] = field.neg(value)
        basis.append(vector)
    logger.debug(f"Núcleo sobre {field.name}: {len(columns)} incógnitas, posto {span.rank}")
    return basis


def _ff_reduce(pivots: Dict[Hashable, Dict[Hashable, Scalar]], row: Dict[Hashable, Scalar],
               order: Dict[Hashable, int]) -> Dict[Hashable, Scalar]:
    """Elimina de row as colunas pivô já presentes"""
    current = {c: v for c, v in row.items() if not v.is_zero}
    for col in sorted((c for c in current if c in pivots), key=order.__getitem__):
        factor = current.get(col)
        if factor is None:
            continue
        current = _ff_combine(current, pivots[col], col, factor)
    return current


def _ff_insert(pivots: Dict[Hashable, Dict[Hashable, Scalar]], current: Dict[Hashable, Scalar],
               order: Dict[Hashable, int]) -> None:
    current = primitive_part(current)
    col = min(current, key=order.__getitem__)
    for other_col in list(pivots):
        other = pivots[other_col]
        factor = other.get(col)
        if factor is not None:
            pivots[other_col] = primitive_part(_ff_combine(other, current, col, factor))
    pivots[col] = current


def independent_rows(rows: Sequence[Dict[Hashable, Scalar]]) -> List[int]:
    """
    Índices de um subconjunto maximal de linhas independentes sobre Q(q)

    As linhas são visitadas em ordem; uma linha é mantida quando não é
    combinação das anteriores (eliminação livre de frações).
    """
    order: Dict[Hashable, int] = {}
    for row in rows:
        for col in row:
            order.setdefault(col, len(order))
    pivots: Dict[Hashable, Dict[Hashable, Scalar]] = {}
    kept = []
    for index, row in enumerate(rows):
        current = _ff_reduce(pivots, row, order)
        if current:
            _ff_insert(pivots, current, order)
            kept.append(index)
    logger.debug(f"Linhas independentes sobre Q(q): {len(kept)} de {len(rows)}")
    return kept


def fraction_free_kernel(rows: Iterable[Dict[Hashable, Scalar]],
                         columns: Sequence[Hashable]) -> List[Dict[Hashable, Scalar]]:
    """
    Base do núcleo sobre Q(q) com vetores em Q[q, q^-1], sem frações

    Cada passo de eliminação faz r <- pv·r - r[c]·P e divide o resultado
    pelo seu conteúdo (parte primitiva), como na eliminação de Bareiss.

    Args:
        rows: equações com coeficientes Scalar
        columns: incógnitas em ordem de preferência de pivô

    Returns:
        Vetores primitivos do núcleo, um por variável livre
    """
    order = {c: k for k, c in enumerate(columns)}
    pivots: Dict[Hashable, Dict[Hashable, Scalar]] = {}
    for row in rows:
        current = _ff_reduce(pivots, row, order)
        if current:
            _ff_insert(pivots, current, order)
    free = [c for c in columns if c not in pivots]
    basis = []
    for f in free:
        fracs = {f: Frac(ONE)}
        for p, row in pivots.items():
            value = row.get(f)
            if value is not None:
                fracs[p] = Frac(-value, row[p])
        common = ONE
        for value in fracs.values():
            if not value.den == ONE:
                common = scalar_lcm(common, value.den)
        vector = {c: (v * common).to_scalar() for c, v in fracs.items()}
        basis.append(primitive_part(vector))
    return basis


def _ff_combine(target: Dict[Hashable, Scalar], pivot: Dict[Hashable, Scalar],
                col: Hashable, factor: Scalar) -> Dict[Hashable, Scalar]:
    """pv·target - factor·pivot (elimina a coluna col de target)"""
    pv = pivot[col]
    result = {}
    for c in set(target) | set(pivot):
        value = target.get(c)
        value = value * pv if value is not None else None
        other = pivot.get(c)
        if other is not None:
            term = factor * other
            value = -term if value is None else value - term
        if value is not None and not value.is_zero:
            result[c] = value
    result.pop(col, None)
    return result


def inverse_matrix(entries: Dict[Hashable, Dict[Hashable, object]], keys: Sequence[Hashable],
                   field: Field) -> Optional[Dict[Hashable, Dict[Hashable, object]]]:
    """
    Inversa de uma matriz quadrada esparsa por Gauss-Jordan

    Args:
        entries: linha -> {coluna -> valor}
        keys: índices de linha/coluna
        field: adaptador do corpo

    Returns:
        Inversa no mesmo formato, ou None se a matriz for singular
    """
    augmented = []
    for key in keys:
        row = {("a", c): field.convert(v) for c, v in entries.get(key, {}).items()}
        row = {c: v for c, v in row.items() if not field.is_zero(v)}
        row[("b", key)] = field.one
        augmented.append(row)
    order = {("a", k): i for i, k in enumerate(keys)}
    reduced = row_reduce(augmented, field, column_key=lambda c: (0, order[c]) if c[0] == "a" else (1, 0))
    left_pivots = [(col, row) for col, row in reduced if col[0] == "a"]
    if len(left_pivots) != len(keys):
        return None
    inverse: Dict[Hashable, Dict[Hashable, object]] = {}
    for (_, key), row in left_pivots:
        inverse[key] = {c[1]: v for c, v in row.items() if c[0] == "b"}
    return inverse
