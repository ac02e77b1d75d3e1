"""
Scalar Module - Exact Laurent polynomials in q over the rationals

This module contains the Scalar class (elements of Q[q, q^-1]) and the Frac
class (elements of Q(q)). Both are immutable and built on the sympy
polynomial ring QQ[q]; a Scalar is stored as a polynomial with nonzero
constant term times a power of q.

Usage:
    from PQ.scalar import Scalar, Frac, Q, EPS

    a = (Q - Q.inverse()) * (Q + Q.inverse())
    print(a)                       # -q^-2 + q^2
    print(a.eval_at_one())         # 0
    print(Frac(Q**2 - 1, Q - 1))   # 1 + q
"""

import logging
import re
from fractions import Fraction
from typing import Dict, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from .exceptions import ScalarError

# Setup logging
logger = logging.getLogger(__name__)

_RING, _q = ring("q", QQ)
_Q_MINUS_ONE = _q - 1

Rational = Union[int, Fraction]


def _to_qq(value: Rational):
    """Converte int/Fraction para um elemento do domínio QQ"""
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(int(value))


def _to_fraction(coefficient) -> Fraction:
    """Converte um coeficiente de QQ para fractions.Fraction"""
    return Fraction(int(QQ.numer(coefficient)), int(QQ.denom(coefficient)))


class Scalar:
    """Polinômio de Laurent em q com coeficientes racionais (imutável)"""

    __slots__ = ("_poly", "_shift")

    def __init__(self, value: Union["Scalar", Rational] = 0):
        """
        Cria um escalar constante ou copia outro escalar

        Args:
            value: int, Fraction ou Scalar
        """
        if isinstance(value, Scalar):
            self._poly, self._shift = value._poly, value._shift
            return
        if not isinstance(value, (int, Fraction)):
            raise ScalarError(f"valor não suportado para Scalar: {value!r}")
        self._poly = _RING.ground_new(_to_qq(value))
        self._shift = 0

    @classmethod
    def _from_poly(cls, poly, shift: int = 0) -> "Scalar":
        obj = cls.__new__(cls)
        if not poly:
            obj._poly, obj._shift = _RING.zero, 0
            return obj
        low = min(monom[0] for monom in poly.itermonoms())
        if low:
            poly = _RING.from_dict({(e - low,): c for (e,), c in poly.items()})
        obj._poly, obj._shift = poly, shift + low
        return obj

    @classmethod
    def from_terms(cls, terms: Dict[int, Rational]) -> "Scalar":
        """
        Cria um escalar a partir de um mapa expoente -> coeficiente

        Args:
            terms: dicionário {expoente: coeficiente racional}

        Returns:
            Scalar normalizado (coeficientes nulos descartados)
        """
        items = {e: _to_qq(c) for e, c in terms.items() if c != 0}
        if not items:
            return cls()
        low = min(items)
        poly = _RING.from_dict({(e - low,): c for e, c in items.items()})
        return cls._from_poly(poly, low)

    @classmethod
    def q_power(cls, k: int) -> "Scalar":
        return cls._from_poly(_RING.one, k)

    # ------------------------------------------------------------------
    # Inspeção
    # ------------------------------------------------------------------

    @property
    def terms(self) -> Dict[int, Fraction]:
        """Mapa expoente -> coeficiente (apenas coeficientes não nulos)"""
        return {e + self._shift: _to_fraction(c) for (e,), c in self._poly.items()}

    @property
    def is_zero(self) -> bool:
        return not self._poly

    @property
    def is_constant(self) -> bool:
        return self.is_zero or (self._shift == 0 and self._poly.is_ground)

    def constant_value(self) -> Fraction:
        """Retorna o valor racional de um escalar constante"""
        if not self.is_constant:
            raise ScalarError(f"escalar não é constante: {self}")
        return self.coefficient(0)

    def coefficient(self, k: int) -> Fraction:
        """Coeficiente de q^k"""
        return self.terms.get(k, Fraction(0))

    def degree_range(self) -> Tuple[int, int]:
        if self.is_zero:
            return (0, 0)
        exps = self.terms
        return (min(exps), max(exps))

    # ------------------------------------------------------------------
    # Aritmética
    # ------------------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented or isinstance(other, Frac):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        low = min(self._shift, other._shift)
        a = self._poly * _q ** (self._shift - low)
        b = other._poly * _q ** (other._shift - low)
        return Scalar._from_poly(a + b, low)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._from_poly(-self._poly, self._shift)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented or isinstance(other, Frac):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented or isinstance(other, Frac):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ZERO
        return Scalar._from_poly(self._poly * other._poly, self._shift + other._shift)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Scalar._from_poly(self._poly ** exponent, self._shift * exponent)

    def __truediv__(self, other) -> "Frac":
        return Frac(self, other)

    def __rtruediv__(self, other) -> "Frac":
        return Frac(other, self)

    def inverse(self) -> "Scalar":
        """Inverso em Q[q, q^-1]; existe apenas para monômios c*q^k"""
        if self.is_zero or not self._poly.is_ground:
            raise ScalarError(f"{self} não é uma unidade de Q[q, q^-1]")
        c = self._poly.LC
        return Scalar._from_poly(_RING.ground_new(QQ.one / c), -self._shift)

    def exquo(self, other: "Scalar") -> "Scalar":
        """
        Divisão exata em Q[q, q^-1]

        Args:
            other: divisor não nulo

        Returns:
            Scalar c com c * other == self

        Raises:
            ScalarError: "not divisible" quando a divisão não é exata
        """
        other = _coerce(other)
        if other.is_zero:
            raise ScalarError("zero denominator")
        quotient, remainder = self._poly.div(other._poly)
        if remainder:
            raise ScalarError("not divisible")
        return Scalar._from_poly(quotient, self._shift - other._shift)

    # ------------------------------------------------------------------
    # Especialização em q
    # ------------------------------------------------------------------

    def eval_at(self, value: Rational) -> Fraction:
        """Valor do polinômio de Laurent em q = value (racional)"""
        value = Fraction(value)
        if self.is_zero:
            return Fraction(0)
        if value == 0 and self._shift < 0:
            raise ScalarError("pole at q=0")
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * value ** e
        return total

    def eval_at_one(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def valuation_at_one(self) -> int:
        """Multiplicidade da raiz q = 1"""
        if self.is_zero:
            raise ScalarError("valuation of zero is undefined")
        poly, count = self._poly, 0
        while True:
            quotient, remainder = poly.div(_Q_MINUS_ONE)
            if remainder:
                return count
            poly, count = quotient, count + 1

    def quotient_by_qminus1(self, k: int) -> "Scalar":
        """Quociente exato por (q-1)^k"""
        if k == 0 or self.is_zero:
            return self
        quotient, remainder = self._poly.div(_Q_MINUS_ONE ** k)
        if remainder:
            raise ScalarError("not divisible")
        return Scalar._from_poly(quotient, self._shift)

    # ------------------------------------------------------------------
    # Comparação e renderização
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, Frac):
            return other == self
        return self._shift == other._shift and self._poly == other._poly

    def __hash__(self) -> int:
        return hash((self._shift, tuple(sorted(self.terms.items()))))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            magnitude = abs(c)
            if e == 0:
                body = str(magnitude)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if magnitude == 1 else f"{magnitude}*{var}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Scalar('{self}')"


class Frac:
    """Elemento de Q(q) em forma canônica num/den"""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        """
        Cria a fração num/den em forma canônica

        Args:
            num: Scalar, int ou Fraction
            den: Scalar, int ou Fraction (não nulo)

        Raises:
            ScalarError: "zero denominator"
        """
        if isinstance(num, Frac) or isinstance(den, Frac):
            num, den = as_frac(num), as_frac(den)
            num, den = num.num * den.den, num.den * den.num
        num, den = _as_scalar(num), _as_scalar(den)
        if den.is_zero:
            raise ScalarError("zero denominator")
        if num.is_zero:
            self.num, self.den = ZERO, ONE
            return
        _, a, b = num._poly.cofactors(den._poly)
        lc = b.LC
        self.num = Scalar._from_poly(a.quo_ground(lc), num._shift - den._shift)
        self.den = Scalar._from_poly(b.quo_ground(lc), 0)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_laurent(self) -> bool:
        """True quando o denominador canônico é 1"""
        return self.den == ONE

    def to_scalar(self) -> Scalar:
        if not self.is_laurent:
            raise ScalarError(f"not a Laurent polynomial: {self}")
        return self.num

    def reduce(self) -> Union[Scalar, "Frac"]:
        """Retorna Scalar quando possível, senão a própria fração"""
        return self.num if self.is_laurent else self

    def __add__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return NotImplemented
        return Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Frac":
        return Frac(-self.num, self.den)

    def __sub__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return NotImplemented
        return Frac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ScalarError("zero denominator")
        return Frac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_frac(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "Frac":
        if exponent < 0:
            return Frac(self.den ** (-exponent), self.num ** (-exponent))
        return Frac(self.num ** exponent, self.den ** exponent)

    def eval_at(self, value: Rational) -> Fraction:
        value = Fraction(value)
        den = self.den.eval_at(value)
        if den == 0:
            raise ScalarError(f"pole at q={value}")
        return self.num.eval_at(value) / den

    def eval_at_one(self) -> Fraction:
        den = self.den.eval_at_one()
        if den == 0:
            raise ScalarError("pole at q=1")
        return self.num.eval_at_one() / den

    def __eq__(self, other) -> bool:
        other = _as_frac(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __str__(self) -> str:
        if self.is_laurent:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"Frac('{self}')"


def _coerce(value):
    """Converte int/Fraction em Scalar; mantém Scalar e Frac"""
    if isinstance(value, (Scalar, Frac)):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return NotImplemented


def _as_scalar(value) -> Scalar:
    if isinstance(value, Frac):
        return value.to_scalar()
    coerced = _coerce(value)
    if coerced is NotImplemented:
        raise ScalarError(f"valor não suportado: {value!r}")
    return coerced


def _as_frac(value):
    if isinstance(value, Frac):
        return value
    coerced = _coerce(value)
    if coerced is NotImplemented:
        return NotImplemented
    return Frac(coerced)


def as_frac(value) -> Frac:
    """Converte qualquer coeficiente suportado para Frac"""
    result = _as_frac(value)
    if result is NotImplemented:
        raise ScalarError(f"valor não suportado: {value!r}")
    return result


def reduce_coefficient(value):
    """Normaliza um coeficiente: Frac com denominador 1 vira Scalar"""
    if isinstance(value, Frac):
        return value.reduce()
    return _as_scalar(value)


def is_zero(value) -> bool:
    """Teste de nulidade uniforme para int, Fraction, Scalar e Frac"""
    if isinstance(value, (Scalar, Frac)):
        return value.is_zero
    return value == 0


def scalar_gcd(values) -> Scalar:
    """
    Máximo divisor comum (mônico) de uma coleção de Scalars em Q[q, q^-1]

    Args:
        values: iterável de Scalars (zeros são ignorados)

    Returns:
        Scalar mônico com termo constante não nulo (ONE se todos forem zero)
    """
    result = None
    for value in values:
        if value.is_zero:
            continue
        result = value._poly if result is None else result.gcd(value._poly)
        if result.is_ground:
            return ONE
    if result is None:
        return ONE
    return Scalar._from_poly(result.monic(), 0)


def scalar_lcm(a: Scalar, b: Scalar) -> Scalar:
    """Mínimo múltiplo comum mônico de dois Scalars não nulos (sem potência de q)"""
    g = scalar_gcd([a, b])
    product = Scalar._from_poly(a._poly * b._poly, 0)
    return Scalar._from_poly(product.exquo(g)._poly.monic(), 0)


def primitive_part(values: Dict) -> Dict:
    """
    Divide um vetor esparso de Scalars pelo seu conteúdo

    O conteúdo é o mdc polinomial vezes a menor potência de q e o
    coeficiente líder da primeira entrada (na ordem de iteração).
    """
    if not values:
        return values
    g = scalar_gcd(values.values())
    shift = min(v._shift for v in values.values())
    divisor = g * Scalar.q_power(shift)
    reduced = {k: v.exquo(divisor) for k, v in values.items()}
    lead = reduced[next(iter(reduced))]._poly.LC
    if lead != QQ.one:
        factor = Scalar._from_poly(_RING.ground_new(QQ.one / lead), 0)
        reduced = {k: v * factor for k, v in reduced.items()}
    return reduced


_TERM_RE = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?q(?:\^(-?\d+))?)?")


def parse_scalar(text: str) -> Scalar:
    """
    Converte a renderização textual ("3*q^-2 - 1/2 + q^3") em Scalar

    Args:
        text: expressão na gramática de renderização

    Returns:
        Scalar correspondente

    Raises:
        ScalarError: expressão malformada
    """
    compact = "".join(text.split())
    if not compact:
        raise ScalarError("invalid scalar: empty expression")
    terms: Dict[int, Fraction] = {}
    pos = 0
    while pos < len(compact):
        match = _TERM_RE.match(compact, pos)
        sign, coefficient, power, exponent = match.groups()
        if match.end() == pos or (coefficient is None and power is None):
            raise ScalarError(f"invalid scalar: {text!r}")
        if pos > 0 and not sign:
            raise ScalarError(f"invalid scalar: {text!r}")
        if power is not None and power.startswith("*") and coefficient is None:
            raise ScalarError(f"invalid scalar: {text!r}")
        value = Fraction(coefficient) if coefficient is not None else Fraction(1)
        if sign == "-":
            value = -value
        e = 0 if power is None else int(exponent if exponent is not None else 1)
        terms[e] = terms.get(e, Fraction(0)) + value
        pos = match.end()
    return Scalar.from_terms(terms)


ZERO = Scalar(0)
ONE = Scalar(1)
HALF = Scalar(Fraction(1, 2))
Q = Scalar.q_power(1)
QINV = Scalar.q_power(-1)
EPS = Q - QINV
