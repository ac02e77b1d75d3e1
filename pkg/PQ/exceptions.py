"""
Exceptions Module - Error hierarchy of the PQ package

Every error raised on purpose by the library derives from PQError, so the
command line front end can tell usage problems from identity failures and
from genuine bugs.

Usage:
    from PQ.exceptions import ScalarError

    try:
        value = frac.eval_at_one()
    except ScalarError as e:
        logger.error(f"Erro na especialização: {e}")
"""


class PQError(Exception):
    """Classe base para todos os erros do pacote PQ"""


class ScalarError(PQError, ValueError):
    """Erro de aritmética exata (divisão por zero, polo em q=1, divisão não exata)"""


class ShapeError(PQError, ValueError):
    """Operadores incompatíveis (n ou número de pernas diferentes, índices fora do intervalo)"""


class LocalizationError(PQError, ArithmeticError):
    """Coeficiente fora da localização em q=1"""


class StraighteningError(PQError, RuntimeError):
    """Falha no algoritmo de reescrita PBW"""


class ProblemTooLargeError(PQError, ValueError):
    """Sistema linear acima do orçamento configurado"""


class UsageError(PQError, ValueError):
    """Entrada malformada vinda da linha de comando"""
