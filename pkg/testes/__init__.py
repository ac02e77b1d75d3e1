"""
Testes do verificador PQ

Este módulo contém os scripts de teste das identidades exatas, da álgebra de
q-Brauer, dos centralizadores e da linha de comando.
"""

__version__ = "1.0.0"
