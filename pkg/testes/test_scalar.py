#!/usr/bin/env python3
"""
Script de teste para a aritmética exata: Scalar, Frac e eliminação esparsa
Este script testa os módulos scalar e linalg, sem acesso a disco
"""

import os
import sys
from fractions import Fraction

# Adicionar o diretório raiz do projeto ao Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from PQ.exceptions import ScalarError
from PQ.linalg import (DEFAULT_PRIME, RATIONALS, LinearSpan, SpecializedField,
                       fraction_free_kernel, kernel_basis, rank_of)
from PQ.scalar import EPS, ONE, Q, QINV, ZERO, Frac, Scalar, parse_scalar, primitive_part


def test_laurent_arithmetic():
    """Produto, renderização e inverso de monômios"""
    print("=== Teste de aritmética de Laurent ===")
    a = (Q - QINV) * (Q + QINV)
    assert a == Q ** 2 - QINV ** 2
    assert str(a) == "-q^-2 + q^2"
    assert Q.inverse() == QINV
    assert Q * QINV == ONE
    assert EPS.eval_at_one() == 0
    assert (Q + 1).eval_at(Fraction(1, 2)) == Fraction(3, 2)
    print("✅ SUCESSO: operações em Q[q, q^-1]")


def test_non_units_and_division():
    """Inverso só de monômios; divisão exata com erro 'not divisible'"""
    print("=== Teste de divisão exata ===")
    try:
        (Q + 1).inverse()
        assert False, "q + 1 não é unidade"
    except ScalarError:
        pass
    assert (Q ** 2 - 1).exquo(Q - 1) == Q + 1
    try:
        (Q + 1).exquo(Q - 1)
        assert False, "divisão não exata deveria falhar"
    except ScalarError as e:
        assert "not divisible" in str(e)
    assert ((Q - 1) ** 2 * (Q + 1)).valuation_at_one() == 2
    print("✅ SUCESSO: exquo e valuation_at_one")


def test_fraction_canonical_form():
    """Frac cancela fatores comuns e detecta polos em q = 1"""
    print("=== Teste de frações em Q(q) ===")
    f = Frac(Q ** 2 - 1, Q - 1)
    assert f.is_laurent
    assert f == Q + 1
    g = Frac(ONE, Q - 1)
    assert not g.is_laurent
    try:
        g.eval_at_one()
        assert False, "polo em q=1 deveria falhar"
    except ScalarError as e:
        assert "pole at q=1" in str(e)
    try:
        Frac(ONE, ZERO)
        assert False, "denominador zero deveria falhar"
    except ScalarError:
        pass
    assert g.eval_at(2) == 1
    print("✅ SUCESSO: forma canônica num/den")


def test_parse_scalar():
    """A renderização textual é lida de volta"""
    print("=== Teste do parser de escalares ===")
    value = Scalar.from_terms({-2: 3, 0: Fraction(-1, 2), 3: 1})
    assert str(value) == "3*q^-2 - 1/2 + q^3"
    assert parse_scalar(str(value)) == value
    assert parse_scalar("q") == Q
    for bad in ["", "q^", "q+"]:
        try:
            parse_scalar(bad)
            assert False, f"{bad!r} deveria falhar"
        except ScalarError:
            pass
    print("✅ SUCESSO: parse_scalar")


def test_primitive_part():
    """Conteúdo removido: mdc, menor potência de q e coeficiente líder"""
    print("=== Teste da parte primitiva ===")
    reduced = primitive_part({"a": Q * 2, "b": Q * Q * 4})
    assert reduced == {"a": ONE, "b": Q * 2}
    print("✅ SUCESSO: primitive_part")


def test_linear_span_coordinates():
    """Coordenadas rastreadas em termos dos vetores inseridos"""
    print("=== Teste de LinearSpan ===")
    span = LinearSpan(RATIONALS, track=True)
    assert span.add({"a": 1})
    assert span.add({"a": 1, "b": 1})
    assert not span.add({"a": 3, "b": 2})
    assert span.rank == 2
    assert span.coordinates({"b": 2}) == {1: 2, 0: -2}
    assert span.contains({"a": 5})
    assert rank_of([{"x": 1}, {"x": 2}], RATIONALS) == 1
    print("✅ SUCESSO: posto e coordenadas")


def test_kernels():
    """Núcleo sobre Q e núcleo livre de frações sobre Q(q)"""
    print("=== Teste de núcleos ===")
    basis = kernel_basis([{"x": 1, "y": 1}], ["x", "y"], RATIONALS)
    assert len(basis) == 1
    v = basis[0]
    assert v["x"] + v["y"] == 0

    basis = fraction_free_kernel([{"a": Q, "b": -ONE}], ["a", "b"])
    assert len(basis) == 1
    v = basis[0]
    assert (Q * v["a"] - v["b"]).is_zero
    assert all(isinstance(value, Scalar) for value in v.values())
    print("✅ SUCESSO: kernel_basis e fraction_free_kernel")


def test_specialized_field():
    """Especialização de Scalar em GF(p)"""
    print("=== Teste do corpo especializado ===")
    field = SpecializedField(2)
    assert field.convert(Q ** 2 + 1) == 5
    assert field.convert(QINV) * 2 % DEFAULT_PRIME == 1
    half = field.convert(Fraction(1, 2))
    assert half * 2 % DEFAULT_PRIME == 1
    print("✅ SUCESSO: SpecializedField")


def main():
    tests = [
        test_laurent_arithmetic,
        test_non_units_and_division,
        test_fraction_canonical_form,
        test_parse_scalar,
        test_primitive_part,
        test_linear_span_coordinates,
        test_kernels,
        test_specialized_field,
    ]
    failed = 0
    for test in tests:
        try:
            test()
        except AssertionError as e:
            failed += 1
            print(f"❌ FALHA em {test.__name__}: {e}")
        print()
    return failed == 0


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
