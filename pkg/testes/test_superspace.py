#!/usr/bin/env python3
"""
Script de teste para a camada clássica: operadores graduados, p_n e o bialgebra
Este script testa os módulos superspace, periplectic e bialgebra em n pequeno
"""

import os
import sys

# Adicionar o diretório raiz do projeto ao Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from PQ.bialgebra import (verify_cobracket_properties, verify_cobracket_via_s, verify_cybe,
                          verify_duality)
from PQ.exceptions import ShapeError
from PQ.periplectic import basis_tags, canonical_tag, pn_basis, sf, verify_manin_triple
from PQ.scalar import ONE, Q
from PQ.superspace import (GradedOperator, elementary, embed_legs, identity, koszul_sign,
                           koszul_tensor, multi_indices, super_permutation)


def test_basis_and_identity():
    """Ordem da base e identidade em V^{⊗l}"""
    print("=== Teste de multi-índices ===")
    assert multi_indices(1, 2) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    assert identity(2, 2).nnz == 16
    assert identity(1, 3).parity == 0
    print("✅ SUCESSO: multi_indices e identidade")


def test_grading_is_enforced():
    """Entradas não homogêneas e índices inválidos são rejeitados"""
    print("=== Teste de gradação ===")
    try:
        GradedOperator(1, 1, {(1,): {(1,): ONE, (-1,): ONE}})
        assert False, "operador sem paridade deveria falhar"
    except ShapeError:
        pass
    try:
        elementary(1, 2, 1)
        assert False, "índice fora do intervalo deveria falhar"
    except ShapeError:
        pass
    assert elementary(2, -1, 2).parity == 1
    print("✅ SUCESSO: ShapeError nos casos inválidos")


def test_super_permutation():
    """P(e_a ⊗ e_b) = (-1)^{p(a)p(b)} e_b ⊗ e_a e P^2 = 1"""
    print("=== Teste da superpermutação ===")
    P = super_permutation(1)
    assert P.apply({(1, -1): ONE}) == {(-1, 1): ONE}
    assert P.apply({(-1, -1): ONE}) == {(-1, -1): -ONE}
    assert P.compose(P) == identity(1, 2)
    P2 = super_permutation(2)
    assert P2.compose(P2) == identity(2, 2)
    print("✅ SUCESSO: P")


def test_koszul_signs():
    """Sinal de Koszul entre entradas e unidades matriciais"""
    print("=== Teste dos sinais de Koszul ===")
    assert koszul_sign((1, -1), (-1, 1)) == -1
    assert koszul_sign((-1, 1), (1, -1)) == 1
    assert koszul_sign((1, 1), (1, 1)) == 1
    a = koszul_tensor(elementary(1, 1, -1), elementary(1, -1, 1))
    assert a.entry((1, -1), (-1, 1)) == -ONE
    assert a.units() == {((1, -1), (-1, 1)): ONE}
    assert a.parity == 0
    print("✅ SUCESSO: koszul_tensor produz a unidade E⊗E com coeficiente 1")


def test_embed_legs_rejects_odd():
    """embed_legs só aceita operadores pares de 2 pernas"""
    print("=== Teste de embed_legs ===")
    odd = koszul_tensor(elementary(1, -1, 1), identity(1, 1))
    try:
        embed_legs(odd, 1, 3)
        assert False, "operador ímpar deveria falhar"
    except ShapeError as e:
        assert "odd operator cannot be leg-embedded" in str(e)
    P3 = embed_legs(super_permutation(1), 2, 3)
    assert P3.apply({(1, 1, -1): ONE}) == {(1, -1, 1): ONE}
    print("✅ SUCESSO: embed_legs")


def test_json_round_trip():
    """JSON canônico preserva o operador"""
    print("=== Teste de serialização ===")
    op = koszul_tensor(elementary(2, 1, 2).scale(Q), elementary(2, -2, -1))
    assert GradedOperator.from_json(op.to_json()) == op
    print("✅ SUCESSO: to_json/from_json")


def test_periplectic_elements():
    """sf(i, j) = E_ij + iota(E_ij) e a base canônica de p_n"""
    print("=== Teste de p_n ===")
    assert sf(1, 1, -1).is_zero
    assert sf(1, -1, 1) == elementary(1, -1, 1).scale(2)
    assert sf(1, 1, 1) == elementary(1, 1, 1) - elementary(1, -1, -1)
    assert canonical_tag(1, -1) is None
    assert len(basis_tags(2)) == 8
    assert len(pn_basis(3)) == 18
    print("✅ SUCESSO: sf e base canônica")


def test_manin_and_bialgebra():
    """Tripla de Manin, CYBE e cobracket em n = 1 e n = 2"""
    print("=== Teste da estrutura de bialgebra ===")
    for n in (1, 2):
        assert verify_manin_triple(n).passed, f"manin n={n}"
        assert verify_cybe(n).passed, f"cybe n={n}"
        assert verify_cobracket_via_s(n).passed, f"cobracket n={n}"
    assert verify_cobracket_properties(1).passed
    assert verify_duality(1).passed
    print("✅ SUCESSO: verificações clássicas")


def main():
    tests = [
        test_basis_and_identity,
        test_grading_is_enforced,
        test_super_permutation,
        test_koszul_signs,
        test_embed_legs_rejects_odd,
        test_json_round_trip,
        test_periplectic_elements,
        test_manin_and_bialgebra,
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
