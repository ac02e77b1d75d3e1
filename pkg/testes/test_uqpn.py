#!/usr/bin/env python3
"""
Script de teste para U_q(p_n): palavras, relações RTT, representação, PBW e limites
Este script testa os módulos algebra, relations, representation, pbw e limits em n = 1 e n = 2
"""

import os
import sys

# Adicionar o diretório raiz do projeto ao Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from PQ.algebra import AlgebraElement, Gen, generators, parse_word, verify_coproduct
from PQ.exceptions import LocalizationError, UsageError
from PQ.limits import (classical_cobracket_image, cobracket_limit, saturated_fiber,
                       verify_classical_limit, verify_cobracket_limit)
from PQ.linalg import independent_rows
from PQ.pbw import (PAIR_SUBCASES, RewriteSystem, is_reduced, pbw_payload, solve_subcase_c,
                    subcase_c_equation, subcase_labels, verify_pbw)
from PQ.relations import closed_form_relation, relations_payload, verify_relations
from PQ.representation import evaluate, evaluate_cleared, representation, verify_representation
from PQ.scalar import EPS, ONE, Q, QINV
from PQ.superspace import elementary


def test_parse_word():
    """Tokens t(i,j)/tinv(i,i), geradores nulos e erros de uso"""
    print("=== Teste do parser de palavras ===")
    element = parse_word("t(1,2)  tinv(2,2) t(-2,-2)", 2)
    assert element == AlgebraElement.monomial([Gen(1, 2), Gen(2, 2, True), Gen(2, 2)])
    assert parse_word("t(-1,1)", 1).is_zero
    assert parse_word("t(2,1)", 2).is_zero
    for bad in ["", "t(1,2)", "x(1,1)", "t(1,1)t(1,1)", "tinv(1,-1)"]:
        try:
            parse_word(bad, 1)
            assert False, f"{bad!r} deveria falhar"
        except UsageError:
            pass
    assert len(generators(2)) == 8
    print("✅ SUCESSO: parse_word")


def test_rtt_relations():
    """Relações extraídas de RTT = TTR conferem com a forma fechada"""
    print("=== Teste das relações RTT ===")
    report = verify_relations(1)
    assert report.passed, report.to_text()
    assert relations_payload(1)
    print("✅ SUCESSO: relações em n = 1")


def test_representation():
    """rho_1 explícita e anulamento das relações em V e V⊗V"""
    print("=== Teste da representação ===")
    rho = representation(1, 1)
    assert rho[Gen(1, 1)] == elementary(1, 1, 1).scale(Q) + elementary(1, -1, -1).scale(Q.inverse())
    assert rho[Gen(1, -1)] == elementary(1, -1, 1).scale(EPS)
    left = evaluate(parse_word("t(1,-1) t(1,1)", 1), 1, 1)
    right = evaluate(parse_word("t(1,1) t(1,-1)", 1), 1, 1)
    assert left == right.scale(Q * Q)
    assert verify_representation(1, 2).passed
    print("✅ SUCESSO: rho_l")


def test_coproduct():
    """Coassociatividade e counidade nos geradores"""
    print("=== Teste do coproduto ===")
    assert verify_coproduct(1).passed
    assert verify_coproduct(2).passed
    print("✅ SUCESSO: Delta")


def test_straightening():
    """Endireitamento produz monômios reduzidos com a mesma imagem"""
    print("=== Teste do endireitamento PBW ===")
    system = RewriteSystem(1)
    element = parse_word("t(1,-1) t(1,1)", 1)
    result = system.straighten(element)
    assert not result.is_zero
    assert all(is_reduced(word) for word in result.terms)
    assert evaluate_cleared(element - result, 1, 2).is_zero

    payload = pbw_payload(system, element)
    assert payload["reduced"] is False
    assert payload["subcases"] == ["e"]

    square = parse_word("t(1,-1) t(1,-1)", 1)
    assert system.straighten(square).is_zero
    print("✅ SUCESSO: straighten")


def test_pbw_report():
    print("=== Teste do relatório PBW ===")
    report = verify_pbw(1, max_legs=2)
    assert report.passed, report.to_text()
    print("✅ SUCESSO: verify_pbw")


def test_classical_limits():
    """Limite clássico das relações e do coproduto"""
    print("=== Teste dos limites em q = 1 ===")
    assert verify_classical_limit(1, 1).passed
    assert verify_cobracket_limit(1).passed
    assert cobracket_limit(Gen(1, 2), 2) == classical_cobracket_image(Gen(1, 2))
    print("✅ SUCESSO: limites clássicos")


def test_saturated_fiber():
    """Vetores dependentes sobre Q(q) não travam a saturação em q = 1"""
    print("=== Teste da saturação em q = 1 ===")
    assert independent_rows([{"a": Q + 1}, {"a": ONE}]) == [0]
    span, steps = saturated_fiber([{"a": Q + 1}, {"a": ONE}])
    assert span.rank == 1
    assert steps == 0

    # (1, 1) e (1, q) têm a mesma especialização; a diferença dividida por q-1 é (0, 1)
    first = {"a": Q - 1, "b": Q - 1}
    second = {"a": ONE, "b": Q}
    third = {"a": Q, "b": Q + Q - 1}
    span, steps = saturated_fiber([first, second, third])
    assert span.rank == 2
    assert steps == 1
    assert span.contains({"b": 1})
    try:
        saturated_fiber([first, second], max_steps=0)
        assert False, "deveria exceder o limite de passos"
    except LocalizationError as e:
        assert "saturation did not terminate" in str(e)
    print("✅ SUCESSO: saturated_fiber")


def test_classical_limit_n2():
    """Em n = 2 a fibra em q = 1 coincide com as relações de U(p_2)"""
    print("=== Teste do limite clássico em n = 2 ===")
    report = verify_classical_limit(2, 1)
    assert report.passed, report.to_text()
    fiber = next(d for d in report.details if d["item"] == "limit-relations")
    # 28 pares distintos de geradores + 4 quadrados ímpares
    assert fiber["value"] == 32
    fiber = next(d for d in verify_classical_limit(1, 1).details if d["item"] == "limit-relations")
    assert fiber["value"] == 2
    print("✅ SUCESSO: limite clássico em n = 2")


def test_pbw_n2():
    """Regras PBW em n = 2: todos os subcasos (a)-(g) e o oráculo rho"""
    print("=== Teste PBW em n = 2 ===")
    labels, unlabeled = subcase_labels(2)
    assert unlabeled == []
    assert set(labels) == set(PAIR_SUBCASES) | {"odd-square"}
    report = verify_pbw(2, max_legs=2)
    assert report.passed, report.to_text()
    print("✅ SUCESSO: verify_pbw(2)")


def test_subcase_c_solution():
    """t(1,2) t(2,-2) = q^-1 t(2,-2) t(1,2) - eps t(2,2) t(1,-2)"""
    print("=== Teste do subcaso (c) com |k| = |j| ===")
    for i, j in [(1, 2), (1, -2), (-1, 2), (-1, -2)]:
        assert subcase_c_equation(i, j, 2) == closed_form_relation(i, j, 2, -j, 2)

    expected = (AlgebraElement.monomial([Gen(2, -2), Gen(1, 2)], QINV)
                - AlgebraElement.monomial([Gen(2, 2), Gen(1, -2)], EPS))
    assert solve_subcase_c(1, 2, 2) == expected

    system = RewriteSystem(2)
    word = (Gen(1, 2), Gen(2, -2))
    assert AlgebraElement(system.rules[word]) == expected
    assert evaluate_cleared(AlgebraElement.monomial(word) - expected, 2, 2).is_zero
    print("✅ SUCESSO: solução explícita do subcaso (c)")


def main():
    tests = [
        test_parse_word,
        test_rtt_relations,
        test_representation,
        test_coproduct,
        test_straightening,
        test_pbw_report,
        test_classical_limits,
        test_saturated_fiber,
        test_classical_limit_n2,
        test_pbw_n2,
        test_subcase_c_solution,
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
