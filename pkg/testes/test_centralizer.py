#!/usr/bin/env python3
"""
Script de teste para os comutantes graduados e o duplo centralizador
Este script testa o módulo centralizer em n = 1, l = 2
"""

import os
import sys

# Adicionar o diretório raiz do projeto ao Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from PQ.centralizer import (CommutantProblem, centralizer_payload, solve_commutant,
                            uqpn_problem, verify_brauer_centralizer, verify_double_centralizer)
from PQ.exceptions import ProblemTooLargeError
from PQ.superspace import identity


def test_identity_commutant():
    """O comutante da identidade é End(V⊗V) inteiro: 8 pares + 8 ímpares"""
    print("=== Teste do comutante da identidade ===")
    problem = CommutantProblem(1, 2, [identity(1, 2)], "identity")
    basis = solve_commutant(problem)
    assert basis.mode == "symbolic"
    assert basis.certified
    assert basis.dimension == 16
    assert basis.per_parity == {0: 8, 1: 8}
    assert all(op.parity in (0, 1) for op in basis.operators)
    print("✅ SUCESSO: dim = 16")


def test_problem_too_large():
    """Acima de max_unknowns o problema é recusado"""
    print("=== Teste do limite de incógnitas ===")
    problem = CommutantProblem(1, 2, [identity(1, 2)], "identity")
    try:
        solve_commutant(problem, max_unknowns=10)
        assert False, "deveria recusar 16 incógnitas"
    except ProblemTooLargeError as e:
        assert "problem too large" in str(e)
    try:
        CommutantProblem(1, 2, [], "vazio")
        assert False, "problema sem geradores deveria falhar"
    except ValueError:
        pass
    print("✅ SUCESSO: ProblemTooLargeError")


def test_evaluation_bounds():
    """No modo de avaliação, limites inferior e superior sem certificação"""
    print("=== Teste do modo de avaliação ===")
    problem = CommutantProblem(1, 2, [identity(1, 2)], "identity")
    basis = solve_commutant(problem, known=[identity(1, 2)], mode="evaluation")
    assert basis.mode == "evaluation"
    assert not basis.certified
    assert basis.dimension is None
    assert basis.bounds == {0: (1, 8), 1: (0, 8)}
    print("✅ SUCESSO: limites (1, 8) e (0, 8)")


def test_uqpn_commutant():
    """Comutante de U_q(p_1) em V⊗V e o comando `centralizer`"""
    print("=== Teste do comutante de U_q(p_1) ===")
    basis = solve_commutant(uqpn_problem(1, 2))
    assert basis.dimension == 3
    payload = centralizer_payload(1, 2, "uqpn")
    assert payload["dimension"] == 3
    assert payload["n"] == 1 and payload["l"] == 2
    print("✅ SUCESSO: dim = 3")


def test_centralizer_reports():
    """Relatórios do centralizador e do duplo centralizador"""
    print("=== Teste dos relatórios de centralizador ===")
    report = verify_brauer_centralizer(1, 2)
    assert report.passed, report.to_text()
    assert report.params["mode"] == "symbolic"
    report = verify_double_centralizer(1, 2)
    assert report.passed, report.to_text()
    image = next(d for d in report.details if d["item"] == "uq-image-dimension")
    assert "sem limite de comprimento" in image["note"]
    equality = next(d for d in report.details if d["item"] == "uq-image-equals-schur")
    assert equality["note"].startswith("medido:")
    print("✅ SUCESSO: relatórios")


def main():
    tests = [
        test_identity_commutant,
        test_problem_too_large,
        test_evaluation_bounds,
        test_uqpn_commutant,
        test_centralizer_reports,
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
