#!/usr/bin/env python3
"""
Script de teste para a álgebra de q-Brauer periplética
Este script testa theta, epsilon, c, P·S, as relações e a imagem em V^{⊗l}
"""

import os
import sys

# Adicionar o diretório raiz do projeto ao Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from PQ.exceptions import UsageError
from PQ.qbrauer import (brauer_eval_payload, brauer_rep, build_c, epsilon_map, epsilon_theta,
                        evaluate_word, image_span, parse_brauer_word, theta_map, verify_brauer,
                        verify_degeneration, verify_module_homs, verify_ps_formula)
from PQ.scalar import ONE, ZERO
from PQ.superspace import identity


def test_theta_and_epsilon():
    """theta(e_a⊗e_-a) = (-1)^{p(a)} e theta∘epsilon = 0"""
    print("=== Teste de theta e epsilon ===")
    theta = theta_map(1)
    assert theta == {(-1, 1): -ONE, (1, -1): ONE}
    eps = epsilon_map(2)
    total = ZERO
    for key, value in theta_map(2).items():
        total = total + value * eps.get(key, ZERO)
    assert total.is_zero
    assert verify_module_homs(1).passed
    print("✅ SUCESSO: theta e epsilon")


def test_contraction():
    """c = epsilon∘theta, c^2 = 0 e c(e_1⊗e_-1)"""
    print("=== Teste da contração c ===")
    c = build_c(1)
    assert c == epsilon_theta(1)
    assert build_c(2) == epsilon_theta(2)
    assert c.compose(c).is_zero
    assert c.apply({(1, -1): ONE}) == {(-1, 1): ONE, (1, -1): ONE}
    print("✅ SUCESSO: c")


def test_ps_and_relations():
    """Expansão de P·S, relações da álgebra e degeneração em q = 1"""
    print("=== Teste das relações de B_q ===")
    assert verify_ps_formula(1).passed
    report = verify_brauer(1, 2)
    assert report.passed, report.to_text()
    assert verify_brauer(1, 3).passed
    assert verify_degeneration(1, 2).passed
    print("✅ SUCESSO: relações em l = 2 e l = 3")


def test_word_evaluation():
    """Palavras: vazia é a identidade, c1 c1 anula, formato textual estável"""
    print("=== Teste de palavras de B_q ===")
    rep = brauer_rep(1, 2)
    assert evaluate_word(parse_brauer_word("", 2), rep) == identity(1, 2)
    assert evaluate_word(parse_brauer_word("c1 c1", 2), rep).is_zero
    assert str(parse_brauer_word("t1  c2 t1", 3)) == "t1 c2 t1"
    payload = brauer_eval_payload(1, 3, "t1 c2 t1")
    assert payload["word"] == "t1 c2 t1"
    assert payload["legs"] == 3
    print("✅ SUCESSO: avaliação de palavras")


def test_word_errors():
    """Tokens inválidos e l < 2 são erros de uso"""
    print("=== Teste de erros de uso ===")
    for bad in ["t0", "t2", "x1", "t1c1", "c"]:
        try:
            parse_brauer_word(bad, 2)
            assert False, f"{bad!r} deveria falhar"
        except UsageError:
            pass
    try:
        brauer_rep(1, 1)
        assert False, "l = 1 deveria falhar"
    except UsageError:
        pass
    print("✅ SUCESSO: UsageError")


def test_image_span():
    """Imagem de B_{q,2} em End(V⊗V) para n = 1 tem dimensão 3"""
    print("=== Teste da imagem de B_q ===")
    basis = image_span(brauer_rep(1, 2))
    assert len(basis) == 3
    assert basis[0][0] == ()
    print("✅ SUCESSO: dim = 3")


def main():
    tests = [
        test_theta_and_epsilon,
        test_contraction,
        test_ps_and_relations,
        test_word_evaluation,
        test_word_errors,
        test_image_span,
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
