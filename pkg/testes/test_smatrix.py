#!/usr/bin/env python3
"""
Script de teste para a matriz S, o cache de operadores e os relatórios
Este script testa os módulos smatrix, cache e reports (usa pastas temporárias)
"""

import json
import os
import sys
import tempfile
from pathlib import Path

# Adicionar o diretório raiz do projeto ao Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from PQ.cache import OperatorCache
from PQ.reports import ReportStore, VerificationReport
from PQ.scalar import Q, QINV
from PQ.smatrix import (build_S, invert_S, verify_antipode, verify_decomposition,
                        verify_proof_lemmas, verify_qybe)
from PQ.superspace import identity


def test_s_matrix_diagonal():
    """Entradas diagonais de S em n = 1"""
    print("=== Teste da diagonal de S ===")
    S = build_S(1)
    assert S.parity == 0
    assert S.entry((1, 1), (1, 1)) == Q
    assert S.entry((-1, -1), (-1, -1)) == QINV
    assert S.entry((1, -1), (1, -1)) == Q
    assert S.entry((-1, 1), (-1, 1)) == QINV
    assert S.eval_at_one() == identity(1, 2)
    print("✅ SUCESSO: S[(a,b),(a,b)] e S|_{q=1} = 1")


def test_s_matrix_checks():
    """Decomposição, QYBE (simbólica e amostrada), lemas e inversa"""
    print("=== Teste das verificações de S ===")
    assert verify_decomposition(1).passed
    assert verify_qybe(1).passed
    sampled = verify_qybe(1, "sampled", seed=7)
    assert sampled.passed
    assert sampled.params["mode"] == "sampled"
    assert verify_proof_lemmas(1).passed
    assert verify_antipode(1).passed
    assert build_S(1).compose(invert_S(1)) == identity(1, 2)
    print("✅ SUCESSO: verificações de S em n = 1")


def test_qybe_n2():
    """QYBE simbólica em n = 2"""
    print("=== Teste da QYBE em n = 2 ===")
    assert verify_qybe(2).passed
    print("✅ SUCESSO: QYBE n = 2")


def test_cache_round_trip():
    """Gravação e leitura do cache preservam o operador"""
    print("=== Teste do cache de operadores ===")
    with tempfile.TemporaryDirectory() as tmp:
        cache = OperatorCache(tmp)
        S = build_S(1)
        cache.store("S", 1, 2, S)
        assert cache.load("S", 1, 2) == S
        assert cache.hits == 1

        built = []
        cache.get_or_build("S", 1, 2, lambda: built.append(1) or S)
        assert not built, "entrada existente não deveria ser reconstruída"

        # outra versão não enxerga a entrada antiga
        assert OperatorCache(tmp, version="2").load("S", 1, 2) is None
    print("✅ SUCESSO: store/load/get_or_build")


def test_cache_corrupt_entry():
    """Entrada corrompida é descartada e retorna None"""
    print("=== Teste de cache corrompido ===")
    with tempfile.TemporaryDirectory() as tmp:
        cache = OperatorCache(tmp)
        cache.store("S", 1, 2, build_S(1))
        path = next(Path(tmp).glob("S_n1_l2_*.json"))
        path.write_text("{não é json", encoding="utf-8")
        assert cache.load("S", 1, 2) is None
        assert not path.exists()
        try:
            OperatorCache("")
            assert False, "pasta vazia deveria falhar"
        except ValueError:
            pass
    print("✅ SUCESSO: entrada inválida descartada")


def test_report_files_are_deterministic():
    """Dois salvamentos do mesmo relatório produzem bytes idênticos"""
    print("=== Teste de determinismo dos relatórios ===")
    report = VerificationReport("demo", "afirmação de teste", {"n": 1, "l": 2})
    report.record("item-a", True, "ok", 3)
    report.record("item-b", True)
    report.finish()
    assert report.passed
    assert report.filename() == "demo_l2_n1.json"

    with tempfile.TemporaryDirectory() as tmp:
        store = ReportStore("local", tmp)
        first = Path(store.save(report)).read_bytes()
        report.finish()
        second = Path(store.save(report)).read_bytes()
        assert first == second
        payload = json.loads(first)
        assert payload["elapsed_ms"] is None
        assert payload["details"][0]["value"] == 3
    print("✅ SUCESSO: JSON canônico sem tempo")


def test_failed_report():
    """Um item falho reprova o relatório; relatório vazio não passa"""
    print("=== Teste de relatório reprovado ===")
    report = VerificationReport("demo", "afirmação")
    assert not report.passed
    report.record("bom", True)
    report.record("ruim", False, "resíduo não nulo")
    assert not report.passed
    assert "❌ ruim - resíduo não nulo" in report.to_text()
    try:
        ReportStore("ftp")
        assert False, "armazenamento inválido deveria falhar"
    except ValueError:
        pass
    print("✅ SUCESSO: relatório reprovado")


def main():
    tests = [
        test_s_matrix_diagonal,
        test_s_matrix_checks,
        test_qybe_n2,
        test_cache_round_trip,
        test_cache_corrupt_entry,
        test_report_files_are_deterministic,
        test_failed_report,
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
