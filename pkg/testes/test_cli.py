#!/usr/bin/env python3
"""
Script de teste para a linha de comando e a configuração da suíte
Este script testa main.py e o módulo suite (códigos de saída 0, 1 e 2)
"""

import json
import os
import sys
import tempfile
from pathlib import Path

# Adicionar o diretório raiz do projeto ao Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from main import main
from PQ.exceptions import UsageError
from PQ.reports import ReportStore
from PQ.suite import TARGETS, RunConfig, resolve_targets, run_suite


def test_run_config_bounds():
    """Limites fora do intervalo são erros de uso"""
    print("=== Teste da RunConfig ===")
    for kwargs in [{"n": 0}, {"legs": 0}, {"n": 4}, {"mode": "fast"}, {"output": "xml"}]:
        try:
            RunConfig(**kwargs)
            assert False, f"{kwargs} deveria falhar"
        except UsageError:
            pass
    config = RunConfig(n=1, legs=3, cache_dir="")
    assert config.cache_dir is None
    assert config.to_dict()["legs"] == 3
    print("✅ SUCESSO: RunConfig")


def test_resolve_targets():
    """'all' expande para todos os alvos, sem repetições"""
    print("=== Teste da seleção de alvos ===")
    assert resolve_targets(["all"]) == list(TARGETS)
    assert resolve_targets(["qybe", "all"])[0] == "qybe"
    assert len(resolve_targets(["qybe", "all"])) == len(TARGETS)
    try:
        resolve_targets(["inexistente"])
        assert False, "alvo desconhecido deveria falhar"
    except UsageError:
        pass
    print("✅ SUCESSO: resolve_targets")


def test_run_suite_single_target():
    """Um alvo acima do seu teto de n é erro de uso; dentro dele passa"""
    print("=== Teste de run_suite ===")
    with tempfile.TemporaryDirectory() as tmp:
        store = ReportStore("local", tmp)
        config = RunConfig(n=1, legs=2, cache_dir="", report_dir=tmp)
        code, reports = run_suite(config, ["ps-formula", "module-homs"], store)
        assert code == 0
        assert [r.check for r in reports] == ["ps-formula", "module-homs"]
        assert (Path(tmp) / "summary.parquet").exists()

        try:
            run_suite(RunConfig(n=3, cache_dir="", report_dir=tmp), ["centralizer"], store)
            assert False, "centralizer aceita n <= 2"
        except UsageError:
            pass
    print("✅ SUCESSO: run_suite")


def test_verify_command():
    """`verify` grava um relatório JSON por verificação e sai com 0"""
    print("=== Teste do comando verify ===")
    with tempfile.TemporaryDirectory() as tmp:
        code = main(["verify", "ps-formula", "--n", "1", "--report-dir", tmp, "--cache-dir", ""])
        assert code == 0
        path = Path(tmp) / "ps-formula_n1.json"
        assert path.exists()
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert payload["pass"] is True
        assert payload["elapsed_ms"] is None
    print("✅ SUCESSO: verify ps-formula")


def test_exploratory_commands():
    """relations, pbw e brauer eval saem com 0"""
    print("=== Teste dos comandos exploratórios ===")
    assert main(["relations", "--n", "1", "--format", "json"]) == 0
    assert main(["pbw", "--n", "1", "--word", "t(1,-1) t(1,1)"]) == 0
    assert main(["brauer", "eval", "--n", "1", "--l", "3", "--word", "t1 c2 t1"]) == 0
    print("✅ SUCESSO: comandos exploratórios")


def test_usage_errors():
    """Entradas inválidas saem com código 2"""
    print("=== Teste dos erros de uso ===")
    assert main(["brauer", "eval", "--n", "1", "--l", "2", "--word", "x1"]) == 2
    assert main(["pbw", "--n", "1", "--word", "t(1,5)"]) == 2
    with tempfile.TemporaryDirectory() as tmp:
        assert main(["verify", "inexistente", "--report-dir", tmp, "--cache-dir", ""]) == 2
        assert main(["verify", "qybe", "--n", "9", "--report-dir", tmp, "--cache-dir", ""]) == 2
    for argv in [["verify"], ["relations", "--format", "xml"], ["desconhecido"]]:
        try:
            main(argv)
            assert False, f"{argv} deveria encerrar"
        except SystemExit as e:
            assert e.code == 2
    print("✅ SUCESSO: código de saída 2")


def main_tests():
    tests = [
        test_run_config_bounds,
        test_resolve_targets,
        test_run_suite_single_target,
        test_verify_command,
        test_exploratory_commands,
        test_usage_errors,
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
    sys.exit(0 if main_tests() else 1)
