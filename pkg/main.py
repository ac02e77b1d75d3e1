#!/usr/bin/env python3
"""
PQ - Main Execution Script

This script is the command-line front end of the PQ package: it runs the
verification suite and the exploratory commands (relations, PBW
straightening, q-Brauer words, centralizers), writes one JSON report per
check and maps the outcome onto the exit code (0 pass, 1 failure, 2 usage).

Usage:
    # Run the whole suite within the configured bounds
    python main.py verify all --n 2 --l 2

    # One check, sampled at seeded rational points
    python main.py verify qybe --n 3 --mode sampled --seed 7

    # Extracted RTT relations
    python main.py relations --n 2 --format text

    # Straighten a word into reduced monomials
    python main.py pbw --n 1 --word "t(1,-1) t(1,1)"

    # Evaluate a q-Brauer word on tensor space
    python main.py brauer eval --n 1 --l 3 --word "t1 c2 t1"

    # Commutant dimensions (and the double-centralizer measurements)
    python main.py centralizer --n 2 --l 2 --side uqpn --double

    # With custom configurations
    export PQ_CACHE_DIR=/tmp/pq_cache
    export STORAGE_TYPE=s3
    export S3_BUCKET=my-reports
    python main.py verify all
"""

import argparse
import json
import logging
import os
import sys

from PQ.algebra import parse_word
from PQ.centralizer import centralizer_payload, verify_double_centralizer
from PQ.exceptions import PQError, StraighteningError, UsageError
from PQ.pbw import RewriteSystem, pbw_payload
from PQ.qbrauer import brauer_eval_payload
from PQ.relations import relations_payload, relations_text
from PQ.suite import RunConfig, prepare, run_suite, target_names

# Configurações
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
PQ_CACHE_DIR = os.getenv('PQ_CACHE_DIR', '.pq_cache')  # vazio desliga o cache
PQ_REPORT_DIR = os.getenv('PQ_REPORT_DIR', 'reports')
STORAGE_TYPE = os.getenv('STORAGE_TYPE', 'local')  # 's3' ou 'local'
S3_BUCKET = os.getenv('S3_BUCKET', '')
AWS_REGION = os.getenv('AWS_REGION', 'us-east-1')

# Limites das verificações
PQ_MAX_N = int(os.getenv('PQ_MAX_N', '3'))
PQ_MAX_L = int(os.getenv('PQ_MAX_L', '3'))
PQ_SYMBOLIC_BUDGET = int(os.getenv('PQ_SYMBOLIC_BUDGET', '1024'))
PQ_MAX_UNKNOWNS = int(os.getenv('PQ_MAX_UNKNOWNS', '20000'))
PQ_STEP_CAP = int(os.getenv('PQ_STEP_CAP', '1000000'))
PQ_SEED = int(os.getenv('PQ_SEED', '2024'))
PQ_REPORT_TIMING = os.getenv('PQ_REPORT_TIMING', 'false').lower() == 'true'

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2

# Setup logging
logging.basicConfig(
    level=getattr(logging, LOG_LEVEL.upper()),
    format='%(asctime)s - %(levelname)s - %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S'
)
logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Parser da linha de comando (erros de uso saem com código 2)"""
    parser = argparse.ArgumentParser(prog="pq", description="Verificador do supergrupo quântico periplético")
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub, legs: bool = True):
        sub.add_argument("--n", type=int, default=2, help="dimensão do bloco (V = C(n|n))")
        if legs:
            sub.add_argument("--l", dest="legs", type=int, default=2, help="número de fatores tensoriais")
        sub.add_argument("--format", dest="output", choices=["json", "text"], default="text")

    verify = commands.add_parser("verify", help="executa verificações")
    verify.add_argument("targets", nargs="+", metavar="TARGET", help=", ".join(target_names()))
    common(verify)
    verify.add_argument("--mode", choices=["symbolic", "sampled"], default="symbolic")
    verify.add_argument("--seed", type=int, default=PQ_SEED)
    verify.add_argument("--cache-dir", default=PQ_CACHE_DIR)
    verify.add_argument("--report-dir", default=PQ_REPORT_DIR)

    relations = commands.add_parser("relations", help="relações RTT extraídas")
    common(relations, legs=False)

    pbw = commands.add_parser("pbw", help="endireita uma palavra em monômios reduzidos")
    common(pbw, legs=False)
    pbw.add_argument("--word", required=True)

    brauer = commands.add_parser("brauer", help="álgebra de q-Brauer")
    brauer_commands = brauer.add_subparsers(dest="brauer_command", required=True)
    evaluate = brauer_commands.add_parser("eval", help="avalia uma palavra em V^{⊗l}")
    common(evaluate)
    evaluate.add_argument("--word", required=True)

    centralizer = commands.add_parser("centralizer", help="dimensões de comutantes")
    common(centralizer)
    centralizer.add_argument("--side", choices=["uqpn", "brauer"], default="uqpn")
    centralizer.add_argument("--double", action="store_true", help="inclui o duplo centralizador")
    centralizer.add_argument("--seed", type=int, default=PQ_SEED)
    return parser


def make_config(args) -> RunConfig:
    """Mescla variáveis de ambiente e argumentos em uma RunConfig"""
    return RunConfig(
        n=args.n,
        legs=getattr(args, "legs", 2),
        mode=getattr(args, "mode", "symbolic"),
        seed=getattr(args, "seed", PQ_SEED),
        output=args.output,
        cache_dir=getattr(args, "cache_dir", PQ_CACHE_DIR),
        report_dir=getattr(args, "report_dir", PQ_REPORT_DIR),
        storage_type=STORAGE_TYPE,
        s3_bucket=S3_BUCKET or None,
        aws_region=AWS_REGION,
        max_n=PQ_MAX_N,
        max_l=PQ_MAX_L,
        symbolic_budget=PQ_SYMBOLIC_BUDGET,
        max_unknowns=PQ_MAX_UNKNOWNS,
        step_cap=PQ_STEP_CAP,
        include_timing=PQ_REPORT_TIMING,
    )


def emit(payload, output: str, text: str = None) -> None:
    """Escreve o resultado na saída padrão (logs vão para stderr)"""
    if output == "json" or text is None:
        print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print(text)


def run_verify(config: RunConfig, targets) -> int:
    """Executa a suíte de verificações"""
    code, reports = run_suite(config, targets)
    if config.output == "json":
        emit([r.to_dict(config.include_timing) for r in reports], "json")
    else:
        for report in reports:
            print(report.to_text())
    return code


def run_relations(config: RunConfig) -> int:
    logger.info(f"=== Iniciando extração das relações (n={config.n}) ===")
    emit(relations_payload(config.n), config.output, relations_text(config.n))
    return EXIT_OK


def run_pbw(config: RunConfig, text: str) -> int:
    """Endireita uma palavra; falha do endireitamento sai com código 1"""
    element = parse_word(text, config.n)
    system = RewriteSystem(config.n, config.step_cap)
    try:
        payload = pbw_payload(system, element)
    except StraighteningError as e:
        logger.error(f"Endireitamento falhou: {e}")
        return EXIT_FAILURE
    terms = [f"({c})*{w}" for w, c in sorted(payload['result'].items())]
    emit(payload, config.output, f"{payload['input']} -> {' + '.join(terms) or '0'}")
    return EXIT_OK


def run_brauer_eval(config: RunConfig, text: str) -> int:
    payload = brauer_eval_payload(config.n, config.legs, text)
    emit(payload, config.output)
    return EXIT_OK


def run_centralizer(config: RunConfig, side: str, double: bool) -> int:
    """Dimensões do comutante; com --double também o relatório do duplo centralizador"""
    store = prepare(config)
    payload = centralizer_payload(config.n, config.legs, side, config.symbolic_budget,
                                  config.max_unknowns, config.seed)
    code = EXIT_OK
    if double:
        report = verify_double_centralizer(config.n, config.legs, config.symbolic_budget,
                                           config.max_unknowns, config.seed)
        store.save(report)
        payload["double"] = report.to_dict(config.include_timing)
        code = EXIT_OK if report.passed else EXIT_FAILURE
    emit(payload, "json")
    return code


def main(argv=None) -> int:
    """Função principal do script"""
    args = build_parser().parse_args(argv)
    try:
        config = make_config(args)
    except ValueError as e:
        logger.error(f"Configuração inválida: {e}")
        return EXIT_USAGE

    try:
        if STORAGE_TYPE == 's3':
            logger.info(f"Bucket S3 configurado: {S3_BUCKET} ({AWS_REGION})")
        if args.command == "verify":
            return run_verify(config, args.targets)
        if args.command == "relations":
            return run_relations(config)
        if args.command == "pbw":
            return run_pbw(config, args.word)
        if args.command == "brauer":
            return run_brauer_eval(config, args.word)
        if args.command == "centralizer":
            return run_centralizer(config, args.side, args.double)
        return EXIT_USAGE

    except UsageError as e:
        logger.error(f"Erro de uso: {e}")
        return EXIT_USAGE
    except PQError as e:
        logger.error(f"Erro na verificação: {e}")
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Erro inesperado na função principal: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
