"""
Suite Module - Run configuration and the registry of verification targets

This module contains the RunConfig class (bounds, mode, seed, output, cache
and storage settings merged from the environment and the command line), the
registry that maps each `verify` target to its verify_* functions, and
run_suite, which executes the selected targets and stores the reports.

Usage:
    from PQ.suite import RunConfig, run_suite

    config = RunConfig(n=2, legs=2)
    exit_code, reports = run_suite(config, ["manin", "qybe"])
"""

import logging
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from .bialgebra import verify_cobracket_properties, verify_cobracket_via_s, verify_cybe, verify_duality
from .algebra import verify_coproduct
from .cache import OperatorCache
from .centralizer import verify_brauer_centralizer, verify_double_centralizer
from .exceptions import PQError, UsageError
from .limits import verify_classical_limit, verify_cobracket_limit
from .pbw import verify_pbw
from .periplectic import verify_manin_triple
from .qbrauer import verify_brauer, verify_degeneration, verify_module_homs, verify_ps_formula
from .relations import verify_relations
from .reports import ReportStore, VerificationReport
from .representation import verify_representation
from .smatrix import (attach_cache, verify_antipode, verify_decomposition, verify_proof_lemmas,
                      verify_qybe)

# Setup logging
logger = logging.getLogger(__name__)

MODES = ("symbolic", "sampled")
OUTPUTS = ("json", "text")


class RunConfig:
    """Configuração de uma execução da suíte"""

    def __init__(self, n: int = 2, legs: int = 2, mode: str = "symbolic", seed: int = 2024,
                 output: str = "text", cache_dir: Optional[str] = ".pq_cache",
                 report_dir: str = "reports", storage_type: str = "local",
                 s3_bucket: Optional[str] = None, aws_region: str = "us-east-1",
                 max_n: int = 3, max_l: int = 3, symbolic_budget: int = 1024,
                 max_unknowns: int = 20000, step_cap: int = 1000000,
                 include_timing: bool = False):
        """
        Args:
            n: dimensão do bloco (V = C(n|n))
            legs: número de fatores tensoriais
            mode: "symbolic" ou "sampled"
            seed: semente do modo amostrado e das verificações aleatórias
            output: formato da saída padrão ("json" ou "text")
            cache_dir: pasta do cache de operadores (vazio/None desliga)
            report_dir: pasta (ou prefixo S3) dos relatórios
            storage_type: "local" ou "s3"
            max_n, max_l: limites superiores aceitos para n e legs
            symbolic_budget, max_unknowns: orçamentos do centralizador
            step_cap: limite de reescritas do endireitamento PBW
            include_timing: grava elapsed_ms nos arquivos de relatório

        Raises:
            UsageError: limites inválidos, modo ou formato desconhecido
        """
        if n < 1 or legs < 1:
            raise UsageError(f"limites devem ser >= 1 (n={n}, l={legs})")
        if n > max_n or legs > max_l:
            raise UsageError(f"limites acima do configurado: n <= {max_n}, l <= {max_l}")
        if mode not in MODES:
            raise UsageError(f"modo inválido: {mode} (válidos: {', '.join(MODES)})")
        if output not in OUTPUTS:
            raise UsageError(f"formato inválido: {output} (válidos: {', '.join(OUTPUTS)})")
        self.n = n
        self.legs = legs
        self.mode = mode
        self.seed = seed
        self.output = output
        self.cache_dir = cache_dir or None
        self.report_dir = report_dir
        self.storage_type = storage_type
        self.s3_bucket = s3_bucket
        self.aws_region = aws_region
        self.max_n = max_n
        self.max_l = max_l
        self.symbolic_budget = symbolic_budget
        self.max_unknowns = max_unknowns
        self.step_cap = step_cap
        self.include_timing = include_timing

    def to_dict(self) -> Dict:
        return dict(vars(self))


Runner = Callable[[RunConfig, int, int], List[VerificationReport]]


class Target(NamedTuple):
    """Alvo de `verify`: função e limite de n usado por `verify all`"""

    name: str
    runner: Runner
    max_n: int
    min_legs: int = 1


def _relations(config: RunConfig, n: int, legs: int) -> List[VerificationReport]:
    # n = 3 simbólico fica fora do orçamento de tempo; usa o modo amostrado
    mode = "sampled" if n >= 3 else config.mode
    return [verify_relations(n, mode, config.seed)]


def _centralizer(config: RunConfig, n: int, legs: int) -> List[VerificationReport]:
    return [verify_brauer_centralizer(n, legs, config.symbolic_budget, config.max_unknowns, config.seed)]


TARGETS: Dict[str, Target] = {t.name: t for t in [
    Target("manin", lambda c, n, l: [verify_manin_triple(n, c.seed)], 3),
    Target("cybe", lambda c, n, l: [verify_cybe(n)], 3),
    Target("cobracket", lambda c, n, l: [verify_cobracket_via_s(n), verify_cobracket_properties(n)], 3),
    Target("duality", lambda c, n, l: [verify_duality(n)], 3),
    Target("qybe", lambda c, n, l: [verify_qybe(n, c.mode, c.seed)], 3),
    Target("decomposition", lambda c, n, l: [verify_decomposition(n)], 3),
    Target("lemmas", lambda c, n, l: [verify_proof_lemmas(n)], 3),
    Target("antipode", lambda c, n, l: [verify_antipode(n)], 3),
    Target("relations", _relations, 3),
    Target("coproduct", lambda c, n, l: [verify_coproduct(n)], 3),
    Target("representation", lambda c, n, l: [verify_representation(n, l)], 2),
    Target("classical-limit", lambda c, n, l: [verify_classical_limit(n, l)], 2),
    Target("cobracket-limit", lambda c, n, l: [verify_cobracket_limit(n)], 2),
    Target("pbw", lambda c, n, l: [verify_pbw(n, c.seed, l, c.step_cap)], 2),
    Target("brauer", lambda c, n, l: [verify_brauer(n, l)], 3, 2),
    Target("module-homs", lambda c, n, l: [verify_module_homs(n)], 2),
    Target("ps-formula", lambda c, n, l: [verify_ps_formula(n)], 3),
    Target("degeneration", lambda c, n, l: [verify_degeneration(n, l)], 3, 2),
    Target("centralizer", _centralizer, 2, 2),
]}


def target_names() -> List[str]:
    return list(TARGETS) + ["all"]


def resolve_targets(names: Sequence[str]) -> List[str]:
    """
    Expande "all" e valida os nomes

    Raises:
        UsageError: alvo desconhecido
    """
    resolved: List[str] = []
    for name in names:
        if name == "all":
            resolved.extend(t for t in TARGETS if t not in resolved)
        elif name in TARGETS:
            if name not in resolved:
                resolved.append(name)
        else:
            raise UsageError(f"alvo inválido: {name} (válidos: {', '.join(target_names())})")
    return resolved


def prepare(config: RunConfig) -> ReportStore:
    """Liga o cache de operadores e cria o armazenamento de relatórios"""
    attach_cache(OperatorCache(config.cache_dir) if config.cache_dir else None)
    return ReportStore(config.storage_type, config.report_dir, config.s3_bucket,
                       config.aws_region, config.include_timing)


def run_suite(config: RunConfig, names: Sequence[str],
              store: Optional[ReportStore] = None) -> Tuple[int, List[VerificationReport]]:
    """
    Executa os alvos selecionados e grava um relatório JSON por verificação

    Com um único alvo, n e l são os da configuração; em `verify all` cada
    alvo roda com n limitado pelo seu teto e l elevado ao mínimo exigido.

    Returns:
        (código de saída, relatórios): 0 se tudo passou, 1 caso contrário

    Raises:
        UsageError: alvo desconhecido ou n acima do teto de um alvo pedido isoladamente
    """
    selected = resolve_targets(names)
    sweep = len(selected) > 1
    store = store or prepare(config)
    logger.info(f"=== Iniciando suíte: {', '.join(selected)} (n={config.n}, l={config.legs}) ===")

    reports: List[VerificationReport] = []
    errors = 0
    for name in selected:
        target = TARGETS[name]
        n, legs = config.n, max(config.legs, target.min_legs)
        if n > target.max_n:
            if not sweep:
                raise UsageError(f"{name} aceita n <= {target.max_n}")
            n = target.max_n
        if legs > config.max_l:
            logger.warning(f"{name} exige l >= {target.min_legs}; ignorado com l <= {config.max_l}")
            continue
        try:
            produced = target.runner(config, n, legs)
        except PQError as e:
            logger.error(f"Erro em {name}: {e}")
            errors += 1
            continue
        for report in produced:
            reports.append(report)
            store.save(report)

    if reports:
        store.save_summary(reports)
    passed = sum(1 for r in reports if r.passed)
    logger.info(f"=== Suíte concluída: {passed}/{len(reports)} verificações passaram ===")
    return (0 if passed == len(reports) and errors == 0 else 1), reports
