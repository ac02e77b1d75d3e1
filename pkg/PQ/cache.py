"""
Cache Module - On-disk cache of expensive exact operators

This module contains the OperatorCache class, which stores GradedOperators
(S-matrices, representation matrices, Brauer tokens) as canonical JSON
files keyed by (kind, n, legs, version). Entries that cannot be read, fail
to parse or carry another version are discarded with a warning and rebuilt.

Usage:
    from PQ.cache import OperatorCache

    cache = OperatorCache(".pq_cache")
    S = cache.get_or_build("S", 2, 2, lambda: build_S(2))
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable, Optional

from .superspace import GradedOperator

# Setup logging
logger = logging.getLogger(__name__)

# Incrementar quando a convenção de qualquer operador armazenado mudar
CACHE_VERSION = "1"


class OperatorCache:
    """Cache de operadores em arquivos JSON canônicos"""

    def __init__(self, cache_dir: str = ".pq_cache", version: str = CACHE_VERSION):
        """
        Inicializa o cache

        Args:
            cache_dir: Pasta dos arquivos de cache
            version: Versão gravada em cada entrada
        """
        if not cache_dir:
            raise ValueError("cache_dir não pode ser vazio")
        self.root = Path(cache_dir)
        self.root.mkdir(parents=True, exist_ok=True)
        self.version = version
        self.hits = 0
        self.misses = 0

    def _path(self, kind: str, n: int, legs: int) -> Path:
        safe_kind = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in kind)
        return self.root / f"{safe_kind}_n{n}_l{legs}_v{self.version}.json"

    def load(self, kind: str, n: int, legs: int) -> Optional[GradedOperator]:
        """
        Lê uma entrada do cache

        Returns:
            O operador armazenado, ou None se a entrada não existir ou for inválida
        """
        path = self._path(kind, n, legs)
        if not path.exists():
            self.misses += 1
            return None
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
            if payload.get("version") != self.version or payload.get("kind") != kind:
                raise ValueError(f"versão/tipo inesperado: {payload.get('version')}/{payload.get('kind')}")
            op = GradedOperator.from_dict(payload["operator"])
            if op.n != n or op.legs != legs:
                raise ValueError("dimensões não conferem com a chave")
        except Exception as e:
            logger.warning(f"Entrada de cache corrompida descartada ({path.name}): {e}")
            try:
                path.unlink()
            except OSError:
                pass
            self.misses += 1
            return None
        self.hits += 1
        logger.debug(f"Cache hit: {path.name}")
        return op

    def store(self, kind: str, n: int, legs: int, op: GradedOperator) -> None:
        """Grava uma entrada (escrita atômica)"""
        path = self._path(kind, n, legs)
        payload = json.dumps({"kind": kind, "version": self.version, "operator": op.to_dict()},
                             sort_keys=True, ensure_ascii=False)
        fd, tmp_path = tempfile.mkstemp(dir=str(self.root), prefix=".tmp_", suffix=".part")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(payload)
            os.replace(tmp_path, path)
        except OSError as e:
            logger.warning(f"Falha ao gravar cache {path.name}: {e}")
            if os.path.exists(tmp_path):
                os.remove(tmp_path)

    def get_or_build(self, kind: str, n: int, legs: int,
                     builder: Callable[[], GradedOperator]) -> GradedOperator:
        """Retorna a entrada do cache ou constrói, grava e retorna o operador"""
        op = self.load(kind, n, legs)
        if op is None:
            op = builder()
            self.store(kind, n, legs, op)
        return op
