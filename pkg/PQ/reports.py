"""
Reports Module - Verification reports and their storage (local or S3)

This module contains the VerificationReport class, the machine-readable
record produced by every verify_* operation, and the ReportStore class that
persists reports as canonical JSON files (locally or on S3) plus a
summary.parquet table.

Usage:
    from PQ.reports import VerificationReport, ReportStore

    report = VerificationReport("qybe", "QYBE S12S13S23 = S23S13S12", {"n": 2})
    report.record("residual", True, "operador nulo")
    report.finish()

    store = ReportStore(storage_type="local", report_dir="reports")
    store.save(report)
    store.save_summary([report])
"""

import json
import logging
import os
import tempfile
import time
from pathlib import Path
from typing import Dict, Iterable, List, Optional

import boto3
import pandas as pd
from botocore.exceptions import ClientError, NoCredentialsError

# Setup logging
logger = logging.getLogger(__name__)


class VerificationReport:
    """Registro de uma verificação: identidade, parâmetros, itens e tempo"""

    def __init__(self, check: str, anchor: str, params: Optional[Dict] = None):
        """
        Args:
            check: nome curto da verificação (ex.: "qybe")
            anchor: rótulo legível da afirmação verificada
            params: parâmetros da execução (n, l, modo, ...)
        """
        self.check = check
        self.anchor = anchor
        self.params = dict(params or {})
        self.details: List[Dict] = []
        self.elapsed_ms: Optional[float] = None
        self._started = time.perf_counter()

    def record(self, item: str, ok: bool, note: str = "", value=None) -> bool:
        """
        Adiciona um item ao relatório

        Args:
            item: nome do item verificado
            ok: resultado do item
            note: observação curta (resíduo, contagem, ...)
            value: medida opcional (dimensão, posto, ...)

        Returns:
            O próprio resultado, para encadear condições
        """
        entry = {"item": item, "pass": bool(ok), "note": note}
        if value is not None:
            entry["value"] = value
        self.details.append(entry)
        if not ok:
            logger.error(f"❌ {self.check}: {item} falhou {note}".rstrip())
        else:
            logger.debug(f"✅ {self.check}: {item}")
        return bool(ok)

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        """Copia os itens de outro relatório (com prefixo opcional)"""
        for entry in other.details:
            copied = dict(entry)
            copied["item"] = f"{prefix}{entry['item']}"
            self.details.append(copied)

    @property
    def passed(self) -> bool:
        return bool(self.details) and all(entry["pass"] for entry in self.details)

    def finish(self) -> "VerificationReport":
        self.elapsed_ms = round((time.perf_counter() - self._started) * 1000, 1)
        status = "PASSOU" if self.passed else "FALHOU"
        logger.info(f"{self.check} {self.param_slug()}: {status} ({self.elapsed_ms} ms)")
        return self

    def param_slug(self) -> str:
        """Parâmetros em forma de nome de arquivo: n2_l3_symbolic"""
        parts = []
        for key in sorted(self.params):
            value = self.params[key]
            if isinstance(value, (int, str)):
                parts.append(f"{key}{value}")
        return "_".join(parts) or "default"

    def filename(self) -> str:
        return f"{self.check}_{self.param_slug()}.json"

    def to_dict(self, include_timing: bool = False) -> Dict:
        return {
            "check": self.check,
            "anchor": self.anchor,
            "params": self.params,
            "pass": self.passed,
            "details": self.details,
            "elapsed_ms": self.elapsed_ms if include_timing else None,
        }

    def to_json(self, include_timing: bool = False) -> str:
        """JSON determinístico: chaves ordenadas, indentação 2, newline final"""
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"{'✅' if self.passed else '❌'} {self.check} [{self.anchor}] {self.params}"]
        for entry in self.details:
            mark = "✅" if entry["pass"] else "❌"
            note = f" - {entry['note']}" if entry["note"] else ""
            lines.append(f"   {mark} {entry['item']}{note}")
        return "\n".join(lines)


class ReportStore:
    """Persistência de relatórios em disco local ou no S3"""

    def __init__(self, storage_type: str = "local", report_dir: str = "reports",
                 s3_bucket: str = None, aws_region: str = "us-east-1",
                 include_timing: bool = False):
        """
        Inicializa o armazenamento de relatórios

        Args:
            storage_type: Tipo de armazenamento ("local" ou "s3")
            report_dir: Pasta local (ou prefixo no bucket) dos relatórios
            s3_bucket: Nome do bucket S3 (obrigatório se storage_type="s3")
            aws_region: Região AWS para S3
            include_timing: grava elapsed_ms nos arquivos (quebra o determinismo byte a byte)
        """
        self.storage_type = storage_type.lower()
        self.include_timing = include_timing
        self.report_dir = report_dir

        if self.storage_type == "s3":
            if not s3_bucket:
                raise ValueError("s3_bucket é obrigatório quando storage_type='s3'")
            self.s3_bucket = s3_bucket
            self.s3_client = boto3.client('s3', region_name=aws_region)
        elif self.storage_type == "local":
            self.local_root = Path(report_dir)
            self.local_root.mkdir(parents=True, exist_ok=True)
        else:
            raise ValueError("storage_type deve ser 's3' ou 'local'")

        logger.debug(f"ReportStore inicializado: {self.storage_type} ({report_dir})")

    def _write_local(self, name: str, payload: bytes) -> str:
        """Escrita atômica: arquivo temporário + os.replace"""
        target = self.local_root / name
        fd, tmp_path = tempfile.mkstemp(dir=str(self.local_root), prefix=".tmp_", suffix=".part")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(payload)
            os.replace(tmp_path, target)
        except Exception:
            if os.path.exists(tmp_path):
                os.remove(tmp_path)
            raise
        return str(target)

    def _upload(self, name: str, payload: bytes, content_type: str) -> Optional[str]:
        key = f"{self.report_dir.strip('/')}/{name}"
        try:
            self.s3_client.put_object(Bucket=self.s3_bucket, Key=key, Body=payload, ContentType=content_type)
            return f"s3://{self.s3_bucket}/{key}"
        except NoCredentialsError:
            logger.warning("Credenciais AWS não encontradas; relatório não publicado")
        except ClientError as e:
            logger.warning(f"Erro do S3 ao publicar {key}: {e}")
        return None

    def save(self, report: VerificationReport) -> Optional[str]:
        """
        Grava um relatório

        Returns:
            Caminho local ou URI S3 do arquivo (None se o upload falhar)
        """
        payload = report.to_json(self.include_timing).encode("utf-8")
        name = report.filename()
        if self.storage_type == "s3":
            location = self._upload(name, payload, "application/json")
        else:
            location = self._write_local(name, payload)
        logger.debug(f"Relatório salvo: {location}")
        return location

    def save_summary(self, reports: Iterable[VerificationReport]) -> Optional[str]:
        """
        Grava summary.parquet com uma linha por verificação

        Returns:
            Caminho local ou URI S3 da tabela
        """
        rows = [{
            "check": r.check,
            "params": r.param_slug(),
            "pass": r.passed,
            "elapsed_ms": r.elapsed_ms,
        } for r in reports]
        df = pd.DataFrame(rows, columns=["check", "params", "pass", "elapsed_ms"])
        if self.storage_type == "s3":
            buffer = df.to_parquet(index=False, engine='pyarrow')
            return self._upload("summary.parquet", buffer, "application/octet-stream")
        target = self.local_root / "summary.parquet"
        df.to_parquet(target, index=False, engine='pyarrow')
        logger.info(f"Resumo salvo: {target} ({len(df)} verificações)")
        return str(target)
