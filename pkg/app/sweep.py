"""Prime sweeps: one search per prime, certificates written atomically,
a report listing every prime of the range exactly once.
"""

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import primerange

from app.certify import serialize, verify
from app.certify.codec import certificate_filename
from app.certify.models import Certificate
from app.errors import HoweError
from app.ff import make_context
from app.howe import ENGINES, SearchConfig, search

logger = logging.getLogger(__name__)

REPORT_NAME = "report.json"

Outcome = Literal["found", "bot", "error", "interrupted"]


class SweepConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    genus: Literal[4, 5, 6]
    pmin: int
    pmax: int
    strategy: str = "auto"
    seed: int = 0
    threads: int = Field(default=1, ge=1)
    deterministic: bool = True
    out_dir: str = "certificates"
    restricted_first: bool = True
    exhaustive: bool = False
    max_pairs: Optional[int] = Field(default=None, ge=1)
    pair_bound: Optional[int] = None

    @model_validator(mode="after")
    def check_range(self) -> "SweepConfig":
        if not 5 < self.pmin <= self.pmax:
            raise ValueError(f"need 5 < pmin <= pmax, got pmin={self.pmin} pmax={self.pmax}")
        if (self.genus, self.strategy) not in ENGINES:
            raise ValueError(f"strategy {self.strategy!r} is not available for genus {self.genus}")
        return self

    def search_config(self, threads: int) -> SearchConfig:
        return SearchConfig(
            seed=self.seed,
            threads=threads,
            deterministic=self.deterministic,
            exhaustive=self.exhaustive,
            restricted_first=self.restricted_first,
            pair_bound=self.pair_bound,
            max_pairs=self.max_pairs,
        )


class PrimeResult(BaseModel):
    p: int
    outcome: Outcome
    certificate: Optional[str] = None
    pairs: int = 0
    passes: List[str] = Field(default_factory=list)
    error: Optional[str] = None


class SweepReport(BaseModel):
    """Everything about a sweep except wall-clock times, so reruns compare equal"""

    genus: int
    pmin: int
    pmax: int
    strategy: str
    seed: int
    results: List[PrimeResult] = Field(default_factory=list)
    counts: Dict[str, int] = Field(default_factory=dict)
    exceptions: List[int] = Field(default_factory=list)
    errors: List[int] = Field(default_factory=list)

    def finish(self) -> "SweepReport":
        self.counts = {name: 0 for name in ("found", "bot", "error", "interrupted")}
        for result in self.results:
            self.counts[result.outcome] += 1
        self.exceptions = [r.p for r in self.results if r.outcome == "bot"]
        self.errors = [r.p for r in self.results if r.outcome == "error"]
        return self

    @property
    def exit_code(self) -> int:
        if self.errors:
            return 2
        if self.exceptions or self.counts.get("interrupted"):
            return 1
        return 0


def sweep_primes(pmin: int, pmax: int) -> List[int]:
    """Primes in [pmin, pmax]; 2, 3 and 5 are never part of a sweep"""
    return [int(p) for p in primerange(max(pmin, 7), pmax + 1)]


def write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with tmp.open("w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
        handle.flush()
        os.fsync(handle.fileno())
    os.replace(tmp, path)


def write_certificate(cert: Certificate, out_dir: str) -> str:
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    name = certificate_filename(cert)
    write_atomic(directory / name, serialize(cert))
    return name


def run_prime(genus: int, p: int, strategy: str, config: SearchConfig, out_dir: str) -> Tuple[PrimeResult, int]:
    """Search one prime and write its certificate; returns the result and the elapsed milliseconds"""
    started = time.perf_counter()
    try:
        outcome = search(genus, make_context(p), strategy, config)
        result = PrimeResult(p=p, outcome=outcome.status, pairs=outcome.stats.pairs_tested, passes=outcome.stats.passes)
        if outcome.found:
            report = verify(outcome.certificate)
            if not report.passed:
                failed = ", ".join(c.name for c in report.failures)
                result.outcome = "error"
                result.error = f"certificate failed pre-verification: {failed}"
            else:
                result.certificate = write_certificate(outcome.certificate, out_dir)
    except (HoweError, OSError) as exc:
        result = PrimeResult(p=p, outcome="error", error=str(exc))
    elapsed = int((time.perf_counter() - started) * 1000)
    return result, elapsed


def _run_prime_task(task) -> Tuple[PrimeResult, int]:
    return run_prime(*task)


def _log_prime(cfg: SweepConfig, result: PrimeResult, elapsed: int) -> None:
    logger.info(
        "p=%d genus=%d strategy=%s outcome=%s pairs=%d time_ms=%d",
        result.p, cfg.genus, cfg.strategy, result.outcome, result.pairs, elapsed,
    )
    if result.error:
        logger.warning("p=%d: %s", result.p, result.error)


def run_sweep(cfg: SweepConfig) -> SweepReport:
    primes = sweep_primes(cfg.pmin, cfg.pmax)
    report = SweepReport(genus=cfg.genus, pmin=cfg.pmin, pmax=cfg.pmax, strategy=cfg.strategy, seed=cfg.seed)

    # with several primes the pool works across primes and each search stays single-process
    across_primes = cfg.threads > 1 and len(primes) > 1
    config = cfg.search_config(1 if across_primes else cfg.threads)
    tasks = [(cfg.genus, p, cfg.strategy, config, cfg.out_dir) for p in primes]

    try:
        if across_primes:
            with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
                for result, elapsed in pool.map(_run_prime_task, tasks):
                    _log_prime(cfg, result, elapsed)
                    report.results.append(result)
        else:
            for task in tasks:
                result, elapsed = run_prime(*task)
                _log_prime(cfg, result, elapsed)
                report.results.append(result)
    except KeyboardInterrupt:
        done = {r.p for r in report.results}
        report.results.extend(PrimeResult(p=p, outcome="interrupted") for p in primes if p not in done)

    report.finish()
    try:
        directory = Path(cfg.out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        write_atomic(directory / REPORT_NAME, report.model_dump_json(indent=2) + "\n")
    except OSError as exc:
        logger.error("could not write %s: %s", REPORT_NAME, exc)
    return report
