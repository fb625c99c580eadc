import logging
from abc import ABC, abstractmethod
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterator, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from app.certify.models import Certificate
from app.ff import FieldContext, make_context

logger = logging.getLogger(__name__)


class SearchConfig(BaseModel):
    """Engine options; immutable so it can be shipped to worker processes"""

    model_config = ConfigDict(frozen=True)

    seed: int = 0
    threads: int = Field(default=1, ge=1)
    deterministic: bool = True
    exhaustive: bool = False
    restricted_first: bool = True
    pair_bound: Optional[int] = None
    max_pairs: Optional[int] = Field(default=None, ge=1)


class SearchStats(BaseModel):
    pairs_tested: int = 0
    hits: int = 0
    strategy: str
    passes: List[str] = Field(default_factory=list)


class SearchOutcome(BaseModel):
    genus: int
    p: int
    status: Literal["found", "bot", "interrupted"]
    certificate: Optional[Certificate] = None
    certificates: List[Certificate] = Field(default_factory=list)
    stats: SearchStats

    @property
    def found(self) -> bool:
        return self.status == "found"


@dataclass(frozen=True)
class SearchPass:
    """One sweep over a grid of candidate pairs"""

    name: str
    rows: Sequence[Any]
    cols: Sequence[Any]
    triangular: bool = False


@dataclass
class ChunkResult:
    pairs: int
    hits: List[Tuple[int, Certificate]]
    interrupted: bool = False


class BaseSearchEngine(ABC):
    """Base class for all search engines.

    An engine prepares its tables once, then exposes one or more passes over
    a grid of candidate pairs; the runner below walks the grid in canonical
    order and asks test() about every cell.
    """

    genus: int
    strategy: str

    def __init__(self, ctx: FieldContext, config: Optional[SearchConfig] = None):
        self.ctx = ctx
        self.config = config or SearchConfig()
        self.prepare()

    @abstractmethod
    def prepare(self) -> None:
        """Build the tables the grid is made of"""
        pass

    @abstractmethod
    def passes(self) -> List[SearchPass]:
        pass

    @abstractmethod
    def test(self, row: Any, col: Any) -> Iterator[Certificate]:
        """Certificates found at one cell of the grid"""
        pass

    def skip(self, pass_index: int, row: Any, col: Any) -> bool:
        """Cells that were already covered by an earlier pass"""
        return False

    def shortcut(self) -> Optional[Certificate]:
        """A closed-form construction that bypasses the grid"""
        return None

    def scan(self, pass_index: int, start: int, stop: int, budget: Optional[int] = None) -> ChunkResult:
        """Walk rows [start, stop) of one pass"""
        search_pass = self.passes()[pass_index]
        exhaustive = self.config.exhaustive
        pairs = 0
        hits: List[Tuple[int, Certificate]] = []
        for i in range(start, stop):
            row = search_pass.rows[i]
            first_col = i + 1 if search_pass.triangular else 0
            for j in range(first_col, len(search_pass.cols)):
                col = search_pass.cols[j]
                if self.skip(pass_index, row, col):
                    continue
                if budget is not None and pairs >= budget:
                    return ChunkResult(pairs, hits, interrupted=True)
                pairs += 1
                for cert in self.test(row, col):
                    hits.append((pairs, cert))
                    if not exhaustive:
                        return ChunkResult(pairs, hits)
        return ChunkResult(pairs, hits)


@lru_cache(maxsize=8)
def _worker_engine(genus: int, strategy: str, p: int, minpoly: Tuple[int, int, int], config_json: str):
    from app.howe import get_engine_class

    ctx = make_context(p, minpoly)
    return get_engine_class(genus, strategy)(ctx, SearchConfig.model_validate_json(config_json))


def _scan_chunk(task) -> ChunkResult:
    genus, strategy, p, minpoly, config_json, pass_index, start, stop = task
    engine = _worker_engine(genus, strategy, p, minpoly, config_json)
    return engine.scan(pass_index, start, stop)


def _chunks(rows: int, threads: int) -> List[Tuple[int, int]]:
    size = max(1, -(-rows // (threads * 4)))
    return [(start, min(start + size, rows)) for start in range(0, rows, size)]


def _merge(results: List[ChunkResult], exhaustive: bool) -> ChunkResult:
    """Combine chunk results as if the chunks had run one after the other"""
    pairs = 0
    hits: List[Tuple[int, Certificate]] = []
    for result in results:
        if result.hits and not exhaustive:
            at, cert = result.hits[0]
            return ChunkResult(pairs + at, [(pairs + at, cert)])
        hits.extend((pairs + at, cert) for at, cert in result.hits)
        pairs += result.pairs
    return ChunkResult(pairs, hits)


def _run_parallel(engine: BaseSearchEngine, pass_index: int, rows: int) -> ChunkResult:
    config = engine.config
    tasks = [
        (engine.genus, engine.strategy, engine.ctx.p, engine.ctx.minpoly, config.model_dump_json(), pass_index, a, b)
        for a, b in _chunks(rows, config.threads)
    ]
    with ProcessPoolExecutor(max_workers=config.threads) as pool:
        if config.deterministic or config.exhaustive:
            return _merge(list(pool.map(_scan_chunk, tasks)), config.exhaustive)

        # fast mode: the first chunk to report a hit wins
        pending = {pool.submit(_scan_chunk, task) for task in tasks}
        pairs = 0
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for future in done:
                result = future.result()
                if result.hits:
                    for other in pending:
                        other.cancel()
                    at, cert = result.hits[0]
                    return ChunkResult(pairs + at, [(pairs + at, cert)])
                pairs += result.pairs
        return ChunkResult(pairs, [])


def run_search(engine: BaseSearchEngine) -> SearchOutcome:
    """Drive an engine to a certificate, to bottom or to an interruption"""
    config = engine.config
    stats = SearchStats(strategy=engine.strategy)
    outcome = dict(genus=engine.genus, p=engine.ctx.p)

    direct = engine.shortcut()
    if direct is not None:
        stats.hits = 1
        stats.passes.append("shortcut")
        return SearchOutcome(status="found", certificate=direct, certificates=[direct], stats=stats, **outcome)

    found: List[Certificate] = []
    try:
        for index, search_pass in enumerate(engine.passes()):
            stats.passes.append(search_pass.name)
            rows = len(search_pass.rows)
            budget = None if config.max_pairs is None else config.max_pairs - stats.pairs_tested
            if config.threads > 1 and budget is None and rows > 1:
                result = _run_parallel(engine, index, rows)
            else:
                result = engine.scan(index, 0, rows, budget)
            stats.pairs_tested += result.pairs
            found.extend(cert for _, cert in result.hits)
            logger.debug(
                "p=%d genus=%d pass=%s pairs=%d hits=%d",
                engine.ctx.p, engine.genus, search_pass.name, result.pairs, len(result.hits),
            )
            if result.interrupted:
                stats.hits = len(found)
                return SearchOutcome(status="interrupted", certificates=found, stats=stats, **outcome)
            if found and not config.exhaustive:
                break
    except KeyboardInterrupt:
        stats.hits = len(found)
        return SearchOutcome(status="interrupted", certificates=found, stats=stats, **outcome)

    stats.hits = len(found)
    if not found:
        return SearchOutcome(status="bot", stats=stats, **outcome)
    return SearchOutcome(status="found", certificate=found[0], certificates=found, stats=stats, **outcome)
