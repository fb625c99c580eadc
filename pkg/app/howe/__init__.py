"""Search engines for superspecial Howe curves, keyed by (genus, strategy)"""

from typing import Dict, List, Optional, Tuple, Type

from app.errors import ConfigurationError
from app.ff import FieldContext
from app.howe.base import BaseSearchEngine, SearchConfig, SearchOutcome, SearchStats, run_search
from app.howe.genus4 import Genus4AutoEngine, Genus4CorollaryEngine, Genus4Engine
from app.howe.genus5 import Genus5JPairsEngine, Genus5NaiveEngine
from app.howe.genus6 import Genus6JPairsEngine, Genus6NaiveEngine
from app.howe.pairs import Genus5PairEngine, Genus6PairEngine

ENGINES: Dict[Tuple[int, str], Type[BaseSearchEngine]] = {
    (4, "auto"): Genus4AutoEngine,
    (4, "cor"): Genus4CorollaryEngine,
    (4, "naive"): Genus4Engine,
    (5, "auto"): Genus5JPairsEngine,
    (5, "jpairs"): Genus5JPairsEngine,
    (5, "naive"): Genus5NaiveEngine,
    (5, "pairs"): Genus5PairEngine,
    (6, "auto"): Genus6JPairsEngine,
    (6, "jpairs"): Genus6JPairsEngine,
    (6, "naive"): Genus6NaiveEngine,
    (6, "pairs"): Genus6PairEngine,
}


def strategies_for(genus: int) -> List[str]:
    return [strategy for g, strategy in ENGINES if g == genus]


def get_engine_class(genus: int, strategy: str = "auto") -> Type[BaseSearchEngine]:
    try:
        return ENGINES[(genus, strategy)]
    except KeyError:
        if genus not in (4, 5, 6):
            raise ConfigurationError(f"genus must be 4, 5 or 6, got {genus}") from None
        raise ConfigurationError(
            f"strategy {strategy!r} is not available for genus {genus}; choose from {strategies_for(genus)}"
        ) from None


def search(genus: int, ctx: FieldContext, strategy: str = "auto", config: Optional[SearchConfig] = None) -> SearchOutcome:
    """Build the engine for (genus, strategy) over ctx and run it"""
    engine = get_engine_class(genus, strategy)(ctx, config)
    return run_search(engine)


__all__ = [
    "ENGINES",
    "SearchConfig",
    "SearchOutcome",
    "SearchStats",
    "get_engine_class",
    "run_search",
    "search",
    "strategies_for",
]
